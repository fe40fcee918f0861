"""Route a query to the first solver whose preconditions hold."""

from __future__ import annotations

import enum
from typing import Optional

from . import colour_complete, cycle, dag_out1, oracle, two_colour
from .errors import CapExceeded, ColourCapExceeded, Intractable, PreconditionViolated
from .game import Game, Query, Verdict, check_query, is_monochromatic
from .instances import ClassProfile, classify


class Mode(str, enum.Enum):
    EXISTS = "exists"
    FORALL = "forall"


SOLVERS = ("two-colour", "cycle", "dag-out1", "colour-complete", "oracle")


def applicable(profile: ClassProfile, game: Game, q: Query, mode: Mode, solver: str,
               cap: int, colour_cap: int) -> bool:
    if solver == "two-colour":
        return profile.two_colour and (mode is Mode.FORALL or is_monochromatic(q))
    if solver == "cycle":
        return profile.simple_cycle
    if solver == "dag-out1":
        return profile.dag and profile.out_degree_le1 and profile.unweighted
    if solver == "colour-complete":
        return (profile.colour_complete and profile.colour_cliques and profile.bonus_free
                and profile.colours <= colour_cap)
    if solver == "oracle":
        return game.profile_count <= cap
    raise ValueError(f"unknown solver {solver!r}; known: {', '.join(SOLVERS)}")


def _run(game: Game, q: Query, mode: Mode, solver: str, cap: int, colour_cap: int,
         stats: dict, strict: bool) -> Verdict:
    exists = mode is Mode.EXISTS
    if solver == "two-colour":
        if exists:
            return two_colour.ene_two_colour_mono(game, q, stats)
        if is_monochromatic(q):
            return two_colour.ane_two_colour_mono(game, q, stats)
        return two_colour.ane_two_colour_poly(game, q, stats)
    if solver == "cycle":
        if exists:
            return cycle.ene_cycle(game, q, strict=strict)
        if game.unweighted:
            return cycle.ane_cycle_unweighted(game, q, strict=strict)
        return cycle.ane_cycle_weighted(game, q, strict=strict)
    if solver == "dag-out1":
        f = dag_out1.ene_dag_out1 if exists else dag_out1.ane_dag_out1
        return f(game, q, stats)
    if solver == "colour-complete":
        f = colour_complete.ene_colour_complete if exists else colour_complete.ane_colour_complete
        return f(game, q, colour_cap, stats)
    f = oracle.oracle_exists if exists else oracle.oracle_forall
    return f(game, q, cap, stats)


def dispatch(game: Game, q: Query, mode: Mode = Mode.EXISTS, cap: Optional[int] = None,
             colour_cap: int = colour_complete.DEFAULT_COLOUR_CAP, solver: str = "auto",
             stats: Optional[dict] = None, strict: bool = False) -> tuple:
    """Answer the query; returns ``(verdict, route)`` where route names the solver used.

    With ``solver="auto"`` the first applicable solver in :data:`SOLVERS`
    order wins.  Naming a solver forces it, and a solver whose
    preconditions fail raises :class:`PreconditionViolated` (or
    :class:`CapExceeded` for the oracle).
    """
    mode = Mode(mode)
    cap = oracle.DEFAULT_CAP if cap is None else int(cap)
    stats = stats if stats is not None else {}
    check_query(game, q, strict=strict)
    profile = classify(game)
    if solver != "auto":
        if not applicable(profile, game, q, mode, solver, cap, colour_cap):
            if solver == "oracle":
                raise CapExceeded(game.profile_count, cap)
            if solver == "colour-complete" and profile.colours > colour_cap:
                raise ColourCapExceeded(f"{profile.colours} colours exceed the cap of {colour_cap}")
            raise PreconditionViolated(f"solver {solver} does not apply to this game and query")
        return _run(game, q, mode, solver, cap, colour_cap, stats, strict), solver
    for name in SOLVERS:
        if applicable(profile, game, q, mode, name, cap, colour_cap):
            return _run(game, q, mode, name, cap, colour_cap, stats, strict), name
    raise Intractable(
        f"no specialised solver applies and {game.profile_count} joint strategies exceed the cap {cap}"
    )
