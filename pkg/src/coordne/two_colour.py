"""Existential and universal queries for games that use at most two colours.

Both decisions rest on one monotone operator ``F``: starting from a
profile, keep switching nodes to a target colour while that is strictly
profitable.  Starting from the profile that avoids the target wherever
possible, ``F`` lands on the equilibrium with the fewest target-coloured
nodes; every other equilibrium colours at least those nodes with the
target.  A node only ever switches towards the target, so each node is
queued at most once and each edge updates a cache at most once.

Bonuses break the textbook argument slightly: a node may prefer the
target before any predecessor has moved.  The closure therefore starts
with a scan of every node rather than only reacting to switches.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from .errors import InvalidStrategy, MoreThanTwoColours, NonMonochromaticQuery
from .game import Game, Query, Strategy, Verdict, certify, check_query, check_strategy

SOLVER = "two-colour"


def _colour_pair(game: Game) -> tuple:
    game.require_valid()
    if len(game.palette) > 2:
        raise MoreThanTwoColours(
            f"game uses {len(game.palette)} colours: {', '.join(game.palette)}"
        )
    return game.palette


def _other(palette: tuple, c: str) -> Optional[str]:
    # None stands for a colour nobody owns when the game is monochrome
    for x in palette:
        if x != c:
            return x
    return None


def _close(game: Game, cols: list, target: str, other: Optional[str], stats: dict) -> list:
    """Run the switching dynamics in place on ``cols``."""
    n = len(cols)
    pred, succ, bonus = game.pred, game.succ, game.bonus_scaled
    same = [0] * n
    diff = [0] * n
    for k in range(n):
        s = d = 0
        for j, w in pred[k]:
            if cols[j] == target:
                s += w
            else:
                d += w
        same[k] = s
        diff[k] = d

    can = [target in game.colours[name] for name in game.nodes]
    # scaled bonus advantage of the target over the other colour, per node
    edge = [0] * n
    for k, b in enumerate(bonus):
        if b:
            edge[k] = b.get(target, 0) - b.get(other, 0)

    queue = deque()
    for k in range(n):
        if cols[k] != target and can[k] and same[k] + edge[k] > diff[k]:
            cols[k] = target
            queue.append(k)
    pushes = len(queue)
    updates = 0
    while queue:
        u = queue.popleft()
        for j, w in succ[u]:
            same[j] += w
            diff[j] -= w
            updates += 1
            if cols[j] != target and can[j] and same[j] + edge[j] > diff[j]:
                cols[j] = target
                queue.append(j)
                pushes += 1
    stats["pushes"] = stats.get("pushes", 0) + pushes
    stats["max_pushes"] = max(stats.get("max_pushes", 0), pushes)
    stats["weight_updates"] = stats.get("weight_updates", 0) + updates
    return cols


def closure_F(game: Game, start: Strategy, target: str, stats: Optional[dict] = None) -> dict:
    """Best-response closure towards ``target``.

    The result is an equilibrium whenever every node that starts on the
    target is already at a best response there (for instance when it has
    no other colour).
    """
    palette = _colour_pair(game)
    check_strategy(game, start)
    if target not in palette:
        raise InvalidStrategy(f"colour {target!r} is not used by the game")
    cols = _close(game, game.to_list(start), target, _other(palette, target),
                  stats if stats is not None else {})
    return game.to_dict(cols)


def _extreme(game: Game, avoid: str, other: Optional[str], stats: dict) -> list:
    """Equilibrium with the fewest nodes on ``other``: start on ``avoid``, close towards ``other``."""
    cols = [avoid if avoid in game.colours[name] else other for name in game.nodes]
    if other is None:
        return cols
    return _close(game, cols, other, avoid, stats)


def _mono_colour(game: Game, q: Query) -> Optional[str]:
    check_query(game, q)
    colours = set(q.values())
    if len(colours) > 1:
        raise NonMonochromaticQuery(f"query uses colours {sorted(colours)}")
    return colours.pop() if colours else None


def ene_two_colour_mono(game: Game, q: Query, stats: Optional[dict] = None) -> Verdict:
    palette = _colour_pair(game)
    c0 = _mono_colour(game, q)
    if c0 is None:
        c0 = palette[0] if palette else None
    stats = stats if stats is not None else {}
    cols = _extreme(game, c0, _other(palette, c0), stats)
    s = game.to_dict(cols)
    if all(s[n] == c for n, c in q.items()):
        return Verdict.of(True, witness=certify(game, s, q, True, SOLVER), solver=SOLVER)
    return Verdict.of(False, solver=SOLVER)


def ane_two_colour_mono(game: Game, q: Query, stats: Optional[dict] = None) -> Verdict:
    palette = _colour_pair(game)
    c0 = _mono_colour(game, q)
    if c0 is None:
        return Verdict.of(True, solver=SOLVER)
    c1 = _other(palette, c0)
    stats = stats if stats is not None else {}
    if c1 is None:
        return Verdict.of(True, solver=SOLVER)
    # fewest nodes on c0: if even this equilibrium honours q, all do
    cols = _extreme(game, c1, c0, stats)
    s = game.to_dict(cols)
    if all(s[n] == c for n, c in q.items()):
        return Verdict.of(True, solver=SOLVER)
    return Verdict.of(False, counterexample=certify(game, s, q, False, SOLVER), solver=SOLVER)


def ane_two_colour_poly(game: Game, q: Query, stats: Optional[dict] = None) -> Verdict:
    palette = _colour_pair(game)
    check_query(game, q)
    for c in palette:
        part = {n: x for n, x in q.items() if x == c}
        if not part:
            continue
        v = ane_two_colour_mono(game, part, stats)
        if not v.yes:
            return v
    return Verdict.of(True, solver=SOLVER)
