"""Queries on unweighted DAGs in which every node has at most one successor.

Nodes are processed in topological order.  For each node ``i`` the set
``X(i)`` collects the colours ``i`` can take in some equilibrium.  Colour
``c`` is admissible when the predecessors can be coloured from their own
sets so that ``c`` stays a best response: every predecessor able to play
``c`` does so (the set ``S``), and the rest must be spread over the other
colours without any of them overtaking ``c``.  The slack of a rival
colour ``c'`` is ``|S| + b(c) - b(c')``; a rival with slack at least the
number of unplaced predecessors can absorb all of them, otherwise the
placement is a capacitated bipartite matching.

Because out-degrees are at most one, the ancestor trees of distinct
predecessors are disjoint, so their colour choices are independent and a
witness can be assembled from the sinks upwards using the placements
recorded during the sweep.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import InternalSoundness, NotADAG, NotUnweighted, OutDegreeExceeded
from .game import Game, Query, Verdict, certify, check_query
from .graph import max_out_degree, topological_order
from .matching import BipartiteInstance, max_bipartite_matching

SOLVER = "dag-out1"


@dataclass
class FeasibleTable:
    """Result of a sweep: feasible colours per node and, per admitted (node, colour), how predecessors were placed."""

    order: list
    X: list
    placement: dict = field(default_factory=dict)
    failed: Optional[int] = None


def check_class(game: Game) -> list:
    game.require_valid()
    order = topological_order(game)
    if order is None:
        raise NotADAG("graph has a directed cycle")
    if max_out_degree(game) > 1:
        raise OutDegreeExceeded("some node has more than one successor")
    if not game.unweighted:
        raise NotUnweighted("every edge weight must be 1")
    return order


def topo_order(game: Game) -> list:
    """Node names in the topological order used by the sweep."""
    return [game.nodes[k] for k in check_class(game)]


def _admit(game: Game, k: int, c: str, preds: list, X: list, stats: dict) -> Optional[dict]:
    """Try colour ``c`` at node ``k``; return the predecessor placement or None."""
    own = game.colours[game.nodes[k]]
    bonus = game.bonus_scaled[k]
    bc = bonus.get(c, 0)
    place = {}
    rest = []
    for p in preds:
        if c in X[p]:
            place[p] = c
        else:
            rest.append(p)
    s = len(place)
    slack = {}
    for c2 in game.palette:
        if c2 == c:
            continue
        if c2 in own:
            slack[c2] = s + bc - bonus.get(c2, 0)
            if slack[c2] < 0:
                return None
        else:
            # a predecessor on a colour this node lacks cannot tempt it
            slack[c2] = len(preds) + 1
    rivals = [c2 for c2 in game.palette if c2 != c]
    changed = True
    while changed:
        changed = False
        for c2 in rivals:
            if slack[c2] >= len(rest):
                rivals.remove(c2)
                keep = []
                for p in rest:
                    if c2 in X[p]:
                        place[p] = c2
                    else:
                        keep.append(p)
                rest = keep
                changed = True
                break
    if not rest:
        return place
    slots = [(c2, x) for c2 in rivals for x in range(1, slack[c2] + 1)]
    by_colour = {}
    for r, (c2, _) in enumerate(slots):
        by_colour.setdefault(c2, []).append(r)
    adj = [[r for c2 in rivals if c2 in X[p] for r in by_colour.get(c2, ())] for p in rest]
    key = (k, c)
    calls = stats.setdefault("matching_calls", {})
    calls[key] = calls.get(key, 0) + 1
    stats["left_tokens"] = stats.get("left_tokens", 0) + len(rest)
    matching = max_bipartite_matching(BipartiteInstance(rest, slots, adj))
    if len(matching) < len(rest):
        return None
    for p, (c2, _) in matching:
        place[p] = c2
    return place


def feasible_colours(game: Game, k: int, X: list, stats: Optional[dict] = None) -> tuple:
    """Admissible colours of node index ``k`` given its predecessors' sets, with their placements."""
    stats = stats if stats is not None else {}
    preds = [p for p, _ in game.pred[k]]
    got = {}
    for c in game.options[k]:
        place = _admit(game, k, c, preds, X, stats)
        if place is not None:
            got[c] = place
    return frozenset(got), got


def _sweep(game: Game, order: list, clamps: dict, stats: dict) -> FeasibleTable:
    X = [frozenset()] * len(game.nodes)
    table = FeasibleTable(order, X)
    for k in order:
        xs, got = feasible_colours(game, k, X, stats)
        want = clamps.get(k)
        if want is not None:
            if want not in xs:
                table.failed = k
                return table
            xs = frozenset((want,))
            got = {want: got[want]}
        X[k] = xs
        for c, place in got.items():
            table.placement[(k, c)] = place
        if not xs and clamps:
            table.failed = k
            return table
    return table


def _witness(game: Game, table: FeasibleTable) -> dict:
    cols = [None] * len(game.nodes)
    for k in reversed(table.order):
        if cols[k] is None:
            # a sink: nothing downstream constrains it
            cols[k] = min(table.X[k])
        for p, c in table.placement[(k, cols[k])].items():
            cols[p] = c
    return game.to_dict(cols)


def ene_dag_out1(game: Game, q: Query, stats: Optional[dict] = None) -> Verdict:
    order = check_class(game)
    check_query(game, q)
    stats = stats if stats is not None else {}
    clamps = {game.index[n]: c for n, c in q.items()}
    table = _sweep(game, order, clamps, stats)
    if table.failed is not None:
        return Verdict.of(False, solver=SOLVER)
    empty = [game.nodes[k] for k in order if not table.X[k]]
    if empty:
        return Verdict.of(False, solver=SOLVER,
                          notes=(f"no feasible colour at node {empty[0]}; the game has no equilibrium",))
    s = _witness(game, table)
    return Verdict.of(True, witness=certify(game, s, q, True, SOLVER), solver=SOLVER)


def ane_dag_out1(game: Game, q: Query, stats: Optional[dict] = None) -> Verdict:
    order = check_class(game)
    check_query(game, q)
    stats = stats if stats is not None else {}
    table = _sweep(game, order, {}, stats)
    empty = [game.nodes[k] for k in order if not table.X[k]]
    if empty:
        return Verdict.of(True, solver=SOLVER,
                          notes=(f"no feasible colour at node {empty[0]}; vacuously true",))
    for k in order:
        name = game.nodes[k]
        if name not in q or table.X[k] == {q[name]}:
            continue
        x = min(table.X[k] - {q[name]})
        # separate counters: the per-(node, colour) budget covers the decision sweep only
        sub = _sweep(game, order, {k: x}, {})
        if sub.failed is not None:
            raise InternalSoundness(f"{SOLVER}: colour {x!r} at {name!r} is not realisable")
        s = _witness(game, sub)
        return Verdict.of(False, counterexample=certify(game, s, q, False, SOLVER), solver=SOLVER)
    return Verdict.of(True, solver=SOLVER)
