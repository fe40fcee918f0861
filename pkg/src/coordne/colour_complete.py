"""Queries on unweighted, bonus-free colour-complete games.

When the owners of each colour form a single clique, a node's payoff
for colour ``x`` is simply the number of other nodes playing ``x``, and
every equilibrium is produced by some total order on the colours: each
node takes the highest colour it owns.  Sweeping all ``m!`` orders and
keeping the profiles that are equilibria lists every equilibrium.

Components of the graph do not influence each other, so the sweep runs
per weakly connected component.  Inside a component, a colour whose
owners are split over several cliques breaks the argument (each clique
may rank that colour differently), and such games are refused.
"""

from __future__ import annotations

import heapq
import itertools
from typing import Iterable, Optional

from .errors import ColourCapExceeded, NotUnweighted, PreconditionViolated
from .game import Game, Query, Strategy, Verdict, at_best_response, check_query

SOLVER = "colour-complete"
DEFAULT_COLOUR_CAP = 8


def is_colour_complete(game: Game) -> bool:
    """Every weakly connected piece of every single-colour subgraph is a complete digraph."""
    idx = game.index
    for c in game.palette:
        members = [k for k, n in enumerate(game.nodes) if c in game.colours[n]]
        inside = set(members)
        parent = {k: k for k in members}

        def find(k):
            while parent[k] != k:
                parent[k] = parent[parent[k]]
                k = parent[k]
            return k

        arcs = [(idx[u], idx[v]) for u, v, _ in game.edges if idx[u] in inside and idx[v] in inside]
        for u, v in arcs:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        size, count = {}, {}
        for k in members:
            r = find(k)
            size[r] = size.get(r, 0) + 1
        for u, _ in arcs:
            r = find(u)
            count[r] = count.get(r, 0) + 1
        # duplicate edges are invalid, so k(k-1) arcs means every ordered pair is present
        if any(count.get(r, 0) != k * (k - 1) for r, k in size.items()):
            return False
    return True


def sp_profile(game: Game, order: Iterable[str]) -> dict:
    """Give every node its highest available colour; ``order`` lists colours highest first."""
    rank = {c: r for r, c in enumerate(order)}
    return {n: min(game.colours[n], key=rank.__getitem__) for n in game.nodes}


def induced_order(s: Strategy, game: Game) -> frozenset:
    """Pairs ``(x, y)``: some node owning both chose ``x``."""
    pairs = set()
    for n in game.nodes:
        x = s[n]
        for y in game.colours[n]:
            if y != x:
                pairs.add((x, y))
    return frozenset(pairs)


def is_acyclic(pairs: Iterable[tuple]) -> bool:
    return extend_to_total_order(pairs) is not None


def extend_to_total_order(pairs: Iterable[tuple], colours: Iterable[str] = ()) -> Optional[list]:
    """Topological sort of the relation (highest first), canonical tie-break; None on a cycle."""
    pairs = set(pairs)
    universe = set(colours)
    for x, y in pairs:
        universe.update((x, y))
    indeg = {c: 0 for c in universe}
    out = {c: [] for c in universe}
    for x, y in pairs:
        out[x].append(y)
        indeg[y] += 1
    heap = [c for c, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        c = heapq.heappop(heap)
        order.append(c)
        for y in out[c]:
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(heap, y)
    return order if len(order) == len(universe) else None


def blocks(game: Game) -> list:
    """Weakly connected components as lists of node indices, each in declaration order."""
    n = len(game.nodes)
    parent = list(range(n))

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for k in range(n):
        for j, _ in game.pred[k]:
            a, b = find(j), find(k)
            if a != b:
                parent[max(a, b)] = min(a, b)
    out = {}
    for k in range(n):
        out.setdefault(find(k), []).append(k)
    return list(out.values())


def colours_form_cliques(game: Game) -> bool:
    """Inside every weakly connected component, the owners of each colour form one complete digraph."""
    arcs = {(j, k) for k in range(len(game.nodes)) for j, _ in game.pred[k]}
    for block in blocks(game):
        owners = {}
        for k in block:
            for c in game.options[k]:
                owners.setdefault(c, []).append(k)
        for members in owners.values():
            for u in members:
                for v in members:
                    if u != v and (u, v) not in arcs:
                        return False
    return True


def check_preconditions(game: Game, colour_cap: int = DEFAULT_COLOUR_CAP) -> None:
    game.require_valid()
    if not game.unweighted:
        raise NotUnweighted("colour-complete solver needs every edge weight to be 1")
    if not game.bonus_free:
        raise PreconditionViolated("colour-complete solver needs a bonus-free game")
    if len(game.palette) > colour_cap:
        raise ColourCapExceeded(f"{len(game.palette)} colours exceed the cap of {colour_cap}")
    if not is_colour_complete(game):
        raise PreconditionViolated("game is not colour complete")
    if not colours_form_cliques(game):
        # two separate cliques sharing colours can rank those colours differently,
        # so total orders no longer reach every equilibrium
        raise PreconditionViolated(
            "some colour is split over several cliques inside one connected component"
        )


def _block_equilibria(game: Game, block: list, stats: dict):
    """Distinct equilibria of one component, as colour tuples aligned with ``block``."""
    seen = set()
    opts = [game.options[k] for k in block]
    palette = sorted({c for o in opts for c in o})
    cols = [None] * len(game.nodes)
    for order in itertools.permutations(palette):
        stats["orders"] += 1
        rank = {c: r for r, c in enumerate(order)}
        sub = tuple(min(o, key=rank.__getitem__) for o in opts)
        if sub in seen:
            continue
        seen.add(sub)
        stats["profiles_checked"] += 1
        for k, c in zip(block, sub):
            cols[k] = c
        if all(at_best_response(game, cols, k) for k in block):
            yield sub


def _sweep_blocks(game: Game, colour_cap: int, stats: Optional[dict]):
    check_preconditions(game, colour_cap)
    stats = stats if stats is not None else {}
    stats.setdefault("orders", 0)
    stats.setdefault("profiles_checked", 0)
    return [(b, _block_equilibria(game, b, stats)) for b in blocks(game)]


def sweep_equilibria(game: Game, colour_cap: int = DEFAULT_COLOUR_CAP,
                     stats: Optional[dict] = None) -> list:
    """Every equilibrium, assembled from the per-component sweeps."""
    parts = [(b, list(it)) for b, it in _sweep_blocks(game, colour_cap, stats)]
    out = []
    for combo in itertools.product(*(eqs for _, eqs in parts)):
        cols = [None] * len(game.nodes)
        for (b, _), sub in zip(parts, combo):
            for k, c in zip(b, sub):
                cols[k] = c
        out.append(game.to_dict(cols))
    return out


def _fits(game: Game, block: list, sub: tuple, q: Query) -> bool:
    return all(q.get(game.nodes[k], c) == c for k, c in zip(block, sub))


def _assemble(game: Game, chosen: list) -> dict:
    cols = [None] * len(game.nodes)
    for b, sub in chosen:
        for k, c in zip(b, sub):
            cols[k] = c
    return game.to_dict(cols)


def ene_colour_complete(game: Game, q: Query, colour_cap: int = DEFAULT_COLOUR_CAP,
                        stats: Optional[dict] = None) -> Verdict:
    check_query(game, q)
    chosen = []
    for b, eqs in _sweep_blocks(game, colour_cap, stats):
        sub = next((e for e in eqs if _fits(game, b, e, q)), None)
        if sub is None:
            return Verdict.of(False, solver=SOLVER)
        chosen.append((b, sub))
    return Verdict.of(True, witness=_assemble(game, chosen), solver=SOLVER)


def ane_colour_complete(game: Game, q: Query, colour_cap: int = DEFAULT_COLOUR_CAP,
                        stats: Optional[dict] = None) -> Verdict:
    check_query(game, q)
    first, bad = [], None
    for b, eqs in _sweep_blocks(game, colour_cap, stats):
        eqs = list(eqs)
        if not eqs:
            # some component has no equilibrium, so the game has none
            return Verdict.of(True, solver=SOLVER)
        first.append((b, eqs[0]))
        if bad is None:
            miss = next((e for e in eqs if not _fits(game, b, e, q)), None)
            if miss is not None:
                bad = (len(first) - 1, (b, miss))
    if bad is None:
        return Verdict.of(True, solver=SOLVER)
    first[bad[0]] = bad[1]
    return Verdict.of(False, counterexample=_assemble(game, first), solver=SOLVER)
