"""Existential and universal queries on a simple directed cycle.

On a cycle every node has a single predecessor, so a profile is an
equilibrium exactly when each colour is a best response to the colour
just before it.  Walking around the cycle with the set ``X_i`` of colours
that can still appear at position ``i`` therefore decides existence in
one pass.  Per position and incoming weight ``w``:

* ``A`` holds the colours with the top bonus (best when the predecessor
  does not help),
* ``C`` holds the colours worth copying from the predecessor,
* ``B`` holds the colours the node is forced to copy.

Colour sets are bitmasks over the canonical palette; bit 0 is the first
colour.  Weights and bonuses are compared in the game's integer scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InternalSoundness, NotASimpleCycle, NotUnweighted
from .game import Game, Query, Verdict, certify, check_query
from .graph import cycle_order

SOLVER = "cycle"


def _low(mask: int) -> int:
    return mask & -mask


@dataclass
class CycleLayout:
    """Positions ``0..n-1`` along the cycle plus per-position colour masks.

    ``A[i]``, ``B[i]``, ``C[i]`` describe the node at position ``i`` with
    respect to the edge from position ``i-1``.
    """

    game: Game
    order: list
    palette: tuple
    bit: dict
    full: list
    A: list
    B: list
    C: list

    @property
    def n(self) -> int:
        return len(self.order)

    def colours(self, mask: int) -> frozenset:
        return frozenset(c for c in self.palette if mask & self.bit[c])

    def first(self, mask: int) -> str:
        return self.palette[_low(mask).bit_length() - 1]

    def position(self, node: str) -> int:
        return self.order.index(self.game.index[node])

    def abc(self, node: str) -> tuple:
        p = self.position(node)
        return self.colours(self.A[p]), self.colours(self.B[p]), self.colours(self.C[p])


def compute_abc(game: Game, q: Optional[Query] = None) -> CycleLayout:
    """Lay the cycle out starting at the first queried node (declaration order)."""
    game.require_valid()
    idx = game.index
    start = min((idx[n] for n in q), default=0) if q else 0
    order = cycle_order(game, start) if game.nodes else None
    if order is None:
        raise NotASimpleCycle("graph is not a single directed cycle through every node")
    palette = game.palette
    bit = {c: 1 << k for k, c in enumerate(palette)}
    n = len(order)
    pred, bonus, sets = game.pred, game.bonus_scaled, game.colour_sets
    masks = {cs: sum(bit[c] for c in cs) for cs in set(sets)}
    full = [masks[sets[k]] for k in order]
    if not game.bonuses and min(game.edge_weights) > 0:
        # no bonuses, positive weights: every colour is top, copyable and forced
        return CycleLayout(game, order, palette, bit, full, full, full, full)
    A, B, C = [0] * n, [0] * n, [0] * n
    for p, k in enumerate(order):
        m = full[p]
        w = pred[k][0][1]
        b = bonus[k]
        if not b:
            A[p] = C[p] = m
            B[p] = m if w > 0 else 0
            continue
        vals = {c: b.get(c, 0) for c in sets[k]}
        top = max(vals.values())
        for c, v in vals.items():
            if v >= top:
                A[p] |= bit[c]
            if v + w >= top:
                C[p] |= bit[c]
            # strict: copying c beats every alternative outright
            if v + w > top:
                B[p] |= bit[c]
    return CycleLayout(game, order, palette, bit, full, A, B, C)


def _forward(L: CycleLayout, x0: int, clamps: Optional[dict] = None):
    """Propagate from ``X_0 = x0``; ``X[n]`` is position 0 reached again.

    Returns ``(X, None)`` or ``(X_prefix, failing_position)`` when a clamp
    excludes every candidate colour.
    """
    A, B, C, n = L.A, L.B, L.C, L.n
    X = [0] * (n + 1)
    X[0] = x = x0
    if not clamps:
        for i in range(1, n):
            if x & ~B[i]:
                x = (x & C[i]) | A[i]
            X[i] = x
        if x & ~B[0]:
            x = (x & C[0]) | A[0]
        X[n] = x
        return X, None
    for i in range(1, n + 1):
        k = i if i < n else 0
        if x & ~B[k]:
            x = (x & C[k]) | A[k]
        want = clamps.get(k)
        if want is not None:
            if not x & want:
                X[i] = x
                return X, k
            if k:
                x = want
        X[i] = x
    return X, None


def _backward(L: CycleLayout, target: int) -> list:
    """``R[i]``: colours at position ``i`` from which best responses can reach ``target`` at position 0."""
    A, B, C, full, n = L.A, L.B, L.C, L.full, L.n
    R = [0] * (n + 1)
    R[n] = r = target
    for i in range(n - 1, -1, -1):
        k = i + 1 if i + 1 < n else 0
        y = r & C[k]
        if A[k] & r:
            y |= ~B[k]
        r = y & full[i]
        R[i] = r
    return R


def _witness(L: CycleLayout, X: list) -> tuple:
    """Walk back from position ``n-1``, picking predecessors that justify each colour.

    Returns the profile as a dict and as a list in declaration order.
    """
    B, C, n, order = L.B, L.C, L.n, L.order
    name = {L.bit[c]: c for c in L.palette}
    cols = [None] * n
    cols[order[0]] = name[X[0]]
    nxt = X[0]
    for i in range(n - 1, 0, -1):
        k = i + 1 if i + 1 < n else 0
        xi = X[i]
        if not xi & ~B[k]:
            cur = nxt
        elif nxt & xi & C[k]:
            cur = nxt
        else:
            cur = _low(xi & ~B[k])
        cols[order[i]] = name[cur]
        nxt = cur
    return L.game.to_dict(cols), cols


def _clamps(L: CycleLayout, q: Query) -> dict:
    idx, order = L.game.index, L.order
    return {order.index(idx[name]): L.bit[c] for name, c in q.items()}


def _solve_exists(L: CycleLayout, q: Query) -> Optional[dict]:
    clamps = _clamps(L, q)
    X, bad = _forward(L, clamps[0], clamps)
    if bad is not None:
        return None
    s, cols = _witness(L, X)
    return certify(L.game, s, q, True, SOLVER, cols)


def ene_cycle(game: Game, q: Query, strict: bool = False) -> Verdict:
    check_query(game, q, strict=strict)
    L = compute_abc(game, q)
    if not q:
        # plain existence: try each colour at position 0
        node0 = game.nodes[L.order[0]]
        for c in sorted(game.colour_sets[L.order[0]]):
            s = _solve_exists(L, {node0: c})
            if s is not None:
                return Verdict.of(True, witness=s, solver=SOLVER)
        return Verdict.of(False, solver=SOLVER)
    s = _solve_exists(L, q)
    if s is None:
        return Verdict.of(False, solver=SOLVER)
    return Verdict.of(True, witness=s, solver=SOLVER)


def _forall(L: CycleLayout, q: Query) -> Verdict:
    game = L.game
    clamps = _clamps(L, q)
    q0 = clamps[0]
    node0 = game.nodes[L.order[0]]
    for c in sorted(game.colour_sets[L.order[0]]):
        cb = L.bit[c]
        X, _ = _forward(L, cb)
        if not X[-1] & cb:
            continue
        if cb != q0:
            s, cols = _witness(L, X)
            return Verdict.of(False, counterexample=certify(game, s, q, False, SOLVER, cols),
                              solver=SOLVER)
        if len(clamps) == 1:
            # only position 0 is queried and it is pinned to q(0)
            continue
        # colours on a closed walk through q(0): reachable forwards and backwards
        R = _backward(L, cb)
        for p in sorted(clamps):
            extra = X[p] & R[p] & ~clamps[p]
            if extra:
                x = _low(extra)
                sub = {node0: c, game.nodes[L.order[p]]: L.first(x)}
                s = _solve_exists(L, sub)
                if s is None:
                    raise InternalSoundness(f"{SOLVER}: no equilibrium realises {sub}")
                return Verdict.of(False, counterexample=certify(game, s, q, False, SOLVER),
                                  solver=SOLVER)
    return Verdict.of(True, solver=SOLVER)


def ane_cycle_weighted(game: Game, q: Query, strict: bool = False) -> Verdict:
    check_query(game, q, strict=strict)
    L = compute_abc(game, q)
    if not q:
        return Verdict.of(True, solver=SOLVER)
    return _forall(L, q)


def ane_cycle_unweighted(game: Game, q: Query, strict: bool = False) -> Verdict:
    check_query(game, q, strict=strict)
    L = compute_abc(game, q)
    if not game.unweighted:
        raise NotUnweighted("every edge weight must be 1")
    if not q:
        return Verdict.of(True, solver=SOLVER)
    return _forall(L, q)
