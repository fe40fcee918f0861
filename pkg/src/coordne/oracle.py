"""Brute-force ground truth for existential and universal queries.

Joint strategies are visited as an odometer: nodes in declaration order,
colours in canonical order, so equilibria come out already sorted.  A
prefix is abandoned as soon as some node whose own colour and all of
whose predecessors' colours are fixed by the prefix is not at a best
response; every completion of such a prefix fails the same check, so
the search stays exhaustive.  ``naive=True`` disables the pruning and
tests every one of the product-many profiles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import CapExceeded
from .game import Game, Query, Verdict, at_best_response, check_query, first_deviator, is_consistent

DEFAULT_CAP = 2**20


@dataclass(frozen=True)
class EnumerationCap:
    max_profiles: int = DEFAULT_CAP

    def check(self, game: Game) -> None:
        size = game.profile_count
        if size > self.max_profiles:
            raise CapExceeded(size, self.max_profiles)


def _as_cap(cap) -> EnumerationCap:
    if cap is None:
        return EnumerationCap()
    if isinstance(cap, EnumerationCap):
        return cap
    return EnumerationCap(int(cap))


def _ready_lists(game: Game) -> list:
    """``ready[k]``: nodes whose best-response test is decided once position k is set."""
    ready = [[] for _ in game.nodes]
    for i in range(len(game.nodes)):
        last = max([i] + [j for j, _ in game.pred[i]])
        ready[last].append(i)
    return ready


def iter_ne(game: Game, fixed: Optional[Query] = None, stats: Optional[dict] = None,
            naive: bool = False) -> Iterator[dict]:
    """Yield every Nash equilibrium (restricted to ``fixed`` colours) in canonical order."""
    game.require_valid()
    fixed = fixed or {}
    choices = [
        (fixed[n],) if n in fixed else game.options[k] for k, n in enumerate(game.nodes)
    ]
    counter = stats if stats is not None else {}
    counter.setdefault("profiles_checked", 0)
    if naive:
        for cols in itertools.product(*choices):
            counter["profiles_checked"] += 1
            if first_deviator(game, list(cols)) is None:
                yield game.to_dict(cols)
        return

    n = len(game.nodes)
    if n == 0:
        yield {}
        return
    ready = _ready_lists(game)
    cols = [None] * n
    # explicit stack of per-position colour iterators keeps deep games off the recursion limit
    stack = [iter(choices[0])]
    while stack:
        pos = len(stack) - 1
        colour = next(stack[-1], None)
        if colour is None:
            stack.pop()
            cols[pos] = None
            continue
        cols[pos] = colour
        counter["profiles_checked"] += 1
        if not all(at_best_response(game, cols, k) for k in ready[pos]):
            continue
        if pos + 1 == n:
            yield game.to_dict(cols)
        else:
            stack.append(iter(choices[pos + 1]))


def enumerate_ne(game: Game, cap=None, stats: Optional[dict] = None, naive: bool = False) -> list:
    _as_cap(cap).check(game)
    return list(iter_ne(game, stats=stats, naive=naive))


def oracle_exists(game: Game, q: Query, cap=None, stats: Optional[dict] = None) -> Verdict:
    check_query(game, q)
    _as_cap(cap).check(game)
    for s in iter_ne(game, fixed=q, stats=stats):
        return Verdict.of(True, witness=s, solver="oracle")
    return Verdict.of(False, solver="oracle")


def oracle_forall(game: Game, q: Query, cap=None, stats: Optional[dict] = None) -> Verdict:
    check_query(game, q)
    _as_cap(cap).check(game)
    for s in iter_ne(game, stats=stats):
        if not is_consistent(s, q):
            return Verdict.of(False, counterexample=s, solver="oracle")
    return Verdict.of(True, solver="oracle")
