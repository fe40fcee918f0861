"""Structural helpers over a game's underlying digraph (node indices)."""

from __future__ import annotations

import heapq
from typing import Optional

from .game import Game


def topological_order(game: Game) -> Optional[list]:
    """Kahn's algorithm, smallest declaration index first; None if cyclic."""
    n = len(game.nodes)
    indeg = [len(p) for p in game.pred]
    heap = [k for k in range(n) if indeg[k] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        k = heapq.heappop(heap)
        order.append(k)
        for j, _ in game.succ[k]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, j)
    return order if len(order) == n else None


def cycle_order(game: Game, start: int = 0) -> Optional[list]:
    """Node indices along the single directed cycle through all nodes, from ``start``."""
    n = len(game.nodes)
    if n < 2:
        return None
    pred, succ = game.pred, game.succ
    if set(map(len, pred)) != {1} or set(map(len, succ)) != {1}:
        return None
    nxt = [j for ((j, _),) in succ]
    order = [start]
    k = nxt[start]
    while k != start and len(order) <= n:
        order.append(k)
        k = nxt[k]
    return order if len(order) == n else None


def max_out_degree(game: Game) -> int:
    return max((len(s) for s in game.succ), default=0)
