"""Maximum-cardinality bipartite matching (Hopcroft-Karp)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


@dataclass
class BipartiteInstance:
    """``adj[i]`` lists the right indices adjacent to left index ``i``, in preference order."""

    left: list
    right: list
    adj: list = field(default_factory=list)

    @classmethod
    def from_edges(cls, left, right, edges) -> "BipartiteInstance":
        li = {t: k for k, t in enumerate(left)}
        ri = {t: k for k, t in enumerate(right)}
        adj = [[] for _ in left]
        for a, b in edges:
            adj[li[a]].append(ri[b])
        return cls(list(left), list(right), adj)


_INF = float("inf")


def max_bipartite_matching(b: BipartiteInstance) -> list:
    """Return the matching as ``[(left token, right token), ...]`` ordered by left index."""
    nl, nr = len(b.left), len(b.right)
    adj = b.adj if b.adj else [[] for _ in range(nl)]
    match_l = [-1] * nl
    match_r = [-1] * nr

    # greedy warm start; the phases below only repair what it missed
    for u in range(nl):
        for v in adj[u]:
            if match_r[v] < 0:
                match_l[u] = v
                match_r[v] = u
                break

    while True:
        dist = [_INF] * nl
        queue = deque()
        for u in range(nl):
            if match_l[u] < 0:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w < 0:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            break
        it = [0] * nl
        for root in range(nl):
            if match_l[root] >= 0:
                continue
            # iterative DFS along the layered graph
            path = [root]
            while path:
                u = path[-1]
                advanced = False
                while it[u] < len(adj[u]):
                    v = adj[u][it[u]]
                    it[u] += 1
                    w = match_r[v]
                    if w < 0:
                        # augment along the stack
                        for x in reversed(path):
                            nxt = match_l[x]
                            match_l[x] = v
                            match_r[v] = x
                            v = nxt
                        path = []
                        advanced = True
                        break
                    if dist[w] == dist[u] + 1:
                        path.append(w)
                        advanced = True
                        break
                if not advanced:
                    dist[u] = _INF
                    path.pop()
    return [(b.left[u], b.right[v]) for u, v in enumerate(match_l) if v >= 0]
