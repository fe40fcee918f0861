import networkx as nx
from hypothesis import given, settings, strategies as st

from coordne.matching import BipartiteInstance, max_bipartite_matching


def size(left, right, edges):
    return len(max_bipartite_matching(BipartiteInstance.from_edges(left, right, edges)))


def test_small_cases():
    assert size(["L1"], ["R1"], [("L1", "R1")]) == 1
    assert size(["L1", "L2"], ["R1"], [("L1", "R1"), ("L2", "R1")]) == 1
    k33 = [(f"L{i}", f"R{j}") for i in range(3) for j in range(3)]
    assert size([f"L{i}" for i in range(3)], [f"R{j}" for j in range(3)], k33) == 3
    assert size([], [], []) == 0
    assert size(["L1"], [], []) == 0


def test_augmenting_path_needed():
    # greedy picks L1-R1 first; the optimum reroutes it
    edges = [("L1", "R1"), ("L1", "R2"), ("L2", "R1")]
    m = max_bipartite_matching(BipartiteInstance.from_edges(["L1", "L2"], ["R1", "R2"], edges))
    assert sorted(m) == [("L1", "R2"), ("L2", "R1")]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 9), st.integers(0, 9), st.data())
def test_matches_networkx(nl, nr, data):
    left = [("l", i) for i in range(nl)]
    right = [("r", j) for j in range(nr)]
    pairs = [(a, b) for a in left for b in right]
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    m = max_bipartite_matching(BipartiteInstance.from_edges(left, right, edges))
    # a valid matching: real edges, no shared endpoints
    assert set(m) <= set(edges)
    assert len({a for a, _ in m}) == len(m) == len({b for _, b in m})
    g = nx.Graph()
    g.add_nodes_from(left, bipartite=0)
    g.add_nodes_from(right, bipartite=1)
    g.add_edges_from(edges)
    ref = nx.bipartite.maximum_matching(g, top_nodes=left)
    assert len(m) == len(ref) // 2
