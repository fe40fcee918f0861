from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coordne.errors import EmptyQuery, InvalidGame, InvalidQuery, InvalidStrategy
from coordne.game import (
    Game,
    as_rational,
    check_query,
    first_deviator,
    is_best_response,
    is_consistent,
    is_nash,
    payoff,
    validate,
    z_set,
)
from coordne.instances import FIG1_STRATEGY, fig1, path2


def test_fig1_payoffs_match_listing():
    g = fig1()
    want = {"1": 0, "2": 1, "3": 2, "4": 1, "5": 1, "6": 1, "7": 0, "8": 0, "9": 0}
    assert {n: payoff(g, FIG1_STRATEGY, n) for n in g.nodes} == want


def test_fig1_strategy_is_not_nash():
    g = fig1()
    assert not is_nash(g, FIG1_STRATEGY)
    # node 1 earns 0 on b but 1 on a, copying node 7
    assert first_deviator(g, g.to_list(FIG1_STRATEGY)) == 0


def test_payoff_includes_bonus_and_rational_weight():
    g = Game(nodes=["u", "v"], edges=[("u", "v", "3/2")], colours={"u": {"a"}, "v": {"a", "b"}},
             bonuses={("v", "b"): 1})
    assert payoff(g, {"u": "a", "v": "a"}, "v") == Fraction(3, 2)
    assert payoff(g, {"u": "a", "v": "b"}, "v") == 1
    assert is_best_response(g, {"u": "a", "v": "a"}, "v")
    assert not is_best_response(g, {"u": "a", "v": "b"}, "v")


def test_ties_are_best_responses():
    g = Game(nodes=["u", "v"], edges=[("u", "v", 1)], colours={"u": {"a"}, "v": {"a", "b"}},
             bonuses={("v", "b"): 1})
    assert is_nash(g, {"u": "a", "v": "a"})
    assert is_nash(g, {"u": "a", "v": "b"})


def test_path2_equilibria_copy():
    g = path2()
    assert is_nash(g, {"1": "0", "2": "0"})
    assert not is_nash(g, {"1": "0", "2": "1"})


def test_validate_collects_every_problem():
    g = Game(nodes=["a", "a", "b"], edges=[("a", "a", 1), ("a", "z", 1), ("b", "a", -1)],
             colours={"a": {"x"}, "q": {"x"}})
    problems = validate(g)
    text = " | ".join(problems)
    for needle in ("declared twice", "self-loop", "not a declared node", "negative weight",
                   "missing colour set", "unknown node"):
        assert needle in text
    with pytest.raises(InvalidGame):
        g.require_valid()


def test_duplicate_edge_rejected():
    g = Game(nodes=["a", "b"], edges=[("a", "b", 1), ("a", "b", 2)],
             colours={"a": {"x"}, "b": {"x"}})
    assert any("duplicate" in p for p in validate(g))


def test_floats_refused():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)
    assert as_rational(" 6/4 ") == Fraction(3, 2)


def test_query_checks():
    g = path2()
    check_query(g, {})
    with pytest.raises(EmptyQuery):
        check_query(g, {}, strict=True)
    with pytest.raises(InvalidQuery):
        check_query(g, {"3": "0"})
    with pytest.raises(InvalidQuery):
        check_query(g, {"1": "7"})


def test_strategy_checks():
    g = path2()
    with pytest.raises(InvalidStrategy):
        is_nash(g, {"1": "0"})
    with pytest.raises(InvalidStrategy):
        is_nash(g, {"1": "0", "2": "5"})
    with pytest.raises(InvalidStrategy):
        is_nash(g, {"1": "0", "2": "0", "3": "0"})


def test_z_set():
    g = Game(nodes=["v"], edges=[], colours={"v": {"a", "b", "c"}},
             bonuses={("v", "a"): 3, ("v", "b"): 1})
    assert z_set(g, "v", 0) == {"a"}
    assert z_set(g, "v", 2) == {"a", "b"}
    assert z_set(g, "v", 3) == {"a", "b", "c"}


def test_is_consistent():
    assert is_consistent({"a": "x", "b": "y"}, {"a": "x"})
    assert not is_consistent({"a": "x"}, {"a": "y"})
    assert is_consistent({"a": "x"}, {})


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 6), st.integers(1, 4)), min_size=1, max_size=4))
def test_scaling_preserves_payoff_order(ws):
    # scaled integer comparisons agree with exact rational payoffs
    nodes = [f"p{k}" for k in range(len(ws))] + ["t"]
    edges = [(f"p{k}", "t", Fraction(a, b)) for k, (a, b) in enumerate(ws)]
    colours = {n: {"a"} if k % 2 else {"b"} for k, n in enumerate(nodes[:-1])}
    colours["t"] = {"a", "b"}
    g = Game(nodes=nodes, edges=edges, colours=colours)
    base = {n: next(iter(colours[n])) for n in nodes[:-1]}
    pa = payoff(g, {**base, "t": "a"}, "t")
    pb = payoff(g, {**base, "t": "b"}, "t")
    assert is_nash(g, {**base, "t": "a"}) == (pa >= pb)
    assert is_nash(g, {**base, "t": "b"}) == (pb >= pa)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 4))
def test_adding_an_edge_adds_its_weight_when_colours_match(seed, w):
    import random

    from coordne.instances import GenSpec, gen_random

    rng = random.Random(seed)
    g = gen_random(GenSpec(n=4, m=2, seed=seed, weights=(1, 3), bonuses=(-1, 1), density=0.3))
    missing = [(u, v) for u in g.nodes for v in g.nodes
               if u != v and all((u, v) != (a, b) for a, b, _ in g.edges)]
    if not missing:
        return
    u, v = rng.choice(missing)
    h = Game(nodes=g.nodes, edges=list(g.edges) + [(u, v, w)], colours=g.colours, bonuses=g.bonuses)
    s = {n: rng.choice(sorted(g.colours[n])) for n in g.nodes}
    gain = w if s[u] == s[v] else 0
    assert payoff(h, s, v) == payoff(g, s, v) + gain
    for n in g.nodes:
        if n != v:
            assert payoff(h, s, n) == payoff(g, s, n)
