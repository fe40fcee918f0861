import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from coordne.colour_complete import (
    ane_colour_complete,
    blocks,
    colours_form_cliques,
    ene_colour_complete,
    extend_to_total_order,
    induced_order,
    is_acyclic,
    is_colour_complete,
    sp_profile,
    sweep_equilibria,
)
from coordne.errors import ColourCapExceeded, NotUnweighted, PreconditionViolated
from coordne.game import Game, is_consistent, is_nash
from coordne.instances import GenSpec, example_clique, fig5, gen_random, path2
from coordne.oracle import enumerate_ne, oracle_exists, oracle_forall


def key(s):
    return tuple(sorted(s.items()))


def test_colour_completeness():
    assert is_colour_complete(fig5())
    assert is_colour_complete(example_clique(3))
    assert not is_colour_complete(path2())


def test_sp_profile_on_clique():
    g = example_clique(3)
    s = sp_profile(g, ["3", "2", "1"])
    assert s == {"p1_2": "2", "p1_3": "3", "p2_3": "3"}
    assert is_nash(g, s)
    g4 = example_clique(4)
    s = sp_profile(g4, ["4", "3", "2", "1"])
    assert sum(1 for c in s.values() if c == "4") == 3


def test_sp_profile_singletons():
    g = Game(nodes=["u", "v"], edges=[], colours={"u": {"a"}, "v": {"b"}})
    assert sp_profile(g, ["a", "b"]) == {"u": "a", "v": "b"}


def test_induced_order():
    g = example_clique(3)
    s = sp_profile(g, ["3", "2", "1"])
    assert induced_order(s, g) == {("2", "1"), ("3", "1"), ("3", "2")}
    assert is_acyclic(induced_order(s, g))
    mono = Game(nodes=["u", "v"], edges=[], colours={"u": {"a"}, "v": {"a"}})
    assert induced_order({"u": "a", "v": "a"}, mono) == frozenset()
    # not an equilibrium: 1 > 2 (p1_2) and 2 > 3 (p2_3) and 3 > 1 (p1_3)
    bad = {"p1_2": "1", "p1_3": "3", "p2_3": "2"}
    assert not is_acyclic(induced_order(bad, g))


def test_extend_to_total_order():
    assert extend_to_total_order({("b", "a")}, ["a", "b", "c"]) == ["b", "a", "c"]
    assert extend_to_total_order({("a", "b"), ("b", "a")}) is None


def test_examples():
    g = example_clique(3)
    v = ene_colour_complete(g, {"p1_2": "2"})
    assert v.yes and v.witness["p1_2"] == "2" and is_nash(g, v.witness)
    for n in g.nodes:
        for c in g.colours[n]:
            assert not ane_colour_complete(g, {n: c}).yes
    single = Game(nodes=["v"], edges=[], colours={"v": {"a", "b"}})
    assert ene_colour_complete(single, {"v": "a"}).yes
    assert not ane_colour_complete(single, {"v": "a"}).yes


@pytest.mark.parametrize("m", [3, 4])
def test_clique_count(m):
    g = example_clique(m)
    assert len(enumerate_ne(g)) == math.factorial(m)
    assert len(sweep_equilibria(g)) == math.factorial(m)


def test_preconditions():
    with pytest.raises(PreconditionViolated):
        ene_colour_complete(path2(), {"1": "0"})
    heavy = Game(nodes=["u", "v"], edges=[("u", "v", 2), ("v", "u", 1)],
                 colours={"u": {"a"}, "v": {"a"}})
    with pytest.raises(NotUnweighted):
        ene_colour_complete(heavy, {"u": "a"})
    with pytest.raises(ColourCapExceeded):
        ene_colour_complete(example_clique(4), {"p1_2": "1"}, colour_cap=3)
    bonus = Game(nodes=["v"], edges=[], colours={"v": {"a", "b"}}, bonuses={("v", "a"): 1})
    with pytest.raises(PreconditionViolated):
        ene_colour_complete(bonus, {"v": "a"})


def test_split_colour_is_refused():
    # a-owners {u, v} and {x, y} are separate cliques joined through w
    nodes = ["u", "v", "w", "x", "y"]
    pairs = [("u", "v"), ("x", "y")]
    edges = [(a, b, 1) for p in pairs for a, b in (p, p[::-1])]
    edges += [("v", "w", 1), ("w", "x", 1)]
    cols = {"u": {"a", "d"}, "v": {"a", "d"}, "w": {"e"}, "x": {"a", "d"}, "y": {"a", "d"}}
    g = Game(nodes=nodes, edges=edges, colours=cols)
    assert not colours_form_cliques(g)
    with pytest.raises(PreconditionViolated):
        ene_colour_complete(g, {"u": "a"})


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_sweep_equals_enumeration(seed):
    rng = random.Random(seed)
    g = gen_random(GenSpec(kind="colour_complete", n=rng.randint(1, 7), m=rng.randint(2, 4),
                           density=0.4, seed=seed))
    eqs = enumerate_ne(g)
    assert sorted(map(key, sweep_equilibria(g))) == sorted(map(key, eqs))
    # separate components may rank colours differently; each one alone is acyclic
    for s in eqs:
        for block in blocks(g):
            names = [g.nodes[k] for k in block]
            sub = Game(nodes=names, edges=[], colours={n: g.colours[n] for n in names})
            assert is_acyclic(induced_order({n: s[n] for n in names}, sub))
    node = rng.choice(g.nodes)
    q = {node: rng.choice(sorted(g.colours[node]))}
    v = ene_colour_complete(g, q)
    assert v.answer == oracle_exists(g, q).answer
    if v.yes:
        assert is_nash(g, v.witness) and is_consistent(v.witness, q)
    v = ane_colour_complete(g, q)
    assert v.answer == oracle_forall(g, q).answer
    if not v.yes:
        assert is_nash(g, v.counterexample) and not is_consistent(v.counterexample, q)
