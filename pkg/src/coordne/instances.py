"""Named fixtures, seeded random generators and the structural classifier."""

from __future__ import annotations

import random
import string
from dataclasses import asdict, dataclass
from fractions import Fraction

from .colour_complete import colours_form_cliques, is_colour_complete
from .game import Game
from .graph import cycle_order, max_out_degree, topological_order


# -- fixtures --------------------------------------------------------------


def fig1() -> Game:
    """Nine-node unweighted game with no pure equilibrium."""
    nodes = [str(k) for k in range(1, 10)]
    arcs = [(1, 2), (2, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 3), (3, 6), (6, 1),
            (7, 1), (8, 2), (9, 3)]
    sets = ["ab", "ac", "bc", "ab", "ac", "bc", "a", "c", "b"]
    return Game(
        nodes=nodes,
        edges=[(str(u), str(v), 1) for u, v in arcs],
        colours={n: set(cs) for n, cs in zip(nodes, sets)},
    )


# the underlined profile of the nine-node fixture
FIG1_STRATEGY = {"1": "b", "2": "c", "3": "c", "4": "b", "5": "c", "6": "c",
                 "7": "a", "8": "c", "9": "b"}


def example_clique(m: int) -> Game:
    """Complete digraph with one player per colour pair ``x < y``, owning exactly ``{x, y}``.

    Every total order on the ``m`` colours induces a distinct equilibrium.
    """
    if m < 2:
        raise ValueError("need at least two colours")
    players = {}
    for x in range(1, m + 1):
        for y in range(x + 1, m + 1):
            players[f"p{x}_{y}"] = {str(x), str(y)}
    nodes = list(players)
    edges = [(u, v, 1) for u in nodes for v in nodes if u != v]
    return Game(nodes=nodes, edges=edges, colours=players)


def cyc3() -> Game:
    nodes = ["0", "1", "2"]
    return Game(
        nodes=nodes,
        edges=[("0", "1", 1), ("1", "2", 1), ("2", "0", 1)],
        colours={n: {"a", "b"} for n in nodes},
    )


def path2() -> Game:
    return Game(nodes=["1", "2"], edges=[("1", "2", 1)], colours={"1": {"0", "1"}, "2": {"0", "1"}})


def fig5() -> Game:
    """Colour-complete three-node path that is not a clique."""
    return Game(
        nodes=["1", "2", "3"],
        edges=[("1", "2", 1), ("2", "1", 1), ("2", "3", 1), ("3", "2", 1)],
        colours={"1": {"a"}, "2": {"a", "b"}, "3": {"b"}},
    )


FIXTURES = {
    "FIG1": fig1,
    "CLIQ3": lambda: example_clique(3),
    "CYC3": cyc3,
    "PATH2": path2,
    "FIG5": fig5,
}


def gen_fixture(name: str) -> Game:
    try:
        return FIXTURES[name.upper()]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None


# -- classification --------------------------------------------------------


@dataclass(frozen=True)
class ClassProfile:
    two_colour: bool
    simple_cycle: bool
    dag: bool
    out_degree_le1: bool
    unweighted: bool
    bonus_free: bool
    colour_complete: bool
    colour_cliques: bool
    nodes: int
    edges: int
    colours: int

    def as_dict(self) -> dict:
        return asdict(self)


def classify(game: Game) -> ClassProfile:
    game.require_valid()
    dag = topological_order(game) is not None
    unweighted = game.unweighted
    return ClassProfile(
        two_colour=len(game.palette) <= 2,
        simple_cycle=cycle_order(game) is not None,
        dag=dag,
        out_degree_le1=max_out_degree(game) <= 1,
        unweighted=unweighted,
        bonus_free=game.bonus_free,
        # only meaningful for the unweighted solver route
        colour_complete=unweighted and is_colour_complete(game),
        # stronger form the colour-complete solver needs
        colour_cliques=unweighted and colours_form_cliques(game),
        nodes=len(game.nodes),
        edges=len(game.edges),
        colours=len(game.palette),
    )


# -- random generation -----------------------------------------------------

KINDS = ("general", "two_colour", "cycle", "dag_out1", "colour_complete")


@dataclass(frozen=True)
class GenSpec:
    """Parameters for :func:`gen_random`.

    ``weights`` and ``bonuses`` are inclusive integer ranges.  With
    ``rational`` set, weights are drawn as fractions with denominators
    up to 4 inside the weight range.  ``density`` is the edge probability
    (``general``/``two_colour``/``colour_complete``) or the probability that a
    node gets a successor (``dag_out1``).
    """

    kind: str = "general"
    n: int = 6
    m: int = 3
    weights: tuple = (1, 1)
    bonuses: tuple = (0, 0)
    density: float = 0.3
    seed: int = 0
    rational: bool = False
    full_colour_sets: float = 0.5


def palette_names(m: int) -> list:
    if m <= 26:
        return list(string.ascii_lowercase[:m])
    return [f"c{k:03d}" for k in range(m)]


def _colour_sets(rng, nodes, palette, full):
    out = {}
    for v in nodes:
        if rng.random() < full:
            out[v] = set(palette)
            continue
        cs = {c for c in palette if rng.random() < 0.6}
        out[v] = cs or {rng.choice(palette)}
    return out


def _weight(rng, spec):
    lo, hi = spec.weights
    if not spec.rational:
        return rng.randint(lo, hi)
    den = rng.randint(1, 4)
    return Fraction(rng.randint(lo * den, hi * den), den)


def _bonuses(rng, colours, spec):
    lo, hi = spec.bonuses
    if lo == hi == 0:
        return {}
    return {(v, c): rng.randint(lo, hi) for v, cs in colours.items() for c in sorted(cs)}


def gen_random(spec: GenSpec) -> Game:
    """Deterministic (per seed) random game of the requested class."""
    if spec.kind not in KINDS:
        raise ValueError(f"unknown class {spec.kind!r}; known: {', '.join(KINDS)}")
    if spec.n < 1 or spec.m < 1:
        raise ValueError("need at least one node and one colour")
    if spec.kind == "cycle" and spec.n < 2:
        raise ValueError("a simple cycle needs at least two nodes")
    rng = random.Random(spec.seed)
    nodes = [f"v{k}" for k in range(spec.n)]
    m = 2 if spec.kind == "two_colour" else spec.m
    palette = palette_names(m)
    colours = _colour_sets(rng, nodes, palette, spec.full_colour_sets)
    edges = []

    if spec.kind in ("general", "two_colour"):
        for u in nodes:
            for v in nodes:
                if u != v and rng.random() < spec.density:
                    edges.append((u, v, _weight(rng, spec)))
        bonuses = _bonuses(rng, colours, spec)
    elif spec.kind == "cycle":
        ring = nodes[:]
        rng.shuffle(ring)
        for k, u in enumerate(ring):
            edges.append((u, ring[(k + 1) % len(ring)], _weight(rng, spec)))
        bonuses = _bonuses(rng, colours, spec)
    elif spec.kind == "dag_out1":
        topo = nodes[:]
        rng.shuffle(topo)
        for k, u in enumerate(topo[:-1]):
            if rng.random() < spec.density:
                edges.append((u, rng.choice(topo[k + 1:]), 1))
        bonuses = _bonuses(rng, colours, spec)
    else:
        edges, bonuses = _colour_complete_edges(rng, nodes, colours, spec), {}

    game = Game(nodes=nodes, edges=edges, colours=colours, bonuses=bonuses)
    _check_membership(game, spec.kind)
    return game


def _colour_complete_edges(rng, nodes, colours, spec):
    # groups are cliques; two groups get linked only while their connected
    # pieces share no colour, so every colour stays inside one clique per piece
    groups = {}
    for v in nodes:
        groups.setdefault(rng.randint(0, max(1, len(nodes) // 3)), []).append(v)
    keys = sorted(groups)
    piece = {g: g for g in keys}
    palette = {g: set().union(*(colours[v] for v in groups[g])) for g in keys}

    def find(g):
        while piece[g] != g:
            g = piece[g]
        return g

    edges = [(u, v, 1) for g in keys for u in groups[g] for v in groups[g] if u != v]
    for a in keys:
        for b in keys:
            if a >= b:
                continue
            ra, rb = find(a), find(b)
            if ra == rb or palette[ra] & palette[rb]:
                continue
            linked = False
            for u in groups[a]:
                for v in groups[b]:
                    if rng.random() < spec.density:
                        edges.append((u, v, 1) if rng.random() < 0.5 else (v, u, 1))
                        linked = True
            if linked:
                piece[rb] = ra
                palette[ra] |= palette[rb]
    return edges


def _check_membership(game: Game, kind: str) -> None:
    p = classify(game)
    ok = {
        "general": True,
        "two_colour": p.two_colour,
        "cycle": p.simple_cycle,
        "dag_out1": p.dag and p.out_degree_le1 and p.unweighted,
        "colour_complete": p.colour_complete and p.colour_cliques and p.bonus_free,
    }[kind]
    if not ok:
        raise AssertionError(f"generator produced a game outside class {kind}")
