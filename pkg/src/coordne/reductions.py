"""Hardness constructions as instance generators, plus weight and bonus simulation.

Colours used by the formula games are ``top``, ``bot`` and ``star``.
Auxiliary nodes are named ``__aux/<n>``; the prefix keeps them apart from
the named nodes of a construction.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import FormulaError, NonIntegerWeight
from .game import Game

log = logging.getLogger(__name__)

TOP, BOT, STAR = "top", "bot", "star"
BINARY = frozenset((TOP, BOT))
AUX_PREFIX = "__aux/"


# -- formulas --------------------------------------------------------------


@dataclass(frozen=True)
class _Formula:
    num_vars: int
    clauses: tuple

    def __post_init__(self):
        if not isinstance(self.num_vars, int) or self.num_vars < 1:
            raise FormulaError("a formula needs at least one variable")
        clauses = tuple(tuple(c) for c in self.clauses)
        for c in clauses:
            if len(c) != 3:
                raise FormulaError(f"clause {c} does not have exactly three literals")
            for lit in c:
                if not isinstance(lit, int) or lit == 0 or abs(lit) > self.num_vars:
                    raise FormulaError(f"literal {lit!r} is out of range 1..{self.num_vars}")
        if not clauses:
            raise FormulaError("a formula needs at least one clause")
        object.__setattr__(self, "clauses", clauses)

    @staticmethod
    def _lit(lit: int, nu: tuple) -> bool:
        v = nu[abs(lit) - 1]
        return v if lit > 0 else not v

    def assignments(self) -> Iterable[tuple]:
        return itertools.product((False, True), repeat=self.num_vars)


class CnfFormula(_Formula):
    """Conjunction of three-literal disjunctions; literals are signed variable numbers."""

    def evaluate(self, nu: tuple) -> bool:
        return all(any(self._lit(x, nu) for x in c) for c in self.clauses)


class DnfFormula(_Formula):
    """Disjunction of three-literal conjunctions."""

    def evaluate(self, nu: tuple) -> bool:
        return any(all(self._lit(x, nu) for x in c) for c in self.clauses)


def satisfiable(phi: _Formula) -> bool:
    return any(phi.evaluate(nu) for nu in phi.assignments())


def is_tautology(phi: _Formula) -> bool:
    return all(phi.evaluate(nu) for nu in phi.assignments())


def parse_dimacs(text: str, dnf: bool = False) -> _Formula:
    """Read DIMACS ``p cnf`` text; with ``dnf`` the clause lines are read as terms."""
    header = None
    lits, clauses = [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] not in ("cnf", "dnf"):
                raise FormulaError(f"bad problem line: {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise FormulaError(f"bad problem line: {line!r}") from None
            continue
        if header is None:
            raise FormulaError("clause before the problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormulaError(f"bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(lits))
                lits = []
            else:
                lits.append(lit)
    if lits:
        clauses.append(tuple(lits))
    if header is None:
        raise FormulaError("missing problem line")
    if len(clauses) != header[1]:
        raise FormulaError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return (DnfFormula if dnf else CnfFormula)(header[0], tuple(clauses))


# -- building games --------------------------------------------------------


class GameBuilder:
    """Accumulates nodes and edges; emits them in topological order (insertion order on ties)."""

    def __init__(self, reserved: Iterable[str] = ()):
        self.colours = {}
        self.edges = {}
        self.order = []
        self._aux = 0
        self._reserved = set(reserved)

    def add_node(self, name: str, colours: Iterable[str]) -> str:
        if name in self.colours:
            raise ValueError(f"node {name!r} already exists")
        self.colours[name] = frozenset(colours)
        self.order.append(name)
        return name

    def aux(self, colours: Iterable[str]) -> str:
        while True:
            name = f"{AUX_PREFIX}{self._aux}"
            self._aux += 1
            if name not in self.colours and name not in self._reserved:
                return self.add_node(name, colours)

    def add_edge(self, u: str, v: str, w=1) -> None:
        if (u, v) in self.edges:
            raise ValueError(f"edge {u}->{v} already exists")
        self.edges[(u, v)] = w

    def build(self, bonuses: Optional[dict] = None) -> Game:
        rank = {n: k for k, n in enumerate(self.order)}
        indeg = {n: 0 for n in self.order}
        out = {n: [] for n in self.order}
        for u, v in self.edges:
            indeg[v] += 1
            out[u].append(v)
        heap = [rank[n] for n in self.order if indeg[n] == 0]
        heapq.heapify(heap)
        nodes = []
        while heap:
            n = self.order[heapq.heappop(heap)]
            nodes.append(n)
            for v in out[n]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    heapq.heappush(heap, rank[v])
        if len(nodes) != len(self.order):
            # cyclic input: keep insertion order
            nodes = list(self.order)
        return Game(
            nodes=nodes,
            edges=[(u, v, w) for (u, v), w in self.edges.items()],
            colours=self.colours,
            bonuses=bonuses or {},
        )


def _feed(b: GameBuilder, colours: Iterable[str], target: str, weight: int, unweighted: bool) -> None:
    """Fixed-colour pressure of ``weight`` on ``target``."""
    if weight <= 0:
        return
    if unweighted:
        for _ in range(weight):
            b.add_edge(b.aux(colours), target)
    else:
        b.add_edge(b.aux(colours), target, weight)


def gadget_d(b: GameBuilder, xs: list, x: str, y: str, unweighted: bool = True) -> None:
    """``Y`` takes colour ``x`` exactly when some input does.

    Inputs feed ``Y`` directly; a fixed ``x`` source adds ``k - 1`` on top.
    An input listed twice gets a copy node, since parallel edges are not
    allowed.
    """
    if y not in b.colours or len(b.colours[y]) != 2 or x not in b.colours[y]:
        raise ValueError(f"gadget output {y!r} must have two colours including {x!r}")
    used = set()
    for node in xs:
        if node not in b.colours or not b.colours[node] <= b.colours[y]:
            raise ValueError(f"gadget input {node!r} must use the colours of {y!r}")
        src = node
        if node in used:
            src = b.aux(b.colours[node])
            b.add_edge(node, src)
        used.add(node)
        b.add_edge(src, y)
    _feed(b, (x,), y, len(xs) - 1, unweighted)


@dataclass
class ReductionOutput:
    game: Game
    query: dict
    name_map: dict = field(default_factory=dict)


def _literal_layer(b: GameBuilder, phi: _Formula, unweighted: bool) -> dict:
    names = {}
    for i in range(1, phi.num_vars + 1):
        pos = b.add_node(f"X_{i}", BINARY)
        neg = b.add_node(f"notX_{i}", BINARY)
        lo = b.add_node(f"L_{i}", BINARY)
        hi = b.add_node(f"Lbar_{i}", BINARY)
        gadget_d(b, [pos, neg], TOP, lo, unweighted)
        gadget_d(b, [pos, neg], BOT, hi, unweighted)
        names.update({f"x{i}": pos, f"-x{i}": neg, f"L{i}": lo, f"Lbar{i}": hi})
    return names


def _lit_node(lit: int) -> str:
    return f"X_{lit}" if lit > 0 else f"notX_{-lit}"


def _sat_core(phi: CnfFormula, unweighted: bool):
    if not isinstance(phi, CnfFormula):
        raise FormulaError("expected a CNF formula")
    b = GameBuilder()
    names = _literal_layer(b, phi, unweighted)
    clause_nodes = []
    for j, clause in enumerate(phi.clauses, start=1):
        c = b.add_node(f"C_{j}", BINARY)
        gadget_d(b, [_lit_node(x) for x in clause], TOP, c, unweighted)
        clause_nodes.append(c)
        names[f"C{j}"] = c
    n = phi.num_vars
    t = b.add_node("T", BINARY)
    f = b.add_node("F", BINARY)
    gadget_d(b, [f"L_{i}" for i in range(1, n + 1)] + clause_nodes, BOT, t, unweighted)
    gadget_d(b, [f"Lbar_{i}" for i in range(1, n + 1)], TOP, f, unweighted)
    names.update(T=t, F=f)
    return b, names


def reduce_sat_ene(phi: CnfFormula, unweighted: bool = True) -> ReductionOutput:
    """Game and query (``T = top``, ``F = bot``) with an equilibrium exactly when ``phi`` is satisfiable."""
    b, names = _sat_core(phi, unweighted)
    return ReductionOutput(b.build(), {"T": TOP, "F": BOT}, names)


def reduce_sat_singleton(phi: CnfFormula, unweighted: bool = True) -> ReductionOutput:
    """As :func:`reduce_sat_ene`, with both query nodes folded into the single query ``Z = star``."""
    b, names = _sat_core(phi, unweighted)
    x = b.add_node("X", (BOT, STAR))
    y = b.add_node("Y", (TOP, STAR))
    z = b.add_node("Z", (TOP, STAR))
    b.add_edge(b.aux((BOT,)), x)
    b.add_edge("T", x)
    shared = b.aux((STAR,))
    b.add_edge(shared, x)
    b.add_edge(shared, y)
    b.add_edge("F", y)
    b.add_edge(b.aux((TOP,)), y)
    b.add_edge(x, z)
    b.add_edge(y, z)
    _feed(b, (TOP,), z, 2, unweighted)
    names.update(X=x, Y=y, Z=z)
    return ReductionOutput(b.build(), {"Z": STAR}, names)


def reduce_dnf_ane(phi: DnfFormula, unweighted: bool = True) -> ReductionOutput:
    """Game where every equilibrium has ``Z = star`` exactly when ``phi`` is a tautology."""
    if not isinstance(phi, DnfFormula):
        raise FormulaError("expected a DNF formula")
    b = GameBuilder()
    names = _literal_layer(b, phi, unweighted)
    terms = []
    for j, term in enumerate(phi.clauses, start=1):
        c = b.add_node(f"C_{j}", BINARY)
        gadget_d(b, [_lit_node(x) for x in term], BOT, c, unweighted)
        terms.append(c)
        names[f"C{j}"] = c
    n = phi.num_vars
    t = b.add_node("T", BINARY)
    f = b.add_node("F", BINARY)
    p = b.add_node("Phi", BINARY)
    gadget_d(b, [f"L_{i}" for i in range(1, n + 1)], BOT, t, unweighted)
    gadget_d(b, [f"Lbar_{i}" for i in range(1, n + 1)], TOP, f, unweighted)
    gadget_d(b, terms, TOP, p, unweighted)

    u = b.add_node("U", (TOP, STAR))
    w = b.add_node("W", (BOT, STAR))
    x = b.add_node("X", (BOT, STAR))
    y = b.add_node("Y", (BOT, STAR))
    z = b.add_node("Z", (BOT, STAR))
    b.add_edge(b.aux((STAR,)), u)
    b.add_edge(t, u)
    if unweighted:
        for _ in range(2):
            copy = b.aux((TOP, STAR))
            b.add_edge(u, copy)
            b.add_edge(copy, w)
    else:
        b.add_edge(u, w, 2)
    b.add_edge(b.aux((BOT,)), w)
    shared = b.aux((STAR,))
    b.add_edge(f, x)
    b.add_edge(shared, x)
    b.add_edge(shared, y)
    b.add_edge(p, y)
    for src in (w, x, y):
        b.add_edge(src, z)
    _feed(b, (STAR,), z, 2, unweighted)
    names.update(T=t, F=f, Phi=p, U=u, W=w, X=x, Y=y, Z=z)
    return ReductionOutput(b.build(), {"Z": STAR}, names)


# -- simulations -----------------------------------------------------------


def _fresh_names(game: Game):
    taken = set(game.nodes)
    k = 0
    while True:
        name = f"{AUX_PREFIX}{k}"
        k += 1
        if name not in taken:
            yield name


def simulate_weights(game: Game) -> Game:
    """Replace each weight-``w`` edge ``u -> v`` by ``w`` copies of ``u`` relaying to ``v``."""
    game.require_valid()
    names = _fresh_names(game)
    nodes = list(game.nodes)
    colours = dict(game.colours)
    edges = []
    for u, v, w in game.edges:
        if w.denominator != 1:
            raise NonIntegerWeight(f"edge {u}->{v} has weight {w}")
        if w == 0:
            log.warning("dropping zero-weight edge %s->%s", u, v)
            continue
        for _ in range(int(w)):
            relay = next(names)
            nodes.append(relay)
            colours[relay] = game.colours[u]
            edges.append((u, relay, 1))
            edges.append((relay, v, 1))
    return Game(nodes=nodes, edges=edges, colours=colours, bonuses=dict(game.bonuses))


def simulate_bonuses(game: Game) -> Game:
    """Shift each node's bonuses to a minimum of zero, then realise bonus ``b`` for ``c`` as ``b`` fixed-``c`` sources."""
    game.require_valid()
    names = _fresh_names(game)
    nodes = list(game.nodes)
    colours = dict(game.colours)
    edges = [(u, v, w) for u, v, w in game.edges]
    for i in game.nodes:
        opts = sorted(game.colours[i])
        low = min(game.bonus(i, c) for c in opts)
        for c in opts:
            for _ in range(game.bonus(i, c) - low):
                src = next(names)
                nodes.append(src)
                colours[src] = frozenset((c,))
                edges.append((src, i, 1))
    return Game(nodes=nodes, edges=edges, colours=colours)


def project(s: dict, game: Game) -> dict:
    """Restrict a profile of a simulated game to the original nodes."""
    return {n: s[n] for n in game.nodes}


__all__ = [
    "TOP", "BOT", "STAR", "AUX_PREFIX", "CnfFormula", "DnfFormula", "parse_dimacs",
    "satisfiable", "is_tautology", "GameBuilder", "gadget_d", "ReductionOutput",
    "reduce_sat_ene", "reduce_sat_singleton", "reduce_dnf_ane", "simulate_weights",
    "simulate_bonuses", "project",
]
