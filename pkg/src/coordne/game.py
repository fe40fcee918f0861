"""Coordination games on weighted directed graphs.

A game is a directed graph without self loops whose nodes are players.
Every node picks one colour from its own colour set; its payoff is the
total weight of incoming edges from predecessors that picked the same
colour, plus an integer bonus for the colour it picked.

All arithmetic is exact.  Weights are :class:`fractions.Fraction`; the
solvers work on integer-scaled copies (every weight and bonus multiplied
by the lcm of the weight denominators), which preserves every payoff
comparison.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .errors import EmptyQuery, InternalSoundness, InvalidGame, InvalidQuery, InvalidStrategy

Strategy = Mapping[str, str]
Query = Mapping[str, str]


def as_rational(value) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: they would smuggle rounding into exact comparisons.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not weights")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return _int_fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected int, Fraction or 'p/q' string, got {value!r}")


@functools.lru_cache(maxsize=256)
def _int_fraction(value: int) -> Fraction:
    # Fractions are immutable, so small integer weights can share one object
    return Fraction(value)


class Answer(str, enum.Enum):
    YES = "YES"
    NO = "NO"


@dataclass(frozen=True)
class Verdict:
    """Decision for an existential or universal query.

    ``witness`` is an equilibrium consistent with the query (existential
    YES); ``counterexample`` is an equilibrium that is not (universal NO).
    """

    answer: Answer
    witness: Optional[dict] = None
    counterexample: Optional[dict] = None
    solver: str = ""
    notes: tuple = ()

    @property
    def yes(self) -> bool:
        return self.answer is Answer.YES

    @classmethod
    def of(cls, flag: bool, **kwargs) -> "Verdict":
        return cls(Answer.YES if flag else Answer.NO, **kwargs)


@dataclass(frozen=True)
class Game:
    """A coordination game; immutable once built.

    Construction is lenient so that :func:`validate` can report every
    problem at once; solvers call :meth:`require_valid` first.
    """

    nodes: tuple
    edges: tuple
    colours: Mapping[str, frozenset]
    bonuses: Mapping[tuple, int] = field(default_factory=dict)

    def __post_init__(self):
        edges = []
        one = _int_fraction(1)
        for e in self.edges:
            if len(e) == 2:
                u, v = e
                w = one
            else:
                u, v, w = e
                w = _int_fraction(w) if type(w) is int else as_rational(w)
            edges.append((u, v, w))
        bonuses = {}
        for key, b in dict(self.bonuses).items():
            if isinstance(b, Fraction) and b.denominator == 1:
                b = int(b)
            if b != 0:
                bonuses[tuple(key)] = b
        # many nodes usually share a colour set; share the frozensets too
        shared = {}
        colours = {}
        for n, cs in dict(self.colours).items():
            fs = frozenset(cs)
            colours[n] = shared.setdefault(fs, fs)
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "colours", colours)
        object.__setattr__(self, "bonuses", bonuses)

    # -- validity ---------------------------------------------------------

    @cached_property
    def violations(self) -> list:
        return validate(self)

    def require_valid(self) -> "Game":
        if self.violations:
            raise InvalidGame(self.violations)
        return self

    # -- derived structure ------------------------------------------------

    @cached_property
    def index(self) -> dict:
        return {name: k for k, name in enumerate(self.nodes)}

    @cached_property
    def palette(self) -> tuple:
        """Every colour used by some node, in canonical (lexicographic) order."""
        used = set()
        for cs in self.colours.values():
            used |= cs
        return tuple(sorted(used))

    @cached_property
    def options(self) -> list:
        """Per node index: its colours in canonical order."""
        seen = {}
        out = []
        for cs in self.colour_sets:
            t = seen.get(cs)
            if t is None:
                t = seen[cs] = tuple(sorted(cs))
            out.append(t)
        return out

    @cached_property
    def colour_sets(self) -> list:
        """Per node index: its colour set."""
        colours = self.colours
        return [colours[n] for n in self.nodes]

    @cached_property
    def scale(self) -> int:
        lcm = 1
        for _, _, w in self.edges:
            lcm = lcm * w.denominator // math.gcd(lcm, w.denominator)
        return lcm

    @cached_property
    def _adjacency(self):
        idx = self.index
        scale = self.scale
        pred = [[] for _ in self.nodes]
        succ = [[] for _ in self.nodes]
        weights = set()
        for u, v, w in self.edges:
            ws = w.numerator if scale == 1 else w.numerator * (scale // w.denominator)
            weights.add(ws)
            ku, kv = idx.get(u), idx.get(v)
            if ku is None or kv is None:
                # invalid game; validate() reports it
                continue
            pred[kv].append((ku, ws))
            succ[ku].append((kv, ws))
        return pred, succ, weights

    @property
    def pred(self) -> list:
        """Per node index: ``[(predecessor index, scaled weight), ...]``."""
        return self._adjacency[0]

    @property
    def succ(self) -> list:
        return self._adjacency[1]

    @property
    def edge_weights(self) -> set:
        """Distinct scaled edge weights."""
        return self._adjacency[2]

    @cached_property
    def bonus_scaled(self) -> list:
        """Per node index: ``{colour: bonus * scale}`` for nonzero bonuses."""
        out = [{} for _ in self.nodes]
        idx = self.index
        for (n, c), b in self.bonuses.items():
            out[idx[n]][c] = b * self.scale
        return out

    @cached_property
    def unweighted(self) -> bool:
        return self.scale == 1 and self.edge_weights <= {1}

    @cached_property
    def bonus_free(self) -> bool:
        return not self.bonuses

    @cached_property
    def profile_count(self) -> int:
        return math.prod(len(self.colours[n]) for n in self.nodes)

    def bonus(self, node: str, colour: str) -> int:
        return self.bonuses.get((node, colour), 0)

    def predecessors(self, node: str) -> list:
        return [(self.nodes[j], Fraction(w, self.scale)) for j, w in self.pred[self.index[node]]]

    # -- conversions ------------------------------------------------------

    def to_list(self, s: Strategy) -> list:
        return [s[n] for n in self.nodes]

    def to_dict(self, cols: Iterable) -> dict:
        return dict(zip(self.nodes, cols))


def validate(game: Game) -> list:
    """Return every violated well-formedness rule; empty when the game is valid."""
    problems = []
    nodes = game.nodes
    if not all(isinstance(n, str) and n for n in nodes):
        problems += [f"node {n!r}: names must be nonempty strings"
                     for n in nodes if not isinstance(n, str) or not n]
    seen = set(nodes)
    if len(seen) < len(nodes):
        once = set()
        for n in nodes:
            if n in once:
                problems.append(f"node {n!r}: declared twice")
            once.add(n)
    colours = game.colours
    good = set()
    for n in nodes:
        cs = colours.get(n)
        if cs in good:
            continue
        if not cs:
            problems.append(f"node {n!r}: empty or missing colour set")
            continue
        bad = [c for c in cs if not isinstance(c, str) or not c]
        problems += [f"node {n!r}: colour {c!r} is not a nonempty string" for c in bad]
        if not bad:
            good.add(cs)
    for n in colours:
        if n not in seen:
            problems.append(f"colours: unknown node {n!r}")
    for u, v, w in game.edges:
        if u not in seen or v not in seen or u == v:
            label = f"edge {u}->{v}"
            if u not in seen or v not in seen:
                problems.append(f"{label}: endpoint is not a declared node")
            if u == v:
                problems.append(f"{label}: self-loop")
    if min(game.edge_weights, default=0) < 0:
        problems += [f"edge {u}->{v}: negative weight {w}" for u, v, w in game.edges if w < 0]
    if len(seen) == len(game.nodes):
        # parallel edges show up as repeated successors
        for k, out in enumerate(game.succ):
            if len(out) > 1 and len({j for j, _ in out}) < len(out):
                dup = set()
                for j, _ in out:
                    if j in dup:
                        problems.append(f"edge {game.nodes[k]}->{game.nodes[j]}: duplicate edge")
                    dup.add(j)
    for (n, c), b in game.bonuses.items():
        if n not in seen:
            problems.append(f"bonus ({n}, {c}): unknown node")
        if isinstance(b, bool) or not isinstance(b, int):
            problems.append(f"bonus ({n}, {c}): {b!r} is not an integer")
    return problems


def check_strategy(game: Game, s: Strategy) -> None:
    for n in game.nodes:
        if n not in s:
            raise InvalidStrategy(f"strategy does not assign node {n!r}")
        if s[n] not in game.colours[n]:
            raise InvalidStrategy(f"colour {s[n]!r} is not available to node {n!r}")
    extra = set(s) - set(game.index)
    if extra:
        raise InvalidStrategy(f"strategy names unknown nodes {sorted(extra)}")


def check_query(game: Game, q: Query, strict: bool = False) -> None:
    """Reject unknown nodes and unavailable colours.

    An empty query means "unconstrained"; ``strict`` restores the
    nonempty requirement.
    """
    if not q and strict:
        raise EmptyQuery("query must constrain at least one node")
    for n, c in q.items():
        if n not in game.index:
            raise InvalidQuery(f"query names unknown node {n!r}")
        if c not in game.colours[n]:
            raise InvalidQuery(f"colour {c!r} is not available to node {n!r}")


def _node_index(game: Game, i: str) -> int:
    try:
        return game.index[i]
    except KeyError:
        raise InvalidStrategy(f"unknown node {i!r}") from None


def colour_values(game: Game, cols: list, k: int) -> dict:
    """Scaled payoff of node ``k`` for each of its colours, others fixed by ``cols``."""
    vals = {c: 0 for c in game.options[k]}
    for c, b in game.bonus_scaled[k].items():
        if c in vals:
            vals[c] = b
    for j, w in game.pred[k]:
        cj = cols[j]
        if cj in vals:
            vals[cj] += w
    return vals


def at_best_response(game: Game, cols: list, k: int) -> bool:
    vals = colour_values(game, cols, k)
    return vals[cols[k]] >= max(vals.values())


def first_deviator(game: Game, cols: list) -> Optional[int]:
    """Index of the first node with a profitable deviation, or None."""
    pred, bonus, sets = game.pred, game.bonus_scaled, game.colour_sets
    for k, ck in enumerate(cols):
        ps = pred[k]
        if not bonus[k] and len(ps) <= 1:
            # common case: the only possible gain is copying the single predecessor
            if not ps:
                continue
            j, w = ps[0]
            cj = cols[j]
            if cj == ck or not w or cj not in sets[k]:
                continue
            return k
        if not at_best_response(game, cols, k):
            return k
    return None


def payoff(game: Game, s: Strategy, i: str) -> Fraction:
    check_strategy(game, s)
    k = _node_index(game, i)
    total = Fraction(game.bonus(i, s[i]))
    for j, w in game.pred[k]:
        if s[game.nodes[j]] == s[i]:
            total += Fraction(w, game.scale)
    return total


def is_best_response(game: Game, s: Strategy, i: str) -> bool:
    check_strategy(game, s)
    return at_best_response(game, game.to_list(s), _node_index(game, i))


def is_nash(game: Game, s: Strategy) -> bool:
    check_strategy(game, s)
    return first_deviator(game, game.to_list(s)) is None


def is_consistent(s: Strategy, q: Query) -> bool:
    return all(s.get(n) == c for n, c in q.items())


def z_set(game: Game, i: str, w) -> frozenset:
    """Colours of ``i`` whose bonus is within ``w`` of the best bonus."""
    if i not in game.index:
        raise InvalidStrategy(f"unknown node {i!r}")
    w = as_rational(w)
    cs = game.colours[i]
    top = max(game.bonus(i, c) for c in cs)
    return frozenset(c for c in cs if game.bonus(i, c) + w >= top)


def is_monochromatic(q: Query) -> bool:
    return len(set(q.values())) <= 1


def certify(game: Game, s: dict, q: Query, consistent: bool, solver: str,
            cols: Optional[list] = None) -> dict:
    """Re-check a solver certificate before it leaves the solver.

    ``cols`` may pass the same profile as a list in declaration order.
    """
    if first_deviator(game, game.to_list(s) if cols is None else cols) is not None:
        raise InternalSoundness(f"{solver}: certificate is not a Nash equilibrium")
    if is_consistent(s, q) != consistent:
        raise InternalSoundness(f"{solver}: certificate has the wrong relation to the query")
    return s
