"""JSON game documents, queries and verdict serialisation."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .errors import InvalidGame, InvalidQuery, InvalidStrategy
from .game import Game, Verdict, as_rational

GAME_KEYS = {"nodes", "edges", "colours", "bonuses"}
EDGE_KEYS = {"from", "to", "weight"}
BUNDLE_KEYS = {"game", "query", "names"}


def _weight(value, where: str) -> Fraction:
    if isinstance(value, float) or isinstance(value, bool):
        raise InvalidGame([f"{where}: weight {value!r} must be an integer or a 'p/q' string"])
    try:
        return as_rational(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InvalidGame([f"{where}: weight {value!r} must be an integer or a 'p/q' string"]) from None


def parse_game(doc) -> Game:
    """Build a game from a parsed document, rejecting unknown fields."""
    if not isinstance(doc, dict):
        raise InvalidGame(["game document must be a JSON object"])
    problems = [f"unknown field {k!r}" for k in sorted(set(doc) - GAME_KEYS)]
    problems += [f"missing field {k!r}" for k in ("nodes", "edges", "colours") if k not in doc]
    if problems:
        raise InvalidGame(problems)
    nodes, edges, colours = doc["nodes"], doc["edges"], doc["colours"]
    if not isinstance(nodes, list) or not isinstance(edges, list) or not isinstance(colours, dict):
        raise InvalidGame(["nodes and edges must be lists, colours an object"])
    parsed = []
    for k, e in enumerate(edges):
        where = f"edges[{k}]"
        if not isinstance(e, dict):
            raise InvalidGame([f"{where}: must be an object"])
        extra = set(e) - EDGE_KEYS
        if extra or "from" not in e or "to" not in e:
            raise InvalidGame([f"{where}: needs 'from' and 'to', optional 'weight', nothing else"])
        parsed.append((e["from"], e["to"], _weight(e.get("weight", 1), where)))
    cols = {}
    for n, cs in colours.items():
        if not isinstance(cs, list):
            raise InvalidGame([f"colours of {n!r} must be a list"])
        if len(set(cs)) != len(cs):
            raise InvalidGame([f"colours of {n!r} repeat a colour"])
        cols[n] = cs
    bonuses = {}
    raw = doc.get("bonuses", {})
    if not isinstance(raw, dict):
        raise InvalidGame(["bonuses must be an object"])
    for n, per in raw.items():
        if not isinstance(per, dict):
            raise InvalidGame([f"bonuses of {n!r} must be an object"])
        for c, b in per.items():
            if isinstance(b, bool) or not isinstance(b, int):
                raise InvalidGame([f"bonus ({n}, {c}): {b!r} is not an integer"])
            if c not in cols.get(n, ()):
                raise InvalidGame([f"bonus ({n}, {c}): colour is not available to the node"])
            bonuses[(n, c)] = b
    game = Game(nodes=nodes, edges=parsed, colours=cols, bonuses=bonuses)
    game.require_valid()
    return game


def format_weight(w: Fraction):
    return w.numerator if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def game_to_document(game: Game) -> dict:
    doc = {
        "nodes": list(game.nodes),
        "edges": [{"from": u, "to": v, "weight": format_weight(w)} for u, v, w in game.edges],
        "colours": {n: sorted(game.colours[n]) for n in game.nodes},
    }
    if game.bonuses:
        per = {}
        for (n, c), b in sorted(game.bonuses.items()):
            per.setdefault(n, {})[c] = b
        doc["bonuses"] = per
    return doc


def load_document(doc) -> tuple:
    """Return ``(game, query or None)`` from a bare game or a ``{"game", "query"}`` bundle."""
    if isinstance(doc, dict) and "game" in doc:
        extra = set(doc) - BUNDLE_KEYS
        if extra:
            raise InvalidGame([f"unknown bundle field {k!r}" for k in sorted(extra)])
        query = doc.get("query")
        if query is not None:
            query = parse_query_map(query)
        return parse_game(doc["game"]), query
    return parse_game(doc), None


def parse_query_map(obj) -> dict:
    if not isinstance(obj, dict) or not all(isinstance(v, str) for v in obj.values()):
        raise InvalidQuery("query must map node names to colour names")
    return dict(obj)


def parse_query_string(text: str) -> dict:
    """``"n1=c1,n2=c2"``; the last ``=`` in each pair separates node from colour."""
    q = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        node, sep, colour = part.rpartition("=")
        if not sep or not node or not colour:
            raise InvalidQuery(f"query item {part!r} is not of the form node=colour")
        if node in q and q[node] != colour:
            raise InvalidQuery(f"node {node!r} is queried twice")
        q[node] = colour
    return q


def parse_strategy(obj) -> dict:
    if not isinstance(obj, dict):
        raise InvalidStrategy("strategy must be a JSON object mapping nodes to colours")
    return dict(obj)


def sorted_profile(s: Optional[dict]) -> Optional[dict]:
    return None if s is None else {k: s[k] for k in sorted(s)}


def verdict_to_json(v: Verdict, game: Game, stats: Optional[dict] = None,
                    elapsed_ms: Optional[float] = None) -> dict:
    out = {"answer": v.answer.value, "solver": v.solver}
    if v.witness is not None:
        out["witness"] = sorted_profile(v.witness)
    if v.counterexample is not None:
        out["counterexample"] = sorted_profile(v.counterexample)
    if v.notes:
        out["notes"] = list(v.notes)
    st = {"nodes": len(game.nodes), "edges": len(game.edges)}
    if stats and "profiles_checked" in stats:
        st["profiles_checked"] = stats["profiles_checked"]
    if elapsed_ms is not None:
        st["elapsed_ms"] = round(elapsed_ms, 3)
    out["stats"] = st
    return out


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)
