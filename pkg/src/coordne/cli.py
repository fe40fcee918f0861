"""Command-line entry point: ``coordne <command> ...``.

Every command prints one JSON object.  Exit codes: 0 YES (or success),
1 NO, 2 bad input or a forced solver that does not apply, 3 the
instance is too large for any available route, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import instances, io, oracle, reductions
from .colour_complete import DEFAULT_COLOUR_CAP
from .dispatch import SOLVERS, Mode, dispatch
from .errors import CapExceeded, ColourCapExceeded, CoordNEError, Intractable, InternalSoundness
from .game import check_strategy, first_deviator, is_nash, payoff

EXIT_YES, EXIT_NO, EXIT_INPUT, EXIT_TOO_BIG, EXIT_INTERNAL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    return io.load_document(_read_json(path))


def _query(args, bundled):
    if args.query is not None and args.query_file is not None:
        raise UsageError("use either --query or --query-file, not both")
    if args.query is not None:
        return io.parse_query_string(args.query)
    if args.query_file is not None:
        return io.parse_query_map(_read_json(args.query_file))
    return bundled if bundled is not None else {}


def _emit(obj) -> None:
    sys.stdout.write(io.dumps(obj) + "\n")


def cmd_solve(args, mode: Mode) -> int:
    game, bundled = _load(args.game)
    q = _query(args, bundled)
    stats = {}
    start = time.perf_counter()
    verdict, _ = dispatch(game, q, mode, cap=args.cap, colour_cap=args.colour_cap,
                          solver=args.solver, stats=stats, strict=args.strict)
    elapsed = None if args.no_timing else (time.perf_counter() - start) * 1000
    _emit(io.verdict_to_json(verdict, game, stats, elapsed))
    return EXIT_YES if verdict.yes else EXIT_NO


def _number(x: Fraction):
    return io.format_weight(Fraction(x))


def cmd_check(args) -> int:
    game, _ = _load(args.game)
    s = io.parse_strategy(_read_json(args.strategy))
    check_strategy(game, s)
    ok = is_nash(game, s)
    out = {
        "answer": "YES" if ok else "NO",
        "is_nash": ok,
        "payoffs": {n: _number(payoff(game, s, n)) for n in game.nodes},
    }
    k = first_deviator(game, game.to_list(s))
    if k is not None:
        out["first_deviator"] = game.nodes[k]
    _emit(out)
    return EXIT_YES if ok else EXIT_NO


def cmd_enumerate(args) -> int:
    game, _ = _load(args.game)
    stats = {}
    start = time.perf_counter()
    eqs = oracle.enumerate_ne(game, cap=args.cap, stats=stats, naive=args.naive)
    st = {"nodes": len(game.nodes), "edges": len(game.edges),
          "profiles_checked": stats["profiles_checked"]}
    if not args.no_timing:
        st["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    _emit({"count": len(eqs), "equilibria": [io.sorted_profile(s) for s in eqs], "stats": st})
    return EXIT_YES


def cmd_classify(args) -> int:
    game, _ = _load(args.game)
    _emit(instances.classify(game).as_dict())
    return EXIT_YES


def _bundle(out: reductions.ReductionOutput) -> dict:
    return {"game": io.game_to_document(out.game), "query": out.query, "names": out.name_map}


def _pair(text: str) -> tuple:
    try:
        lo, hi = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def cmd_gen(args) -> int:
    kind = args.gen
    if kind == "fixture":
        try:
            game = instances.gen_fixture(args.name)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        _emit(io.game_to_document(game))
    elif kind == "clique":
        try:
            game = instances.example_clique(args.m)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        _emit(io.game_to_document(game))
    elif kind == "random":
        spec = instances.GenSpec(kind=args.cls, n=args.n, m=args.m, weights=args.weights,
                                 bonuses=args.bonuses, density=args.density, seed=args.seed,
                                 rational=args.rational)
        try:
            game = instances.gen_random(spec)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        _emit(io.game_to_document(game))
    elif kind in ("reduce-sat", "reduce-sat-singleton", "reduce-dnf"):
        phi = reductions.parse_dimacs(_read_text(args.formula), dnf=kind == "reduce-dnf")
        build = {
            "reduce-sat": reductions.reduce_sat_ene,
            "reduce-sat-singleton": reductions.reduce_sat_singleton,
            "reduce-dnf": reductions.reduce_dnf_ane,
        }[kind]
        _emit(_bundle(build(phi, unweighted=not args.weighted)))
    elif kind == "simulate-weights":
        game, _ = _load(args.game)
        _emit(io.game_to_document(reductions.simulate_weights(game)))
    elif kind == "simulate-bonuses":
        game, _ = _load(args.game)
        _emit(io.game_to_document(reductions.simulate_bonuses(game)))
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coordne", description="Pure equilibria of coordination games on directed graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    for name, helptext in (("exists-ne", "is some equilibrium consistent with the query?"),
                           ("forall-ne", "is every equilibrium consistent with the query?")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("game", help="game document or bundle (JSON); '-' reads stdin")
        sp.add_argument("--query", help="comma-separated node=colour pairs")
        sp.add_argument("--query-file", help="JSON object mapping nodes to colours")
        sp.add_argument("--solver", default="auto", choices=("auto",) + SOLVERS)
        sp.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP,
                        help="largest joint-strategy count the oracle may enumerate")
        sp.add_argument("--colour-cap", type=int, default=DEFAULT_COLOUR_CAP,
                        help="most colours the colour-complete sweep accepts")
        sp.add_argument("--strict", action="store_true", help="reject an empty query")
        sp.add_argument("--no-timing", action="store_true", help="omit elapsed_ms from stats")

    sp = sub.add_parser("check", help="payoffs and equilibrium test for one profile")
    sp.add_argument("game")
    sp.add_argument("--strategy", required=True, help="JSON object mapping nodes to colours")

    sp = sub.add_parser("enumerate", help="list every equilibrium by exhaustive search")
    sp.add_argument("game")
    sp.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    sp.add_argument("--naive", action="store_true", help="test every profile without pruning")
    sp.add_argument("--no-timing", action="store_true")

    sp = sub.add_parser("classify", help="structural class flags")
    sp.add_argument("game")

    gen = sub.add_parser("gen", help="emit a game document")
    gsub = gen.add_subparsers(dest="gen", required=True)
    g = gsub.add_parser("fixture")
    g.add_argument("name", help=", ".join(instances.FIXTURES))
    g = gsub.add_parser("clique", help="one player per colour pair on a complete digraph")
    g.add_argument("m", type=int)
    g = gsub.add_parser("random")
    g.add_argument("--class", dest="cls", default="general", choices=instances.KINDS)
    g.add_argument("--n", type=int, default=6)
    g.add_argument("--m", type=int, default=3)
    g.add_argument("--weights", type=_pair, default=(1, 1), metavar="LO,HI")
    g.add_argument("--bonuses", type=_pair, default=(0, 0), metavar="LO,HI")
    g.add_argument("--density", type=float, default=0.3)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--rational", action="store_true")
    for name in ("reduce-sat", "reduce-sat-singleton", "reduce-dnf"):
        g = gsub.add_parser(name)
        g.add_argument("formula", help="DIMACS file; '-' reads stdin")
        g.add_argument("--weighted", action="store_true", help="keep weighted gadget edges")
    for name in ("simulate-weights", "simulate-bonuses"):
        g = gsub.add_parser(name)
        g.add_argument("game")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "exists-ne":
            return cmd_solve(args, Mode.EXISTS)
        if args.command == "forall-ne":
            return cmd_solve(args, Mode.FORALL)
        return {"check": cmd_check, "enumerate": cmd_enumerate, "classify": cmd_classify,
                "gen": cmd_gen}[args.command](args)
    except (CapExceeded, Intractable, ColourCapExceeded) as exc:
        print(f"coordne: {exc}", file=sys.stderr)
        return EXIT_TOO_BIG
    except InternalSoundness as exc:
        print(f"coordne: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (CoordNEError, UsageError) as exc:
        print(f"coordne: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
