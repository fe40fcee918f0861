import json
import random
import subprocess
import sys

import pytest

from coordne import io
from coordne.cli import main
from coordne.dispatch import Mode, applicable
from coordne.errors import InvalidGame, InvalidQuery
from coordne.instances import FIXTURES, KINDS, FIG1_STRATEGY, GenSpec, classify, gen_fixture, gen_random


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def game_file(tmp_path, game, name="g.json"):
    return write(tmp_path, name, io.game_to_document(game))


def random_game(seed):
    rng = random.Random(seed)
    kind = KINDS[seed % len(KINDS)]
    return gen_random(GenSpec(kind=kind, n=rng.randint(2, 7), m=rng.randint(1, 4),
                              weights=(0, 3) if kind != "dag_out1" else (1, 1),
                              bonuses=(-2, 2) if kind != "colour_complete" else (0, 0),
                              rational=kind in ("general", "cycle") and seed % 3 == 0,
                              seed=seed))


def test_round_trip_fixtures():
    for name in FIXTURES:
        g = gen_fixture(name)
        assert io.parse_game(json.loads(io.dumps(io.game_to_document(g)))) == g


def test_round_trip_random():
    for seed in range(1000):
        g = random_game(seed)
        assert io.parse_game(json.loads(io.dumps(io.game_to_document(g)))) == g


def test_weights_are_exact_strings():
    g = gen_random(GenSpec(n=5, seed=3, density=0.9, rational=True, weights=(1, 3)))
    doc = io.game_to_document(g)
    assert all(isinstance(e["weight"], (int, str)) for e in doc["edges"])
    assert any(isinstance(e["weight"], str) and "/" in e["weight"] for e in doc["edges"])


def test_parse_rejects():
    base = io.game_to_document(gen_fixture("PATH2"))
    for bad in (
        {**base, "extra": 1},
        {**base, "edges": [{"from": "1", "to": "2", "weight": 0.5}]},
        {**base, "edges": [{"from": "1", "to": "2", "weight": True}]},
        {**base, "edges": [{"from": "1", "to": "2", "w": 1}]},
        {**base, "bonuses": {"1": {"9": 1}}},
        {**base, "bonuses": {"1": {"0": 1.5}}},
        {**base, "colours": {"1": ["0", "0"], "2": ["0"]}},
        {**base, "edges": [{"from": "1", "to": "1"}]},
        [],
    ):
        with pytest.raises(InvalidGame):
            io.parse_game(bad)


def test_query_string():
    assert io.parse_query_string("a=x, b=y") == {"a": "x", "b": "y"}
    assert io.parse_query_string("a=b=c") == {"a=b": "c"}
    assert io.parse_query_string("") == {}
    for bad in ("a", "=x", "a=", "a=x,a=y"):
        with pytest.raises(InvalidQuery):
            io.parse_query_string(bad)


def test_fig1_commands(tmp_path, capsys):
    g = game_file(tmp_path, gen_fixture("FIG1"))
    code, out, _ = run(capsys, "enumerate", g)
    assert code == 0 and json.loads(out)["count"] == 0
    code, out, _ = run(capsys, "check", g, "--strategy", write(tmp_path, "s.json", FIG1_STRATEGY))
    res = json.loads(out)
    assert code == 1 and res["is_nash"] is False and res["answer"] == "NO"
    assert res["payoffs"] == {"1": 0, "2": 1, "3": 2, "4": 1, "5": 1, "6": 1, "7": 0, "8": 0, "9": 0}
    code, out, _ = run(capsys, "exists-ne", g, "--query", "1=a")
    assert code == 1 and json.loads(out)["answer"] == "NO"
    code, out, _ = run(capsys, "forall-ne", g, "--query", "1=a")
    assert code == 0 and json.loads(out)["answer"] == "YES"


def test_output_shape(tmp_path, capsys):
    g = game_file(tmp_path, gen_fixture("CYC3"))
    code, out, _ = run(capsys, "forall-ne", g, "--query", "0=a")
    res = json.loads(out)
    assert code == 1
    assert res["counterexample"] == {"0": "b", "1": "b", "2": "b"}
    assert set(res["stats"]) == {"nodes", "edges", "elapsed_ms"}
    code, out, _ = run(capsys, "exists-ne", g, "--query", "0=a", "--no-timing")
    res = json.loads(out)
    assert list(res["witness"]) == sorted(res["witness"])
    assert "elapsed_ms" not in res["stats"]


def test_exit_codes_for_errors(tmp_path, capsys):
    g = game_file(tmp_path, gen_fixture("FIG1"))
    assert run(capsys, "exists-ne", str(tmp_path / "missing.json"))[0] == 2
    (tmp_path / "junk.json").write_text("{")
    assert run(capsys, "exists-ne", str(tmp_path / "junk.json"))[0] == 2
    assert run(capsys, "exists-ne", g, "--query", "1=z")[0] == 2
    assert run(capsys, "exists-ne", g, "--strict")[0] == 2
    assert run(capsys, "exists-ne", g, "--query", "1=a", "--solver", "cycle")[0] == 2
    code, _, err = run(capsys, "exists-ne", g, "--query", "1=a", "--cap", "5")
    assert code == 3 and err.startswith("coordne: ")
    assert run(capsys, "exists-ne", g, "--query", "1=a", "--solver", "oracle", "--cap", "5")[0] == 3
    with pytest.raises(SystemExit) as exc:
        main(["exists-ne"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_bundle_and_query_file(tmp_path, capsys):
    doc = {"game": io.game_to_document(gen_fixture("PATH2")), "query": {"2": "1"}}
    b = write(tmp_path, "b.json", doc)
    code, out, _ = run(capsys, "exists-ne", b, "--no-timing")
    assert code == 0 and json.loads(out)["witness"] == {"1": "1", "2": "1"}
    q = write(tmp_path, "q.json", {"2": "0"})
    code, out, _ = run(capsys, "forall-ne", b, "--query-file", q)
    assert code == 1
    assert run(capsys, "forall-ne", b, "--query-file", q, "--query", "2=0")[0] == 2


def test_gen_commands(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "clique", "3")
    assert code == 0 and len(json.loads(out)["nodes"]) == 3
    code, out, _ = run(capsys, "gen", "random", "--class", "cycle", "--n", "5", "--seed", "2",
                       "--weights", "1,3", "--bonuses=-1,1")
    g = io.parse_game(json.loads(out))
    assert classify(g).simple_cycle
    code, again, _ = run(capsys, "gen", "random", "--class", "cycle", "--n", "5", "--seed", "2",
                         "--weights", "1,3", "--bonuses=-1,1")
    assert again == out
    assert run(capsys, "gen", "fixture", "nope")[0] == 2

    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n")
    code, out, _ = run(capsys, "gen", "reduce-sat", str(cnf))
    bundle = write(tmp_path, "red.json", json.loads(out))
    assert run(capsys, "exists-ne", bundle, "--solver", "oracle")[0] == 1
    code, out, _ = run(capsys, "gen", "reduce-dnf", str(cnf))
    bundle = write(tmp_path, "dnf.json", json.loads(out))
    assert run(capsys, "forall-ne", bundle)[0] == 0
    (tmp_path / "bad.cnf").write_text("p cnf 1 1\n1 0\n")
    assert run(capsys, "gen", "reduce-sat", str(tmp_path / "bad.cnf"))[0] == 2

    heavy = game_file(tmp_path, gen_random(GenSpec(n=3, seed=1, weights=(2, 3), bonuses=(0, 2),
                                                   density=0.8)))
    code, out, _ = run(capsys, "gen", "simulate-weights", heavy)
    assert code == 0 and classify(io.parse_game(json.loads(out))).unweighted
    code, out, _ = run(capsys, "gen", "simulate-bonuses", heavy)
    assert code == 0 and "bonuses" not in json.loads(out)


def test_classify_command(tmp_path, capsys):
    code, out, _ = run(capsys, "classify", game_file(tmp_path, gen_fixture("CYC3")))
    assert code == 0 and json.loads(out)["simple_cycle"] is True


def _corpus():
    for seed in range(150):
        rng = random.Random(seed)
        g = random_game(seed)
        n = rng.choice(g.nodes)
        yield g, {n: rng.choice(sorted(g.colours[n]))}


def test_auto_output_matches_named_solver(tmp_path, capsys):
    checked = 0
    for k, (g, q) in enumerate(_corpus()):
        path = game_file(tmp_path, g, f"g{k}.json")
        query = ",".join(f"{n}={c}" for n, c in q.items())
        profile = classify(g)
        for cmd, mode in (("exists-ne", Mode.EXISTS), ("forall-ne", Mode.FORALL)):
            code, auto, _ = run(capsys, cmd, path, "--query", query, "--no-timing")
            answer = json.loads(auto)["answer"]
            assert (code == 0) == (answer == "YES") and (code == 1) == (answer == "NO")
            route = json.loads(auto)["solver"]
            assert applicable(profile, g, q, mode, route, 2**20, 8)
            _, named, _ = run(capsys, cmd, path, "--query", query, "--no-timing", "--solver", route)
            assert named == auto
            checked += 1
    assert checked == 300


def test_console_script_stdin():
    doc = json.dumps(io.game_to_document(gen_fixture("PATH2")))
    res = subprocess.run([sys.executable, "-m", "coordne.cli", "exists-ne", "-", "--query", "2=1",
                          "--no-timing"], input=doc, capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["answer"] == "YES"
