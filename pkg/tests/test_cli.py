import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from imitation_games.cli import GameSpec, export_graph, main, parse_game_spec, run, serialize_game_spec
from imitation_games.errors import ParseError, UnsupportedObject, ValidationError

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
ALL = sorted(FIXTURES.glob("*.game"))


def fx(name):
    return str(FIXTURES / name)


def test_parse_fixtures():
    spec = parse_game_spec(fx("fix_a2.game"))
    assert len(spec.players) == 2 and spec.optimisers == 1
    firms = parse_game_spec(fx("firms.game"))
    assert set(firms.scenarios) == {"low", "high"}
    low = firms.preference_list("low")
    assert low[1].rank(frozenset({"1", "3", "5"})) == 0


@pytest.mark.parametrize("path", ALL, ids=lambda p: p.name)
def test_round_trip(path, tmp_path):
    spec = parse_game_spec(path)
    out = tmp_path / "copy.game"
    out.write_text(serialize_game_spec(spec))
    again = parse_game_spec(out)
    assert again == spec
    assert serialize_game_spec(again) == serialize_game_spec(spec)


def _doc(**changes):
    doc = json.loads((FIXTURES / "fix_a2.game").read_text())
    doc.update(changes)
    return doc


def test_disabled_fallback_rejected():
    doc = _doc(imitator_types={"copy1": {"imitate": {"m0": "1"}, "fallback": {"q": "c"}}})
    with pytest.raises(ValidationError, match="not enabled"):
        GameSpec.from_dict(doc, "bad.game")


def test_diagnostics_name_location():
    with pytest.raises(ValidationError, match="bad.game: arena"):
        GameSpec.from_dict(_doc(edges=[["p", "a", "q"], ["q", "a", "p"], ["p", "a", "p"]]), "bad.game")
    with pytest.raises(ValidationError, match="preferences.1"):
        GameSpec.from_dict(_doc(preferences={"1": [[["z"]]]}), "bad.game")
    with pytest.raises(ValidationError, match="assignments"):
        GameSpec.from_dict(_doc(assignments={"2": "nope"}), "bad.game")


def test_malformed_json(tmp_path):
    bad = tmp_path / "bad.game"
    bad.write_text("{\"players\": [")
    with pytest.raises(ParseError):
        parse_game_spec(bad)


def test_default_indifference():
    spec = parse_game_spec(fx("ring3.game"))
    prefs = spec.preference_list()
    assert all(p.level_count == 1 for p in prefs)


MATRIX = [
    (["simulate", fx("firms.game")], 0),
    (["settles-to", fx("firms.game"), "--target", "1,3,5"], 0),
    (["settles-to", fx("firms.game"), "--target", "2,3,4,6"], 2),
    (["settles-to", fx("fix_a2.game"), "--target", "p,q"], 0),
    (["settles-to", fx("fix_a2.game"), "--target", "p"], 2),
    (["settles-to", fx("ring3.game"), "--target", "u1,u2,u3"], 0),
    (["settles-to", fx("ring3.game"), "--target", "zz"], 1),
    (["subtypes", fx("fix_a2.game")], 0),
    (["subtypes", fx("firms.game")], 0),
    (["worse-off", fx("firms.game"), "--imitator", "C", "--scenario", "low"], 0),
    (["worse-off", fx("firms.game"), "--imitator", "A", "--scenario", "low"], 1),
    (["worse-off", fx("firms.game"), "--imitator", "C", "--scenario", "nope"], 1),
    (["equilibrium", fx("fix_a2.game")], 0),
    (["equilibrium", fx("firms.game"), "--scenario", "high"], 0),
    (["equilibrium", fx("ring3.game")], 0),
    (["verify", fx("fix_a2.game")], 0),
    (["verify", fx("fix_a2.game"), "--oracle-bound", "1"], 1),
    (["verify", fx("firms.game"), "--scenario", "high"], 0),
    (["export", fx("firms.game")], 0),
    (["simulate", fx("firms.game"), "--format", "dot"], 1),
    (["frobnicate", fx("firms.game")], 1),
    (["simulate", "/no/such/file.game"], 1),
]


@pytest.mark.parametrize("argv,code", MATRIX, ids=lambda x: " ".join(x) if isinstance(x, list) else str(x))
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code


def test_verify_flags_deviation(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"strategies": {"1": {"positional": {"p": "b"}}}}))
    out, code = run(["verify", fx("fix_a2.game"), "--strategies", str(bad), "--format", "json"])
    doc = json.loads(out)
    assert code == 2 and not doc["equilibrium"]
    assert doc["outcome"] == ["p"] and doc["deviations"][0]["set"] == ["p", "q"]
    assert main(["verify", fx("fix_a2.game"), "--strategies", str(tmp_path / "missing.json")]) == 1


def test_worse_off_reports(capsys):
    out, code = run(["worse-off", fx("firms.game"), "--imitator", "C", "--scenario", "low", "--format", "json"])
    doc = json.loads(out)
    assert doc["verdict"] in ("better", "equal-rank") and doc["imitation"]["set"] == ["1", "3", "5"]
    out, _ = run(["worse-off", fx("firms.game"), "--imitator", "C", "--scenario", "high", "--format", "json"])
    assert json.loads(out)["verdict"] == "worse"


def test_equilibrium_output_verifies(tmp_path):
    for name, scenario in (("fix_a2.game", None), ("firms.game", "low"), ("firms.game", "high")):
        argv = ["equilibrium", fx(name), "--format", "json"] + (["--scenario", scenario] if scenario else [])
        out, code = run(argv)
        assert code == 0
        saved = tmp_path / "eq.json"
        saved.write_text(out)
        argv = ["verify", fx(name), "--strategies", str(saved), "--format", "json"]
        argv += ["--scenario", scenario] if scenario else []
        rep, code = run(argv)
        assert code == 0 and json.loads(rep)["outcome"] == json.loads(out)["outcome"]


COMMANDS = [
    ["simulate"], ["settles-to", "--target", "1,3,5"], ["subtypes"], ["equilibrium"], ["verify"],
    ["export"], ["worse-off", "--imitator", "C", "--scenario", "high"],
]


@pytest.mark.parametrize("cmd", COMMANDS, ids=lambda c: c[0])
def test_reports_deterministic(cmd):
    argv = [cmd[0], fx("firms.game")] + cmd[1:]
    fmt = [] if cmd[0] == "export" else ["--format", "json"]
    first = run(argv + fmt)
    assert run(argv + fmt) == first
    assert run(argv + ["--seed", "7"] + fmt) == first


def test_deterministic_across_hash_seeds():
    outs = set()
    for seed in ("1", "2", "3"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        res = subprocess.run([sys.executable, "-m", "imitation_games.cli", "equilibrium", fx("firms.game"),
                              "--scenario", "high", "--format", "json"], capture_output=True, text=True, env=env)
        assert res.returncode == 0, res.stderr
        outs.add(res.stdout)
    assert len(outs) == 1


def test_export_shapes():
    dot, _ = run(["export", fx("fix_a2.game")])
    assert dot.count("shape=") == 2 and dot.count("->") == 4
    dot, _ = run(["export", fx("firms.game")])
    shapes = {line.split("shape=")[1].split(",")[0].rstrip("];") for line in dot.splitlines() if "shape=" in line}
    assert dot.count("shape=") == 6 and shapes == {"circle", "box", "triangle"}
    dot, _ = run(["export", fx("ring3.game"), "--object", "imitator", "--player", "2"])
    assert 0 < dot.count("shape=") <= 24
    with pytest.raises(UnsupportedObject):
        export_graph(object())
