import json
from pathlib import Path

import pytest

from squaresk.cli import main

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_chi(capsys):
    code, out = run(capsys, "chi", FIX / "closed_interval.json")
    assert code == 0 and out.strip() == "1"


def test_k0_compare_isomorphic(capsys):
    code, out = run(capsys, "k0-compare", FIX / "partition_assembler.json", "--bound", 2)
    assert code == 0 and "isomorphic" in out


def test_k0_compare_inconclusive(capsys):
    code, _ = run(capsys, "k0-compare", FIX / "partition_assembler.json", "--bound", 1)
    assert code == 3


def test_homology_rejects_not_locally_closed(capsys):
    code, out = run(capsys, "--json", "homology", FIX / "not_locally_closed.json")
    assert code == 2
    rep = json.loads(out)
    assert rep["status"] == "error"
    assert rep["verdicts"][0]["witness"]["frontier_point"] == ["1/2", "0"]


def test_homology_pass(capsys):
    code, out = run(capsys, "homology", FIX / "square_boundary.json")
    assert code == 0 and "H0=1" in out and "chi=0" in out


@pytest.mark.parametrize("name", ["broken_complement", "thin_vertical", "non_pullback_square", "wrong_complement_map"])
def test_violations_exit_1(capsys, name):
    code, _ = run(capsys, "check-squares", FIX / f"{name}.json")
    assert code == 1


def test_structural_and_input_errors(capsys, tmp_path):
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "chi", tmp_path / "missing.json")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "chi", bad)[0] == 2


def test_passing_commands(capsys, tmp_path):
    out = tmp_path / "cmin.json"
    assert run(capsys, "validate-cat", FIX / "injections2_category.json")[0] == 0
    assert run(capsys, "validate-cat", FIX / "non_mono_category.json")[0] == 0
    assert run(capsys, "check-assembler", FIX / "partition_assembler.json")[0] == 0
    assert run(capsys, "build-cmin", FIX / "point_assembler.json", "--out", out)[0] == 0
    assert run(capsys, "check-squares", out)[0] == 0
    assert run(capsys, "k0", out)[0] == 0
    assert run(capsys, "exactness", FIX / "exactness_interval.json")[0] == 0
    assert run(capsys, "simplicial-roundtrip", FIX / "injections2.json", "--n", 1)[0] == 0
    assert run(capsys, "polygon-k0", "--trials", 5, "--seed", 3)[0] == 0


def test_json_is_deterministic(capsys):
    a = run(capsys, "--json", "--seed", 4, "polygon-k0", "--trials", 5)[1]
    b = run(capsys, "polygon-k0", "--trials", 5, "--json", "--seed", 4)[1]
    assert a == b
    rep = json.loads(a)
    assert rep["elapsed_ms"] is None and rep["seed"] == 4
    assert {"command", "verdicts", "seed", "elapsed_ms"} <= set(rep)
    assert all({"name", "status"} <= set(v) for v in rep["verdicts"])


def test_timing_flag(capsys):
    rep = json.loads(run(capsys, "--json", "--timing", "chi", FIX / "point.json")[1])
    assert isinstance(rep["elapsed_ms"], (int, float))


def test_failure_replays(capsys, tmp_path):
    code, out = run(capsys, "--json", "check-squares", FIX / "wrong_complement_map.json")
    rep = json.loads(out)
    assert code == 1 and "replay" in rep
    path = tmp_path / "replay.json"
    path.write_text(json.dumps(rep["replay"]["input"]))
    argv = [str(path) if a.endswith(".json") else a for a in rep["replay"]["argv"]]
    code2, out2 = run(capsys, *argv)
    assert code2 == 1
    again = json.loads(out2)
    assert [v["status"] for v in again["verdicts"]] == [v["status"] for v in rep["verdicts"]]
