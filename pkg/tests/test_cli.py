import json

import pytest

from sowdist.cli import main
from sowdist.poly import Enumerator


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_orbits_q3(capsys):
    code, out, _ = run(capsys, "orbits", "--q", "3")
    obj = json.loads(out)
    assert code == 0
    assert [o["rep"] for o in obj["orbits"]] == [[0, 0], [0, 1], [1, 0], [1, 1], [1, 2]]
    assert obj["orbit_order"] == ["(0,0)", "(0,1)", "(1,0)", "(1,1)", "(1,2)"]


def test_kmatrix_csv(capsys):
    code, out, _ = run(capsys, "kmatrix", "--q", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[2] == '"(0,1)",1,-1,1,-1'


def test_enumerator_transform_round_trip(capsys, tmp_path):
    path = tmp_path / "rep.json"
    assert run(capsys, "enumerator", "repetition", "--q", "3", "--param", "3", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "transform", "--q", "3", "--in", str(path), "--size-u", "3", "--size-v", "3")
    assert code == 0
    got = Enumerator.from_json(out)
    code, out2, _ = run(capsys, "enumerator", "check", "--q", "3", "--param", "3")
    assert got == Enumerator.from_json(out2)
    code, out3, _ = run(capsys, "enumerator", "complete", "--q", "2", "--n", "2", "--decimal", "3")
    assert Enumerator.from_json(out3).evaluate([1] * 4) == 16


def test_ldpc_outputs(capsys):
    code, out, _ = run(capsys, "ldpc", "two", "--q", "2", "--c", "3", "--d", "6", "--n", "12", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == '"(0,0)","(0,1)","(1,0)","(1,1)",value'
    assert "12,0,0,0,1/1" in lines
    code, out, _ = run(capsys, "ldpc", "one", "--q", "2", "--c", "2", "--d", "4", "--n", "8", "--moment", "0", "0")
    assert json.loads(out)["moment"]["value"] == "1/1"


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "intersecting", "--q", "2", "--m", "3", "--n", "16")
    rec = json.loads(out)
    assert code == 0 and abs(rec["rate_bound"] - 0.20751875) < 1e-8


def test_goodmat_commands(capsys, tmp_path):
    prefix = tmp_path / "mrd"
    code, out, _ = run(capsys, "goodmat", "mrd-demo", "--save-prefix", str(prefix))
    rec = json.loads(out)
    assert code == 0 and rec["A1"]["2-good"] is False and rec["A2"]["2-good"] is True
    code, out, _ = run(capsys, "goodmat", "verify", "--k", "2", "--support", f"{prefix}_A1.txt")
    assert json.loads(out)["k_good"] is False
    code, out, _ = run(capsys, "goodmat", "theorem4", "--side", "par", "--q", "2", "--m", "1", "--n", "2")
    assert json.loads(out)["all_ones"] == "7/1"
    code, out, _ = run(capsys, "goodmat", "corollary1", "--q", "2", "--m", "2", "--n", "2")
    assert code == 0 and json.loads(out)["mismatches"] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["oracle", "lemma4", "--q", "2", "--n", "2"],
        ["oracle", "ldpc-exact", "--kind", "two", "--q", "2", "--c", "2", "--d", "2", "--n", "4"],
        ["oracle", "ldpc-mc", "--kind", "one", "--q", "2", "--c", "2", "--d", "4", "--n", "8", "--trials", "300"],
        ["oracle", "characters", "--q", "3", "--n", "2"],
        ["oracle", "macwilliams", "--q", "3", "--n", "2", "--pairs", "10"],
    ],
)
def test_oracle_commands_pass(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and json.loads(out)["status"] == "pass"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["orbits"],
        ["orbits", "--q", "6"],
        ["orbits", "--q", "3", "--bogus"],
        ["ldpc", "one", "--q", "2", "--c", "3", "--d", "5", "--n", "12"],
        ["enumerator", "check", "--q", "2"],
        ["orbits", "--q", "2", "--threads", "0"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ""
    assert "error" in err


def test_missing_input_file(capsys, tmp_path):
    code, _, err = run(capsys, "transform", "--q", "2", "--in", str(tmp_path / "nope.json"), "--size-u", "1", "--size-v", "1")
    assert code == 1 and "cannot read" in err


def test_infeasible_exit_code(capsys):
    code, _, err = run(capsys, "oracle", "ldpc-exact", "--kind", "two", "--q", "3", "--c", "2", "--d", "2", "--n", "4")
    assert code == 2 and "infeasible" in err


def test_mismatch_exit_code(capsys, monkeypatch):
    from sowdist import cli, oracle

    monkeypatch.setattr(oracle, "macwilliams_brute", lambda U, V, t: (cli.Enumerator.constant(t.nvars, 1), cli.Enumerator.constant(t.nvars, 2)))
    code, out, _ = run(capsys, "oracle", "macwilliams", "--q", "2", "--n", "2", "--pairs", "2")
    assert code == 3 and json.loads(out)["status"] == "fail"


def test_module_entry_point():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "sowdist", "orbits", "--q", "2", "--format", "csv"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("index,label")
