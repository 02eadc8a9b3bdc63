import json
import math

import pytest

from lattice_interp import cli
from lattice_interp import green1d as g1
from lattice_interp import greennd as gn


def run(capsysbinary, *argv):
    code = cli.main(list(argv))
    out, err = capsysbinary.readouterr()
    return code, out.decode(), err.decode()


def test_constants_examples(capsysbinary):
    code, out, _ = run(capsysbinary, "constants", "--dim", "1", "--order", "1", "--theta", "0.5")
    assert code == 0 and json.loads(out)["K"] == 1.0
    code, out, _ = run(capsysbinary, "constants", "--dim", "3", "--order", "1", "--theta", "0")
    assert code == 0 and json.loads(out)["K"] == gn.Kd0(3)
    assert abs(json.loads(out)["K"] - 0.2527) < 1e-4


def test_constants_inadmissible(capsysbinary):
    code, _, err = run(capsysbinary, "constants", "--dim", "1", "--order", "2", "--theta", "0.6")
    assert code == 2
    assert "theta in [1 - 1/(2n), 1]" in err


def test_constants_oracle(capsysbinary):
    code, out, _ = run(capsysbinary, "constants", "--dim", "1", "--theta", "0.75", "--oracle")
    rep = json.loads(out)
    assert code == 0 and rep["oracle"]["discrepancy"] < 1e-12


def test_constants_csv_digits(capsysbinary):
    code, out, _ = run(capsysbinary, "constants", "--theta", "0.75", "--format", "csv")
    row = dict(line.split(",", 1) for line in out.splitlines()[1:])
    assert float(row["K"]) == g1.K1_theta(0.75).constant


def test_missing_theta(capsysbinary):
    code, _, err = run(capsysbinary, "constants", "--dim", "1")
    assert code == 2 and "theta" in err


def test_bad_flag(capsysbinary):
    code, _, _ = run(capsysbinary, "constants", "--bogus")
    assert code == 2


def test_config_precedence(tmp_path, capsysbinary):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"theta": 0.75, "dim": 1, "format": "csv"}))
    code, out, _ = run(capsysbinary, "constants", "--config", str(cfg))
    assert code == 0 and out.startswith("key,value")
    code, out, _ = run(capsysbinary, "constants", "--config", str(cfg), "--theta", "1", "--format", "json")
    assert json.loads(out)["K"] == 1.0


def test_curve_csv(capsysbinary):
    code, out, _ = run(capsysbinary, "curve", "--name", "k12_theta")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 203
    assert float(lines[2].split(",")[1]) == pytest.approx(math.sqrt(2) / 2, rel=1e-15)


def test_curve_grid(capsysbinary):
    code, out, _ = run(capsysbinary, "curve", "--name", "v_d_1d", "--grid", "0.1:3.9:0.1")
    rows = [tuple(map(float, l.split(","))) for l in out.splitlines()[2:]]
    assert code == 0 and len(rows) == 39
    for d, v in rows:
        assert v == pytest.approx(0.5 * math.sqrt(d * (4 - d)), rel=1e-15)


@pytest.mark.parametrize("grid", ["0.1:x", "1:0:0.1", "a,b", "0:1:0"])
def test_curve_malformed_grid(capsysbinary, grid):
    code, _, _ = run(capsysbinary, "curve", "--name", "v_d_1d", "--grid", grid)
    assert code == 2


def test_curve_deterministic(tmp_path, capsysbinary):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert cli.main(["curve", "--name", "v0_vs_v_2d", "--output", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_green1d(capsysbinary):
    code, out, _ = run(capsysbinary, "verify", "--suite", "green1d", "--seed", "7")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["seed"] == 7
    assert {"suite", "name", "ref", "discrepancy", "tolerance", "passed"} <= set(rep["checks"][0])


def test_verify_corrupted_constant_fails(capsysbinary):
    code, out, _ = run(capsysbinary, "verify", "--suite", "green1d", "--corrupt", "-0.01")
    assert code == 1 and not json.loads(out)["passed"]


def test_verify_unknown_suite(capsysbinary):
    code, _, _ = run(capsysbinary, "verify", "--suite", "nope")
    assert code == 2


def test_spectrum_well(capsysbinary):
    code, out, _ = run(capsysbinary, "spectrum", "--dim", "1", "--order", "1", "--theta", "0.5", "--well", "2,0")
    rep = json.loads(out)
    assert code == 0 and len(rep["eigenvalues"]) == 1 and rep["ratio"] < 1


@pytest.mark.slow
def test_spectrum_3d(capsysbinary):
    code, out, _ = run(
        capsysbinary, "spectrum", "--dim", "3", "--order", "1", "--theta", "0", "--well", "5,1", "--radius", "12"
    )
    rep = json.loads(out)
    assert code == 0
    assert rep["bound_constant"] == pytest.approx(0.0631, abs=1e-4)
    assert rep["lieb_thirring_bound"] == pytest.approx(rep["bound_constant"] * 27 * 25.0, rel=1e-14)


def test_spectrum_potential_file(tmp_path, capsysbinary):
    f = tmp_path / "v.txt"
    f.write_text("1\n-2\n1\n")
    code, _, err = run(capsysbinary, "spectrum", "--theta", "0.5", "--potential", str(f))
    assert code == 2 and "V(k) >= 0" in err
    f.write_text("1\n2\n")
    code, _, _ = run(capsysbinary, "spectrum", "--theta", "0.5", "--potential", str(f))
    assert code == 2
    f.write_text("1\n2\n3\n")
    code, out, _ = run(capsysbinary, "spectrum", "--theta", "0.5", "--potential", str(f), "--format", "csv")
    assert code == 0 and "eigenvalue.0" in out


def test_spectrum_needs_potential(capsysbinary):
    code, _, _ = run(capsysbinary, "spectrum", "--theta", "0.5")
    assert code == 2
