import json

import pytest

from dunkl_dihedral.cli import main

import math


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_coeffs_csv_rows(capsys):
    code, out, _ = run(capsys, "coeffs", "--s", "4", "--k1", "1", "--k2", "1", "--m-max", "3", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "quantity,kind,index,orbit,m,value"
    assert "c,reflection,1,O1,3,16/1" in lines
    assert "C,rotation,0,O2,1,13/45" in lines


def test_coeffs_validation_exit(capsys):
    code, out, err = run(capsys, "coeffs", "--s", "3", "--k1", "1", "--k2", "2")
    assert code == 2 and out == "" and "single root orbit" in err


def test_coeffs_json_rational(capsys):
    code, out, _ = run(capsys, "coeffs", "--s", "4", "--k1", "1", "--k2", "2", "--m-max", "2", "--n-max", "1")
    assert code == 0
    payload = json.loads(out)
    row = next(r for r in payload["rows"] if r["quantity"] == "c" and r["kind"] == "rotation" and r["index"] == 2 and r["m"] == 2)
    assert row["value"] == {"num": 10, "den": 1}


def test_kernel_exponential(capsys):
    code, out, _ = run(capsys, "kernel", "--s", "4", "--k1", "0", "--k2", "0", "--x", "1,0", "--y", "1,0")
    report = json.loads(out)
    assert code == 0 and abs(report["value_re"] - math.e) <= 1e-10 * math.e
    assert list(report)[:4] == ["value_re", "value_im", "N_used", "tail_estimate"]


def test_kernel_at_zero(capsys):
    code, out, _ = run(capsys, "kernel", "--y", "0,0")
    assert code == 0 and json.loads(out)["value_re"] == 1


@pytest.mark.parametrize("command", ["kernel", "bessel"])
def test_integral_method_agrees(capsys, command):
    common = ["--s", "4", "--k1", "1", "--k2", "1", "--x", "0.6,0.2", "--y=0.9,-0.4"]
    _, a, _ = run(capsys, command, *common, "--method", "series")
    _, b, _ = run(capsys, command, *common, "--method", "bessel-integral")
    assert abs(json.loads(a)["value_re"] - json.loads(b)["value_re"]) <= 1e-6


def test_convergence_exit(capsys):
    code, out, _ = run(capsys, "kernel", "--x", "3,1", "--y", "4,2", "--max-degree", "5")
    assert code == 3 and json.loads(out)["converged"] is False


def test_bad_point_and_mirror(capsys):
    assert run(capsys, "kernel", "--x", "1,2,3")[0] == 2
    assert run(capsys, "kernel", "--method", "bessel-integral", "--x", "1,1", "--y", "1,0.2")[0] == 2


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "coeffs", "--s", "4")
    payload = json.loads(out)
    assert code == 0 and payload["passed"]
    exact = [c for c in payload["checks"] if c["tolerance"] == 0 and c["status"] != "report"]
    assert exact and all(c["status"] == "pass" for c in exact)
    code, out, _ = run(capsys, "verify", "--suite", "recovery", "--s", "6")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "verify", "--suite", "b2integral")
    checks = {c["check"]: c for c in json.loads(out)["checks"]}
    assert code == 0 and checks["quadrature_vs_series_bessel"]["worst_residual"] <= 1e-6


def test_verify_failure_exit(capsys, monkeypatch):
    from dunkl_dihedral import b2integral

    monkeypatch.setattr(b2integral, "lambda_chain", lambda k: 0.5)
    code, out, _ = run(capsys, "verify", "--suite", "b2integral")
    assert code == 1 and not json.loads(out)["passed"]


def test_output_is_deterministic(capsys, monkeypatch):
    monkeypatch.setenv("DUNKL_SEED", "7")
    first = run(capsys, "verify", "--suite", "eigen", "--s", "3", "--format", "csv")[1]
    second = run(capsys, "verify", "--suite", "eigen", "--s", "3", "--format", "csv")[1]
    assert first == second
    _, out, _ = run(capsys, "verify", "--suite", "eigen", "--s", "3")
    assert json.loads(out)["params"]["seed"] == 7
