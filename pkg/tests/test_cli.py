"""Command-line behaviour: outputs, exit codes, determinism."""

import json

import pytest

from nctrap.cli import dirac_chain, main

DEFORMED = ["--set", "trap.B_tesla=0.5", "--set", "nc.theta=0.1", "--set", "nc.eta=0.04"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectra_json(capsys):
    code, out, _ = run(capsys, "spectra", *DEFORMED)
    assert code == 0
    rep = json.loads(out)
    assert rep["signal"]["dev_star"] == pytest.approx(0.079212580063462, rel=1e-13)
    assert rep["inputs"]["nc"] == {"theta": 0.1, "eta": 0.04}


def test_spectra_csv(capsys):
    code, out, _ = run(capsys, "spectra", *DEFORMED, "--set", "n_max=4", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,E_h0,J_z_hbar" and len(lines) == 6


def test_spectra_commutative_zero_field(capsys):
    code, _, err = run(capsys, "spectra")
    assert code == 2 and "undefined reduction" in err


def test_spectra_tilde(capsys):
    code, out, _ = run(capsys, "spectra", "--set", "nc.theta=0.1", "--set", "nc.c_squared=2.5")
    assert code == 0
    assert json.loads(out)["tilde"]["dev_tilde"] == pytest.approx(2 / 7, rel=1e-15)


@pytest.mark.parametrize("extra", [["--set", "nc.theta=-1"], ["--set", "n_max=-2"],
                                   ["--set", "trap.omega_rho=0"], ["--set", "unit_system=cgs"],
                                   ["--config", "/nonexistent.json"]])
def test_invalid_config(capsys, extra):
    code, _, err = run(capsys, "spectra", *DEFORMED, *extra)
    assert code == 1 and "invalid configuration" in err


def test_output_file(tmp_path, capsys):
    path = tmp_path / "s.json"
    code, out, _ = run(capsys, "spectra", *DEFORMED, "--output", str(path))
    assert code == 0 and out == "" and json.loads(path.read_text())["levels"]


def test_dirac(capsys):
    code, out, _ = run(capsys, "dirac")
    assert code == 0
    assert "{x1,x2}_D = -1/G" in out
    assert "mu_star = G^2/(2K)" in out
    assert "specialization G=2, K=1:" in out
    assert "  mu_star = 2" in out and "  omega_star = 1/2" in out
    assert out.rstrip().endswith("status: ok")


def test_dirac_chain_no_mismatch_for_other_specializations():
    for G, K in ((3, 5), ("7/2", 1)):
        from fractions import Fraction
        _, bad = dirac_chain(Fraction(G), Fraction(K))
        assert bad == []


def test_dirac_regression_exit(capsys, monkeypatch):
    from nctrap import cli

    monkeypatch.setattr(cli, "dirac_chain", lambda G, K: (["x"], ["forced"]))
    code, _, err = run(capsys, "dirac")
    assert code == 4 and "forced" in err


def test_verify_truncation(capsys):
    code, _, err = run(capsys, "verify", *DEFORMED, "--set", "oracle.n_per_mode=4")
    assert code == 3 and "n_per_mode >= 6" in err


def test_verify_commutative_passes(capsys):
    code, out, _ = run(capsys, "verify", "--set", "trap.B_tesla=0.5", "--set", "oracle.n_per_mode=20")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["checks"]["h2_jz_commute"]


def test_verify_unreachable_tolerance(capsys):
    code, out, err = run(capsys, "verify", "--set", "trap.B_tesla=0.5",
                         "--set", "oracle.n_per_mode=20",
                         "--set", "oracle.tolerances.commutator=1e-20")
    assert code == 5 and not json.loads(out)["checks"]["commutators"]


def test_verify_deformed_reports_h2_jz(capsys):
    code, out, err = run(capsys, "verify", *DEFORMED, "--set", "oracle.n_per_mode=20")
    rep = json.loads(out)
    assert rep["checks"]["commutators"] and rep["checks"]["dual_construction"]
    assert rep["checks"]["spectrum"] and rep["checks"]["reduced_limit"]
    assert not rep["checks"]["h2_jz_commute"]
    assert code == 5 and "h2_jz_commute" in err


def test_sensitivity(capsys):
    code, out, _ = run(capsys, "sensitivity")
    rep = json.loads(out)
    assert code == 0 and len(rep["scenarios"]) == 2
    code, out, _ = run(capsys, "sensitivity", "--format", "csv",
                       "--set", "sensitivity.B_values=[1e-9,1e-10,1e-11]")
    assert code == 0 and len(out.splitlines()) == 4
    assert run(capsys, "sensitivity", "--set", "sensitivity.B_values=[0]")[0] == 1
    assert run(capsys, "sensitivity", "--set", "unit_system=TrapUnits")[0] == 1
    assert run(capsys, "sensitivity", "--set", "sensitivity.rate.n_trapped=1e19")[0] == 1


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--set", "nc.theta=0.1",
                       "--set", 'sweep={"parameter": "nc.c_squared", "log_range": [0.01, 100, 5]}')
    lines = out.splitlines()
    assert code == 0 and len(lines) == 6
    assert lines[0].startswith("parameter,value,status,M,")
    dev = [float(line.split(",")[-1]) for line in lines[1:]]
    assert all(a > b for a, b in zip(dev, dev[1:]))


def test_sweep_marks_undefined_points(capsys):
    code, out, _ = run(capsys, "sweep", "--format", "json",
                       "--set", 'sweep={"parameter": "trap.B_tesla", "values": [0, 0.5, -1]}')
    rows = json.loads(out)["rows"]
    assert code == 0
    assert [r["status"] for r in rows] == ["undefined_reduction", "ok", "invalid:ConfigError"]


def test_sweep_requires_section(capsys):
    assert run(capsys, "sweep")[0] == 1


@pytest.mark.parametrize("argv", [
    ["spectra", *DEFORMED],
    ["spectra", *DEFORMED, "--format", "csv"],
    ["dirac"],
    ["sensitivity"],
    ["sweep", "--set", "nc.theta=0.1",
     "--set", 'sweep={"parameter": "nc.c_squared", "values": [0.5, 2.5]}'],
])
def test_deterministic(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
