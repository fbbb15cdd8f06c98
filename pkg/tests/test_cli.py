import csv

import numpy as np
import pytest

from burgers_blowup.cli import fmt, main
from burgers_blowup.problems import resolve_problem
from burgers_blowup.profile import UniversalProfile, eval_w


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_profile_small_grid(tmp_path):
    out = tmp_path / "w.csv"
    assert main(["profile", "--c", "1", "--t-eval", "-1", "--grid", "-2:2:5", "--out", str(out)]) == 0
    rows = _rows(out)
    assert rows[0] == ["x", "w"] and len(rows) == 6
    assert rows[3] == ["0", "0"]
    assert out.read_bytes().count(b"\r") == 0


def test_profile_cusp_value(capsys):
    assert main(["profile", "--t-eval", "0", "--grid", "-8:8:3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == "-8,2"


def test_profile_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert main(["profile", "--c", "0.7", "--t-eval", "-0.3", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("precision", [17, 8])
def test_csv_round_trip(tmp_path, precision):
    out = tmp_path / "w.csv"
    main(["profile", "--t-eval", "-0.5", "--grid", "-3:3:301", "--precision", str(precision),
          "--out", str(out)])
    data = np.array(_rows(out)[1:], dtype=float)
    ref = eval_w(UniversalProfile(1.0), -0.5, np.linspace(-3, 3, 301))
    if precision == 17:
        assert np.array_equal(data[:, 1], ref)
    else:
        np.testing.assert_allclose(data[:, 1], ref, rtol=1e-7, atol=1e-300)
    # text survives a parse / format cycle unchanged
    assert all(fmt(float(s), precision) == s for row in _rows(out)[1:] for s in row)


def test_fmt():
    assert fmt(10.0) == "10" and fmt(1000.0) == "1000"
    assert fmt(-0.0) == "0"
    assert fmt(1 / 3, 4) == "0.3333"


@pytest.mark.parametrize("ic", ["burgers-erf", "gas"])
def test_converge_decreasing(tmp_path, ic):
    out = tmp_path / "c.csv"
    assert main(["converge", "--ic", ic, "--out", str(out)]) == 0
    rows = _rows(out)
    assert rows[0] == ["lambda", "sup_error"] and len(rows) == 5
    errs = [float(r[1]) for r in rows[1:]]
    assert [float(r[0]) for r in rows[1:]] == [1, 10, 100, 1000]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_converge_identity_row(capsys, erf_problem, erf_solution):
    assert main(["converge", "--lambdas", "1"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert len(rows) == 2
    p = erf_problem
    xs = np.linspace(-1, 1, 2001)
    direct = np.max(np.abs(erf_solution(p.frame.t0, xs)
                           - eval_w(UniversalProfile(p.frame.c), p.frame.t0, xs)))
    assert float(rows[1].split(",")[1]) == pytest.approx(direct, rel=1e-12)


def test_converge_dump_and_gnuplot(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["converge", "--lambdas", "1,10", "--grid", "-1:1:11", "--dump-profiles",
                 "--gnuplot", "--out", str(out)]) == 0
    dump = _rows(tmp_path / "c_profiles.csv")
    assert dump[0] == ["lambda", "x", "u_scaled", "w_target"] and len(dump) == 23
    data = np.array(dump[1:], dtype=float)
    sup = [np.max(np.abs(data[data[:, 0] == lam, 2] - data[data[:, 0] == lam, 3])) for lam in (1, 10)]
    errs = [float(r[1]) for r in _rows(out)[1:]]
    np.testing.assert_allclose(sup, errs, rtol=1e-12)
    script = (tmp_path / "c.gp").read_text()
    assert "c.csv" in script


def test_gas_frame(capsys):
    assert main(["gas-frame"]) == 0
    vals = dict(line.split("=") for line in capsys.readouterr().out.split())
    ref = {"t0": -1.155, "x1": 0.183, "rho1": 1.818, "v1": 4.882}
    for key, r in ref.items():
        assert abs(float(vals[key]) - r) < 1e-3
        assert len(vals[key].split(".")[1]) == 6


def test_gas_frame_gamma_three(capsys):
    assert main(["gas-frame", "--gamma", "3"]) == 0
    vals = dict(line.split("=") for line in capsys.readouterr().out.split())
    assert float(vals["t0"]) != pytest.approx(-1.155, abs=1e-3)


def test_soliton_synthetic(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert main(["soliton", "--ic", "synthetic", "--out", str(out)]) == 0
    report = dict(l.split("=") for l in capsys.readouterr().out.split())
    assert float(report["speed"]) == pytest.approx(1.5, abs=1e-9)
    assert float(report["growth_exponent"]) == pytest.approx(1.0, abs=1e-9)
    assert _rows(out)[0] == ["tau", "xi", "amp"]
    traj = _rows(tmp_path / "s_trajectory.csv")
    assert traj[0] == ["tau", "xi_peak", "amp_peak"] and len(traj) == 6
    assert (tmp_path / "s_fit.txt").read_text().startswith("speed=")


def test_soliton_erf_small_grid(capsys):
    assert main(["soliton", "--grid", "-50:50:65536", "--taus", "2,3,4"]) == 0
    report = dict(l.split("=") for l in capsys.readouterr().out.split())
    assert 1.45 <= float(report["speed"]) <= 1.55


@pytest.mark.parametrize("argv, code", [
    (["profile", "--grid", "1:0:5"], 2),
    (["profile", "--grid", "nonsense"], 2),
    (["profile", "--t-eval", "1"], 2),
    (["profile", "--c", "-1"], 2),
    (["converge", "--lambdas", "10,1"], 2),
    (["converge", "--lambdas", "0.5"], 2),
    (["converge", "--t-eval", "0.5"], 2),
    (["converge", "--ic", "nothing"], 2),
    (["profile", "--config", "/nonexistent/cfg"], 2),
    (["soliton", "--ic", "synthetic", "--taus", "1,1,1"], 3),
    (["converge", "--ic", "poly:1"], 4),
    (["converge", "--ic", "poly:-1"], 4),
    (["gas-frame", "--gamma", "0.5"], 2),
    (["soliton", "--grid", "-2:2:1024", "--taus", "0,1,2"], 5),
])
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code
    assert capsys.readouterr().err


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# profile run\ngrid = -2:2:5\nt-eval = 0\nc = 8\n")
    assert main(["profile", "--config", str(cfg)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 6 and lines[2] == "-1,0.5"
    assert main(["profile", "--config", str(cfg), "--c", "1", "--grid", "-8:8:3"]) == 0
    assert capsys.readouterr().out.splitlines()[1] == "-8,2"


def test_bad_config_line(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("grid -1:1:3\n")
    assert main(["profile", "--config", str(cfg)]) == 2
