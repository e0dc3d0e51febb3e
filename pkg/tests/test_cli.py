import csv
import math

import numpy as np
import pytest

from kerrjc.cli import CSV_HEADER, main, parse_real
from kerrjc.entanglement import mode_density, negativity
from kerrjc.model import ModelParams, amplitudes


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def keyvals(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.mark.parametrize("token,value", [
    ("pi/4", math.pi / 4), ("pi/2", math.pi / 2), ("pi", math.pi), ("-pi/4", -math.pi / 4),
    ("3pi/4", 3 * math.pi / 4), ("2*pi", 2 * math.pi), ("0.25", 0.25), ("1e-3", 1e-3),
])
def test_parse_real(token, value):
    assert parse_real(token) == value


class TestPoint:
    def test_vacuum_maximum(self, capsys):
        code, out, _ = run(capsys, "point", "--n1", "0", "--n2", "0", "--eta", "1", "--zeta", "0",
                           "--theta", "pi/4", "--t", "pi/2")
        kv = keyvals(out)
        assert code == 0
        assert float(kv["negativity"]) == pytest.approx(0.5, abs=1e-12)
        assert float(kv["negativity_closed_form"]) == pytest.approx(0.5, abs=1e-12)
        assert "pt_eigenvalues" in kv and "rho[4,8]" in kv

    def test_theta_zero(self, capsys):
        code, out, _ = run(capsys, "point", "--n1", "7", "--n2", "3", "--eta", "2", "--zeta", "4",
                           "--theta", "0", "--t", "1.7")
        assert code == 0 and float(keyvals(out)["negativity"]) == 0

    def test_one_photon_each(self, capsys):
        code, out, _ = run(capsys, "point", "--n1", "1", "--n2", "1", "--eta", "1", "--zeta", "0",
                           "--theta", "pi/4", "--t", "pi/4", "--engine", "both")
        kv = keyvals(out)
        assert float(kv["negativity"]) == pytest.approx(0.353553390593, abs=1e-10)
        assert float(kv["engine_gap"]) < 1e-10

    def test_invalid_parameter(self, capsys):
        code, _, err = run(capsys, "point", "--n1", "0", "--n2", "0", "--eta", "-1", "--zeta", "0",
                           "--theta", "0", "--t", "1")
        assert code == 2 and "eta" in err

    def test_missing_parameter(self, capsys):
        code, _, err = run(capsys, "point", "--n1", "0")
        assert code == 2 and "n2" in err

    def test_bad_number(self, capsys):
        code, _, err = run(capsys, "point", "--eta", "abc")
        assert code == 2 and "--eta" in err


class TestFigures:
    def test_fig1a_csv(self, tmp_path, capsys):
        path = tmp_path / "fig1a.csv"
        code, _, _ = run(capsys, "fig1a", "--output", str(path))
        assert code == 0
        raw = path.read_bytes()
        assert raw.startswith((CSV_HEADER + "\n").encode()) and b"\r" not in raw
        rows = read_csv(path)
        assert len(rows) == 2001
        t = np.array([float(r["T"]) for r in rows])
        n = np.array([float(r["negativity"]) for r in rows])
        assert np.abs(n - 0.5 * np.abs(np.sin(t))).max() < 1e-10

    def test_fig2a_zero_coupling(self, tmp_path, capsys):
        path = tmp_path / "f.csv"
        assert run(capsys, "fig2a", "--output", str(path))[0] == 0
        first = read_csv(path)[0]
        assert float(first["eta"]) == 0 and float(first["negativity"]) == 0

    def test_fig3_theta_maxima(self, tmp_path, capsys):
        path = tmp_path / "f3.csv"
        assert run(capsys, "fig3", "--output", str(path))[0] == 0
        rows = read_csv(path)
        assert len(rows) == 101 * 181
        n = np.array([float(r["negativity"]) for r in rows]).reshape(101, 181)
        theta = np.array([float(r["theta"]) for r in rows[:181]])
        for row in n:
            assert theta[np.argmax(row)] in (theta[45], theta[135])
        assert abs(theta[45] - math.pi / 4) < 1e-15

    def test_round_trip(self, tmp_path, capsys):
        path = tmp_path / "f4.csv"
        assert run(capsys, "fig4b", "--samples", "11", "--output", str(path))[0] == 0
        for r in read_csv(path):
            p = ModelParams(int(r["n1"]), int(r["n2"]), float(r["theta"]), float(r["eta"]),
                            float(r["zeta"]))
            value = negativity(mode_density(amplitudes(p, float(r["T"])))).value
            assert abs(value - float(r["negativity"])) <= 1e-12

    def test_overrides(self, tmp_path, capsys):
        path = tmp_path / "o.csv"
        assert run(capsys, "fig1a", "--theta", "0", "--t-max", "1", "--samples", "5",
                   "--output", str(path))[0] == 0
        rows = read_csv(path)
        assert len(rows) == 5 and float(rows[-1]["T"]) == 1.0
        assert all(float(r["negativity"]) == 0 for r in rows)

    def test_swept_override_rejected(self, capsys):
        code, _, err = run(capsys, "fig1a", "--t", "1")
        assert code == 2 and "T" in err

    def test_empty_grid(self, capsys):
        assert run(capsys, "fig1a", "--samples", "0")[0] == 2

    def test_output_identical_across_workers(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run(capsys, "fig4a", "--samples", "21", "--output", str(a))[0] == 0
        assert run(capsys, "fig4a", "--samples", "21", "--workers", "3", "--output", str(b))[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_io_failure(self, tmp_path, capsys):
        code, _, err = run(capsys, "fig1a", "--samples", "3", "--output", str(tmp_path / "no" / "x.csv"))
        assert code == 3 and "cannot write" in err

    def test_ascii_uses_same_rows(self, capsys, monkeypatch):
        import kerrjc.cli as cli
        calls = []
        real = cli.run_sweep

        def counting(spec, workers=1):
            calls.append(spec)
            return real(spec, workers)

        monkeypatch.setattr(cli, "run_sweep", counting)
        code, out, _ = run(capsys, "fig1a", "--format", "ascii", "--samples", "101")
        assert code == 0 and len(calls) == 1
        assert "negativity vs T" in out and "max 0.5" in out

    def test_ascii_surface(self, capsys):
        code, out, _ = run(capsys, "fig3", "--format", "ascii", "--samples", "6")
        assert code == 0 and "theta" in out and "zeta" in out


class TestSweepCommand:
    def test_generic_two_axis(self, tmp_path, capsys):
        path = tmp_path / "s.csv"
        code, _, _ = run(capsys, "sweep", "--axis", "eta:0:2:5", "--axis2", "theta:0:pi:9",
                         "--n1", "2", "--n2", "2", "--zeta", "1", "--t", "0.5",
                         "--engine", "both", "--output", str(path))
        assert code == 0
        rows = read_csv(path)
        assert len(rows) == 45
        assert max(float(r["engine_gap"]) for r in rows) < 1e-8

    def test_bad_axis(self, capsys):
        assert run(capsys, "sweep", "--axis", "T:0:1")[0] == 2
        assert run(capsys, "sweep", "--axis", "n1:0:1:3")[0] == 2
        assert run(capsys, "sweep", "--axis", "T:1:0:3")[0] == 2

    def test_needs_axis(self, capsys):
        assert run(capsys, "sweep")[0] == 2


class TestConfig:
    def test_flags_win(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# point config\nn1=0\nn2=0\neta=1\nzeta=0\ntheta=pi/4\nt=pi/2  # quarter\n")
        code, out, _ = run(capsys, "point", "--config", str(cfg))
        assert code == 0 and float(keyvals(out)["negativity"]) == pytest.approx(0.5, abs=1e-12)
        code, out, _ = run(capsys, "point", "--config", str(cfg), "--theta", "0")
        assert float(keyvals(out)["negativity"]) == 0

    def test_hyphenated_keys(self, tmp_path, capsys):
        cfg = tmp_path / "c.cfg"
        cfg.write_text("t-max=1\nsamples=3\n")
        path = tmp_path / "o.csv"
        assert run(capsys, "fig1a", "--config", str(cfg), "--output", str(path))[0] == 0
        assert len(read_csv(path)) == 3

    def test_unknown_key(self, tmp_path, capsys):
        cfg = tmp_path / "c.cfg"
        cfg.write_text("colour=blue\n")
        assert run(capsys, "fig1a", "--config", str(cfg))[0] == 2

    def test_bad_value(self, tmp_path, capsys):
        cfg = tmp_path / "c.cfg"
        cfg.write_text("n1=many\n")
        assert run(capsys, "point", "--config", str(cfg))[0] == 2

    def test_missing_file(self, tmp_path, capsys):
        assert run(capsys, "point", "--config", str(tmp_path / "none.cfg"))[0] == 2


class TestAuditValidate:
    def test_audit(self, tmp_path, capsys):
        path = tmp_path / "audit.csv"
        code, out, _ = run(capsys, "audit", "--output", str(path))
        assert code == 0
        assert "printed_norm_defect_T0=0.125" in out
        assert "[UNCONFIRMED] fig1b" in out and "[CONFIRMED] fig1a" in out
        assert "PASS" in out.split("(ii)")[1].splitlines()[0]
        rows = read_csv(path)
        assert {r["grid"] for r in rows} == {"fig1a", "fig1b", "fig1c"}
        assert max(float(r["printed_norm_defect"]) for r in rows if r["grid"] == "fig1a") >= 0.24

    def test_validate_passes(self, capsys):
        code, out, _ = run(capsys, "validate", "--samples", "40")
        assert code == 0 and "all properties pass" in out

    def test_validate_detects_fault(self, capsys):
        code, out, _ = run(capsys, "validate", "--samples", "20", "--inject-fault")
        assert code == 1 and "FAIL oracle" in out

    def test_validate_empty(self, capsys):
        assert run(capsys, "validate", "--samples", "0")[0] == 2

    def test_unknown_command(self, capsys):
        assert run(capsys, "fig9")[0] == 2
