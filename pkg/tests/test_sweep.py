import math

import numpy as np
import pytest

from kerrjc.errors import ParameterError
from kerrjc.model import ModelParams
from kerrjc.sweep import (FIGURES, Axis, SweepSpec, argmax, engine_gap_report, figure_spec,
                          run_sweep)

PI = math.pi


class TestSpecValidation:
    def test_axis_count(self):
        with pytest.raises(ParameterError):
            Axis("T", 0, 1, 1)

    def test_axis_order(self):
        with pytest.raises(ParameterError):
            Axis("T", 1, 0, 10)

    def test_axis_name(self):
        with pytest.raises(ParameterError):
            Axis("n1", 0, 1, 10)

    def test_swept_and_fixed(self):
        with pytest.raises(ParameterError):
            SweepSpec({"T": 1, "eta": 1, "zeta": 0, "theta": 0, "n1": 0, "n2": 0},
                      Axis("T", 0, 1, 3))

    def test_duplicate_axes(self):
        with pytest.raises(ParameterError):
            SweepSpec({"eta": 1, "zeta": 0, "theta": 0, "n1": 0, "n2": 0},
                      Axis("T", 0, 1, 3), Axis("T", 0, 2, 3))

    def test_missing_fixed(self):
        with pytest.raises(ParameterError) as err:
            SweepSpec({"eta": 1, "zeta": 0, "theta": 0, "n1": 0}, Axis("T", 0, 1, 3))
        assert err.value.field == "n2"

    def test_engine(self):
        with pytest.raises(ParameterError):
            figure_spec("fig1a", engine="magic")

    def test_from_params(self):
        spec = SweepSpec.from_params(ModelParams(1, 2, 0.3, 1.0, 0.0), 2.0, Axis("eta", 0, 1, 3))
        assert spec.fixed == {"T": 2.0, "zeta": 0.0, "theta": 0.3, "n1": 1, "n2": 2}

    def test_offending_point_reported(self):
        spec = SweepSpec({"T": 1, "zeta": 0, "theta": 0, "n1": 0, "n2": 0}, Axis("eta", -1, 1, 5))
        with pytest.raises(ParameterError) as err:
            run_sweep(spec)
        assert err.value.field == "eta" and "grid index (0,)" in str(err.value)

    def test_first_bad_point_two_axes(self):
        spec = SweepSpec({"T": 1, "zeta": 0, "n1": 0, "n2": 0},
                         Axis("theta", 0, 1, 3), Axis("eta", -2, 2, 5))
        with pytest.raises(ParameterError) as err:
            run_sweep(spec)
        assert "grid index (0, 0)" in str(err.value)
        spec = SweepSpec({"T": 1, "theta": 0, "n1": 0, "n2": 0},
                         Axis("eta", 0, 1, 3), Axis("zeta", 0, 2, 3))
        run_sweep(spec)

    def test_invalid_fixed_value(self):
        spec = SweepSpec({"T": 1, "zeta": 0, "theta": 0, "n1": -1, "n2": 0}, Axis("eta", 0, 1, 3))
        with pytest.raises(ParameterError) as err:
            run_sweep(spec)
        assert err.value.field == "n1"

    def test_presets(self):
        shapes = {name: figure_spec(name).shape for name in FIGURES}
        assert shapes["fig1a"] == (2001,) and shapes["fig1b"] == shapes["fig1c"] == (5001,)
        assert shapes["fig2b"] == (1001,) and shapes["fig3"] == (101, 181)
        assert shapes["fig4c"] == (501, 181)


class TestRunSweep:
    def test_fig1a_vacuum(self):
        res = run_sweep(figure_spec("fig1a"))
        t = res.column("T")
        assert t[0] == 0 and t[-1] == 2 * PI and len(t) == 2001
        assert np.abs(res.column("negativity") - 0.5 * np.abs(np.sin(t))).max() < 1e-10
        values, best = argmax(res)
        assert best == pytest.approx(0.5, abs=1e-12)
        assert values[0] == pytest.approx(PI / 2, abs=2 * PI / 2000)

    def test_fig2_zero_coupling(self):
        for name in ("fig2a", "fig2b", "fig2c"):
            row = run_sweep(figure_spec(name)).rows[0]
            assert row.eta == 0 and row.negativity == 0

    def test_theta_scan(self):
        spec = SweepSpec({"T": 1.0, "eta": 1.0, "zeta": 10.0, "n1": 100, "n2": 100},
                         Axis("theta", 0.0, PI, 721))
        n = run_sweep(spec).column("negativity")
        assert max(n[0], n[360], n[720]) < 1e-12
        assert np.argmax(n) in (180, 540)
        assert n[180] == pytest.approx(n[540], abs=1e-12)
        assert np.abs(n[:361] - n[360:]).max() < 1e-12

    def test_rows_lexicographic(self):
        spec = SweepSpec({"T": 1.0, "eta": 1.0, "n1": 1, "n2": 1},
                         Axis("zeta", 0, 1, 3), Axis("theta", 0, 1, 4))
        res = run_sweep(spec)
        assert [r.index for r in res.rows] == [(i, j) for i in range(3) for j in range(4)]
        assert res.grid("negativity").shape == (3, 4)
        assert res.meta["shape"] == (3, 4)

    def test_determinism_across_workers(self):
        spec = SweepSpec({"eta": 1.0, "zeta": 10.0, "n1": 100, "n2": 100},
                         Axis("T", 0, 0.5, 31), Axis("theta", 0, PI, 19), engine="both")
        one = run_sweep(spec).rows
        again = run_sweep(spec).rows
        many = run_sweep(spec, workers=3).rows
        assert one == again == many

    def test_bound_and_gap_on_presets(self):
        for name in ("fig1b", "fig2c", "fig4b"):
            res = run_sweep(figure_spec(name))
            assert res.column("negativity").max() <= 0.5 + 1e-10
            assert np.abs(res.column("negativity") - res.column("negativity_closed_form")).max() < 1e-10


class TestArgmax:
    def test_ties_take_first(self):
        spec = SweepSpec({"eta": 1.0, "zeta": 0.0, "theta": 0.0, "n1": 3, "n2": 3},
                         Axis("T", 0, 2, 11))
        values, best = argmax(run_sweep(spec))
        assert values == (0.0,) and best == 0

    def test_fig1b(self):
        res = run_sweep(figure_spec("fig1b"))
        _, best = argmax(res)
        assert best == pytest.approx(0.5, abs=1e-3)
        # first lobe: N = sin(201 T)/2 for small T, peaking at T = pi/402
        t = res.column("T")
        i = int(np.argmin(np.abs(t - PI / 402)))
        assert res.rows[i].negativity == pytest.approx(0.5, abs=1e-3)
        assert np.abs(res.column("negativity")[:60] - 0.5 * np.sin(201 * t[:60])).max() < 1e-10

    def test_empty(self):
        from kerrjc.sweep import SweepResult
        with pytest.raises(ValueError):
            argmax(SweepResult(figure_spec("fig1a"), []))


class TestEngineGap:
    def test_fig1a(self):
        assert engine_gap_report(figure_spec("fig1a", "both")) < 1e-8

    def test_fig3(self):
        assert engine_gap_report(figure_spec("fig3", "both")) < 1e-8

    def test_zero_coupling_exact(self):
        spec = SweepSpec({"eta": 0.0, "zeta": 3.0, "n1": 5, "n2": 7},
                         Axis("T", 0, 5, 21), Axis("theta", 0, PI, 9), engine="both")
        assert engine_gap_report(spec) <= 1e-12

    def test_requires_both(self):
        with pytest.raises(ParameterError):
            engine_gap_report(figure_spec("fig1a"))
