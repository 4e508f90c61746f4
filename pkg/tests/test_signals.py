import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socketlab import signals
from socketlab.signals import _kernels_py

BACKENDS = [_kernels_py]
try:
    from socketlab.signals import _ckernels

    BACKENDS.append(_ckernels)
except ImportError:
    pass

backend = pytest.fixture(params=BACKENDS, ids=lambda m: m.BACKEND)(lambda request: request.param)


class TestKernelBackends:
    def test_dispatcher_picked_a_backend(self):
        assert signals.BACKEND in ("python", "compiled")

    def test_moving_mean_backends_agree(self, backend):
        rng = np.random.default_rng(7)
        v = rng.normal(size=257)
        for window in (3, 9, 45, 257, 501):
            np.testing.assert_allclose(
                backend.moving_mean_core(v, window),
                _kernels_py.moving_mean_core(v, window),
                rtol=0, atol=1e-12,
            )

    def test_interp_backends_agree(self, backend):
        rng = np.random.default_rng(8)
        t = np.sort(rng.uniform(0, 10, size=50))
        t[0], t[-1] = 0.0, 10.0
        v = rng.normal(size=50)
        tq = np.linspace(0, 10, 333)
        np.testing.assert_allclose(
            backend.interp_core(t, v, tq), np.interp(tq, t, v), rtol=0, atol=1e-12
        )

    def test_pearson_backends_agree(self, backend):
        rng = np.random.default_rng(9)
        a, b = rng.normal(size=101), rng.normal(size=101)
        assert backend.pearson_core(a, b) == pytest.approx(_kernels_py.pearson_core(a, b), abs=1e-13)

    def test_pearson_zero_variance_is_nan(self, backend):
        assert math.isnan(backend.pearson_core(np.ones(10), np.arange(10.0)))


class TestSeries:
    def test_rejects_non_increasing_time(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            signals.Series([0.0, 1.0, 1.0], [1, 2, 3])

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError, match="equal length"):
            signals.Series([0.0, 1.0], [1.0])

    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="at least one"):
            signals.Series([], [])


class TestMovingMean:
    def test_constant_series_unchanged(self):
        s = signals.Series(np.arange(100.0), np.full(100, 4.25))
        out = signals.moving_mean(s, 0.45)
        np.testing.assert_allclose(out.v, 4.25, rtol=0, atol=1e-12)

    def test_window_rule_matches_documented_case(self):
        # factor 0.45 over 1000 samples -> 45-sample window
        assert signals.smoothing_window(0.45, 1000) == 45
        assert signals.smoothing_window(0.45, 10) == 3  # floor at 3
        assert signals.smoothing_window(1.0, 1000) % 2 == 1

    def test_impulse_spreads_to_plateau_of_height_one_over_w(self):
        n = 1001
        v = np.zeros(n)
        v[500] = 1.0
        s = signals.Series(np.arange(float(n)), v)
        w = signals.smoothing_window(0.45, n)
        out = signals.moving_mean(s, 0.45)
        half = w // 2
        np.testing.assert_allclose(out.v[500 - half : 500 + half + 1], 1.0 / w, rtol=1e-12)
        assert out.v[500 - half - 1] == 0.0

    def test_output_length_and_units_preserved(self):
        s = signals.Series([0, 1, 2, 3], [1.0, 2.0, 3.0, 4.0], units="N")
        out = signals.moving_mean(s, 0.5)
        assert len(out) == 4 and out.units == "N"

    def test_factor_out_of_range(self):
        s = signals.Series([0, 1], [1.0, 2.0])
        for bad in (0.0, -0.1, 1.5):
            with pytest.raises(ValueError):
                signals.moving_mean(s, bad)

    def test_mean_preserved_on_interior(self):
        rng = np.random.default_rng(3)
        v = rng.normal(size=400)
        s = signals.Series(np.arange(400.0), v)
        out = signals.moving_mean(s, 0.3)
        w = signals.smoothing_window(0.3, 400)
        half = w // 2
        # away from the edges a moving mean redistributes but keeps totals
        assert out.v[half:-half].mean() == pytest.approx(
            np.convolve(v, np.ones(w) / w, mode="valid").mean(), abs=1e-12
        )


class TestResampleCycle:
    def test_linear_ramp_hits_percent_grid(self):
        s = signals.Series(np.linspace(0, 1, 11), np.linspace(0, 1, 11))
        curve = signals.resample_cycle(s, 0.0, 1.0)
        np.testing.assert_allclose(curve.values, np.arange(101) / 100.0, atol=1e-15)

    def test_constant_series_gives_constant_curve(self):
        s = signals.Series([0.0, 2.0], [3.3, 3.3])
        curve = signals.resample_cycle(s, 0.0, 2.0)
        np.testing.assert_allclose(curve.values, 3.3, atol=0)

    def test_matches_dense_interpolation_oracle(self):
        rng = np.random.default_rng(11)
        t = np.sort(rng.uniform(0, 5, 40))
        t[0], t[-1] = 0.0, 5.0
        v = rng.normal(size=40)
        s = signals.Series(t, v)
        curve = signals.resample_cycle(s, 0.5, 4.5)
        oracle = np.interp(np.linspace(0.5, 4.5, 101), t, v)
        np.testing.assert_allclose(curve.values, oracle, atol=1e-12)

    def test_cycle_outside_span_rejected(self):
        s = signals.Series([0.0, 1.0], [0.0, 1.0])
        with pytest.raises(ValueError, match="outside"):
            signals.resample_cycle(s, 0.0, 2.0)
        with pytest.raises(ValueError, match="earlier"):
            signals.resample_cycle(s, 1.0, 1.0)

    def test_affine_signal_reproduced_exactly(self):
        s = signals.Series([0.0, 10.0], [2.0, 32.0])  # v = 3t + 2
        curve = signals.resample_cycle(s, 1.0, 9.0)
        expected = 3.0 * np.linspace(1.0, 9.0, 101) + 2.0
        np.testing.assert_allclose(curve.values, expected, atol=1e-9)


def _curve(values):
    return signals.CycleCurve(np.asarray(values, dtype=float))


class TestPearson:
    def test_identical_curves(self):
        c = _curve(np.sin(np.linspace(0, 3, 101)))
        assert signals.pearson(c, c) == pytest.approx(1.0, abs=1e-12)

    def test_negated_zero_mean_curves(self):
        v = np.sin(np.linspace(0, 2 * np.pi, 101))
        v -= v.mean()
        assert signals.pearson(_curve(v), _curve(-v)) == pytest.approx(-1.0, abs=1e-12)

    def test_controlled_noise_construction_hits_target(self):
        # Build b = centered(a) + c * e with e orthogonal to centered(a);
        # the correlation is then exactly 1 / sqrt(1 + c^2 |e|^2 / |a_c|^2).
        target = 0.9443
        a = np.sin(np.linspace(0, np.pi, 101)) * 40
        ac = a - a.mean()
        noise = np.sin(np.linspace(0, 13.7, 101))
        n = noise - noise.mean()
        e = n - (n @ ac) / (ac @ ac) * ac
        c = np.linalg.norm(ac) / np.linalg.norm(e) * math.sqrt(1 / target**2 - 1)
        b = ac + c * e
        assert signals.pearson(_curve(a), _curve(b)) == pytest.approx(target, abs=1e-6)

    def test_zero_variance_rejected(self):
        with pytest.raises(ValueError, match="zero variance"):
            signals.pearson(_curve(np.ones(101)), _curve(np.arange(101.0)))

    def test_window_selects_samples(self):
        v = np.arange(101.0)
        w = v.copy()
        w[70:] = -w[70:]  # divergence outside the window only
        assert signals.pearson(_curve(v), _curve(w), (0, 63)) == pytest.approx(1.0, abs=1e-12)

    def test_empty_window_rejected(self):
        c = _curve(np.arange(101.0))
        with pytest.raises(ValueError):
            signals.pearson(c, c, (50.2, 50.8))

    @settings(max_examples=60, deadline=None)
    @given(scale=st.floats(0.01, 50), offset=st.floats(-100, 100))
    def test_affine_invariance(self, scale, offset):
        rng = np.random.default_rng(5)
        a = rng.normal(size=101)
        b = rng.normal(size=101) + 0.5 * a
        base = signals.pearson(_curve(a), _curve(b))
        transformed = signals.pearson(_curve(a), _curve(scale * b + offset))
        assert transformed == pytest.approx(base, abs=1e-9)


class TestPeak:
    def test_peak_and_percent(self):
        v = np.zeros(101)
        v[55] = 40.0
        assert signals.peak(_curve(v)) == (40.0, 55.0)

    def test_first_occurrence_on_ties(self):
        assert signals.peak(_curve(np.full(101, 2.5))) == (2.5, 0.0)

    def test_offset_shifts_value_not_percent(self):
        rng = np.random.default_rng(12)
        v = rng.normal(size=101)
        base = signals.peak(_curve(v))
        shifted = signals.peak(_curve(v + 3.0))
        assert shifted.percent == base.percent
        assert shifted.value == pytest.approx(base.value + 3.0, abs=1e-12)


class TestLinearFit:
    def test_simple_line(self):
        x = np.arange(10.0)
        slope, intercept, r2 = signals.linear_fit(x, 2 * x + 1)
        assert (slope, intercept) == (pytest.approx(2, abs=1e-12), pytest.approx(1, abs=1e-12))
        assert r2 == pytest.approx(1.0, abs=1e-12)

    def test_loadcell_line_recovered(self):
        x = np.linspace(0.0, 2.8, 9)
        y = 104.44 * x + 3.0086
        slope, intercept, r2 = signals.linear_fit(x, y)
        assert slope == pytest.approx(104.44, rel=1e-9)
        assert intercept == pytest.approx(3.0086, rel=1e-9)
        assert r2 == pytest.approx(1.0, abs=1e-12)

    def test_vertical_data_rejected(self):
        with pytest.raises(ValueError, match="x values are equal"):
            signals.linear_fit([2.0, 2.0, 2.0], [1.0, 2.0, 3.0])

    def test_needs_two_points(self):
        with pytest.raises(ValueError, match="two points"):
            signals.linear_fit([1.0], [1.0])

    def test_noisy_fit_r_squared_below_one(self):
        rng = np.random.default_rng(4)
        x = np.arange(50.0)
        y = 3 * x + rng.normal(scale=5.0, size=50)
        _, _, r2 = signals.linear_fit(x, y)
        assert 0.0 < r2 < 1.0
