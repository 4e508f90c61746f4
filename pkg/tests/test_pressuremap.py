import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socketlab import bundled, pressuremap, signals
from socketlab.errors import FileFormatError


@pytest.fixture(scope="module")
def custom_seq():
    return pressuremap.load_sequence(bundled.data_path("walk_custom.csv"),
                                     bundled.data_path("pressure_masks.csv"))


@pytest.fixture(scope="module")
def own_seq():
    return pressuremap.load_sequence(bundled.data_path("walk_own.csv"),
                                     bundled.data_path("pressure_masks.csv"))


def uniform_sequence(value=10.0, frames=11):
    t = np.linspace(0.0, 1.0, frames)
    grids = np.full((frames, 4, 4), value)
    masks = {"Tibia": ((0, 0), (1, 2), (3, 3)), "Spot": ((2, 2),)}
    return pressuremap.PressureSequence(t, grids, masks)


class TestTwoPointCalibration:
    def test_documented_masses_hand_fit(self):
        cal = pressuremap.two_point_calibration((100.0, 200.0), (13.47, 22.31))
        f1, f2 = 13.47 * 9.81, 22.31 * 9.81
        slope = (f2 - f1) / 100.0
        assert cal.slope == pytest.approx(slope, abs=1e-12)
        assert cal.intercept == pytest.approx(f1 - slope * 100.0, abs=1e-12)
        assert cal.slope == pytest.approx(0.8672, abs=5e-4)
        assert cal.intercept == pytest.approx(45.42, abs=5e-3)

    def test_proportional_readings_give_zero_intercept(self):
        f1, f2 = 10.0 * 9.81, 20.0 * 9.81
        cal = pressuremap.two_point_calibration((f1 / 2, f2 / 2), (10.0, 20.0))
        assert cal.intercept == pytest.approx(0.0, abs=1e-9)
        assert cal.slope == pytest.approx(2.0, abs=1e-12)

    def test_degenerate_inputs_rejected(self):
        with pytest.raises(ValueError, match="readings"):
            pressuremap.two_point_calibration((5.0, 5.0), (1.0, 2.0))
        with pytest.raises(ValueError, match="masses"):
            pressuremap.two_point_calibration((1.0, 2.0), (5.0, 5.0))


class TestRegionCurve:
    def test_uniform_sequence_mask_independent(self):
        seq = uniform_sequence(10.0)
        a = pressuremap.region_curve(seq, "Tibia", (0.0, 1.0))
        b = pressuremap.region_curve(seq, "Spot", (0.0, 1.0))
        np.testing.assert_allclose(a.values, 10.0, atol=0)
        np.testing.assert_allclose(a.values, b.values, atol=0)

    def test_single_cell_mask_returns_trace(self):
        seq = uniform_sequence()
        seq.grids_kpa[:, 2, 2] = np.linspace(0, 100, len(seq.t_s))
        curve = pressuremap.region_curve(seq, "Spot", (0.0, 1.0))
        np.testing.assert_allclose(curve.values, np.linspace(0, 100, 101), atol=1e-9)

    def test_bundled_candidate_tibia_peak(self, custom_seq):
        curve = pressuremap.region_curve(custom_seq, "Tibia", (1.0, 2.0))
        assert signals.peak(curve) == (40.0, 55.0)

    def test_peak_cell_statistic(self):
        seq = uniform_sequence(5.0)
        seq.grids_kpa[:, 0, 0] = 50.0
        curve = pressuremap.region_curve(seq, "Tibia", (0.0, 1.0), statistic="peak_cell")
        np.testing.assert_allclose(curve.values, 50.0, atol=0)

    def test_empty_mask_rejected(self):
        seq = uniform_sequence()
        with pytest.raises(ValueError, match="mask"):
            pressuremap.region_curve(seq, "Nope", (0.0, 1.0))

    def test_bad_statistic_rejected(self):
        with pytest.raises(ValueError, match="statistic"):
            pressuremap.region_curve(uniform_sequence(), "Tibia", (0.0, 1.0), statistic="median")


class TestReductions:
    def test_peak_reduction_published_pairs(self):
        ref = signals.CycleCurve(np.concatenate([[73.0], np.zeros(100)]))
        cand = signals.CycleCurve(np.concatenate([[40.0], np.zeros(100)]))
        assert pressuremap.peak_reduction(ref, cand) == pytest.approx(100 * 33 / 73, abs=1e-9)
        assert round(pressuremap.peak_reduction(ref, cand), 1) == 45.2

    def test_identical_curves_no_reduction(self):
        c = signals.CycleCurve(np.linspace(1, 2, 101))
        assert pressuremap.peak_reduction(c, c) == 0.0
        assert pressuremap.mean_reduction(c, c) == 0.0

    def test_mean_reduction_half(self):
        ref = signals.CycleCurve(np.linspace(1, 2, 101))
        cand = signals.CycleCurve(np.linspace(1, 2, 101) / 2)
        assert pressuremap.mean_reduction(ref, cand) == pytest.approx(50.0, abs=1e-12)

    def test_bundled_fixture_mean_reductions(self, custom_seq, own_seq):
        for region, expected in (("Tibia", 51.0), ("Fibula", 50.0)):
            ref = pressuremap.region_curve(own_seq, region, (1.0, 2.0))
            cand = pressuremap.region_curve(custom_seq, region, (1.0, 2.0))
            assert pressuremap.mean_reduction(ref, cand) == pytest.approx(expected, abs=1e-9)

    @settings(max_examples=50, deadline=None)
    @given(scale=st.floats(0.01, 100.0))
    def test_common_rescaling_invariance(self, scale):
        rng = np.random.default_rng(6)
        ref = signals.CycleCurve(rng.uniform(1, 50, 101))
        cand = signals.CycleCurve(rng.uniform(1, 50, 101))
        base_peak = pressuremap.peak_reduction(ref, cand)
        base_mean = pressuremap.mean_reduction(ref, cand)
        ref2 = signals.CycleCurve(ref.values * scale)
        cand2 = signals.CycleCurve(cand.values * scale)
        assert pressuremap.peak_reduction(ref2, cand2) == pytest.approx(base_peak, abs=1e-9)
        assert pressuremap.mean_reduction(ref2, cand2) == pytest.approx(base_mean, abs=1e-9)

    def test_zero_reference_rejected(self):
        zero = signals.CycleCurve(np.zeros(101))
        with pytest.raises(ValueError):
            pressuremap.peak_reduction(zero, zero)
        with pytest.raises(ValueError):
            pressuremap.mean_reduction(zero, zero)


class TestVelocityNormalizedReduction:
    def test_published_values(self):
        tibia = pressuremap.velocity_normalized_reduction(73.0, 1.39, 40.0, 0.97)
        fibula = pressuremap.velocity_normalized_reduction(69.92, 1.39, 47.97, 0.97)
        assert round(tibia, 1) == 21.5
        assert round(fibula, 1) == 1.7
        # hand oracle
        assert tibia == pytest.approx(100 * (73 / 1.39 - 40 / 0.97) / (73 / 1.39), abs=1e-9)

    def test_equal_normalized_values(self):
        assert pressuremap.velocity_normalized_reduction(50.0, 1.0, 25.0, 0.5) == pytest.approx(0.0, abs=1e-12)

    def test_equal_velocities_reduce_to_peak_reduction(self):
        got = pressuremap.velocity_normalized_reduction(73.0, 1.2, 40.0, 1.2)
        assert got == pytest.approx(100 * 33 / 73, abs=1e-9)

    def test_zero_velocity_rejected(self):
        with pytest.raises(ValueError):
            pressuremap.velocity_normalized_reduction(73.0, 0.0, 40.0, 1.0)


class TestBodyWeightNormalization:
    def test_normalized_tibia_value(self):
        assert pressuremap.bw_normalize(0.01077138, 60.0) == pytest.approx(1.83e-5, rel=1e-9)

    def test_zero_pressure(self):
        assert pressuremap.bw_normalize(0.0, 70.0) == 0.0

    def test_literature_calf_value(self):
        pressure = 2.54e-5 * 75.0 * 9.81
        assert pressuremap.bw_normalize(pressure, 75.0) == pytest.approx(2.54e-5, rel=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(p=st.floats(1e-6, 1.0), m=st.floats(20.0, 150.0))
    def test_round_trip_identity(self, p, m):
        assert pressuremap.bw_normalize(p, m) * m * 9.81 == pytest.approx(p, rel=1e-12)

    def test_nonpositive_mass_rejected(self):
        with pytest.raises(ValueError):
            pressuremap.bw_normalize(0.1, 0.0)


class TestNormalizedComparison:
    def test_published_reductions(self):
        assert pressuremap.normalized_comparison(1.83e-5, 2.00e-5) == pytest.approx(8.5, abs=1e-9)
        assert pressuremap.normalized_comparison(3.47e-5, 4.10e-5) == pytest.approx(15.4, abs=0.05)
        assert pressuremap.normalized_comparison(0.99e-5, 2.54e-5) == pytest.approx(61.0, abs=0.05)

    def test_zero_literature_rejected(self):
        with pytest.raises(ValueError):
            pressuremap.normalized_comparison(1.0, 0.0)


class TestStaticTest:
    def test_target_force_documented_case(self):
        cfg = pressuremap.StaticTestConfig(body_mass_kg=60.0)
        force = pressuremap.static_target_force(cfg)
        assert force == pytest.approx(60.0 * 9.81 * 0.45 * 1.5, abs=1e-9)
        assert force == pytest.approx(397.3, abs=0.01)
        assert abs(force - 398.0) < 1.0  # matches the protocol's quoted figure

    def test_safety_factor_one(self):
        cfg = pressuremap.StaticTestConfig(body_mass_kg=60.0, safety_factor=1.0)
        assert pressuremap.static_target_force(cfg) == pytest.approx(264.87, abs=0.005)

    def test_full_body_weight(self):
        cfg = pressuremap.StaticTestConfig(body_mass_kg=60.0, load_fraction=1.0, safety_factor=1.0)
        assert pressuremap.static_target_force(cfg) == pytest.approx(588.6, abs=1e-9)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            pressuremap.StaticTestConfig(body_mass_kg=0.0)
        with pytest.raises(ValueError):
            pressuremap.StaticTestConfig(body_mass_kg=60.0, load_fraction=1.2)

    def test_bundled_traces_plateaus(self):
        traces = pressuremap.load_static_traces(bundled.data_path("static_custom.csv"))
        expected = {"Tibia": 1.83e-5, "Fibula": 3.47e-5, "Calf": 0.99e-5}
        for region, normalized in expected.items():
            plateau = pressuremap.static_plateau(traces[region])
            assert plateau == pytest.approx(normalized * 588.6, rel=1e-9)

    def test_plateau_requires_positive_trace(self):
        trace = signals.Series(np.arange(100.0), np.zeros(100))
        with pytest.raises(ValueError, match="zero"):
            pressuremap.static_plateau(trace)


class TestFileFormats:
    def test_sequence_round_trip_shape(self, custom_seq):
        assert custom_seq.shape == (6, 8)
        assert len(custom_seq.t_s) == 101
        assert set(custom_seq.region_masks) == {"Tibia", "Fibula"}

    def test_sequence_requires_header(self, tmp_path):
        path = tmp_path / "seq.csv"
        path.write_text("t_s,row,col,kpa\n0,0,0,1\n")
        with pytest.raises(FileFormatError, match="rows=R"):
            pressuremap.load_sequence(path)

    def test_sequence_rejects_out_of_bounds_cell(self, tmp_path):
        path = tmp_path / "seq.csv"
        path.write_text("# rows=2 cols=2\nt_s,row,col,kpa\n0,5,0,1\n")
        with pytest.raises(FileFormatError, match="outside"):
            pressuremap.load_sequence(path)

    def test_mask_header_checked(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("reg,row,col\n")
        with pytest.raises(FileFormatError, match="header"):
            pressuremap.load_masks(path)

    def test_static_traces_header_checked(self, tmp_path):
        path = tmp_path / "s.csv"
        path.write_text("t,a,b,c\n")
        with pytest.raises(FileFormatError, match="header"):
            pressuremap.load_static_traces(path)

    def test_negative_pressure_rejected(self):
        with pytest.raises(ValueError, match=">= 0"):
            pressuremap.PressureSequence(np.array([0.0]), np.array([[[-1.0]]]), {})

    def test_unit_converters(self):
        assert pressuremap.kpa_to_mpa(40.0) == pytest.approx(0.04)
        assert pressuremap.mpa_to_kpa(0.01077138) == pytest.approx(10.77138)
