import pytest
from hypothesis import given
from hypothesis import strategies as st

from hiersched import (
    AppCalibration,
    CalibrationConstants,
    CalibrationError,
    LatencyEstimate,
    Tier,
    WorkloadSpec,
    calibrate_from_anchor,
    estimate,
    processing_time,
    round_half_up,
    transmission_time,
)

from .conftest import make_topology


def wl(app: str, s: int, comp: int = 7569, unit_bytes: int = 7664) -> WorkloadSpec:
    return WorkloadSpec(
        id=f"{app}-{s}",
        application=app,
        data_size_units=s,
        data_size_bytes=unit_bytes * s,
        model_flops=comp,
        priority_weight=1,
    )


class TestCalibrateFromAnchor:
    def test_fitted_constants_match_hand_algebra(self, topology):
        cal = calibrate_from_anchor("app", 64, 79, 109, 212, topology)
        assert cal.unit_proc_device == pytest.approx(79 / 64)
        assert cal.unit_tx_edge == pytest.approx((109 - 79 * 96 / 140.8) / 64)
        assert cal.unit_tx_cloud == pytest.approx((212 - 79 * 96 / 422.4) / 64)

    def test_anchor_round_trip_exact(self, topology, fitted_calibration):
        # re-estimating each anchor row returns the measured totals
        from .conftest import REFERENCE_ANCHORS

        for app, (device, edge, cloud) in REFERENCE_ANCHORS.items():
            est = estimate(wl(app, 64), topology, fitted_calibration)
            assert est.total(Tier.DEVICE) == pytest.approx(device, abs=1e-9)
            assert est.total(Tier.EDGE) == pytest.approx(edge, abs=1e-9)
            assert est.total(Tier.CLOUD) == pytest.approx(cloud, abs=1e-9)

    def test_inconsistent_anchor_rejected(self, topology):
        # edge total below the scaled device processing implies negative transmission
        with pytest.raises(CalibrationError):
            calibrate_from_anchor("app", 64, 79, 50, 212, topology)

    def test_non_positive_measurement_rejected(self, topology):
        with pytest.raises((CalibrationError, ValueError)):
            calibrate_from_anchor("app", 64, 0, 109, 212, topology)


class TestTransmission:
    def test_device_transmission_is_zero(self, topology, fitted_calibration):
        w = wl("life-death-prediction", 512)
        assert transmission_time(w, Tier.DEVICE, topology, fitted_calibration) == 0.0

    def test_fitted_edge_value(self, topology, fitted_calibration):
        w = wl("life-death-prediction", 64)
        d = transmission_time(w, Tier.EDGE, topology, fitted_calibration)
        assert d == pytest.approx(109 - 79 * 96 / 140.8)

    def test_linear_in_s(self, topology, fitted_calibration):
        one = transmission_time(wl("life-death-prediction", 64), Tier.EDGE, topology, fitted_calibration)
        two = transmission_time(wl("life-death-prediction", 128), Tier.EDGE, topology, fitted_calibration)
        assert two == 2 * one  # s doubling is exact in binary floating point

    def test_physical_mode_formula(self, topology):
        calib = CalibrationConstants(lambda1=1.0, lambda2=1.0)
        w = wl("synthetic", 64, unit_bytes=1000)
        expected = 64 * (0.042 + 1000 / 2.9e6)
        assert transmission_time(w, Tier.CLOUD, topology, calib) == pytest.approx(expected)

    def test_lambda1_scales_physical_but_not_override(self, topology, fitted_calibration):
        w = wl("synthetic", 64, unit_bytes=1000)
        base = transmission_time(w, Tier.EDGE, topology, CalibrationConstants())
        doubled = transmission_time(w, Tier.EDGE, topology, CalibrationConstants(lambda1=2.0))
        assert doubled == pytest.approx(2 * base)

        w2 = wl("life-death-prediction", 64)
        with_l1 = CalibrationConstants(
            lambda1=2.0, per_app_overrides=dict(fitted_calibration.per_app_overrides)
        )
        assert transmission_time(w2, Tier.EDGE, topology, with_l1) == transmission_time(
            w2, Tier.EDGE, topology, fitted_calibration
        )

    def test_missing_link_and_override_is_an_error(self):
        bare = make_topology(with_links=False)
        with pytest.raises(CalibrationError):
            transmission_time(wl("synthetic", 64), Tier.EDGE, bare, CalibrationConstants())


class TestProcessing:
    def test_physical_ratio_tracks_capability(self, topology):
        calib = CalibrationConstants()
        w = wl("synthetic", 64)
        edge = processing_time(w, Tier.EDGE, topology, calib)
        device = processing_time(w, Tier.DEVICE, topology, calib)
        assert edge / device == pytest.approx(96 / 140.8)

    def test_fitted_device_value(self, topology, fitted_calibration):
        w = wl("life-death-prediction", 64)
        assert processing_time(w, Tier.DEVICE, topology, fitted_calibration) == pytest.approx(79.0)

    def test_physical_formula(self, topology):
        w = wl("synthetic", 64, comp=105089)
        got = processing_time(w, Tier.CLOUD, topology, CalibrationConstants(lambda2=1.5))
        assert got == pytest.approx(1.5 * 64 * 105089 / 422.4e9)

    @given(st.sampled_from([1, 2, 4, 8, 16, 32]))
    def test_s_doubling_exact(self, s):
        topology = make_topology()
        calib = CalibrationConstants()
        w1 = wl("synthetic", s)
        w2 = wl("synthetic", 2 * s)
        for tier in Tier:
            assert processing_time(w2, tier, topology, calib) == 2 * processing_time(
                w1, tier, topology, calib
            )


class TestEstimate:
    def test_reference_row(self, topology, fitted_calibration):
        est = estimate(wl("short-of-breath-alerts", 64, comp=105089), topology, fitted_calibration)
        assert round_half_up(est.total(Tier.CLOUD)) == 2091
        assert round_half_up(est.total(Tier.EDGE)) == 1279
        assert round_half_up(est.total(Tier.DEVICE)) == 1394

    def test_totals_are_sums(self, topology, fitted_calibration):
        est = estimate(wl("phenotype-classification", 256), topology, fitted_calibration)
        for tier in Tier:
            assert est.total(tier) == est.transmission[tier] + est.processing[tier]

    @given(st.integers(1, 64))
    def test_homogeneous_in_s(self, k):
        topology = make_topology()
        calib = CalibrationConstants()
        base = estimate(wl("synthetic", 7), topology, calib)
        scaled = estimate(wl("synthetic", 7 * k), topology, calib)
        for tier in Tier:
            assert scaled.total(tier) == pytest.approx(k * base.total(tier))

    def test_estimate_validates_device_transmission(self):
        with pytest.raises(ValueError):
            LatencyEstimate(
                transmission={Tier.DEVICE: 1.0, Tier.EDGE: 1.0, Tier.CLOUD: 1.0},
                processing={Tier.DEVICE: 1.0, Tier.EDGE: 1.0, Tier.CLOUD: 1.0},
            )


class TestRounding:
    @pytest.mark.parametrize("value,expected", [(0.0, 0), (0.4, 0), (0.5, 1), (1.5, 2), (2.4, 2), (194.045, 194)])
    def test_round_half_up(self, value, expected):
        assert round_half_up(value) == expected

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            round_half_up(-0.5)


def test_app_calibration_requires_positive_constants():
    with pytest.raises(ValueError):
        AppCalibration(unit_proc_device=0.0, unit_tx_edge=1.0, unit_tx_cloud=1.0)
