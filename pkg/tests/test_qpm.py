import math

import pytest

from qpmkit.dispersion import expansion_factor
from qpmkit.errors import DegenerateFitError, DomainError
from qpmkit.grating import periodic_fourier_analytic
from qpmkit.qpm import (
    YYZ, YZY, YZY_1560_CALIBRATION, YZY_1560_WAVELENGTH_M, ZYY, ZZZ, CalibratedMismatch,
    CalibrationPoint, Process, SellmeierMismatch, calibrate_from_two_points,
    calibrated_yzy_mismatch, concurrence_scan, mismatch_slope, phase_mismatch, qpm_period,
    qpm_temperature
)

LAMBDA = 1560e-9


def test_process_labels():
    assert Process.from_label("zyy") == ZYY
    assert YZY.label == "YZY"
    assert YZY.same_interaction(YYZ)
    assert not ZZZ.same_interaction(ZYY)
    with pytest.raises(ValueError):
        Process.from_label("XYZ")
    with pytest.raises(ValueError):
        Process.from_label("ZZ")


def test_reference_mismatches(dispersion):
    assert phase_mismatch(ZZZ, LAMBDA, 25.0, dispersion) == pytest.approx(2.510e5, rel=0.02)
    assert phase_mismatch(ZYY, LAMBDA, 25.0, dispersion) == pytest.approx(9.061e5, rel=0.02)


def test_signal_permutation_symmetry(dispersion):
    for t in (25.0, 40.0, 150.0):
        assert phase_mismatch(YZY, LAMBDA, t, dispersion) == phase_mismatch(YYZ, LAMBDA, t, dispersion)


def test_mismatch_ordering(dispersion):
    for t in (25.0, 32.5, 40.0):
        zzz = phase_mismatch(ZZZ, LAMBDA, t, dispersion)
        zyy = phase_mismatch(ZYY, LAMBDA, t, dispersion)
        yzy = phase_mismatch(YZY, LAMBDA, t, dispersion)
        assert zyy > zzz > abs(yzy)
        # Y-polarized second harmonic
        assert yzy < 0


def test_mismatch_is_monotone_in_temperature(dispersion):
    for process in (ZZZ, ZYY, YZY):
        values = [phase_mismatch(process, LAMBDA, float(t), dispersion) for t in range(0, 321, 20)]
        steps = [b - a for a, b in zip(values, values[1:])]
        assert all(s > 0 for s in steps) or all(s < 0 for s in steps)


def test_qpm_period():
    assert qpm_period(1.348e5) * 1e6 == pytest.approx(46.61, abs=0.01)
    assert qpm_period(2.510e5) * 1e6 == pytest.approx(25.03, abs=0.01)
    assert qpm_period(1.348e5, order=3) == pytest.approx(3 * qpm_period(1.348e5), rel=1e-15)
    period = 45.65e-6
    assert qpm_period(2 * math.pi / period) == pytest.approx(period, rel=1e-12)


def test_qpm_period_rejects_bad_input():
    with pytest.raises(DomainError):
        qpm_period(0.0)
    with pytest.raises(DomainError):
        qpm_period(-1.36e5)
    with pytest.raises(DomainError):
        qpm_period(1.36e5, order=0)


def test_mismatch_slope(dispersion):
    slope = mismatch_slope(ZZZ, LAMBDA, 30.0, dispersion=dispersion)
    assert math.isfinite(slope) and slope != 0.0
    halved = mismatch_slope(ZZZ, LAMBDA, 30.0, step=0.05, dispersion=dispersion)
    assert halved == pytest.approx(slope, rel=1e-3)
    with pytest.raises(DomainError):
        mismatch_slope(ZZZ, LAMBDA, 30.0, step=0.0, dispersion=dispersion)


def test_yzy_slope_sign_agrees_with_calibration(dispersion):
    calibration = calibrate_from_two_points(*YZY_1560_CALIBRATION, expansion=dispersion.expansion)
    dk = phase_mismatch(YZY, LAMBDA, 270.0, dispersion)
    slope = mismatch_slope(YZY, LAMBDA, 270.0, dispersion=dispersion)
    # d|dk|/dT = sign(dk) * d(dk)/dT
    assert math.copysign(1.0, dk) * slope > 0
    assert calibration.slope > 0


def test_calibration_with_expansion(dispersion):
    calibration = calibrate_from_two_points(*YZY_1560_CALIBRATION, expansion=dispersion.expansion)
    assert calibration.slope == pytest.approx(22.34, rel=0.05)
    at_40 = calibration.extrapolate(40.0)
    assert at_40 == pytest.approx(1.348e5, rel=0.005)
    assert qpm_period(at_40) * 1e6 == pytest.approx(46.6, abs=0.1)
    assert calibration(40.0) == at_40


def test_calibration_without_expansion():
    calibration = calibrate_from_two_points(*YZY_1560_CALIBRATION, expansion=None)
    assert calibration.slope == pytest.approx(23.35, rel=0.005)
    assert calibration.slope == pytest.approx((1.410e5 - 1.398e5) / (300.1 - 248.7), rel=1e-12)


def test_calibration_equal_temperatures():
    p = CalibrationPoint(temperature_c=100.0, design_mismatch=1.4e5)
    q = CalibrationPoint(temperature_c=100.0, design_mismatch=1.5e5)
    with pytest.raises(DegenerateFitError):
        calibrate_from_two_points(p, q)


def test_calibration_point_validation():
    with pytest.raises(ValueError):
        CalibrationPoint(temperature_c=25.0, design_mismatch=-1.0)


def test_calibrated_provider(dispersion):
    provider = calibrated_yzy_mismatch(dispersion)
    assert isinstance(provider, CalibratedMismatch)
    value = provider(YZY, YZY_1560_WAVELENGTH_M, 40.0)
    assert value < 0
    assert abs(value) == pytest.approx(1.348e5, rel=0.005)
    assert provider(YYZ, YZY_1560_WAVELENGTH_M, 40.0) == value
    # other processes fall through to the dispersion models
    assert provider(ZZZ, LAMBDA, 40.0) == SellmeierMismatch(dispersion)(ZZZ, LAMBDA, 40.0)


def test_calibrated_provider_off_wavelength(dispersion):
    provider = calibrated_yzy_mismatch(dispersion)
    shifted = abs(provider(YZY, 1565e-9, 40.0))
    model_shift = (abs(phase_mismatch(YZY, 1565e-9, 40.0, dispersion))
                   - abs(phase_mismatch(YZY, LAMBDA, 40.0, dispersion)))
    assert shifted == pytest.approx(abs(provider(YZY, LAMBDA, 40.0)) + model_shift, rel=1e-12)


def test_qpm_temperature_round_trip(dispersion):
    provider = SellmeierMismatch(dispersion)
    target_t = 40.0
    factor = expansion_factor(dispersion.expansion, target_t)
    period = qpm_period(abs(provider(YZY, LAMBDA, target_t))) * factor
    found = qpm_temperature(YZY, period, LAMBDA, window=(0.0, 100.0), mismatch=provider)
    assert found == pytest.approx(target_t, abs=1e-3)


def test_qpm_temperature_outside_window(dispersion):
    provider = SellmeierMismatch(dispersion)
    assert qpm_temperature(ZZZ, 46.3e-6, LAMBDA, window=(0.0, 100.0), mismatch=provider) is None


def test_concurrence_scan_single_period(dispersion):
    dk_zzz = phase_mismatch(ZZZ, LAMBDA, 25.0, dispersion)
    period = qpm_period(dk_zzz)
    matches = concurrence_scan(period, LAMBDA, 25.0, processes=(ZZZ, ZYY), dispersion=dispersion)
    assert [m.process for m in matches] == ["ZZZ", "ZYY"]
    assert matches[0].order == 1
    assert matches[0].residual == pytest.approx(0.0, abs=1e-6)
    assert matches[0].coefficient == pytest.approx(2 / math.pi)
    zyy = matches[1]
    assert abs(zyy.residual) <= math.pi / period * 1.001
    assert zyy.period_for_order == pytest.approx(qpm_period(zyy.mismatch, zyy.order), rel=1e-12)
    assert zyy.coefficient == pytest.approx(periodic_fourier_analytic(zyy.order, 0.5), abs=1e-15)


def test_concurrence_scan_single_period_1490(dispersion):
    period = 45.65e-6
    zzz, zyy, yzy = concurrence_scan(period, 1490e-9, 25.0, dispersion=dispersion, duty=0.25)
    assert (zzz.order, zyy.order, yzy.order) == (2, 7, 1)
    assert abs(zzz.residual) < 5e3
    assert abs(zyy.residual) < 1e4
    assert abs(yzy.residual) < 1e4
    assert zzz.coefficient == pytest.approx(1 / math.pi)
    assert zyy.coefficient == pytest.approx(2 / (7 * math.pi) * math.sin(math.pi / 4))

    # at 50% duty the same period still lands ZZZ on its cancelled second order
    zzz_half, = concurrence_scan(period, 1490e-9, 25.0, processes=(ZZZ,), dispersion=dispersion)
    assert zzz_half.order == 2
    assert zzz_half.coefficient == pytest.approx(0.0, abs=1e-15)


def test_concurrence_scan_rejects_bad_arguments(dispersion):
    with pytest.raises(DomainError):
        concurrence_scan(46e-6, LAMBDA, 25.0, max_order=0, dispersion=dispersion)
    with pytest.raises(DomainError):
        concurrence_scan(46e-6, LAMBDA, 25.0, dispersion=dispersion, duty=1.5)
