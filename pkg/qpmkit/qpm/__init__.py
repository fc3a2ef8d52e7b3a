"""
QPM core package

Material phase mismatches of polarization-defined processes, mismatch/period
conversion and temperature calibration with thermal-expansion corrections.
"""

from .models import (
    PROCESS_LABELS, YYZ, YZY, ZYY, ZZZ, CalibrationPoint, LinearCalibration, OrderMatch, Process
)
from .mismatch import (
    YZY_1560_CALIBRATION,
    YZY_1560_WAVELENGTH_M,
    CalibratedMismatch,
    MismatchFunction,
    SellmeierMismatch,
    calibrate_from_two_points,
    calibrated_yzy_mismatch,
    concurrence_scan,
    mismatch_slope,
    phase_mismatch,
    qpm_period,
    qpm_temperature,
)

__all__ = [
    "PROCESS_LABELS",
    "YYZ",
    "YZY",
    "ZYY",
    "ZZZ",
    "CalibrationPoint",
    "LinearCalibration",
    "OrderMatch",
    "Process",
    "YZY_1560_CALIBRATION",
    "YZY_1560_WAVELENGTH_M",
    "CalibratedMismatch",
    "MismatchFunction",
    "SellmeierMismatch",
    "calibrate_from_two_points",
    "calibrated_yzy_mismatch",
    "concurrence_scan",
    "mismatch_slope",
    "phase_mismatch",
    "qpm_period",
    "qpm_temperature",
]
