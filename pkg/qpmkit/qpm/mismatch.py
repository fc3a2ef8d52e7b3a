"""
Phase-mismatch arithmetic for polarization-defined three-wave processes.

Convention: dk = k_SH - k_1 - k_2 (material value, before the grating
compensates it with 2 pi m / period). Processes with a Y-polarized second
harmonic come out negative with KTP dispersion; gratings and periods use |dk|.
"""

import logging
import math
from typing import Callable, Iterable, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from qpmkit.config import settings
from qpmkit.dispersion import (
    DispersionModel, ExpansionModel, default_dispersion, expansion_factor, refractive_index
)
from qpmkit.errors import DegenerateFitError, DomainError
from qpmkit.grating.fourier import periodic_fourier_analytic
from .models import (
    ZYY, ZZZ, YZY, CalibrationPoint, LinearCalibration, OrderMatch, Process
)

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def phase_mismatch(
    process: Process,
    wavelength: float,
    temperature_c: float,
    dispersion: Optional[DispersionModel] = None,
) -> float:
    """
    Material phase mismatch of second-harmonic generation for a process.

    Args:
        process: Polarization triplet
        wavelength: Fundamental vacuum wavelength, m
        temperature_c: Crystal temperature, deg C
        dispersion: Index models (default profile from settings)

    Returns:
        dk = 2pi n_p(l/2)/(l/2) - 2pi [n_1(l) + n_2(l)]/l in 1/m

    Raises:
        WavelengthRangeError: If l or l/2 is outside a model's valid range
    """
    model = dispersion or default_dispersion()
    half = wavelength / 2.0
    n_sh = refractive_index(model.for_axis(process.pump_axis), half, temperature_c)
    # sorted so that YZY and YYZ add the two indices in the same order
    a1, a2 = sorted(process.signal_axes, key=lambda a: a.value)
    n_1 = refractive_index(model.for_axis(a1), wavelength, temperature_c)
    n_2 = refractive_index(model.for_axis(a2), wavelength, temperature_c)
    return TWO_PI * n_sh / half - TWO_PI * (n_1 + n_2) / wavelength


def qpm_period(delta_k: float, order: int = 1) -> float:
    """
    Poling period that compensates a mismatch at a QPM order.

    Args:
        delta_k: Mismatch magnitude, 1/m (must be positive)
        order: Positive QPM order

    Returns:
        period = 2 pi order / dk, m

    Raises:
        DomainError: If dk <= 0 or order < 1
    """
    if not delta_k > 0:
        raise DomainError(
            f"qpm_period needs a positive mismatch, got {delta_k}. "
            f"Pass abs(dk) for processes with negative mismatch"
        )
    if int(order) != order or order < 1:
        raise DomainError(f"QPM order must be a positive integer, got {order}")
    return TWO_PI * order / delta_k


def mismatch_slope(
    process: Process,
    wavelength: float,
    temperature_c: float,
    step: Optional[float] = None,
    dispersion: Optional[DispersionModel] = None,
) -> float:
    """
    Temperature derivative of the signed mismatch by central difference.

    Args:
        process: Polarization triplet
        wavelength: Fundamental wavelength, m
        temperature_c: Temperature, deg C
        step: Finite-difference step in K (default settings.SLOPE_STEP_K)
        dispersion: Index models

    Returns:
        d(dk)/dT in 1/(m K)
    """
    h = step if step is not None else settings.SLOPE_STEP_K
    if not h > 0:
        raise DomainError(f"Finite-difference step must be positive, got {h}")
    up = phase_mismatch(process, wavelength, temperature_c + h, dispersion)
    down = phase_mismatch(process, wavelength, temperature_c - h, dispersion)
    return (up - down) / (2.0 * h)


def calibrate_from_two_points(
    p1: CalibrationPoint,
    p2: CalibrationPoint,
    expansion: Optional[ExpansionModel] = None,
) -> LinearCalibration:
    """
    Linear mismatch-versus-temperature model from two measured QPM points.

    Each design (room-temperature) grating frequency is converted to its value
    at the measured temperature, dk(T) = dk_design / expansion_factor(T), and a
    line is drawn through the two corrected points.

    Args:
        p1: First calibration point
        p2: Second calibration point
        expansion: Expansion model; None means no expansion (factor 1)

    Returns:
        LinearCalibration with slope and extrapolate(T)

    Raises:
        DegenerateFitError: If both points share one temperature
    """
    if p1.temperature_c == p2.temperature_c:
        raise DegenerateFitError(
            f"Calibration points share the temperature {p1.temperature_c} C; "
            f"two distinct temperatures are needed to fit a slope"
        )

    def corrected(point: CalibrationPoint) -> float:
        if expansion is None:
            return point.design_mismatch
        return point.design_mismatch / expansion_factor(expansion, point.temperature_c)

    k1, k2 = corrected(p1), corrected(p2)
    slope = (k2 - k1) / (p2.temperature_c - p1.temperature_c)
    logger.debug("Calibration: corrected points (%.2f, %.6e) (%.2f, %.6e), slope %.4f",
                 p1.temperature_c, k1, p2.temperature_c, k2, slope)
    return LinearCalibration(
        slope=slope,
        intercept_temperature_c=p1.temperature_c,
        intercept_mismatch=k1,
        corrected_points=[(p1.temperature_c, k1), (p2.temperature_c, k2)],
    )


class SellmeierMismatch:
    """Mismatch provider backed by the dispersion models."""

    def __init__(self, dispersion: Optional[DispersionModel] = None):
        self.dispersion = dispersion or default_dispersion()

    @property
    def expansion(self) -> ExpansionModel:
        return self.dispersion.expansion

    def __call__(self, process: Process, wavelength: float, temperature_c: float) -> float:
        return phase_mismatch(process, wavelength, temperature_c, self.dispersion)


class CalibratedMismatch(SellmeierMismatch):
    """
    Mismatch provider that replaces one process by a linear calibration.

    The calibration fixes |dk| at its own wavelength; at other wavelengths
    the dispersion-model difference |dk(l, T)| - |dk(l_cal, T)| is added.
    The sign follows the dispersion model. Other processes fall through.
    """

    def __init__(
        self,
        calibration: LinearCalibration,
        process: Process,
        wavelength: float,
        dispersion: Optional[DispersionModel] = None,
    ):
        super().__init__(dispersion)
        self.calibration = calibration
        self.process = process
        self.wavelength = wavelength

    def __call__(self, process: Process, wavelength: float, temperature_c: float) -> float:
        model_value = phase_mismatch(process, wavelength, temperature_c, self.dispersion)
        if not process.same_interaction(self.process):
            return model_value

        magnitude = abs(self.calibration.extrapolate(temperature_c))
        if wavelength != self.wavelength:
            at_cal = phase_mismatch(process, self.wavelength, temperature_c, self.dispersion)
            magnitude += abs(model_value) - abs(at_cal)
        return math.copysign(magnitude, model_value)


MismatchFunction = Callable[[Process, float, float], float]


def qpm_temperature(
    process: Process,
    period: float,
    wavelength: float,
    window: Tuple[float, float] = (-40.0, 200.0),
    order: int = 1,
    mismatch: Optional[MismatchFunction] = None,
    expansion: Optional[ExpansionModel] = None,
    grid_step: float = 0.5,
) -> Optional[float]:
    """
    Lowest temperature in a window where a grating period phasematches a process.

    Solves |dk(T)| = 2 pi order / (period * expansion_factor(T)).

    Args:
        process: Polarization triplet
        period: Room-temperature poling period, m
        wavelength: Fundamental wavelength, m
        window: (T_min, T_max) in deg C
        order: QPM order
        mismatch: Mismatch provider (default SellmeierMismatch())
        expansion: Expansion model (default: the provider's, if any)
        grid_step: Bracketing grid step, K

    Returns:
        QPM temperature in deg C, or None when no crossing lies in the window
    """
    provider = mismatch or SellmeierMismatch()
    expansion = expansion or getattr(provider, "expansion", None)
    if not period > 0:
        raise DomainError(f"Poling period must be positive, got {period}")
    grating_k = TWO_PI * order / period

    def residual(t: float) -> float:
        factor = expansion_factor(expansion, t) if expansion is not None else 1.0
        return abs(provider(process, wavelength, t)) - grating_k / factor

    lo, hi = window
    grid = np.arange(lo, hi + 0.5 * grid_step, grid_step)
    values = [residual(float(t)) for t in grid]
    for i in range(len(grid) - 1):
        if values[i] == 0.0:
            return float(grid[i])
        if values[i] * values[i + 1] < 0:
            return float(brentq(residual, grid[i], grid[i + 1], xtol=1e-6))
    if values[-1] == 0.0:
        return float(grid[-1])
    logger.debug("No QPM crossing for %s, period %.4g m in %s", process, period, window)
    return None


def concurrence_scan(
    period: float,
    wavelength: float,
    temperature_c: float,
    processes: Iterable[Process] = (ZZZ, ZYY, YZY),
    max_order: int = 9,
    dispersion: Optional[DispersionModel] = None,
    duty: float = 0.5,
) -> List[OrderMatch]:
    """
    For one period, the QPM order nearest to each process.

    Every order up to max_order is ranked by residual mismatch; the match
    carries the order's |G| at the given duty, so an order the duty cancels
    (even orders at 50%) shows up with a zero coefficient.

    Args:
        period: Room-temperature poling period, m
        wavelength: Fundamental wavelength, m
        temperature_c: Temperature, deg C
        processes: Processes to check
        max_order: Highest order considered
        dispersion: Index models
        duty: Duty cycle of the grating

    Returns:
        One OrderMatch per process, in input order
    """
    if max_order < 1:
        raise DomainError(f"max_order must be at least 1, got {max_order}")
    model = dispersion or default_dispersion()
    factor = expansion_factor(model.expansion, temperature_c)
    base_k = TWO_PI / (period * factor)
    matches = []
    for process in processes:
        dk = phase_mismatch(process, wavelength, temperature_c, model)
        order = min(range(1, max_order + 1), key=lambda m: (abs(abs(dk) - m * base_k), m))
        matches.append(OrderMatch(
            process=process.label,
            mismatch=dk,
            order=order,
            residual=abs(dk) - order * base_k,
            period_for_order=qpm_period(abs(dk), order) / factor,
            coefficient=periodic_fourier_analytic(order, duty),
        ))
    return matches


# Two measured YZY QPM points at 1560 nm (room-temperature design mismatch).
YZY_1560_CALIBRATION = (
    CalibrationPoint(temperature_c=248.7, design_mismatch=1.398e5),
    CalibrationPoint(temperature_c=300.1, design_mismatch=1.410e5),
)
YZY_1560_WAVELENGTH_M = 1560e-9


def calibrated_yzy_mismatch(dispersion: Optional[DispersionModel] = None) -> CalibratedMismatch:
    """Mismatch provider with YZY/YYZ taken from the bundled 1560 nm calibration."""
    model = dispersion or default_dispersion()
    calibration = calibrate_from_two_points(*YZY_1560_CALIBRATION, expansion=model.expansion)
    calibration = calibration.model_copy(
        update={"process": YZY.label, "wavelength_m": YZY_1560_WAVELENGTH_M}
    )
    return CalibratedMismatch(calibration, YZY, YZY_1560_WAVELENGTH_M, model)
