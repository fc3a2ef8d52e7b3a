"""
Refractive index and thermal expansion evaluation.

All public functions take wavelengths in meters and temperatures in degrees
Celsius. The formulas themselves are written in micrometers, as published.
"""

import logging

import numpy as np

from qpmkit.errors import TemperatureRangeError, WavelengthRangeError
from .models import ExpansionModel, SellmeierModel, ThermoOpticCorrection

logger = logging.getLogger(__name__)

EXPANSION_RANGE_C = (-50.0, 400.0)


def _check_range(model: SellmeierModel, wavelength):
    lo, hi = model.valid_wavelength_range
    lam = np.asarray(wavelength, dtype=float)
    if np.any(lam < lo) or np.any(lam > hi):
        bad = lam[(lam < lo) | (lam > hi)] if lam.ndim else lam
        raise WavelengthRangeError(model.name, float(np.ravel(bad)[0]), (lo, hi))


def sellmeier_index(model: SellmeierModel, wavelength):
    """
    Index of refraction at the model's reference temperature.

    Args:
        model: Index coefficient set
        wavelength: Vacuum wavelength in meters (scalar or array)

    Returns:
        n(l) without temperature correction

    Raises:
        WavelengthRangeError: If the wavelength is outside the valid range
    """
    _check_range(model, wavelength)
    lam2 = (np.asarray(wavelength, dtype=float) * 1e6) ** 2
    c = model.coefficients

    if model.form == "multipole-sellmeier":
        n2 = c[0] - c[-1] * lam2
        for b, pole in zip(c[1:-1:2], c[2:-1:2]):
            n2 = n2 + b / (1.0 - pole / lam2)
    else:
        n2 = c[0] + c[1] / (lam2 - c[2]) - c[3] * lam2

    n = np.sqrt(n2)
    return float(n) if np.ndim(n) == 0 else n


def thermo_optic_shift(correction: ThermoOpticCorrection, wavelength, temperature_c: float):
    """
    Index change dn(l, T) relative to the correction's reference temperature.

    Exactly zero at the reference temperature.
    """
    lam = np.asarray(wavelength, dtype=float) * 1e6
    dt = float(temperature_c) - correction.reference_temperature_c
    if dt == 0.0:
        return 0.0 * lam if lam.ndim else 0.0

    n1 = sum(a / lam ** m for m, a in enumerate(correction.first_order))
    n2 = sum(b / lam ** m for m, b in enumerate(correction.second_order))
    shift = correction.first_order_scale * n1 * dt + correction.second_order_scale * n2 * dt * dt
    return float(shift) if np.ndim(shift) == 0 else shift


def refractive_index(model: SellmeierModel, wavelength, temperature_c: float):
    """
    Temperature-dependent refractive index n(l, T) = n_sellmeier(l) + dn(l, T).

    Args:
        model: Index coefficient set (with optional thermo-optic correction)
        wavelength: Vacuum wavelength in meters
        temperature_c: Crystal temperature in deg C

    Returns:
        Dimensionless refractive index

    Raises:
        WavelengthRangeError: If the wavelength is outside the valid range
    """
    n = sellmeier_index(model, wavelength)
    if model.temperature_correction is None:
        if temperature_c != model.reference_temperature_c:
            logger.debug("Set '%s' has no thermo-optic correction; T ignored", model.name)
        return n
    return n + thermo_optic_shift(model.temperature_correction, wavelength, temperature_c)


def group_index(model: SellmeierModel, wavelength: float, temperature_c: float,
                step: float = 1e-10) -> float:
    """Group index n - l dn/dl by central difference (step in meters)."""
    n = refractive_index(model, wavelength, temperature_c)
    dn = (refractive_index(model, wavelength + step, temperature_c)
          - refractive_index(model, wavelength - step, temperature_c)) / (2 * step)
    return n - wavelength * dn


def expansion_factor(model: ExpansionModel, temperature_c: float) -> float:
    """
    Length ratio L(T)/L(T_ref) of the crystal along the grating.

    Args:
        model: Expansion coefficient set
        temperature_c: Temperature in deg C, within [-50, 400]

    Returns:
        1 + alpha1 dT + alpha2 dT^2, exactly 1.0 at T_ref

    Raises:
        TemperatureRangeError: If the temperature is outside [-50, 400] deg C
    """
    lo, hi = EXPANSION_RANGE_C
    if not lo <= temperature_c <= hi:
        raise TemperatureRangeError(
            f"Temperature {temperature_c} C is outside the expansion model range "
            f"[{lo}, {hi}] C of '{model.name}'"
        )
    dt = temperature_c - model.reference_temperature_c
    if dt == 0.0:
        return 1.0
    return 1.0 + model.alpha1 * dt + model.alpha2 * dt * dt
