"""
Fourier coefficients of chi(2) sign patterns.

G(k) = (1/L) sum_j s_j int_{z_j}^{z_j + l_j} exp(-i k z) dz, evaluated per
domain in closed form, so arbitrary (incommensurate) k need no sampling grid.
"""

import logging
import math
from typing import Optional, Tuple, Union

import numpy as np
from scipy.optimize import minimize_scalar

from qpmkit.errors import DomainError
from .models import DomainSequence

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

_CHUNK = 256


def _coefficients(sequence: DomainSequence, k: np.ndarray) -> np.ndarray:
    lengths = sequence.lengths
    centers = sequence.starts + 0.5 * lengths
    weights = sequence.signs * lengths
    out = np.empty(k.shape, dtype=complex)
    for lo in range(0, k.size, _CHUNK):
        block = k[lo:lo + _CHUNK, None]
        # np.sinc(x) = sin(pi x) / (pi x)
        terms = weights * np.exp(-1j * block * centers) * np.sinc(block * lengths / (2 * np.pi))
        out[lo:lo + _CHUNK] = terms.sum(axis=1)
    return out / sequence.total_length


def fourier_coefficient(sequence: DomainSequence, k: ArrayLike):
    """
    Normalized Fourier coefficient of a domain sequence.

    Args:
        sequence: Nonempty domain sequence
        k: Spatial frequency in 1/m (scalar or array)

    Returns:
        Complex G(k) with |G| <= 1 (complex scalar or array matching k)

    Raises:
        DomainError: If the sequence is empty
    """
    if not sequence:
        raise DomainError("Fourier coefficient of an empty domain sequence is undefined")
    ks = np.atleast_1d(np.asarray(k, dtype=float))
    values = _coefficients(sequence, ks.ravel()).reshape(ks.shape)
    if np.ndim(k) == 0:
        return complex(values[0])
    return values


def periodic_fourier_analytic(order: int, duty: float) -> float:
    """|G| of an infinite periodic grating at order m: 2/(pi m) |sin(pi m D)|."""
    if int(order) != order or order < 1:
        raise DomainError(f"Order must be a positive integer, got {order}")
    if not 0.0 <= duty <= 1.0:
        raise DomainError(f"Duty must be within [0, 1], got {duty}")
    return 2.0 / (math.pi * order) * abs(math.sin(math.pi * order * duty))


def peak_fourier_coefficient(
    sequence: DomainSequence,
    k: float,
    window: Optional[float] = None,
    points: int = 41,
) -> Tuple[float, float]:
    """
    Local maximum of |G| near a spatial frequency.

    A coarse grid over [k - window, k + window] brackets the largest value,
    then a bounded scalar search refines it.

    Args:
        sequence: Nonempty domain sequence
        k: Nominal spatial frequency, 1/m
        window: Half-width of the search, 1/m (default 2 pi / L)
        points: Coarse grid size

    Returns:
        (k at the maximum, |G| there)
    """
    if not sequence:
        raise DomainError("Peak search over an empty domain sequence is undefined")
    if window is None:
        window = 2 * math.pi / sequence.total_length
    grid = np.linspace(k - window, k + window, points)
    magnitudes = np.abs(fourier_coefficient(sequence, grid))
    best = int(np.argmax(magnitudes))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, points - 1)]

    result = minimize_scalar(
        lambda x: -abs(fourier_coefficient(sequence, x)),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": window * 1e-6},
    )
    if -result.fun >= magnitudes[best]:
        return float(result.x), float(-result.fun)
    return float(grid[best]), float(magnitudes[best])
