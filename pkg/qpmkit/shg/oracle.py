"""
Coupled-amplitude integration through a domain sequence.

dA_SH/dz = i kappa g(z) A_f^2 exp(i dk z)
dA_f/dz  = i kappa g(z) A_SH conj(A_f) exp(-i dk z)

with g(z) = +-1 the domain sign, integrated by fixed-step RK4 that lands on
every domain boundary. Used to check the Fourier-integral efficiency.
"""

import cmath
import logging
import math
from typing import Optional, Tuple

from qpmkit.config import settings
from qpmkit.dispersion import ExpansionModel, expansion_factor
from qpmkit.errors import ConfigurationError
from qpmkit.grating.models import DomainSequence
from qpmkit.qpm.mismatch import MismatchFunction, SellmeierMismatch
from qpmkit.qpm.models import Process
from .models import CouplingSet

logger = logging.getLogger(__name__)

DEFAULT_INPUT_AMPLITUDE = 1e-3


def integrate_amplitudes(
    sequence: DomainSequence,
    kappa: float,
    delta_k: float,
    fundamental: complex,
    second_harmonic: complex = 0j,
    min_steps: Optional[int] = None,
) -> Tuple[complex, complex]:
    """
    Integrate the amplitudes from z = 0 to the end of the sequence.

    Each domain takes n >= min_steps equal steps, with the step no longer
    than 2 pi / (16 |dk|).

    Args:
        sequence: Domains
        kappa: Coupling (d_eff in pm/V)
        delta_k: Mismatch, 1/m
        fundamental: A_f at z = 0
        second_harmonic: A_SH at z = 0
        min_steps: Minimum steps per domain (default settings.ODE_MIN_STEPS_PER_DOMAIN)

    Returns:
        (A_SH, A_f) at the output facet

    Raises:
        ConfigurationError: For an empty sequence or min_steps < 1
    """
    if not sequence:
        raise ConfigurationError("Cannot integrate through an empty domain sequence")
    min_steps = min_steps or settings.ODE_MIN_STEPS_PER_DOMAIN
    if min_steps < 1:
        raise ConfigurationError(f"Need at least one step per domain, got {min_steps}")

    max_step = 2 * math.pi / (16 * abs(delta_k)) if delta_k else math.inf
    a_sh, a_f = complex(second_harmonic), complex(fundamental)
    z = 0.0
    total_steps = 0

    for length, sign in sequence.domains:
        c = 1j * kappa * sign
        steps = max(min_steps, math.ceil(length / max_step))
        h = length / steps

        def rhs(zz, sh, f):
            phase = cmath.exp(1j * delta_k * zz)
            return c * f * f * phase, c * sh * f.conjugate() / phase

        for n in range(steps):
            zn = z + n * h
            k1s, k1f = rhs(zn, a_sh, a_f)
            k2s, k2f = rhs(zn + 0.5 * h, a_sh + 0.5 * h * k1s, a_f + 0.5 * h * k1f)
            k3s, k3f = rhs(zn + 0.5 * h, a_sh + 0.5 * h * k2s, a_f + 0.5 * h * k2f)
            k4s, k4f = rhs(zn + h, a_sh + h * k3s, a_f + h * k3f)
            a_sh += h / 6.0 * (k1s + 2 * k2s + 2 * k3s + k4s)
            a_f += h / 6.0 * (k1f + 2 * k2f + 2 * k3f + k4f)

        z += length
        total_steps += steps

    logger.debug("RK4: %d domains, %d steps", len(sequence), total_steps)
    return a_sh, a_f


def ode_oracle(
    sequence: DomainSequence,
    process: Process,
    coupling: CouplingSet,
    wavelength: float,
    temperature_c: float,
    input_amplitude: complex = DEFAULT_INPUT_AMPLITUDE,
    expansion: Optional[ExpansionModel] = None,
    mismatch: Optional[MismatchFunction] = None,
) -> complex:
    """
    Second-harmonic output amplitude from the coupled equations.

    The structure is stretched by the expansion factor at T, as in shg_efficiency.

    Returns:
        A_SH at the output facet
    """
    if input_amplitude == 0:
        return 0j
    provider = mismatch or SellmeierMismatch()
    expansion = expansion or getattr(provider, "expansion", None)
    factor = expansion_factor(expansion, temperature_c) if expansion is not None else 1.0
    delta_k = provider(process, wavelength, temperature_c)
    a_sh, _ = integrate_amplitudes(
        sequence.scaled(factor), coupling.d_eff(process), delta_k, input_amplitude
    )
    return a_sh


def oracle_efficiency(
    sequence: DomainSequence,
    process: Process,
    coupling: CouplingSet,
    wavelength: float,
    temperature_c: float,
    input_amplitude: complex = DEFAULT_INPUT_AMPLITUDE,
    expansion: Optional[ExpansionModel] = None,
    mismatch: Optional[MismatchFunction] = None,
) -> float:
    """|A_SH|^2 / |A_f|^4, comparable with shg_efficiency."""
    a_sh = ode_oracle(
        sequence, process, coupling, wavelength, temperature_c, input_amplitude, expansion, mismatch
    )
    return abs(a_sh) ** 2 / abs(input_amplitude) ** 4


def oracle_efficiency_at_mismatch(
    sequence: DomainSequence,
    d_eff: float,
    delta_k: float,
    input_amplitude: complex = DEFAULT_INPUT_AMPLITUDE,
    min_steps: Optional[int] = None,
) -> float:
    """|A_SH|^2 / |A_f|^4 for a given mismatch, no dispersion or expansion."""
    a_sh, _ = integrate_amplitudes(sequence, d_eff, delta_k, input_amplitude, min_steps=min_steps)
    return abs(a_sh) ** 2 / abs(input_amplitude) ** 4
