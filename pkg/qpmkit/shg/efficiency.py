"""
Plane-wave, undepleted-pump SHG efficiency of poled structures.

eta = (d_eff L_T |G_T(dk)|)^2 in arbitrary units, where the structure is
stretched by the thermal expansion factor at T. Stretching every domain by f
maps G(k) to G(k f), so G_T(dk) = G(dk f) and L_T = L f.
"""

import logging
import math
from typing import Dict, Optional

import numpy as np

from qpmkit.dispersion import ExpansionModel, expansion_factor
from qpmkit.grating.fourier import fourier_coefficient, peak_fourier_coefficient
from qpmkit.grating.models import DomainSequence
from qpmkit.helpers import ParallelEvaluator
from qpmkit.qpm.mismatch import MismatchFunction, SellmeierMismatch
from qpmkit.qpm.models import Process
from .models import CouplingSet, EfficiencyCurve, ProcessTarget, SweepSpec

logger = logging.getLogger(__name__)


def _provider(mismatch: Optional[MismatchFunction]) -> MismatchFunction:
    return mismatch or SellmeierMismatch()


def _expansion(mismatch: MismatchFunction, expansion: Optional[ExpansionModel]):
    return expansion or getattr(mismatch, "expansion", None)


def _factor(expansion: Optional[ExpansionModel], temperature_c: float) -> float:
    return expansion_factor(expansion, temperature_c) if expansion is not None else 1.0


def efficiency_at_mismatch(
    sequence: DomainSequence,
    d_eff: float,
    delta_k: float,
    factor: float = 1.0,
) -> float:
    """(d_eff L f |G(dk f)|)^2 for a structure stretched by factor f."""
    if not sequence:
        return 0.0
    length = sequence.total_length * factor
    g = fourier_coefficient(sequence, delta_k * factor)
    return (d_eff * length * abs(g)) ** 2


def shg_efficiency(
    sequence: DomainSequence,
    process: Process,
    coupling: CouplingSet,
    wavelength: float,
    temperature_c: float,
    expansion: Optional[ExpansionModel] = None,
    mismatch: Optional[MismatchFunction] = None,
) -> float:
    """
    Relative SHG efficiency of a structure for one process.

    Args:
        sequence: Poled structure at the reference temperature
        process: Process
        coupling: Nonlinear coefficients
        wavelength: Fundamental wavelength, m
        temperature_c: Temperature, deg C
        expansion: Expansion model (default: the mismatch provider's)
        mismatch: Mismatch provider (default SellmeierMismatch())

    Returns:
        eta in (pm/V * m)^2; 0 for an empty structure
    """
    if not sequence:
        return 0.0
    provider = _provider(mismatch)
    factor = _factor(_expansion(provider, expansion), temperature_c)
    delta_k = provider(process, wavelength, temperature_c)
    return efficiency_at_mismatch(sequence, coupling.d_eff(process), delta_k, factor)


def peak_efficiency(
    target: ProcessTarget,
    coupling: CouplingSet,
    wavelength: float,
    temperature_c: float,
    expansion: Optional[ExpansionModel] = None,
    mismatch: Optional[MismatchFunction] = None,
    window: Optional[float] = None,
) -> float:
    """
    Efficiency at the |G| maximum nearest the process mismatch.

    This is the efficiency reached once the process is tuned onto its peak,
    independent of small offsets between a structure's peak and dk.

    Args:
        target: Structure, process and optional mismatch override
        coupling: Nonlinear coefficients
        wavelength: Fundamental wavelength, m
        temperature_c: Temperature, deg C
        expansion: Expansion model
        mismatch: Mismatch provider
        window: Search half-width in 1/m (default 4 pi / L_T)

    Returns:
        Peak eta in (pm/V * m)^2
    """
    sequence = target.sequence
    if not sequence:
        return 0.0
    provider = _provider(mismatch)
    factor = _factor(_expansion(provider, expansion), temperature_c)
    delta_k = target.mismatch
    if delta_k is None:
        delta_k = provider(target.process, wavelength, temperature_c)
    length = sequence.total_length * factor
    # in the unstretched frame k' = k f and the window scales the same way
    window = (window or 4 * math.pi / length) * factor
    _, magnitude = peak_fourier_coefficient(sequence, abs(delta_k) * factor, window)
    return (coupling.d_eff(target.process) * length * magnitude) ** 2


def efficiency_ratio(
    numerator: ProcessTarget,
    denominator: ProcessTarget,
    coupling: CouplingSet,
    wavelength: float,
    temperature_c: float,
    expansion: Optional[ExpansionModel] = None,
    mismatch: Optional[MismatchFunction] = None,
) -> float:
    """Ratio of two peak efficiencies."""
    top = peak_efficiency(numerator, coupling, wavelength, temperature_c, expansion, mismatch)
    bottom = peak_efficiency(denominator, coupling, wavelength, temperature_c, expansion, mismatch)
    if bottom == 0.0:
        return math.inf if top > 0 else math.nan
    return top / bottom


def sweep(
    sequence: DomainSequence,
    process: Process,
    coupling: CouplingSet,
    spec: SweepSpec,
    fixed: float,
    expansion: Optional[ExpansionModel] = None,
    mismatch: Optional[MismatchFunction] = None,
    evaluator: Optional[ParallelEvaluator] = None,
    metadata: Optional[Dict[str, str]] = None,
) -> EfficiencyCurve:
    """
    Sample the efficiency on a grid.

    Args:
        sequence: Poled structure
        process: Process
        coupling: Nonlinear coefficients
        spec: Grid; temperature in deg C, wavelength in m, or mismatch in 1/m
        fixed: Wavelength (m) for temperature and mismatch sweeps, temperature
            (deg C) for wavelength sweeps
        expansion: Expansion model
        mismatch: Mismatch provider
        evaluator: Parallel evaluator (default ParallelEvaluator())
        metadata: Extra metadata for the curve

    Returns:
        EfficiencyCurve in grid order

    Raises:
        ConfigurationError: If the grid is invalid
    """
    grid = spec.grid()
    provider = _provider(mismatch)
    expansion = _expansion(provider, expansion)
    d_eff = coupling.d_eff(process)

    if spec.variable == "temperature":
        def point(t):
            return shg_efficiency(sequence, process, coupling, fixed, float(t), expansion, provider)
        fixed_meta = {"wavelength_nm": f"{fixed * 1e9:.4f}"}
    elif spec.variable == "wavelength":
        def point(lam):
            return shg_efficiency(sequence, process, coupling, float(lam), fixed, expansion, provider)
        fixed_meta = {"temperature_c": f"{fixed:.4f}"}
    else:
        def point(dk):
            return efficiency_at_mismatch(sequence, d_eff, float(dk))
        fixed_meta = {}

    eta = (evaluator or ParallelEvaluator()).map(point, list(grid))
    logger.debug("Swept %s over %d points for %s", spec.variable, len(grid), process)

    meta = {"process": process.label, "d_eff_pm_per_v": f"{d_eff}", "coupling_set": coupling.name}
    meta.update(fixed_meta)
    meta.update(metadata or {})
    return EfficiencyCurve(
        variable=spec.variable,
        x=[float(x) for x in grid],
        eta=[float(e) for e in np.asarray(eta)],
        metadata=meta,
    )
