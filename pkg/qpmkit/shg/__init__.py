"""
SHG simulation package

Relative second-harmonic efficiencies versus temperature and wavelength,
peak-efficiency ratios and a coupled-amplitude ODE oracle.
"""

from .models import CouplingSet, EfficiencyCurve, ProcessTarget, SweepSpec
from .efficiency import (
    efficiency_at_mismatch, efficiency_ratio, peak_efficiency, shg_efficiency, sweep
)
from .curves import fwhm, plot_curves, read_curve_csv, write_curve_csv
from .oracle import (
    integrate_amplitudes, ode_oracle, oracle_efficiency, oracle_efficiency_at_mismatch
)

__all__ = [
    "CouplingSet",
    "EfficiencyCurve",
    "ProcessTarget",
    "SweepSpec",
    "efficiency_at_mismatch",
    "efficiency_ratio",
    "peak_efficiency",
    "shg_efficiency",
    "sweep",
    "fwhm",
    "plot_curves",
    "read_curve_csv",
    "write_curve_csv",
    "integrate_amplitudes",
    "ode_oracle",
    "oracle_efficiency",
    "oracle_efficiency_at_mismatch",
]
