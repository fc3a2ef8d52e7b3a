"""
Grating package

Poled structures (periodic gratings, multigrating crystals, arbitrary signed
domain sequences) and the Fourier coefficients of their sign modulation.
"""

from .models import Channel, CrystalSection, DomainSequence, MultigratingCrystal, PeriodicGrating
from .fourier import fourier_coefficient, peak_fourier_coefficient, periodic_fourier_analytic

__all__ = [
    "Channel",
    "CrystalSection",
    "DomainSequence",
    "MultigratingCrystal",
    "PeriodicGrating",
    "fourier_coefficient",
    "peak_fourier_coefficient",
    "periodic_fourier_analytic",
]
