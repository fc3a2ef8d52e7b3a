"""
Dispersion package

Temperature-dependent refractive indices of the crystal's Y and Z axes and
its thermal expansion, from swappable published coefficient sets.
"""

from .models import Axis, DispersionModel, ExpansionModel, SellmeierModel, ThermoOpticCorrection
from .sellmeier import (
    expansion_factor, group_index, refractive_index, sellmeier_index, thermo_optic_shift
)
from .library import CoefficientLibrary, default_dispersion, load_coefficient_library

__all__ = [
    "Axis",
    "DispersionModel",
    "ExpansionModel",
    "SellmeierModel",
    "ThermoOpticCorrection",
    "expansion_factor",
    "group_index",
    "refractive_index",
    "sellmeier_index",
    "thermo_optic_shift",
    "CoefficientLibrary",
    "default_dispersion",
    "load_coefficient_library",
]
