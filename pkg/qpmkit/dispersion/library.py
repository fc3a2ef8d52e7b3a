"""
Coefficient Library Module

Loads named coefficient sets (index, thermo-optic, expansion, coupling) from
a YAML data file and assembles them into models.
"""

import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from qpmkit.config import settings
from qpmkit.errors import CoefficientSetNotFound, ConfigurationError
from .models import (
    Axis, DispersionModel, ExpansionModel, SellmeierModel, ThermoOpticCorrection
)

logger = logging.getLogger(__name__)

SECTIONS = ("index_sets", "thermo_optic_sets", "expansion_sets", "profiles", "coupling_sets")


class CoefficientLibrary:
    """Named coefficient sets read from one YAML file."""

    def __init__(self, data: Dict[str, Any], path: Optional[Path] = None):
        """
        Initialize the library from parsed YAML.

        Args:
            data: Mapping with any of the sections index_sets, thermo_optic_sets,
                expansion_sets, profiles and coupling_sets
            path: File the data came from (for messages)
        """
        self.path = path
        self._data = {section: dict(data.get(section) or {}) for section in SECTIONS}

    def names(self, section: str):
        return sorted(self._data[section])

    def _entry(self, section: str, name: str, kind: str) -> Dict[str, Any]:
        entries = self._data[section]
        if name not in entries:
            raise CoefficientSetNotFound(kind, name, entries.keys())
        entry = entries[name]
        if section != "profiles" and not entry.get("source"):
            logger.warning("%s '%s' carries no source citation", kind, name)
        return entry

    def thermo_optic(self, name: str, axis: Axis) -> ThermoOpticCorrection:
        """Build the thermo-optic correction of one axis from a named set."""
        entry = self._entry("thermo_optic_sets", name, "thermo-optic set")
        axes = entry.get("axes") or {}
        axis = Axis(axis)
        if axis.value not in axes:
            raise ConfigurationError(
                f"Thermo-optic set '{name}' has no coefficients for axis {axis.value}"
            )
        return ThermoOpticCorrection(
            name=name,
            axis=axis,
            first_order=axes[axis.value]["first_order"],
            second_order=axes[axis.value]["second_order"],
            first_order_scale=entry.get("first_order_scale", 1e-6),
            second_order_scale=entry.get("second_order_scale", 1e-8),
            reference_temperature_c=entry.get(
                "reference_temperature_c", settings.REFERENCE_TEMPERATURE_C
            ),
            source=entry.get("source", ""),
        )

    def index_set(self, name: str, thermo_optic: Optional[str] = None) -> SellmeierModel:
        """
        Build a SellmeierModel from a named index set.

        Args:
            name: Index set name
            thermo_optic: Optional thermo-optic set name applied to the same axis

        Returns:
            SellmeierModel with wavelengths converted to meters
        """
        entry = self._entry("index_sets", name, "index set")
        lo_um, hi_um = entry["wavelength_range_um"]
        axis = Axis(entry["axis"])
        correction = self.thermo_optic(thermo_optic, axis) if thermo_optic else None
        return SellmeierModel(
            name=name,
            axis=axis,
            form=entry["form"],
            coefficients=entry["coefficients"],
            valid_wavelength_range=(lo_um * 1e-6, hi_um * 1e-6),
            reference_temperature_c=entry.get(
                "reference_temperature_c", settings.REFERENCE_TEMPERATURE_C
            ),
            temperature_correction=correction,
            source=entry.get("source", ""),
        )

    def expansion(self, name: str) -> ExpansionModel:
        """Build an ExpansionModel from a named set."""
        entry = self._entry("expansion_sets", name, "expansion set")
        return ExpansionModel(
            name=name,
            alpha1=entry["alpha1"],
            alpha2=entry.get("alpha2", 0.0),
            reference_temperature_c=entry.get(
                "reference_temperature_c", settings.REFERENCE_TEMPERATURE_C
            ),
            source=entry.get("source", ""),
        )

    def dispersion(self, profile: str, expansion: Optional[str] = None) -> DispersionModel:
        """
        Assemble the Y/Z index models of a profile with an expansion set.

        Args:
            profile: Profile name (pairs a Z set, a Y set and a thermo-optic set)
            expansion: Expansion set name (default from settings)
        """
        entry = self._entry("profiles", profile, "profile")
        thermo = entry.get("thermo_optic")
        return DispersionModel(
            name=profile,
            z=self.index_set(entry["z"], thermo),
            y=self.index_set(entry["y"], thermo),
            expansion=self.expansion(expansion or settings.EXPANSION_SET),
        )

    def coupling(self, name: str) -> Dict[str, Any]:
        """Raw coupling-set entry (d33, d32, d24 in pm/V)."""
        return dict(self._entry("coupling_sets", name, "coupling set"))


def load_coefficient_library(path: Optional[str] = None) -> CoefficientLibrary:
    """
    Load a coefficient library from YAML.

    Args:
        path: YAML file (defaults to settings.COEFF_FILE)

    Returns:
        CoefficientLibrary

    Raises:
        FileNotFoundError: If the file doesn't exist
        ConfigurationError: If the file is not valid YAML or not a mapping
    """
    file_path = Path(path or settings.COEFF_FILE)
    if not file_path.exists():
        raise FileNotFoundError(f"Coefficient file not found: {file_path}")

    try:
        with open(file_path, "r") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Coefficient file {file_path} is not valid YAML: {e}") from e

    if not isinstance(data, dict):
        raise ConfigurationError(f"Coefficient file {file_path} is not a YAML mapping")

    return CoefficientLibrary(data, file_path)


@lru_cache(maxsize=8)
def _cached_dispersion(path: str, profile: str, expansion: str) -> DispersionModel:
    return load_coefficient_library(path).dispersion(profile, expansion)


def default_dispersion(
    profile: Optional[str] = None,
    expansion: Optional[str] = None,
    path: Optional[str] = None,
) -> DispersionModel:
    """Dispersion model named by settings (cached per file/profile/expansion)."""
    return _cached_dispersion(
        str(path or settings.COEFF_FILE),
        profile or settings.DEFAULT_PROFILE,
        expansion or settings.EXPANSION_SET,
    )
