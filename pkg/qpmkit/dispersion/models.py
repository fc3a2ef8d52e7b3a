"""
Data models for the dispersion package.

Coefficient sets are data: each model carries its functional form id, its
coefficients and the literature source it was taken from.
"""

from enum import Enum
from typing import List, Optional, Tuple, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Axis(str, Enum):
    """Crystal axis an index set describes."""
    Y = "Y"
    Z = "Z"


SELLMEIER_FORMS = ("multipole-sellmeier", "fan-sellmeier")
INDEX_CHECK_POINTS = 200
MONOTONE_RANGE_C = (0.0, 350.0)


class ThermoOpticCorrection(BaseModel):
    """Polynomial temperature correction dn(l, T) of one crystal axis."""
    model_config = ConfigDict(frozen=True)

    name: str = Field(description="Coefficient set name")
    axis: Axis = Field(description="Crystal axis the correction applies to")
    form: Literal["polynomial-thermo-optic"] = Field(
        default="polynomial-thermo-optic", description="Functional form id"
    )
    first_order: List[float] = Field(description="a_m of n1 = scale * sum a_m / l^m (l in um)")
    second_order: List[float] = Field(description="b_m of n2 = scale * sum b_m / l^m (l in um)")
    first_order_scale: float = Field(default=1e-6, description="Multiplier applied to n1")
    second_order_scale: float = Field(default=1e-8, description="Multiplier applied to n2")
    reference_temperature_c: float = Field(default=25.0, description="Temperature where dn = 0")
    source: str = Field(default="", description="Literature citation")


class SellmeierModel(BaseModel):
    """Refractive index of one crystal axis versus wavelength and temperature."""
    model_config = ConfigDict(frozen=True)

    name: str = Field(description="Coefficient set name")
    axis: Axis = Field(description="Crystal axis")
    form: Literal["multipole-sellmeier", "fan-sellmeier"] = Field(
        description="Functional form id of the coefficient list"
    )
    coefficients: List[float] = Field(description="Coefficients in the documented form")
    valid_wavelength_range: Tuple[float, float] = Field(
        description="[l_min, l_max] in meters"
    )
    reference_temperature_c: float = Field(
        default=25.0, description="Temperature the room-temperature formula refers to"
    )
    temperature_correction: Optional[ThermoOpticCorrection] = Field(
        default=None, description="Thermo-optic correction for the same axis"
    )
    source: str = Field(default="", description="Literature citation")

    @field_validator("valid_wavelength_range")
    @classmethod
    def _ordered_range(cls, value):
        lo, hi = value
        if not 0 < lo < hi:
            raise ValueError(f"valid_wavelength_range must satisfy 0 < min < max, got {value}")
        return value

    @model_validator(mode="after")
    def _check_form(self):
        n = len(self.coefficients)
        if self.form == "multipole-sellmeier" and (n < 2 or n % 2 != 0):
            raise ValueError(
                "multipole-sellmeier expects [A, B_1, C_1, ..., B_k, C_k, F] "
                f"(even length >= 2), got {n} coefficients"
            )
        if self.form == "fan-sellmeier" and n != 4:
            raise ValueError(f"fan-sellmeier expects [A, B, C, D], got {n} coefficients")
        correction = self.temperature_correction
        if correction is not None and correction.axis != self.axis:
            raise ValueError(
                f"Temperature correction '{correction.name}' is for axis "
                f"{correction.axis.value}, index set '{self.name}' is axis {self.axis.value}"
            )
        self._check_index_range()
        return self

    def _check_index_range(self) -> None:
        from .sellmeier import sellmeier_index

        lo, hi = self.valid_wavelength_range
        lam = np.linspace(lo, hi, INDEX_CHECK_POINTS)
        with np.errstate(invalid="ignore", divide="ignore"):
            n = sellmeier_index(self, lam)
        bad = ~((n > 1.0) & (n < 3.0))
        if np.any(bad):
            raise ValueError(
                f"Index set '{self.name}' gives n = {n[bad][0]:.4f} at {lam[bad][0] * 1e9:.1f} nm; "
                "expected 1 < n < 3 over the valid range"
            )


class ExpansionModel(BaseModel):
    """Thermal expansion L(T)/L(T_ref) along the poling-grating direction."""
    model_config = ConfigDict(frozen=True)

    name: str = Field(default="expansion", description="Coefficient set name")
    alpha1: float = Field(description="Linear coefficient, 1/K")
    alpha2: float = Field(default=0.0, description="Quadratic coefficient, 1/K^2")
    reference_temperature_c: float = Field(default=25.0, description="T_ref in deg C")
    source: str = Field(default="", description="Literature citation")

    @model_validator(mode="after")
    def _check_monotone(self):
        # the slope is linear in T, so both ends decide
        for temperature_c in MONOTONE_RANGE_C:
            slope = self.alpha1 + 2.0 * self.alpha2 * (temperature_c - self.reference_temperature_c)
            if slope <= 0:
                raise ValueError(
                    f"Expansion set '{self.name}' is not increasing at {temperature_c} C "
                    f"(slope {slope:.3e} 1/K)"
                )
        return self


class DispersionModel(BaseModel):
    """The Y and Z index models of one crystal plus its expansion model."""
    model_config = ConfigDict(frozen=True)

    name: str = Field(description="Profile name")
    y: SellmeierModel = Field(description="Y-axis index model")
    z: SellmeierModel = Field(description="Z-axis index model")
    expansion: ExpansionModel = Field(description="Thermal expansion model")

    @model_validator(mode="after")
    def _check_axes(self):
        if self.y.axis != Axis.Y or self.z.axis != Axis.Z:
            raise ValueError(
                f"Profile '{self.name}' needs a Y-axis and a Z-axis set, got "
                f"{self.y.axis.value} and {self.z.axis.value}"
            )
        return self

    def for_axis(self, axis: Axis) -> SellmeierModel:
        """Return the index model of an axis."""
        return self.z if Axis(axis) == Axis.Z else self.y
