"""
Data models for the shg package.
"""

import math
from typing import Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from qpmkit.config import settings
from qpmkit.dispersion.library import CoefficientLibrary, load_coefficient_library
from qpmkit.errors import ConfigurationError, DomainError
from qpmkit.grating.models import DomainSequence
from qpmkit.qpm.models import Process

Variable = Literal["temperature", "wavelength", "mismatch"]

# column name, unit, scale from internal units
AXES = {
    "temperature": ("temperature_c", "C", 1.0),
    "wavelength": ("wavelength_nm", "nm", 1e9),
    "mismatch": ("mismatch_per_m", "1/m", 1.0),
}


class CouplingSet(BaseModel):
    """Nonlinear coefficients of the crystal in pm/V."""
    model_config = ConfigDict(frozen=True)

    name: str = Field(default="custom", description="Coupling set name")
    d33: float = Field(gt=0, description="d_33 (ZZZ), pm/V")
    d32: float = Field(gt=0, description="d_32 (ZYY), pm/V")
    d24: float = Field(gt=0, description="d_24 (YZY/YYZ), pm/V")
    source: str = Field(default="", description="Literature citation")

    def d_eff(self, process: Process) -> float:
        """
        Effective coefficient of a process.

        Raises:
            DomainError: For polarization triplets without a tabulated coefficient
        """
        key = process.mismatch_key
        if key == ("Z", "ZZ"):
            return self.d33
        if key == ("Z", "YY"):
            return self.d32
        if key == ("Y", "YZ"):
            return self.d24
        raise DomainError(
            f"No coupling coefficient for process {process.label}; "
            f"supported: ZZZ (d33), ZYY (d32), YZY/YYZ (d24)"
        )

    @classmethod
    def from_library(
        cls, name: Optional[str] = None, library: Optional[CoefficientLibrary] = None
    ) -> "CouplingSet":
        """Named coupling set from the coefficient library (default settings.COUPLING_SET)."""
        name = name or settings.COUPLING_SET
        entry = (library or load_coefficient_library()).coupling(name)
        return cls(
            name=name,
            d33=entry["d33"],
            d32=entry["d32"],
            d24=entry["d24"],
            source=entry.get("source", ""),
        )


class SweepSpec(BaseModel):
    """Scan grid in internal units (deg C, m or 1/m)."""
    variable: Variable = Field(description="Swept quantity")
    start: float = Field(description="First grid value")
    stop: float = Field(description="Last grid value (included when on the grid)")
    step: float = Field(description="Grid step")

    def grid(self) -> np.ndarray:
        """
        Grid values start, start + step, ... <= stop.

        Raises:
            ConfigurationError: If step <= 0 or start >= stop
        """
        if not self.step > 0:
            raise ConfigurationError(f"Sweep step must be positive, got {self.step}")
        if not self.start < self.stop:
            raise ConfigurationError(
                f"Sweep start must be below stop, got [{self.start}, {self.stop}]"
            )
        count = math.floor((self.stop - self.start) / self.step + 1e-9) + 1
        return self.start + self.step * np.arange(count)


class EfficiencyCurve(BaseModel):
    """Relative SHG efficiency sampled along one variable."""
    variable: Variable = Field(description="Swept quantity")
    x: List[float] = Field(description="Grid values in internal units")
    eta: List[float] = Field(description="Relative efficiency at each grid value")
    metadata: Dict[str, str] = Field(default_factory=dict, description="Process, structure, fixed values")

    @field_validator("eta")
    @classmethod
    def _nonnegative(cls, value):
        if any(v < 0 for v in value):
            raise ValueError("Efficiencies must be nonnegative")
        return value

    @model_validator(mode="after")
    def _check(self):
        if len(self.x) != len(self.eta):
            raise ValueError(f"{len(self.x)} grid values but {len(self.eta)} efficiencies")
        if any(b <= a for a, b in zip(self.x, self.x[1:])):
            raise ValueError("Grid values must be strictly increasing")
        return self

    @property
    def x_name(self) -> str:
        return AXES[self.variable][0]

    @property
    def x_unit(self) -> str:
        return AXES[self.variable][1]

    def x_display(self) -> np.ndarray:
        """Grid values in the units written to files (C, nm, 1/m)."""
        return np.asarray(self.x) * AXES[self.variable][2]

    @property
    def peak_index(self) -> int:
        return int(np.argmax(self.eta))

    @property
    def peak(self) -> float:
        return max(self.eta) if self.eta else 0.0

    @property
    def argmax(self) -> float:
        return self.x[self.peak_index]


class ProcessTarget(BaseModel):
    """A structure and a process whose peak efficiency is wanted."""
    sequence: DomainSequence = Field(description="Poled structure")
    process: Process = Field(description="Process")
    mismatch: Optional[float] = Field(
        default=None, description="Mismatch to search around, 1/m (default: from dispersion)"
    )
