"""
Data models for the qpm package.
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from qpmkit.dispersion.models import Axis


class Process(BaseModel):
    """Polarization triplet of a three-wave interaction (pump; two signals)."""
    model_config = ConfigDict(frozen=True)

    pump_axis: Axis = Field(description="Second-harmonic / downconversion-pump polarization")
    signal_axes: Tuple[Axis, Axis] = Field(description="Fundamental photon polarizations")

    @property
    def label(self) -> str:
        """Canonical name: pump axis then the two signal axes (e.g. ZYY)."""
        return self.pump_axis.value + "".join(a.value for a in self.signal_axes)

    @property
    def mismatch_key(self) -> Tuple[str, str]:
        """Key that ignores the order of the signal axes (YZY == YYZ)."""
        return self.pump_axis.value, "".join(sorted(a.value for a in self.signal_axes))

    def same_interaction(self, other: "Process") -> bool:
        return self.mismatch_key == other.mismatch_key

    @classmethod
    def from_label(cls, label: str) -> "Process":
        """
        Parse a label such as 'zzz', 'ZYY', 'yzy'.

        Raises:
            ValueError: If the label is not three letters from {Y, Z}
        """
        text = label.strip().upper()
        if len(text) != 3 or any(ch not in "YZ" for ch in text):
            raise ValueError(
                f"Invalid process label '{label}'. Use three letters from Y/Z, "
                f"e.g. ZZZ, ZYY, YZY, YYZ"
            )
        return cls(pump_axis=Axis(text[0]), signal_axes=(Axis(text[1]), Axis(text[2])))

    def __str__(self) -> str:
        return self.label


ZZZ = Process.from_label("ZZZ")
ZYY = Process.from_label("ZYY")
YZY = Process.from_label("YZY")
YYZ = Process.from_label("YYZ")
PROCESS_LABELS = ("ZZZ", "ZYY", "YZY", "YYZ")


class CalibrationPoint(BaseModel):
    """A measured QPM temperature for a grating of known design mismatch."""
    model_config = ConfigDict(frozen=True)

    temperature_c: float = Field(description="Measured QPM temperature, deg C")
    design_mismatch: float = Field(
        description="Grating spatial frequency as fabricated at room temperature, 1/m"
    )

    @field_validator("design_mismatch")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError(f"design_mismatch must be positive, got {value}")
        return value


class LinearCalibration(BaseModel):
    """Line through expansion-corrected calibration points."""
    model_config = ConfigDict(frozen=True)

    slope: float = Field(description="d(dk)/dT in 1/(m K)")
    intercept_temperature_c: float = Field(description="Anchor temperature, deg C")
    intercept_mismatch: float = Field(description="Mismatch at the anchor temperature, 1/m")
    corrected_points: List[Tuple[float, float]] = Field(
        default_factory=list, description="(T, dk at T) after expansion correction"
    )
    process: Optional[str] = Field(default=None, description="Process label, if known")
    wavelength_m: Optional[float] = Field(default=None, description="Calibration wavelength")

    def extrapolate(self, temperature_c: float) -> float:
        """Material mismatch at a temperature, 1/m."""
        return self.intercept_mismatch + self.slope * (temperature_c - self.intercept_temperature_c)

    def __call__(self, temperature_c: float) -> float:
        return self.extrapolate(temperature_c)


class OrderMatch(BaseModel):
    """How closely one grating order quasi-phasematches one process."""
    process: str = Field(description="Process label")
    mismatch: float = Field(description="Signed material mismatch, 1/m")
    order: int = Field(description="Nearest QPM order")
    residual: float = Field(description="|dk| - order * 2pi/period, 1/m")
    period_for_order: float = Field(description="Exact period for that order, m")
    coefficient: float = Field(default=0.0, description="|G| of that order at the grating duty")
