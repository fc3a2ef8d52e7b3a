"""
Crystal description files.

A crystal file is YAML describing the crystal dimensions, the coefficient and
coupling sets, and its lengthwise sections. A section either spans the full
width or lists parallel channels; every channel-listing section must name the
same channels. Lengths are in mm, periods and tiles in um.

Example:

    name: two-section
    dimensions_mm: [10, 6, 1]
    coupling: pack2004
    wavelength_nm: 1560
    sections:
      - name: concurrent
        type: dualgrid
        length_mm: 5
        processes: [ZZZ, ZYY]
        design_temperature_c: 37
        convention: sum
        split: [0.6206, 0.3794]
        duties: [1, 0]
      - name: yzy
        type: periodic
        length_mm: 5
        channels:
          - {name: A, width_mm: 1, period_um: 46.3}
"""

import logging
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from qpmkit.config import settings
from qpmkit.dispersion import DispersionModel, load_coefficient_library
from qpmkit.dualgrid import (
    DualGridDesign, build_tiling, duality_tile_lengths, load_design, optimize_design, solve_basis
)
from qpmkit.errors import ConfigurationError
from qpmkit.grating import Channel, CrystalSection, DomainSequence, MultigratingCrystal, PeriodicGrating
from qpmkit.qpm import Process, phase_mismatch
from qpmkit.shg import CouplingSet

logger = logging.getLogger(__name__)

FULL_WIDTH_CHANNEL = "full"


class ChannelSpec(BaseModel):
    """One periodic channel of a channel-listing section."""
    name: str = Field(description="Channel name")
    width_mm: float = Field(gt=0, description="Channel width, mm")
    period_um: float = Field(gt=0, description="Poling period, um")
    duty: float = Field(default=0.5, ge=0, le=1, description="Duty cycle")
    phase_offset: float = Field(default=0.0, ge=0, lt=1, description="Phase offset, periods")


class SectionSpec(BaseModel):
    """One lengthwise section."""
    name: str = Field(description="Section name")
    type: Literal["periodic", "dualgrid", "uniform"] = Field(description="Structure type")
    length_mm: float = Field(gt=0, description="Section length, mm")

    # periodic
    period_um: Optional[float] = Field(default=None, gt=0, description="Full-width period, um")
    duty: float = Field(default=0.5, ge=0, le=1, description="Duty cycle")
    phase_offset: float = Field(default=0.0, ge=0, lt=1, description="Phase offset, periods")
    channels: Optional[List[ChannelSpec]] = Field(default=None, description="Parallel channels")

    # uniform
    sign: Literal[1, -1] = Field(default=1, description="Domain sign of a uniform section")

    # dualgrid
    file: Optional[str] = Field(default=None, description="Design file written by the design command")
    targets_per_m: Optional[List[float]] = Field(default=None, description="Target |dk|, 1/m")
    processes: Optional[List[str]] = Field(default=None, description="Processes whose |dk| are targets")
    design_temperature_c: float = Field(default=25.0, description="Temperature of the target |dk|")
    convention: Literal["search", "sum"] = Field(default="search", description="Basis convention")
    max_order: Optional[int] = Field(default=None, ge=1, description="Basis search order limit")
    split: Optional[List[float]] = Field(default=None, description="t_j; optimized when omitted")
    duties: Optional[List[float]] = Field(default=None, description="Duty per family")
    grid_phases: Optional[List[float]] = Field(default=None, description="phi_j per family")

    @field_validator("processes")
    @classmethod
    def _check_processes(cls, value):
        if value is not None:
            value = [Process.from_label(label).label for label in value]
        return value

    @model_validator(mode="after")
    def _check(self):
        if self.type == "periodic" and (self.period_um is None) == (self.channels is None):
            raise ValueError(
                f"Periodic section '{self.name}' needs exactly one of period_um or channels"
            )
        if self.type != "periodic" and self.channels is not None:
            raise ValueError(f"Only periodic sections can list channels ('{self.name}')")
        if self.type == "dualgrid" and not (self.file or self.targets_per_m or self.processes):
            raise ValueError(
                f"Dual-grid section '{self.name}' needs file, targets_per_m or processes"
            )
        return self


class CrystalSpec(BaseModel):
    """A crystal description file."""
    name: str = Field(default="crystal", description="Crystal name")
    dimensions_mm: List[float] = Field(description="[length, width, thickness] in mm")
    profile: Optional[str] = Field(default=None, description="Coefficient profile")
    expansion: Optional[str] = Field(default=None, description="Expansion set")
    coupling: Union[str, Dict[str, float]] = Field(
        default_factory=lambda: settings.COUPLING_SET,
        description="Coupling set name or {d33, d32, d24} in pm/V",
    )
    wavelength_nm: float = Field(default=1560.0, gt=0, description="Design wavelength, nm")
    sections: List[SectionSpec] = Field(description="Sections from the input facet")

    @model_validator(mode="after")
    def _check(self):
        if len(self.dimensions_mm) != 3:
            raise ValueError("dimensions_mm needs [length, width, thickness]")
        if not self.sections:
            raise ValueError("A crystal needs at least one section")
        channel_sets = {
            tuple(c.name for c in s.channels) for s in self.sections if s.channels is not None
        }
        if len(channel_sets) > 1:
            raise ValueError(f"Channel-listing sections disagree on channel names: {channel_sets}")
        return self


class CrystalSetup(BaseModel):
    """A built crystal with the models it was built against."""
    spec: CrystalSpec
    crystal: MultigratingCrystal
    dispersion: DispersionModel
    coupling: CouplingSet
    wavelength_m: float
    designs: Dict[str, DualGridDesign] = Field(default_factory=dict)


def load_crystal_spec(path: Union[str, Path]) -> CrystalSpec:
    """
    Read and validate a crystal file.

    Raises:
        FileNotFoundError: If the file doesn't exist
        ConfigurationError: If the file fails validation
    """
    file_path = Path(path)
    if not file_path.exists():
        raise FileNotFoundError(f"Crystal file not found: {file_path}")
    try:
        with open(file_path, "r") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Crystal file {file_path} is not valid YAML: {e}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"Crystal file {file_path} is not a YAML mapping")
    try:
        return CrystalSpec(**data)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid crystal file {file_path}:\n{e}") from e


def _coupling(spec: CrystalSpec, library) -> CouplingSet:
    if isinstance(spec.coupling, str):
        return CouplingSet.from_library(spec.coupling, library)
    return CouplingSet(name="custom", **spec.coupling)


def _dualgrid(
    section: SectionSpec,
    context: dict,
    base_dir: Path,
) -> Tuple[DualGridDesign, DomainSequence]:
    length = section.length_mm * 1e-3
    if section.file:
        design, sequence = load_design(base_dir / section.file)
        if abs(sequence.total_length - length) > 1e-9 * length:
            raise ConfigurationError(
                f"Design file {section.file} is {sequence.total_length * 1e3:.6f} mm long, "
                f"section '{section.name}' is {section.length_mm} mm"
            )
        return design, sequence

    dispersion = context["dispersion"]
    coupling = context["coupling"]
    wavelength = context["wavelength"]
    processes = [Process.from_label(p) for p in section.processes or []]
    if section.targets_per_m:
        targets = list(section.targets_per_m)
    else:
        targets = [
            abs(phase_mismatch(p, wavelength, section.design_temperature_c, dispersion))
            for p in processes
        ]

    basis = solve_basis(targets, max_order=section.max_order, convention=section.convention)
    if section.split is not None:
        duties = section.duties or [1.0] + [0.0] * (basis.dimension - 1)
        design = DualGridDesign(
            basis=basis,
            tile_lengths=duality_tile_lengths(basis, section.split),
            duties=duties,
            grid_phases=section.grid_phases,
            total_length=length,
        )
    else:
        if len(processes) != len(targets):
            raise ConfigurationError(
                f"Section '{section.name}' without a split needs processes to weigh the targets"
            )
        couplings = [coupling.d_eff(p) for p in processes]
        design = optimize_design(
            targets, couplings, total_length=length, basis=basis, grid_phases=section.grid_phases
        ).design
    return design, build_tiling(design)


def build_crystal(
    spec: CrystalSpec,
    base_dir: Union[str, Path] = ".",
    profile: Optional[str] = None,
    expansion: Optional[str] = None,
    coeff_file: Optional[str] = None,
) -> CrystalSetup:
    """
    Render every section of a crystal description.

    Args:
        spec: Crystal description
        base_dir: Directory that relative design files are resolved against
        profile: Coefficient profile override
        expansion: Expansion set override
        coeff_file: Coefficient file override

    Returns:
        CrystalSetup

    Raises:
        CoefficientSetNotFound: If a referenced set does not exist
        ConfigurationError: If the geometry is inconsistent
    """
    library = load_coefficient_library(coeff_file)
    dispersion = library.dispersion(
        profile or spec.profile or settings.DEFAULT_PROFILE,
        expansion or spec.expansion or settings.EXPANSION_SET,
    )
    coupling = _coupling(spec, library)
    wavelength = spec.wavelength_nm * 1e-9
    context = {"dispersion": dispersion, "coupling": coupling, "wavelength": wavelength}

    length_m, width_m, thickness_m = (d * 1e-3 for d in spec.dimensions_mm)
    listed = next((s.channels for s in spec.sections if s.channels is not None), None)
    channel_widths = (
        {c.name: c.width_mm * 1e-3 for c in listed} if listed else {FULL_WIDTH_CHANNEL: width_m}
    )

    stacks: Dict[str, List[CrystalSection]] = {name: [] for name in channel_widths}
    designs: Dict[str, DualGridDesign] = {}
    for section in spec.sections:
        length = section.length_mm * 1e-3
        if section.type == "periodic" and section.channels is not None:
            for channel in section.channels:
                grating = PeriodicGrating(
                    period=channel.period_um * 1e-6,
                    duty=channel.duty,
                    length=length,
                    phase_offset=channel.phase_offset,
                )
                stacks[channel.name].append(CrystalSection(
                    name=section.name, kind="periodic", sequence=grating.render(),
                    parameters={"period_um": channel.period_um, "duty": channel.duty},
                ))
            continue

        if section.type == "periodic":
            grating = PeriodicGrating(
                period=section.period_um * 1e-6,
                duty=section.duty,
                length=length,
                phase_offset=section.phase_offset,
            )
            built = CrystalSection(
                name=section.name, kind="periodic", sequence=grating.render(),
                parameters={"period_um": section.period_um, "duty": section.duty},
            )
        elif section.type == "uniform":
            built = CrystalSection(
                name=section.name, kind="uniform",
                sequence=DomainSequence(domains=[(length, section.sign)]),
            )
        else:
            design, sequence = _dualgrid(section, context, Path(base_dir))
            designs[section.name] = design
            built = CrystalSection(
                name=section.name, kind="dualgrid", sequence=sequence,
                parameters={f"tile_{j}_um": a * 1e6 for j, a in enumerate(design.tile_lengths)},
            )
        for stack in stacks.values():
            stack.append(built)

    try:
        crystal = MultigratingCrystal(
            name=spec.name,
            dimensions=(length_m, width_m, thickness_m),
            channels=[
                Channel(name=name, width=channel_widths[name], sections=stacks[name])
                for name in channel_widths
            ],
        )
    except ValidationError as e:
        raise ConfigurationError(f"Crystal '{spec.name}' is inconsistent:\n{e}") from e

    logger.info("Built crystal '%s' with %d channels", spec.name, len(crystal.channels))
    return CrystalSetup(
        spec=spec,
        crystal=crystal,
        dispersion=dispersion,
        coupling=coupling,
        wavelength_m=wavelength,
        designs=designs,
    )


def load_crystal(path: Union[str, Path], **overrides) -> CrystalSetup:
    """load_crystal_spec followed by build_crystal, resolving files next to the crystal file."""
    spec = load_crystal_spec(path)
    return build_crystal(spec, base_dir=Path(path).parent, **overrides)
