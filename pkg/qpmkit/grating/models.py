"""
Data models for the grating package.

Every poled structure ends up as a DomainSequence: an ordered list of
(length in m, sign) domains starting at z = 0 on the input facet.
"""

import logging
import math
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

from qpmkit.errors import ConfigurationError, DomainError

logger = logging.getLogger(__name__)


class DomainSequence(BaseModel):
    """Ordered signed chi(2) domains."""
    model_config = ConfigDict(frozen=True)

    domains: List[Tuple[float, int]] = Field(
        default_factory=list, description="(length in m, sign +1/-1) from the input facet"
    )

    _lengths: np.ndarray = PrivateAttr()
    _signs: np.ndarray = PrivateAttr()

    @field_validator("domains")
    @classmethod
    def _check_domains(cls, value):
        for i, (length, sign) in enumerate(value):
            if not length > 0:
                raise ValueError(f"Domain {i} has nonpositive length {length}")
            if sign not in (1, -1):
                raise ValueError(f"Domain {i} has sign {sign}; signs must be +1 or -1")
        return value

    def model_post_init(self, __context) -> None:
        self._lengths = np.array([d[0] for d in self.domains], dtype=float)
        self._signs = np.array([d[1] for d in self.domains], dtype=int)

    @classmethod
    def empty(cls) -> "DomainSequence":
        return cls(domains=[])

    @classmethod
    def from_pieces(
        cls,
        lengths: Sequence[float],
        signs: Sequence[int],
        total_length: Optional[float] = None,
    ) -> "DomainSequence":
        """
        Build a sequence from raw pieces.

        Zero-length pieces are dropped, the pieces are truncated at
        total_length (when given) and neighbours of equal sign are merged.

        Args:
            lengths: Piece lengths, m
            signs: Piece signs (+1/-1)
            total_length: Truncation length, m

        Returns:
            DomainSequence
        """
        lengths = np.asarray(lengths, dtype=float)
        signs = np.asarray(signs, dtype=int)
        if lengths.shape != signs.shape:
            raise ConfigurationError(
                f"{lengths.size} piece lengths but {signs.size} piece signs"
            )
        if np.any(lengths < 0):
            raise DomainError("Piece lengths must be nonnegative")

        keep = lengths > 0
        lengths, signs = lengths[keep], signs[keep]

        if total_length is not None:
            if not total_length > 0:
                return cls.empty()
            ends = np.cumsum(lengths)
            starts = ends - lengths
            inside = starts < total_length
            lengths, signs, starts = lengths[inside], signs[inside], starts[inside]
            if lengths.size and ends[inside][-1] > total_length:
                lengths = lengths.copy()
                lengths[-1] = total_length - starts[-1]
            if lengths.size and ends[inside][-1] < total_length:
                logger.debug("Pieces end %.3e m short of the requested length",
                             total_length - ends[inside][-1])

        if lengths.size == 0:
            return cls.empty()

        heads = np.concatenate(([0], np.flatnonzero(np.diff(signs)) + 1))
        merged_lengths = np.add.reduceat(lengths, heads)
        merged_signs = signs[heads]
        return cls(domains=[(float(l), int(s)) for l, s in zip(merged_lengths, merged_signs)])

    @property
    def lengths(self) -> np.ndarray:
        return self._lengths

    @property
    def signs(self) -> np.ndarray:
        return self._signs

    @property
    def starts(self) -> np.ndarray:
        """z position of each domain's first face, m."""
        return np.cumsum(self._lengths) - self._lengths

    @property
    def total_length(self) -> float:
        return math.fsum(self._lengths)

    def __len__(self) -> int:
        return len(self.domains)

    def __bool__(self) -> bool:
        return bool(self.domains)

    def __eq__(self, other) -> bool:
        # the cached arrays would make the default comparison ambiguous
        if not isinstance(other, DomainSequence):
            return NotImplemented
        return self.domains == other.domains

    def concatenate(self, *others: "DomainSequence") -> "DomainSequence":
        """Place other sequences after this one (z offsets preserved, no merging)."""
        domains = list(self.domains)
        for other in others:
            domains.extend(other.domains)
        return DomainSequence(domains=domains)

    def __add__(self, other: "DomainSequence") -> "DomainSequence":
        return self.concatenate(other)

    def scaled(self, factor: float) -> "DomainSequence":
        """Every domain stretched by a factor (thermal expansion)."""
        if not factor > 0:
            raise DomainError(f"Scale factor must be positive, got {factor}")
        if factor == 1.0:
            return self
        return DomainSequence(domains=[(l * factor, s) for l, s in self.domains])

    def flipped(self) -> "DomainSequence":
        return DomainSequence(domains=[(l, -s) for l, s in self.domains])

    def merged(self) -> "DomainSequence":
        """Equal-sign neighbours joined into one domain."""
        if not self.domains:
            return self
        return DomainSequence.from_pieces(self._lengths, self._signs)


class PeriodicGrating(BaseModel):
    """A periodically poled grating."""
    model_config = ConfigDict(frozen=True)

    period: float = Field(gt=0, description="Poling period, m")
    duty: float = Field(default=0.5, ge=0.0, le=1.0, description="Fraction of a period with sign +1")
    length: float = Field(gt=0, description="Grating length, m")
    phase_offset: float = Field(
        default=0.0, ge=0.0, lt=1.0, description="Fraction of a period cut from the first cell"
    )

    @property
    def cell_count(self) -> int:
        return math.ceil(self.length / self.period)

    def render(self) -> DomainSequence:
        """
        Domains of the grating: +1 for duty*period, -1 for the rest of each period.

        The pattern starts phase_offset periods into its first cell and is
        truncated at the grating length.
        """
        cells = self.cell_count + (1 if self.phase_offset else 0)
        up = self.duty * self.period
        down = (1.0 - self.duty) * self.period
        lengths = np.tile([up, down], cells)
        signs = np.tile([1, -1], cells)
        if self.phase_offset:
            lengths, signs = _cut_head(lengths, signs, self.phase_offset * self.period)
        return DomainSequence.from_pieces(lengths, signs, self.length)


def _cut_head(lengths: np.ndarray, signs: np.ndarray, cut: float):
    ends = np.cumsum(lengths)
    first = int(np.searchsorted(ends, cut, side="right"))
    lengths = lengths[first:].copy()
    signs = signs[first:]
    if lengths.size:
        lengths[0] = ends[first] - cut
    return lengths, signs


SectionKind = Literal["periodic", "dualgrid", "uniform", "custom"]


class CrystalSection(BaseModel):
    """One lengthwise section of a crystal channel."""
    model_config = ConfigDict(frozen=True)

    name: str = Field(description="Section name")
    kind: SectionKind = Field(default="custom", description="How the domains were generated")
    sequence: DomainSequence = Field(description="Rendered domains of the section")
    parameters: Dict[str, float] = Field(
        default_factory=dict, description="Generating parameters for reports (period, duty...)"
    )

    @property
    def length(self) -> float:
        return self.sequence.total_length


class Channel(BaseModel):
    """A strip of the crystal carrying a stack of sections along its length."""
    model_config = ConfigDict(frozen=True)

    name: str = Field(description="Channel name")
    width: float = Field(gt=0, description="Channel width, m")
    sections: List[CrystalSection] = Field(description="Sections in order from the input facet")

    @property
    def length(self) -> float:
        return math.fsum(section.length for section in self.sections)

    def sequence(self) -> DomainSequence:
        """All sections joined lengthwise."""
        if not self.sections:
            return DomainSequence.empty()
        first, *rest = (section.sequence for section in self.sections)
        return first.concatenate(*rest)


class MultigratingCrystal(BaseModel):
    """A crystal with parallel channels, each a lengthwise stack of sections."""
    model_config = ConfigDict(frozen=True)

    name: str = Field(default="crystal", description="Crystal name")
    dimensions: Tuple[float, float, float] = Field(
        description="(length, width, thickness) in m"
    )
    channels: List[Channel] = Field(description="Parallel channels across the width")

    @model_validator(mode="after")
    def _check_geometry(self):
        length, width, _ = self.dimensions
        if min(self.dimensions) <= 0:
            raise ValueError(f"Crystal dimensions must be positive, got {self.dimensions}")
        names = [c.name for c in self.channels]
        if len(set(names)) != len(names):
            raise ValueError(f"Channel names must be unique, got {names}")
        for channel in self.channels:
            if not math.isclose(channel.length, length, rel_tol=1e-9):
                raise ValueError(
                    f"Sections of channel '{channel.name}' add up to {channel.length * 1e3:.6f} mm, "
                    f"crystal length is {length * 1e3:.6f} mm"
                )
        total_width = math.fsum(c.width for c in self.channels)
        if total_width > width * (1 + 1e-9):
            raise ValueError(
                f"Channel widths add up to {total_width * 1e3:.3f} mm, "
                f"more than the crystal width {width * 1e3:.3f} mm"
            )
        return self

    def channel_names(self) -> List[str]:
        return [c.name for c in self.channels]

    def channel(self, name: str) -> Channel:
        for channel in self.channels:
            if channel.name == name:
                return channel
        raise KeyError(
            f"Channel '{name}' not found. Available channels: {', '.join(self.channel_names())}"
        )

    def channel_sequence(self, name: str) -> DomainSequence:
        """Domains seen by a beam travelling down one channel."""
        return self.channel(name).sequence()

    def iter_sequences(self) -> Iterable[Tuple[str, DomainSequence]]:
        for channel in self.channels:
            yield channel.name, channel.sequence()
