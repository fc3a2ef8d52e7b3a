"""
Data models for the dualgrid package.
"""

import math
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

TWO_PI = 2.0 * math.pi


class ReciprocalBasis(BaseModel):
    """Basis spatial frequencies and the integer orders that rebuild the targets."""
    model_config = ConfigDict(frozen=True)

    basis_vectors: List[float] = Field(description="k_j in 1/m")
    order_matrix: List[List[int]] = Field(
        description="Row m holds the orders n_mj with target_m = sum_j n_mj k_j"
    )
    targets: List[float] = Field(description="Target mismatches in 1/m")

    @model_validator(mode="after")
    def _check(self):
        dim = len(self.basis_vectors)
        if not 1 <= dim <= 3:
            raise ValueError(f"Basis dimension must be 1, 2 or 3, got {dim}")
        if any(k <= 0 for k in self.basis_vectors):
            raise ValueError(f"Basis vectors must be positive, got {self.basis_vectors}")
        if len(self.order_matrix) != len(self.targets):
            raise ValueError("order_matrix needs one row per target")
        if any(len(row) != dim for row in self.order_matrix):
            raise ValueError(f"Every order row needs {dim} entries")
        for target, rebuilt in zip(self.targets, self.reconstruct()):
            if abs(rebuilt - target) > 1e-9 * abs(target):
                raise ValueError(
                    f"Orders rebuild {rebuilt:.9e} 1/m for target {target:.9e} 1/m"
                )
        return self

    @property
    def dimension(self) -> int:
        return len(self.basis_vectors)

    @property
    def grid_periods(self) -> List[float]:
        """2 pi / k_j, m."""
        return [TWO_PI / k for k in self.basis_vectors]

    def reconstruct(self) -> List[float]:
        """order_matrix . basis_vectors."""
        return [math.fsum(n * k for n, k in zip(row, self.basis_vectors))
                for row in self.order_matrix]


class DualGridDesign(BaseModel):
    """A quasiperiodic poling design built from D periodic grid families."""
    model_config = ConfigDict(frozen=True)

    basis: ReciprocalBasis = Field(description="Reciprocal basis and orders")
    tile_lengths: List[float] = Field(description="a_j, tile length of family j, m")
    duties: List[float] = Field(description="Fraction of each tile with sign +1 (1 = all +, 0 = all -)")
    grid_phases: Optional[List[float]] = Field(
        default=None, description="phi_j in [0, 1), grid offset of family j (default 0)"
    )
    total_length: float = Field(gt=0, description="Structure length, m")
    duality_tolerance: float = Field(
        default=1e-3, gt=0, description="Allowed relative error of sum_j a_j k_j / 2 pi = 1"
    )

    @field_validator("duties")
    @classmethod
    def _check_duties(cls, value):
        if any(not 0.0 <= d <= 1.0 for d in value):
            raise ValueError(f"Duties must lie within [0, 1], got {value}")
        return value

    @model_validator(mode="after")
    def _check(self):
        dim = self.basis.dimension
        if len(self.tile_lengths) != dim or len(self.duties) != dim:
            raise ValueError(
                f"A {dim}-family design needs {dim} tile lengths and {dim} duties"
            )
        if any(a <= 0 for a in self.tile_lengths):
            raise ValueError(f"Tile lengths must be positive, got {self.tile_lengths}")
        if self.grid_phases is not None:
            if len(self.grid_phases) != dim or any(not 0 <= p < 1 for p in self.grid_phases):
                raise ValueError(f"Need {dim} grid phases within [0, 1), got {self.grid_phases}")
        if abs(self.duality_sum() - 1.0) > self.duality_tolerance:
            raise ValueError(
                f"Tile lengths break the duality condition: sum a_j k_j / 2pi = "
                f"{self.duality_sum():.6f} (tolerance {self.duality_tolerance})"
            )
        return self

    @property
    def phases(self) -> List[float]:
        return list(self.grid_phases) if self.grid_phases is not None else [0.0] * self.basis.dimension

    def duality_sum(self) -> float:
        """sum_j a_j k_j / 2 pi (1 for an exact design)."""
        return math.fsum(a * k for a, k in zip(self.tile_lengths, self.basis.basis_vectors)) / TWO_PI

    def tile_fractions(self) -> List[float]:
        """Expected share of family-j tiles, nu_j / sum(nu)."""
        total = math.fsum(self.basis.basis_vectors)
        return [k / total for k in self.basis.basis_vectors]

    def mean_tile_length(self) -> float:
        return math.fsum(p * a for p, a in zip(self.tile_fractions(), self.tile_lengths))

    def split(self) -> List[float]:
        """t_j = a_j k_j / 2 pi."""
        return [a * k / TWO_PI for a, k in zip(self.tile_lengths, self.basis.basis_vectors)]


class DesignCandidate(BaseModel):
    """One evaluated point of the design grid search."""
    split: List[float] = Field(description="t_j")
    duties: List[float] = Field(description="Duty of each family")
    coefficients: List[float] = Field(description="|G| at each target")
    weighted: List[float] = Field(description="d_m |G_m| at each target, pm/V")
    score: float = Field(description="min_m d_m |G_m|")

    @property
    def balance(self) -> float:
        """Ratio of the weakest to the strongest weighted coefficient."""
        strongest = max(self.weighted)
        return min(self.weighted) / strongest if strongest > 0 else 0.0


class OptimizationResult(BaseModel):
    """Best design plus every candidate the search scored, in grid order."""
    design: DualGridDesign
    best: DesignCandidate
    candidates: List[DesignCandidate] = Field(default_factory=list)
    couplings: List[float] = Field(description="d_m used for scoring, pm/V")

    def scores(self) -> np.ndarray:
        return np.array([c.score for c in self.candidates])
