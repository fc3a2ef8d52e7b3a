"""
Grid search over dual-grid design parameters.

The objective is min_m d_m |G(dk_m)|: the weakest weighted Fourier
coefficient among the targets. Candidates are scored in grid order and the
first strict maximum wins, so the result depends only on the grid.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from qpmkit.config import settings
from qpmkit.errors import DomainError, SearchFailureError
from qpmkit.grating.fourier import fourier_coefficient
from qpmkit.helpers import ParallelEvaluator
from .basis import Convention, duality_tile_lengths, solve_basis
from .models import DesignCandidate, DualGridDesign, OptimizationResult, ReciprocalBasis
from .tiling import build_tiling

logger = logging.getLogger(__name__)

GridPoint = Tuple[Tuple[float, ...], Tuple[float, ...]]


def _sign_patterns(dim: int) -> List[Tuple[float, ...]]:
    """All-or-nothing duty patterns with family 0 positive, uniform pattern excluded."""
    if dim == 2:
        return [(1.0, 0.0)]
    return [(1.0, 0.0, 0.0), (1.0, 0.0, 1.0), (1.0, 1.0, 0.0)]


def _search_grid(dim: int) -> List[GridPoint]:
    if dim == 1:
        steps = int(round(1.0 / settings.SPLIT_RESOLUTION))
        return [((1.0,), (i / steps,)) for i in range(steps + 1)]

    if dim == 2:
        steps = int(round(1.0 / settings.SPLIT_RESOLUTION))
        splits = [(i / steps, 1.0 - i / steps) for i in range(1, steps)]
    else:
        steps = int(round(1.0 / settings.SIMPLEX_RESOLUTION))
        splits = [
            (i / steps, j / steps, 1.0 - (i + j) / steps)
            for i in range(1, steps) for j in range(1, steps - i)
        ]
    return [(split, duties) for duties in _sign_patterns(dim) for split in splits]


def evaluate_design(
    design: DualGridDesign,
    couplings: Sequence[float],
    whole_tiles: bool = True,
) -> DesignCandidate:
    """
    Score one design against its targets.

    Args:
        design: Dual-grid design
        couplings: d_m per target, pm/V
        whole_tiles: Render whole tiles only (see build_tiling)

    Returns:
        DesignCandidate with |G| and d_m |G| at each target
    """
    sequence = build_tiling(design, whole_tiles=whole_tiles)
    targets = np.asarray(design.basis.targets)
    magnitudes = np.abs(fourier_coefficient(sequence, targets))
    weighted = np.abs(np.asarray(couplings, dtype=float)) * magnitudes
    return DesignCandidate(
        split=design.split(),
        duties=list(design.duties),
        coefficients=magnitudes.tolist(),
        weighted=weighted.tolist(),
        score=float(weighted.min()),
    )


def optimize_design(
    targets: Sequence[float],
    couplings: Sequence[float],
    total_length: Optional[float] = None,
    basis: Optional[ReciprocalBasis] = None,
    max_order: Optional[int] = None,
    convention: Convention = "search",
    grid_phases: Optional[Sequence[float]] = None,
    evaluator: Optional[ParallelEvaluator] = None,
) -> OptimizationResult:
    """
    Find the design that maximizes the weakest weighted Fourier coefficient.

    Two families search the split t_1 on a 1/N grid with family 0 all +1 and
    family 1 all -1; three families search the split simplex and the sign
    patterns; one family searches the duty of a periodic grating.

    Args:
        targets: |dk_m| in 1/m
        couplings: d_m per target, pm/V
        total_length: Spectrum length, m (default settings.DESIGN_LENGTH_M)
        basis: Reciprocal basis (default solve_basis(targets, max_order, convention))
        max_order: Passed to solve_basis
        convention: Passed to solve_basis
        grid_phases: phi_j per family
        evaluator: Parallel evaluator (default ParallelEvaluator())

    Returns:
        OptimizationResult with the best design and every candidate in grid order

    Raises:
        DomainError: If targets and couplings differ in length
        SearchFailureError: If the grid holds no feasible candidate
    """
    if len(targets) != len(couplings):
        raise DomainError(
            f"Need one coupling per target: {len(targets)} targets, {len(couplings)} couplings"
        )
    length = total_length or settings.DESIGN_LENGTH_M
    basis = basis or solve_basis(targets, max_order=max_order, convention=convention)
    phases = list(grid_phases) if grid_phases is not None else None
    grid = _search_grid(basis.dimension)
    logger.info("Scoring %d candidate designs (%d families, L = %.3g m)",
                len(grid), basis.dimension, length)

    def make_design(point: GridPoint) -> DualGridDesign:
        split, duties = point
        return DualGridDesign(
            basis=basis,
            tile_lengths=duality_tile_lengths(basis, split),
            duties=list(duties),
            grid_phases=phases,
            total_length=length,
        )

    def score(point: GridPoint) -> Optional[DesignCandidate]:
        try:
            return evaluate_design(make_design(point), couplings)
        except DomainError as e:
            logger.debug("Skipping candidate %s: %s", point, e)
            return None

    results = (evaluator or ParallelEvaluator()).map(score, grid)

    best_index, best_score = None, -np.inf
    for index, candidate in enumerate(results):
        if candidate is not None and candidate.score > best_score:
            best_index, best_score = index, candidate.score

    candidates = [c for c in results if c is not None]
    if best_index is None:
        raise SearchFailureError(f"No feasible design among {len(grid)} grid points")

    best = results[best_index]
    logger.info("Best candidate: split %s duties %s score %.4f", best.split, best.duties, best.score)
    return OptimizationResult(
        design=make_design(grid[best_index]),
        best=best,
        candidates=candidates,
        couplings=[float(d) for d in couplings],
    )
