"""
Reciprocal basis selection and the duality relation for tile lengths.
"""

import itertools
import logging
import math
from typing import List, Literal, Optional, Sequence

import numpy as np

from qpmkit.config import settings
from qpmkit.errors import DomainError, SearchFailureError
from .models import TWO_PI, ReciprocalBasis

logger = logging.getLogger(__name__)

Convention = Literal["search", "sum"]

_BATCH = 200_000


def rationally_independent(
    vectors: Sequence[float],
    max_coefficient: int = 20,
    tolerance: float = 1e-6,
) -> bool:
    """
    True when no integer combination with |n_j| <= max_coefficient vanishes.

    A combination counts as vanishing when |sum n_j k_j| <= tolerance * max(k).
    """
    k = np.asarray(vectors, dtype=float)
    if k.size <= 1:
        return bool(k.size == 1 and k[0] != 0)
    span = np.arange(-max_coefficient, max_coefficient + 1)
    combos = np.array(np.meshgrid(*([span] * k.size), indexing="ij")).reshape(k.size, -1).T
    combos = combos[np.any(combos != 0, axis=1)]
    residual = np.abs(combos @ k)
    return bool(np.all(residual > tolerance * np.max(np.abs(k))))


def _check_targets(targets: Sequence[float]) -> List[float]:
    targets = [float(t) for t in targets]
    if not 1 <= len(targets) <= 3:
        raise DomainError(f"Between 1 and 3 target mismatches are supported, got {len(targets)}")
    if any(not t > 0 for t in targets):
        raise DomainError(
            f"Target mismatches must be positive, got {targets}. "
            f"Pass |dk| for processes with negative mismatch"
        )
    return targets


def _level_matrices(dim: int, level: int):
    """Integer dim x dim matrices with largest |entry| equal to level, in product order."""
    values = range(-level, level + 1)
    batch = []
    for entries in itertools.product(values, repeat=dim * dim):
        if max(abs(e) for e in entries) != level:
            continue
        batch.append(entries)
        if len(batch) == _BATCH:
            yield np.array(batch, dtype=float).reshape(-1, dim, dim)
            batch = []
    if batch:
        yield np.array(batch, dtype=float).reshape(-1, dim, dim)


def _search_level(targets: np.ndarray, level: int, min_tile: float):
    """Feasible (orders, basis) pairs at one order level, best first."""
    dim = targets.size
    found = []
    for matrices in _level_matrices(dim, level):
        dets = np.linalg.det(matrices)
        matrices = matrices[np.abs(dets) > 0.5]
        if not len(matrices):
            continue
        rhs = np.broadcast_to(targets, (len(matrices), dim))[..., None]
        bases = np.linalg.solve(matrices, rhs)[..., 0]
        positive = np.all(bases > 0, axis=1)
        mean_tile = TWO_PI / np.where(positive, bases.sum(axis=1), np.inf)
        keep = positive & (mean_tile >= min_tile)
        found.extend(zip(matrices[keep], bases[keep]))

    found.sort(key=lambda pair: float(np.max(pair[1])))  # stable: enumeration order breaks ties
    return found


def solve_basis(
    targets: Sequence[float],
    max_order: Optional[int] = None,
    convention: Convention = "search",
) -> ReciprocalBasis:
    """
    Choose reciprocal basis vectors and integer orders reproducing target mismatches.

    Args:
        targets: Target mismatches |dk_m| in 1/m (1 to 3 values)
        max_order: Largest |order| searched (default settings.MAX_ORDER)
        convention: "sum" takes k_1 = dk_1 + dk_2, k_2 = dk_2 with orders
            (1, -1), (0, 1) for two targets; "search" ranks integer
            decompositions by largest |order|, then by largest basis vector

    Returns:
        ReciprocalBasis

    Raises:
        DomainError: If the targets are not 1 to 3 positive values
        SearchFailureError: If no feasible decomposition exists within max_order
    """
    targets = _check_targets(targets)
    max_order = max_order or settings.MAX_ORDER
    if max_order < 1:
        raise DomainError(f"max_order must be at least 1, got {max_order}")

    if convention == "sum":
        if len(targets) != 2:
            raise DomainError(f"The sum convention needs exactly 2 targets, got {len(targets)}")
        t1, t2 = targets
        return ReciprocalBasis(
            basis_vectors=[t1 + t2, t2], order_matrix=[[1, -1], [0, 1]], targets=targets
        )

    target_array = np.array(targets)
    min_tile = settings.MIN_TILE_LENGTH_M
    for level in range(1, max_order + 1):
        candidates = _search_level(target_array, level, min_tile)
        logger.debug("Order level %d: %d positive bases above the tile floor", level, len(candidates))
        for matrix, basis in candidates:
            if not rationally_independent(basis):
                continue
            orders = np.rint(matrix).astype(int).tolist()
            try:
                return ReciprocalBasis(
                    basis_vectors=[float(k) for k in basis], order_matrix=orders, targets=targets
                )
            except ValueError as e:
                logger.debug("Rejected basis %s: %s", basis, e)

    raise SearchFailureError(
        f"No integer decomposition of targets {[f'{t:.4e}' for t in targets]} 1/m with "
        f"|order| <= {max_order}, positive independent basis vectors and mean tile length "
        f">= {min_tile * 1e6:.2f} um. Raise --max-order or lower QPM_MIN_TILE_LENGTH_M"
    )


def duality_tile_lengths(basis: ReciprocalBasis, split: Sequence[float]) -> List[float]:
    """
    Tile lengths a_j = t_j 2 pi / k_j, so that sum_j a_j k_j = 2 pi.

    Args:
        basis: Reciprocal basis
        split: t_j >= 0 summing to 1

    Returns:
        Tile lengths in m

    Raises:
        DomainError: On a wrong-size, negative or non-normalized split, or a zero tile
    """
    split = [float(t) for t in split]
    if len(split) != basis.dimension:
        raise DomainError(f"Need {basis.dimension} split values, got {len(split)}")
    if any(t < 0 for t in split):
        raise DomainError(f"Split values must be nonnegative, got {split}")
    if not math.isclose(math.fsum(split), 1.0, abs_tol=1e-9):
        raise DomainError(f"Split values must sum to 1, got {math.fsum(split)}")

    lengths = [t * TWO_PI / k for t, k in zip(split, basis.basis_vectors)]
    if any(a == 0 for a in lengths):
        raise DomainError(
            f"Split {split} gives a zero-length tile; every t_j must be positive"
        )
    return lengths
