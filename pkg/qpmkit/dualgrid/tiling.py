"""
Dual-grid tiling construction.

Each family j contributes grid points x_n = (n + phi_j) 2 pi / k_j. The
points of all families are merged in ascending order (ties go to the lower
family index) and the i-th point emits one tile of its family's length.
"""

import logging
import math
from typing import Optional

import numpy as np

from qpmkit.grating.models import DomainSequence
from .models import TWO_PI, DualGridDesign

logger = logging.getLogger(__name__)


def _ordered_families(design: DualGridDesign, horizon: float) -> np.ndarray:
    """Family index of every grid point in [0, horizon], in tile order."""
    xs, fams = [], []
    for j, (k, phi) in enumerate(zip(design.basis.basis_vectors, design.phases)):
        spacing = TWO_PI / k
        n = np.arange(0, math.floor(horizon / spacing - phi) + 1)
        xs.append((n + phi) * spacing)
        fams.append(np.full(n.size, j))
    x = np.concatenate(xs)
    fam = np.concatenate(fams)
    return fam[np.lexsort((fam, x))]


def _families_covering(design: DualGridDesign, length: float) -> np.ndarray:
    tiles = np.asarray(design.tile_lengths)
    # the tiling advances on average as fast as the grid: horizon L covers about L
    horizon = length + 4.0 * max(design.basis.grid_periods)
    while True:
        fam = _ordered_families(design, horizon)
        ends = np.cumsum(tiles[fam])
        if ends.size and ends[-1] >= length:
            count = int(np.searchsorted(ends, length, side="left")) + 1
            return fam[:count]
        horizon *= 2.0


def tile_sequence(design: DualGridDesign, length: Optional[float] = None) -> np.ndarray:
    """
    Family indices of the tiles covering a length, in order from z = 0.

    Args:
        design: Dual-grid design
        length: Length to cover, m (default design.total_length)

    Returns:
        Integer array of family indices
    """
    return _families_covering(design, length or design.total_length)


def build_tiling(design: DualGridDesign, whole_tiles: bool = False) -> DomainSequence:
    """
    Render a dual-grid design into signed domains.

    Each tile of family j splits into duty_j a_j of +1 followed by
    (1 - duty_j) a_j of -1; neighbours of equal sign are merged.

    Args:
        design: Dual-grid design
        whole_tiles: Keep only tiles that end within total_length instead of
            truncating the last tile at total_length

    Returns:
        DomainSequence
    """
    fam = tile_sequence(design)
    tiles = np.asarray(design.tile_lengths)
    duties = np.asarray(design.duties)

    if whole_tiles:
        ends = np.cumsum(tiles[fam])
        fam = fam[ends <= design.total_length * (1 + 1e-12)]

    up = duties * tiles
    down = (1.0 - duties) * tiles
    lengths = np.stack([up[fam], down[fam]], axis=1).ravel()
    signs = np.tile([1, -1], fam.size)
    logger.debug("Tiling: %d tiles, counts per family %s", fam.size, np.bincount(fam).tolist())
    return DomainSequence.from_pieces(
        lengths, signs, None if whole_tiles else design.total_length
    )
