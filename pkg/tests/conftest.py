"""
Shared fixtures: default models, couplings and the reference two-process design.
"""

import pytest

from qpmkit.config import settings
from qpmkit.dispersion import default_dispersion
from qpmkit.dualgrid import DualGridDesign, build_tiling, solve_basis
from qpmkit.shg import CouplingSet

# Reference ZZZ / ZYY mismatches at 1560 nm, 1/m
DK_ZZZ = 2.510e5
DK_ZYY = 9.061e5
WAVELENGTH = 1560e-9
LENGTH = 5e-3


@pytest.fixture(scope="session")
def dispersion():
    return default_dispersion()


@pytest.fixture(scope="session")
def couplings():
    return CouplingSet.from_library("pack2004")


@pytest.fixture(scope="session")
def reference_basis():
    return solve_basis([DK_ZZZ, DK_ZYY], convention="sum")


@pytest.fixture(scope="session")
def reference_design(reference_basis):
    """Rounded reference tiles (3.37 / 2.64 um); their duality sum is 1.0013."""
    return DualGridDesign(
        basis=reference_basis,
        tile_lengths=[3.37e-6, 2.64e-6],
        duties=[1.0, 0.0],
        total_length=LENGTH,
        duality_tolerance=2e-3,
    )


@pytest.fixture(scope="session")
def reference_sequence(reference_design):
    return build_tiling(reference_design)


@pytest.fixture
def example_crystal():
    return settings.EXAMPLE_CRYSTAL
