"""
Dual-grid package

Quasiperiodic poling structures whose spectra peak at several prescribed
mismatches at once, built by the generalized dual-grid method.
"""

from .models import DesignCandidate, DualGridDesign, OptimizationResult, ReciprocalBasis
from .basis import duality_tile_lengths, rationally_independent, solve_basis
from .tiling import build_tiling, tile_sequence
from .optimize import evaluate_design, optimize_design
from .storage import design_document, load_design, save_design

__all__ = [
    "DesignCandidate",
    "DualGridDesign",
    "OptimizationResult",
    "ReciprocalBasis",
    "duality_tile_lengths",
    "rationally_independent",
    "solve_basis",
    "build_tiling",
    "tile_sequence",
    "evaluate_design",
    "optimize_design",
    "design_document",
    "load_design",
    "save_design",
]
