import math

import numpy as np
import pytest

from qpmkit.config import settings
from qpmkit.dualgrid import (
    DualGridDesign, ReciprocalBasis, build_tiling, duality_tile_lengths, evaluate_design,
    load_design, optimize_design, rationally_independent, save_design, solve_basis, tile_sequence
)
from qpmkit.errors import ConfigurationError, DomainError, SearchFailureError
from qpmkit.grating import PeriodicGrating, fourier_coefficient, peak_fourier_coefficient
from qpmkit.helpers import ParallelEvaluator

from conftest import DK_ZYY, DK_ZZZ, LENGTH

TWO_PI = 2 * math.pi
REFERENCE_SPLIT = [0.6206, 0.3794]


def _design(basis, split, duties=(1.0, 0.0), length=LENGTH, **kwargs):
    return DualGridDesign(
        basis=basis,
        tile_lengths=duality_tile_lengths(basis, split),
        duties=list(duties),
        total_length=length,
        **kwargs,
    )


# Basis

def test_sum_convention(reference_basis):
    assert reference_basis.basis_vectors == pytest.approx([11.571e5, 9.061e5], rel=1e-12)
    assert reference_basis.order_matrix == [[1, -1], [0, 1]]
    assert reference_basis.reconstruct() == pytest.approx([DK_ZZZ, DK_ZYY], rel=1e-9)
    assert reference_basis.grid_periods[0] * 1e6 == pytest.approx(5.430, abs=1e-3)
    assert reference_basis.grid_periods[1] * 1e6 == pytest.approx(6.934, abs=1e-3)


def test_single_target_basis():
    basis = solve_basis([1.36e5])
    assert basis.basis_vectors == pytest.approx([1.36e5])
    assert basis.order_matrix == [[1]]


def test_search_convention_prefers_low_orders():
    basis = solve_basis([DK_ZZZ, DK_ZYY], max_order=2)
    assert basis.dimension == 2
    assert max(abs(n) for row in basis.order_matrix for n in row) == 1
    assert all(k > 0 for k in basis.basis_vectors)
    assert basis.reconstruct() == pytest.approx([DK_ZZZ, DK_ZYY], rel=1e-9)
    # dk_ZZZ = k_b - k_a, dk_ZYY = k_a + k_b has the smallest largest vector
    assert max(basis.basis_vectors) == pytest.approx((DK_ZZZ + DK_ZYY) / 2, rel=1e-9)
    assert rationally_independent(basis.basis_vectors)


def test_search_is_deterministic():
    assert solve_basis([DK_ZZZ, DK_ZYY]) == solve_basis([DK_ZZZ, DK_ZYY])


def test_unreachable_targets():
    with pytest.raises(SearchFailureError):
        solve_basis([2.0e6, 2.7e6, 3.9e6], max_order=1)


def test_basis_argument_checks():
    with pytest.raises(DomainError):
        solve_basis([])
    with pytest.raises(DomainError):
        solve_basis([1e5, 2e5, 3e5, 4e5])
    with pytest.raises(DomainError):
        solve_basis([-2.5e5, 9e5])
    with pytest.raises(DomainError):
        solve_basis([2.5e5, 9e5, 1e6], convention="sum")


def test_rational_independence():
    assert rationally_independent([1.0, math.sqrt(2)])
    assert not rationally_independent([1.0, 1.5])
    assert not rationally_independent([3e5, 7e5])


def test_reciprocal_basis_validation():
    with pytest.raises(ValueError):
        ReciprocalBasis(basis_vectors=[1e5, 2e5], order_matrix=[[1, 0], [0, 1]], targets=[1e5, 3e5])
    with pytest.raises(ValueError):
        ReciprocalBasis(basis_vectors=[-1e5], order_matrix=[[1]], targets=[-1e5])


# Duality

def test_reference_tile_lengths(reference_basis):
    a1, a2 = duality_tile_lengths(reference_basis, REFERENCE_SPLIT)
    assert a1 * 1e6 == pytest.approx(3.37, rel=0.004)
    assert a2 * 1e6 == pytest.approx(2.63, rel=0.004)


@pytest.mark.parametrize("split", [[0.5, 0.5], [0.6206, 0.3794], [0.01, 0.99]])
def test_duality_identity(reference_basis, split):
    lengths = duality_tile_lengths(reference_basis, split)
    total = math.fsum(a * k for a, k in zip(lengths, reference_basis.basis_vectors))
    assert total == pytest.approx(TWO_PI, rel=1e-14)


def test_duality_split_errors(reference_basis):
    with pytest.raises(DomainError):
        duality_tile_lengths(reference_basis, [1.0, 0.0])
    with pytest.raises(DomainError):
        duality_tile_lengths(reference_basis, [1.2, -0.2])
    with pytest.raises(DomainError):
        duality_tile_lengths(reference_basis, [0.5, 0.4])
    with pytest.raises(DomainError):
        duality_tile_lengths(reference_basis, [1.0])


def test_rounded_tiles_need_loose_tolerance(reference_basis, reference_design):
    assert reference_design.duality_sum() == pytest.approx(1.0013, abs=1e-4)
    with pytest.raises(ValueError):
        DualGridDesign(
            basis=reference_basis, tile_lengths=[3.37e-6, 2.64e-6], duties=[1, 0], total_length=LENGTH
        )


def test_design_validation(reference_basis):
    tiles = duality_tile_lengths(reference_basis, REFERENCE_SPLIT)
    with pytest.raises(ValueError):
        DualGridDesign(basis=reference_basis, tile_lengths=tiles, duties=[1.0], total_length=LENGTH)
    with pytest.raises(ValueError):
        DualGridDesign(basis=reference_basis, tile_lengths=tiles, duties=[1.0, 1.5], total_length=LENGTH)
    with pytest.raises(ValueError):
        DualGridDesign(
            basis=reference_basis, tile_lengths=tiles, duties=[1.0, 0.0], grid_phases=[0.0, 1.0],
            total_length=LENGTH,
        )


# Tiling

def test_reference_design_tile_fractions(reference_design):
    fam = tile_sequence(reference_design)
    fractions = np.bincount(fam, minlength=2) / fam.size
    assert fractions == pytest.approx([0.561, 0.439], abs=0.01)
    assert reference_design.tile_fractions() == pytest.approx([0.5608, 0.4392], abs=1e-4)
    assert reference_design.mean_tile_length() * 1e6 == pytest.approx(3.05, rel=0.01)


def test_tile_fraction_law_at_ten_thousand_tiles(reference_basis):
    design = _design(reference_basis, [0.45, 0.55], grid_phases=[0.3, 0.7])
    fam = tile_sequence(design, 1e4 * design.mean_tile_length())
    assert fam.size == pytest.approx(1e4, rel=0.01)
    assert np.bincount(fam, minlength=2) / fam.size == pytest.approx(design.tile_fractions(), abs=0.01)


def test_tiling_covers_length_and_merges(reference_sequence):
    assert reference_sequence.total_length == pytest.approx(LENGTH, rel=1e-12)
    # duties 1 / 0: every domain is a run of one family, neighbours alternate in sign
    assert np.all(reference_sequence.signs[1:] != reference_sequence.signs[:-1])


def test_whole_tiles_stop_inside(reference_design):
    whole = build_tiling(reference_design, whole_tiles=True)
    assert whole.total_length <= LENGTH * (1 + 1e-12)
    assert whole.total_length > LENGTH - max(reference_design.tile_lengths)


def test_single_family_reproduces_periodic_grating():
    k = 1.36e5
    basis = solve_basis([k])
    design = DualGridDesign(
        basis=basis, tile_lengths=duality_tile_lengths(basis, [1.0]), duties=[0.5], total_length=LENGTH
    )
    grating = PeriodicGrating(period=TWO_PI / k, duty=0.5, length=LENGTH)
    assert build_tiling(design) == grating.render()


def test_grid_phase_changes_structure_not_spectrum(reference_basis):
    plain = build_tiling(_design(reference_basis, REFERENCE_SPLIT))
    shifted = build_tiling(_design(reference_basis, REFERENCE_SPLIT, grid_phases=[0.5, 0.25]))
    assert plain != shifted
    targets = np.array([DK_ZZZ, DK_ZYY])
    assert np.abs(fourier_coefficient(shifted, targets)) == pytest.approx(
        np.abs(fourier_coefficient(plain, targets)), rel=0.05
    )


def test_spectral_peaks_at_targets(reference_basis):
    seq = build_tiling(_design(reference_basis, REFERENCE_SPLIT))
    window = TWO_PI / seq.total_length
    for target in (DK_ZZZ, DK_ZYY):
        k_peak, magnitude = peak_fourier_coefficient(seq, target, window=2 * window)
        assert abs(k_peak - target) < window
        assert magnitude > 0.1


def test_reference_design_coefficients(reference_sequence):
    window = 4 * math.pi / LENGTH
    _, g_zzz = peak_fourier_coefficient(reference_sequence, DK_ZZZ, window)
    _, g_zyy = peak_fourier_coefficient(reference_sequence, DK_ZYY, window)
    assert g_zzz == pytest.approx(0.112, rel=0.1)
    assert g_zyy == pytest.approx(0.3855, rel=0.1)


# Optimization

@pytest.fixture
def coarse_grid(monkeypatch):
    monkeypatch.setattr(settings, "SPLIT_RESOLUTION", 0.01)


def test_evaluate_design(reference_basis):
    candidate = evaluate_design(_design(reference_basis, REFERENCE_SPLIT), [15.4, 3.75])
    assert candidate.split == pytest.approx(REFERENCE_SPLIT)
    assert candidate.score == min(candidate.weighted)
    assert candidate.weighted[0] == pytest.approx(15.4 * candidate.coefficients[0])


def test_optimize_balances_weighted_coefficients(coarse_grid):
    result = optimize_design([DK_ZZZ, DK_ZYY], [15.4, 3.75], basis=solve_basis(
        [DK_ZZZ, DK_ZYY], convention="sum"
    ), evaluator=ParallelEvaluator(max_workers=2))
    zzz, zyy = result.best.weighted
    assert 0.6 <= zyy / zzz <= 1.4
    assert len(result.candidates) == 99
    assert result.best.score == result.scores().max()
    assert result.design.duties == [1.0, 0.0]
    assert result.design.split() == pytest.approx(result.best.split, rel=1e-12)


def test_optimize_is_scale_invariant(coarse_grid):
    basis = solve_basis([DK_ZZZ, DK_ZYY], convention="sum")
    once = optimize_design([DK_ZZZ, DK_ZYY], [15.4, 3.75], basis=basis)
    twice = optimize_design([DK_ZZZ, DK_ZYY], [30.8, 7.5], basis=basis)
    assert once.best.split == twice.best.split
    assert twice.best.score == pytest.approx(2 * once.best.score, rel=1e-12)


def test_optimize_is_independent_of_worker_count(coarse_grid):
    basis = solve_basis([DK_ZZZ, DK_ZYY], convention="sum")
    serial = optimize_design([DK_ZZZ, DK_ZYY], [15.4, 3.75], basis=basis,
                             evaluator=ParallelEvaluator(max_workers=1))
    threaded = optimize_design([DK_ZZZ, DK_ZYY], [15.4, 3.75], basis=basis,
                               evaluator=ParallelEvaluator(max_workers=4))
    assert serial.scores().tolist() == threaded.scores().tolist()
    assert serial.best == threaded.best


def test_optimize_single_target_gives_half_duty(coarse_grid):
    # 108 whole periods in 5 mm
    k = TWO_PI * 108 / LENGTH
    result = optimize_design([k], [1.0])
    assert result.design.duties == [0.5]
    assert result.best.coefficients[0] == pytest.approx(2 / math.pi, rel=1e-6)


def test_optimize_argument_checks():
    with pytest.raises(DomainError):
        optimize_design([DK_ZZZ, DK_ZYY], [15.4])


# Storage

def test_design_file_round_trip(tmp_path, reference_design, reference_sequence):
    path = save_design(tmp_path / "design.yaml", reference_design, metadata={"note": "test"})
    design, sequence = load_design(path)
    assert design.tile_lengths == pytest.approx(reference_design.tile_lengths, rel=1e-12)
    assert design.basis.order_matrix == reference_design.basis.order_matrix
    assert design.duality_tolerance == reference_design.duality_tolerance
    assert len(sequence) == len(reference_sequence)
    assert sequence.lengths == pytest.approx(reference_sequence.lengths, rel=1e-12)
    g_saved = fourier_coefficient(sequence, DK_ZZZ)
    assert abs(g_saved) == pytest.approx(abs(fourier_coefficient(reference_sequence, DK_ZZZ)), abs=1e-9)


def test_design_file_backup(tmp_path, reference_design):
    path = tmp_path / "design.yaml"
    save_design(path, reference_design)
    save_design(path, reference_design)
    assert (tmp_path / "design.yaml.backup").exists()
    assert not (tmp_path / "design.yaml.tmp").exists()


def test_design_file_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_design(tmp_path / "missing.yaml")
    bad = tmp_path / "bad.yaml"
    bad.write_text("basis: {}\n")
    with pytest.raises(ConfigurationError):
        load_design(bad)
