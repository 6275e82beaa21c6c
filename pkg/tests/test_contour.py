"""Contour representation: coefficients, sampling, symmetry, distance."""

import numpy as np
import pytest

from vstates import (
    InvalidContour,
    VortexContourCoeffs,
    boundary_distance,
    fold_reduce,
    perturbed_annulus,
    reconstruct,
    sample,
)


def random_coeffs(rng, b=0.6, fold=4, modes=8, scale=0.04):
    """Smooth random shape with geometrically decaying coefficients."""
    decay = 0.5 ** np.arange(modes)
    a1 = scale * decay * rng.uniform(-1, 1, modes)
    a2 = scale * decay * rng.uniform(-1, 1, modes)
    return VortexContourCoeffs(b=b, fold=fold, modes=modes, a1=a1, a2=a2)


def test_annulus_sampling_exact():
    sc = sample(perturbed_annulus(0.63, 1, 1), 64)
    theta = 2 * np.pi * np.arange(64) / 64
    assert np.abs(sc.z1 - np.exp(1j * theta)).max() < 1e-15
    assert np.abs(sc.z2 - 0.63 * np.exp(1j * theta)).max() < 1e-15
    assert np.abs(sc.dz1 - 1j * sc.z1).max() < 1e-15
    assert np.abs(sc.dz2 - 1j * sc.z2).max() < 1e-15


def test_single_mode_radii_extremes():
    # cosine bump: rho_1(0) = 1 + a, rho_1(pi/m) = 1 - a
    sc = sample(perturbed_annulus(0.85, 12, 1, a1_1=0.06), 768)
    assert abs(abs(sc.z1[0]) - 1.06) < 1e-14
    half_sector = 768 // 24
    assert abs(abs(sc.z1[half_sector]) - 0.94) < 1e-14


def test_vector_roundtrip(rng):
    coeffs = random_coeffs(rng)
    vec = coeffs.as_vector()
    assert vec.shape == (16,)
    back = VortexContourCoeffs.from_vector(vec, b=coeffs.b, fold=coeffs.fold, modes=8)
    assert np.array_equal(back.a1, coeffs.a1)
    assert np.array_equal(back.a2, coeffs.a2)
    assert back.b == coeffs.b and back.fold == coeffs.fold

    replaced = coeffs.replace_coefficients(2 * coeffs.a1, coeffs.a2)
    assert np.array_equal(replaced.a1, 2 * coeffs.a1)
    assert replaced.b == coeffs.b


def test_coefficients_frozen(rng):
    a1 = np.zeros(3)
    a2 = np.zeros(3)
    coeffs = VortexContourCoeffs(b=0.5, fold=3, modes=3, a1=a1, a2=a2)
    a1[0] = 99.0  # caller mutation must not leak in
    assert coeffs.a1[0] == 0.0
    with pytest.raises(ValueError):
        coeffs.a1[0] = 1.0


def test_coefficient_validation():
    ok = np.zeros(2)
    with pytest.raises(ValueError):
        VortexContourCoeffs(b=0.0, fold=3, modes=2, a1=ok, a2=ok)
    with pytest.raises(ValueError):
        VortexContourCoeffs(b=1.0, fold=3, modes=2, a1=ok, a2=ok)
    with pytest.raises(ValueError):
        VortexContourCoeffs(b=0.5, fold=0, modes=2, a1=ok, a2=ok)
    with pytest.raises(ValueError):
        VortexContourCoeffs(b=0.5, fold=3, modes=0, a1=ok, a2=ok)
    with pytest.raises(ValueError):
        VortexContourCoeffs(b=0.5, fold=3, modes=2, a1=np.zeros(3), a2=ok)
    with pytest.raises(ValueError):
        VortexContourCoeffs(b=0.5, fold=3, modes=2, a1=np.array([np.nan, 0]), a2=ok)


def test_sampling_guards():
    coeffs = perturbed_annulus(0.5, 4, 8)
    with pytest.raises(ValueError):
        sample(coeffs, 66)  # not a multiple of the fold
    with pytest.raises(ValueError):
        sample(coeffs, 64)  # below the alias-free bound 2*4*8 + 1
    # inner radius driven negative
    bad = perturbed_annulus(0.1, 4, 1, a2_1=-0.2)
    with pytest.raises(InvalidContour):
        sample(bad, 128)
    # boundaries crossing
    crossing = perturbed_annulus(0.9, 4, 1, a1_1=-0.08, a2_1=0.08)
    with pytest.raises(InvalidContour):
        sample(crossing, 128)


def test_fold_symmetry(rng):
    """Rotating by one sector multiplies both boundaries by a fixed phase."""
    for fold in (3, 4, 12):
        coeffs = random_coeffs(rng, fold=fold, modes=6, scale=0.03)
        nodes = 48 * fold
        sc = sample(coeffs, nodes)
        shift = nodes // fold
        phase = np.exp(2j * np.pi / fold)
        assert np.abs(np.roll(sc.z1, -shift) - phase * sc.z1).max() < 1e-13
        assert np.abs(np.roll(sc.z2, -shift) - phase * sc.z2).max() < 1e-13


def test_reflection_conjugates(rng):
    coeffs = random_coeffs(rng, fold=5, modes=6)
    sc = sample(coeffs, 160)
    for z in (sc.z1, sc.z2):
        reflected = np.conj(z[1:][::-1])
        assert np.abs(z[1:] - reflected).max() < 1e-12


def test_derivative_matches_finite_differences():
    """Analytic tangent against 4th-order central differences.

    The FD error scales like (mk)^5 * dtheta^4 / 30, so the achievable
    agreement depends on the highest excited frequency; fourth-order
    decay under grid refinement is the meaningful check.
    """
    coeffs = perturbed_annulus(0.6, 4, 3, a1_1=0.1, a2_1=-0.05)

    def fd_error(nodes):
        sc = sample(coeffs, nodes)
        h = 2 * np.pi / nodes
        worst = 0.0
        for z, dz in ((sc.z1, sc.dz1), (sc.z2, sc.dz2)):
            fd = (
                -np.roll(z, -2) + 8 * np.roll(z, -1) - 8 * np.roll(z, 1) + np.roll(z, 2)
            ) / (12 * h)
            worst = max(worst, np.abs(fd - dz).max())
        return worst

    coarse = fd_error(256)
    fine = fd_error(512)
    assert fine < 2e-7
    assert coarse / fine > 14  # 4th order gives 16


def test_fold_reduce_roundtrip(rng):
    for fold in (3, 4, 12):
        coeffs = random_coeffs(rng, fold=fold, modes=5, scale=0.03)
        nodes = 40 * fold
        sc = sample(coeffs, nodes)
        reduced = fold_reduce(sc)
        assert reduced.z1.shape == (nodes // fold,)
        rebuilt = reconstruct(reduced)
        assert np.abs(rebuilt.z1 - sc.z1).max() < 1e-13
        assert np.abs(rebuilt.z2 - sc.z2).max() < 1e-13
        assert np.abs(rebuilt.dz1 - sc.dz1).max() < 1e-13
        assert np.abs(rebuilt.dz2 - sc.dz2).max() < 1e-13


def test_fold_reduce_identity_for_fold_one(rng):
    coeffs = random_coeffs(rng, fold=1, modes=4, scale=0.03)
    sc = sample(coeffs, 64)
    reduced = fold_reduce(sc)
    assert reduced.z1.shape == (64,)
    assert np.array_equal(reduced.z1, sc.z1)


def test_boundary_distance_annulus():
    sc = sample(perturbed_annulus(0.63, 1, 1), 128)
    assert abs(boundary_distance(sc) - 0.37) < 1e-13
    assert abs(boundary_distance(sc, refine=True) - 0.37) < 1e-12


def test_boundary_distance_single_bump():
    # inner boundary bulges outward at theta = 0, where both grids have a node
    sc = sample(perturbed_annulus(0.6, 4, 1, a2_1=0.05), 128)
    assert abs(boundary_distance(sc) - (1 - 0.6 - 0.05)) < 1e-14
    refined = boundary_distance(sc, refine=True)
    assert refined <= boundary_distance(sc) + 1e-15
    assert abs(refined - 0.35) < 1e-10


def test_refined_distance_off_grid():
    """Refinement must not depend on the minimum sitting on a node."""
    coeffs = perturbed_annulus(0.6, 3, 2)
    a1 = np.array([0.0, 0.03])
    sc = sample(coeffs.replace_coefficients(a1, coeffs.a2), 96)
    coarse = sample(coeffs.replace_coefficients(a1, coeffs.a2), 48)
    fine = boundary_distance(sc, refine=True)
    assert abs(boundary_distance(coarse, refine=True) - fine) < 1e-8
