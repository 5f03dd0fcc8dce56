import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adhmkit.errors import DomainError, InvalidPointError, ShapeError
from adhmkit.linalg import (
    DEFAULT_TOL,
    BinaryForm,
    ToleranceConfig,
    binary_form,
    binary_form_roots,
    eigenvalues,
    greedy_match,
    kernel_basis,
    mats_close,
    proj_distance,
    proj_point,
    random_well_conditioned,
    rank_tol,
    rel_err,
)


def test_tolerance_config_defaults():
    assert DEFAULT_TOL.rank_rel_tol == 1e-9
    assert DEFAULT_TOL.eq_rel_tol == 1e-8
    assert DEFAULT_TOL.root_cluster_tol == 1e-6


@pytest.mark.parametrize("kwargs", [
    {"rank_rel_tol": 0.0},
    {"eq_rel_tol": -1e-8},
    {"root_cluster_tol": 2.0},
    {"rank_rel_tol": float("nan")},
])
def test_tolerance_config_rejects_bad_values(kwargs):
    with pytest.raises((ValueError, TypeError)):
        ToleranceConfig(**kwargs)


def test_rank_and_kernel_agree():
    rng = np.random.default_rng(0)
    for _ in range(20):
        rows, cols, r = rng.integers(1, 6, size=3)
        r = min(r, rows, cols)
        a = (rng.normal(size=(rows, r)) + 1j * rng.normal(size=(rows, r)))
        b = (rng.normal(size=(r, cols)) + 1j * rng.normal(size=(r, cols)))
        m = a @ b
        assert rank_tol(m) == r
        k = kernel_basis(m)
        assert k.shape == (cols, cols - r)
        assert np.linalg.norm(m @ k) < 1e-10 * max(np.linalg.norm(m), 1.0)
        # columns orthonormal
        assert np.allclose(k.conj().T @ k, np.eye(cols - r), atol=1e-12)


def test_kernel_basis_zero_matrix():
    k = kernel_basis(np.zeros((3, 4)))
    assert k.shape == (4, 4)


def test_kernel_basis_noise_needs_external_scale():
    # A residual made of pure roundoff must count as zero when the cutoff is
    # anchored at the operator scale; relative-to-itself it looks full rank.
    rng = np.random.default_rng(3)
    noise = 1e-15 * (rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
    assert kernel_basis(noise).shape[1] == 0
    assert kernel_basis(noise, scale=1.0).shape[1] == 3


def test_eigenvalues_frozen():
    vals = eigenvalues(np.array([[0.0, 1.0], [-2.0, 3.0]]))
    assert np.allclose(sorted(vals, key=lambda z: z.real), [1.0, 2.0], atol=1e-12)
    with pytest.raises(ShapeError):
        eigenvalues(np.zeros((2, 3)))


def test_greedy_match_permutation_and_threshold():
    rng = np.random.default_rng(1)
    pts = rng.normal(size=(5, 2)) + 1j * rng.normal(size=(5, 2))
    perm = pts[rng.permutation(5)]
    assert greedy_match(pts, perm, DEFAULT_TOL)
    off = perm.copy()
    off[0] += 1.0
    assert not greedy_match(pts, off, DEFAULT_TOL)
    assert not greedy_match(pts, pts[:4], DEFAULT_TOL)


def test_greedy_match_empty():
    assert greedy_match(np.zeros((0, 2)), np.zeros((0, 2)), DEFAULT_TOL)


def test_proj_point_normalization():
    p = proj_point(2.0, 1.0)
    assert p.lam1 == 1.0 and abs(p.lam2 - 0.5) < 1e-15
    q = proj_point(1.0, 2.0)
    assert q.lam2 == 1.0 and abs(q.lam1 - 0.5) < 1e-15
    # ties go to the second coordinate: affine representative (z, 1)
    t = proj_point(1.0 + 0j, -1.0 + 0j)
    assert t.lam2 == 1.0
    with pytest.raises(InvalidPointError):
        proj_point(0.0, 0.0)


def test_proj_distance_properties():
    a = proj_point(1.0, 0.0)
    b = proj_point(0.0, 1.0)
    assert abs(proj_distance(a, b) - 1.0) < 1e-15
    assert proj_distance(a, a) == 0.0
    c1 = proj_point(3.0 + 1j, 2.0)
    c2 = proj_point((3.0 + 1j) * 5j, 10j)
    assert proj_distance(c1, c2) < 1e-15


def test_binary_form_eval():
    f = binary_form([2.0, 3.0, 1.0])
    assert f.degree == 2
    # f(v1, v2) = 2 v1^2 + 3 v1 v2 + v2^2
    assert abs(f(1.0, 1.0) - 6.0) < 1e-14
    assert abs(f(2.0, -1.0) - 3.0) < 1e-14


def test_binary_form_roots_frozen_cases():
    # v1 v2: one root at each pole
    roots = binary_form_roots(binary_form([0.0, 1.0, 0.0]))
    assert len(roots) == 2 and {k for _, k in roots} == {1}
    flat = [p for p, _ in roots]
    assert any(abs(p.lam1) < 1e-12 for p in flat)
    assert any(abs(p.lam2) < 1e-12 for p in flat)

    # (v1 + v2)^2: a double root at [-1 : 1]
    roots = binary_form_roots(binary_form([1.0, 2.0, 1.0]))
    assert len(roots) == 1
    p, mult = roots[0]
    assert mult == 2
    assert abs(p.lam1 + p.lam2) < 1e-7

    # v1^2 + v2^2: conjugate pair [i : 1], [-i : 1]
    roots = binary_form_roots(binary_form([1.0, 0.0, 1.0]))
    vals = sorted((p.lam1 / p.lam2).imag for p, _ in roots)
    assert len(roots) == 2 and abs(vals[0] + 1) < 1e-12 and abs(vals[1] - 1) < 1e-12


def test_binary_form_roots_pole_multiplicity():
    # v1 * v2^2 as a cubic: [0:1] simple and [1:0] double
    roots = binary_form_roots(binary_form([0.0, 0.0, 1.0, 0.0]))
    by_mult = {k: p for p, k in roots}
    assert set(by_mult) == {1, 2}
    assert abs(by_mult[2].lam2) < 1e-12  # the pole [1 : 0]
    assert abs(by_mult[1].lam1) < 1e-12


def test_binary_form_roots_zero_and_constant():
    with pytest.raises(InvalidPointError):
        binary_form_roots(binary_form([0.0, 0.0, 0.0]))
    assert binary_form_roots(binary_form([4.0])) == ()


def test_mats_close_and_rel_err():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert mats_close(a, a + 1e-12, DEFAULT_TOL)
    assert not mats_close(a, a + 1.0, DEFAULT_TOL)
    assert rel_err(a, a) == 0.0
    assert rel_err(np.zeros(2), np.zeros(2)) == 0.0


def test_random_well_conditioned_bound():
    rng = np.random.default_rng(5)
    for c in (1, 2, 4, 6):
        g = random_well_conditioned(rng, c, spread=16.0)
        assert np.linalg.cond(g) <= 16.0 + 1e-9
    with pytest.raises(DomainError):
        random_well_conditioned(rng, 2, spread=0.5)


finite_c = st.complex_numbers(min_magnitude=0, max_magnitude=1e6,
                              allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(finite_c, finite_c)
def test_proj_point_unit_normalization_hypothesis(a, b):
    if abs(a) < 1e-12 and abs(b) < 1e-12:
        return
    p = proj_point(a, b)
    assert max(abs(p.lam1), abs(p.lam2)) == pytest.approx(1.0, abs=1e-9)
    # the normalized coordinate is literally one
    assert p.lam1 == 1.0 or p.lam2 == 1.0


@settings(max_examples=40, deadline=None)
@given(st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3,
                          allow_nan=False, allow_infinity=False))
def test_binary_form_roots_scale_invariant_hypothesis(scale):
    base = binary_form([1.0, -3.0, 2.0])  # roots at [-1:1] and [-2:1]
    scaled = binary_form(np.array(base.coeffs) * scale)
    r1 = binary_form_roots(base)
    r2 = binary_form_roots(scaled)
    assert len(r1) == len(r2)
    for (p1, k1) in r1:
        assert any(k1 == k2 and proj_distance(p1, p2) < 1e-8 for p2, k2 in r2)
