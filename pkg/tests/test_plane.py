import numpy as np
import pytest

from adhmkit.errors import DomainError, InvalidPointError, ShapeError
from adhmkit.linalg import DEFAULT_TOL, greedy_match, rel_err
from adhmkit.plane import (
    act_gl,
    canonical_form,
    from_points,
    joint_spectrum,
    orbit_equal_plane,
    plane_adhm,
    transition_plane,
    validate_plane,
)
from adhmkit.propsuite import GenConfig, gen_plane_valid


def scal(b1, b2, e):
    """One-dimensional triple from plain numbers."""
    return plane_adhm(np.array([[b1]], dtype=complex),
                      np.array([[b2]], dtype=complex),
                      np.array([e], dtype=complex))


def test_factory_shape_checks():
    with pytest.raises(ShapeError):
        plane_adhm(np.zeros((2, 2)), np.zeros((3, 3)), np.zeros(2))
    with pytest.raises(ShapeError):
        plane_adhm(np.zeros((2, 2)), np.zeros((2, 2)), np.zeros(3))
    with pytest.raises(ShapeError):
        plane_adhm(np.zeros((2, 3)), np.zeros((2, 3)), np.zeros(2))


def test_validate_commuting_costable_passes():
    d = plane_adhm(np.diag([1.0 + 0j, 2.0]), np.diag([3.0 + 0j, 4.0]),
                   np.array([1.0, 1.0], dtype=complex))
    rep = validate_plane(d)
    assert rep.passed
    assert rep.check("commutation").residual <= 1e-15


def test_validate_detects_kernel_line_of_e():
    # second basis vector is a joint eigenvector killed by e: not costable.
    # (regression: the residual-kernel cutoff must be anchored at the
    # operator scale, or this failure mode looks like noise and passes)
    d = plane_adhm(np.diag([1.0 + 0j, 2.0]), np.diag([3.0 + 0j, 4.0]),
                   np.array([1.0, 0.0], dtype=complex))
    rep = validate_plane(d)
    assert not rep.passed
    chk = rep.check("costability")
    assert chk.verdict == "fail"
    assert "dimension 1" in chk.detail


def test_validate_zero_e_fails():
    d = plane_adhm(np.diag([1.0 + 0j, 2.0]), np.eye(2, dtype=complex),
                   np.zeros(2, dtype=complex))
    assert validate_plane(d).check("costability").verdict == "fail"


def test_validate_noncommuting_refuses_costability():
    d = plane_adhm(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex),
                   np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex),
                   np.array([1.0, 1.0], dtype=complex))
    rep = validate_plane(d)
    assert rep.check("commutation").verdict == "fail"
    assert rep.check("costability").verdict == "indeterminate"


def test_act_gl_preserves_validity_and_rejects_singular():
    rng = np.random.default_rng(4)
    d = gen_plane_valid(GenConfig(seed=10, c=3))
    g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    moved = act_gl(d, g)
    assert validate_plane(moved).passed
    with pytest.raises(InvalidPointError):
        act_gl(d, np.zeros((3, 3)))


def test_from_points_and_joint_spectrum_roundtrip():
    pts = ((1.0 + 0j, 3.0 + 0j), (2.0 + 0j, 4.0 + 0j))
    d = from_points(pts)
    assert validate_plane(d).passed
    spectrum = joint_spectrum(d)
    assert greedy_match(np.array(spectrum), np.array(pts), DEFAULT_TOL)


def test_from_points_rejects_duplicates():
    with pytest.raises(InvalidPointError):
        from_points(((1.0, 2.0), (1.0, 2.0)))


def test_joint_spectrum_nondiagonalizable_frozen():
    # a length-2 punctual pair supported at (1, 5)
    d = plane_adhm(np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex),
                   np.array([[5.0, 2.0], [0.0, 5.0]], dtype=complex),
                   np.array([0.0, 1.0], dtype=complex))
    spectrum = joint_spectrum(d)
    assert len(spectrum) == 2
    for beta, eps in spectrum:
        assert abs(beta - 1.0) < 1e-9 and abs(eps - 5.0) < 1e-9


def test_joint_spectrum_requires_commutation():
    d = plane_adhm(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex),
                   np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex),
                   np.array([1.0, 1.0], dtype=complex))
    with pytest.raises(InvalidPointError):
        joint_spectrum(d)


def test_canonical_form_frozen_c2():
    d = plane_adhm(np.diag([1.0 + 0j, 2.0]), np.diag([5.0 + 0j, 7.0]),
                   np.array([1.0, 1.0], dtype=complex))
    can, gauge = canonical_form(d)
    assert np.allclose(can.b1, [[0.0, 1.0], [-2.0, 3.0]], atol=1e-12)
    assert np.allclose(can.b2, [[3.0, 2.0], [-4.0, 9.0]], atol=1e-12)
    assert np.allclose(can.e, [1.0, 0.0], atol=1e-12)
    # the returned gauge is a witness: applying it reproduces the form
    again = act_gl(d, gauge)
    assert rel_err(again.b1, can.b1) < 1e-12
    assert rel_err(again.b2, can.b2) < 1e-12


def test_canonical_form_frozen_c1():
    can, gauge = canonical_form(scal(2.0, 3.0, 5.0))
    assert abs(can.b1[0, 0] - 2.0) < 1e-14
    assert abs(can.b2[0, 0] - 3.0) < 1e-14
    assert abs(can.e[0] - 1.0) < 1e-14
    assert abs(gauge[0, 0] - 5.0) < 1e-14


def test_canonical_form_requires_valid_input():
    bad = plane_adhm(np.diag([1.0 + 0j, 2.0]), np.diag([3.0 + 0j, 4.0]),
                     np.array([1.0, 0.0], dtype=complex))
    with pytest.raises(InvalidPointError):
        canonical_form(bad)


def test_orbit_equal_plane_gauge_and_separation():
    rng = np.random.default_rng(8)
    d = gen_plane_valid(GenConfig(seed=21, c=2))
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    assert orbit_equal_plane(d, act_gl(d, g))
    other = gen_plane_valid(GenConfig(seed=22, c=2))
    assert not orbit_equal_plane(d, other)
    # different sizes never share an orbit
    assert not orbit_equal_plane(d, gen_plane_valid(GenConfig(seed=23, c=3)))


def test_transition_frozen_scalar_values():
    d = scal(2.0, 5.0, 7.0)
    # one step in the smallest atlas sends b1 to -1/(2) and twists b2 once
    moved = transition_plane(d, 1, 0, 1, 1)
    assert abs(moved.b1[0, 0] + 0.5) < 1e-14
    assert abs(moved.b2[0, 0] + 10.0) < 1e-14
    assert abs(moved.e[0] - 7.0) < 1e-14
    # higher twist only changes the b2 power
    moved2 = transition_plane(d, 1, 0, 2, 1)
    assert abs(moved2.b1[0, 0] + 0.5) < 1e-14
    assert abs(moved2.b2[0, 0] - 20.0) < 1e-14


def test_transition_identity_when_charts_equal():
    d = gen_plane_valid(GenConfig(seed=31, c=2))
    same = transition_plane(d, 2, 2, 3, 4)
    assert rel_err(same.b1, d.b1) < 1e-14
    assert rel_err(same.b2, d.b2) < 1e-14


def test_transition_outside_overlap_raises():
    # F = cos*I - sin*b1 is singular when b1 owns the eigenvalue cos/sin
    d = scal(0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        transition_plane(d, 1, 0, 1, 1)
    with pytest.raises(DomainError):
        transition_plane(d, 0, 1, 1, 1)  # same overlap from the other side


def test_transition_rejects_bad_twist():
    d = scal(1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        transition_plane(d, 0, 1, 0, 1)


def test_cocycle_seeded_loop():
    rng = np.random.default_rng(77)
    for case in range(20):
        c = int(rng.integers(1, 4))
        n = int(rng.integers(1, 4))
        d = gen_plane_valid(GenConfig(seed=1000 + case, c=c))
        m, l, k = (int(v) for v in rng.integers(0, c + 1, size=3))
        try:
            fwd = transition_plane(d, m, l, n, c)
            back = transition_plane(fwd, l, m, n, c)
            two = transition_plane(fwd, l, k, n, c)
            one = transition_plane(d, m, k, n, c)
        except DomainError:
            continue
        assert rel_err(back.b1, d.b1) < 1e-8
        assert rel_err(back.b2, d.b2) < 1e-8
        assert rel_err(two.b1, one.b1) < 1e-8
        assert rel_err(two.b2, one.b2) < 1e-8
