"""Tolerance-aware dense complex linear algebra shared by every module.

Matrices are plain numpy ``complex128`` arrays.  This module fixes the
numerical conventions everything else relies on: SVD-based rank and kernel
decisions with a relative threshold, eigenvalue multisets compared by greedy
nearest-pair matching, and root extraction for homogeneous binary forms via
the companion matrix of a dehomogenization chosen for stability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidPointError, ShapeError

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOL",
    "freeze",
    "as_matrix",
    "as_covector",
    "rank_tol",
    "kernel_basis",
    "eigenvalues",
    "greedy_match",
    "mats_close",
    "rel_err",
    "BinaryForm",
    "binary_form",
    "binary_form_roots",
    "ProjPoint",
    "proj_point",
    "proj_distance",
    "random_invertible",
]

_TINY = 1e-300


@dataclass(frozen=True)
class ToleranceConfig:
    """Relative thresholds used by every tolerance-aware decision.

    rank_rel_tol   -- singular values below this fraction of the largest one
                      are treated as zero (rank, kernels, invertibility).
    eq_rel_tol     -- relative threshold for residual/equality tests.
    root_cluster_tol -- projective roots closer than this are merged into a
                      single root with multiplicity.
    """

    rank_rel_tol: float = 1e-9
    eq_rel_tol: float = 1e-8
    root_cluster_tol: float = 1e-6

    def __post_init__(self):
        for name in ("rank_rel_tol", "eq_rel_tol", "root_cluster_tol"):
            value = getattr(self, name)
            if not (isinstance(value, float) and 0.0 < value < 1.0):
                raise ValueError(f"{name} must be a float in (0, 1), got {value!r}")


DEFAULT_TOL = ToleranceConfig()


def freeze(a) -> np.ndarray:
    """Return a read-only complex128 copy of ``a``."""
    out = np.array(a, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


def as_matrix(a, name="matrix") -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or min(m.shape) < 1:
        raise ShapeError(f"{name}: expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ShapeError(f"{name}: entries must be finite")
    return m


def as_covector(a, name="covector") -> np.ndarray:
    v = np.asarray(a, dtype=np.complex128)
    if v.ndim == 2 and v.shape[0] == 1:
        v = v[0]
    if v.ndim != 1 or v.shape[0] < 1:
        raise ShapeError(f"{name}: expected a 1-d row, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ShapeError(f"{name}: entries must be finite")
    return v


def rank_tol(m, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Numerical rank: singular values above rank_rel_tol * largest."""
    m = as_matrix(m, "rank_tol")
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_rel_tol * s[0]))


def kernel_basis(m, tol: ToleranceConfig = DEFAULT_TOL, scale=None) -> np.ndarray:
    """Orthonormal basis of the numerical null space, as columns.

    Returns an array of shape (cols, k); k == 0 when the matrix has full
    column rank.  By default singular values are compared against the
    largest one of ``m`` itself; pass ``scale`` when ``m`` is a residual
    that may consist entirely of roundoff noise, so that the cutoff is
    rank_rel_tol * scale instead of relative to the noise floor.
    """
    m = as_matrix(m, "kernel_basis")
    _, s, vh = np.linalg.svd(m)
    if scale is not None:
        cut = tol.rank_rel_tol * scale
    elif s.size == 0 or s[0] == 0.0:
        cut = np.inf
    else:
        cut = tol.rank_rel_tol * s[0]
    r = int(np.count_nonzero(s > cut))
    return vh[r:].conj().T


def eigenvalues(m) -> np.ndarray:
    """Eigenvalues with algebraic multiplicity, sorted by (real, imag)."""
    m = as_matrix(m, "eigenvalues")
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"eigenvalues: matrix must be square, got {m.shape}")
    return np.sort_complex(np.linalg.eigvals(m))


def _as_points(xs) -> np.ndarray:
    pts = np.asarray(list(xs), dtype=np.complex128)
    if pts.ndim == 1:
        pts = pts[:, None]
    return pts.reshape(pts.shape[0], -1) if pts.size else pts.reshape(0, 1)


def greedy_match(a, b, tol: ToleranceConfig = DEFAULT_TOL, scale=None) -> bool:
    """Compare two multisets of points in C^d by greedy nearest-pair matching.

    True when both have the same size and each greedily matched pair lies
    within eq_rel_tol times the working scale (largest coordinate magnitude,
    floored at 1).
    """
    pa, pb = _as_points(a), _as_points(b)
    if pa.shape[0] != pb.shape[0]:
        return False
    k = pa.shape[0]
    if k == 0:
        return True
    if scale is None:
        scale = max(float(np.abs(pa).max()), float(np.abs(pb).max()), 1.0)
    dist = np.linalg.norm(pa[:, None, :] - pb[None, :, :], axis=2)
    used_a = np.zeros(k, dtype=bool)
    used_b = np.zeros(k, dtype=bool)
    for _ in range(k):
        masked = np.where(used_a[:, None] | used_b[None, :], np.inf, dist)
        i, j = np.unravel_index(np.argmin(masked), masked.shape)
        if masked[i, j] > tol.eq_rel_tol * scale:
            return False
        used_a[i] = used_b[j] = True
    return True


def rel_err(x, y) -> float:
    """Frobenius distance between x and y over the larger norm (floor 1)."""
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    scale = max(np.linalg.norm(x), np.linalg.norm(y), 1.0)
    return float(np.linalg.norm(x - y) / scale)


def mats_close(x, y, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if x.shape != y.shape:
        return False
    return rel_err(x, y) <= tol.eq_rel_tol


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form sum_p coeffs[p] * nu1^(degree-p) * nu2^p."""

    degree: int
    coeffs: np.ndarray

    def __call__(self, nu1, nu2):
        p = np.arange(self.degree + 1)
        return complex(np.sum(self.coeffs * nu1 ** (self.degree - p) * nu2**p))


def binary_form(coeffs) -> BinaryForm:
    c = np.asarray(coeffs, dtype=np.complex128).ravel()
    if c.size < 1:
        raise ShapeError("binary_form: need at least one coefficient")
    if not np.all(np.isfinite(c)):
        raise ShapeError("binary_form: coefficients must be finite")
    return BinaryForm(degree=int(c.size - 1), coeffs=freeze(c))


@dataclass(frozen=True)
class ProjPoint:
    """Point [lam1 : lam2] of the projective line, stored normalized.

    The coordinate of larger modulus is scaled to 1; on ties lam2 wins, so
    affine points come out as (z, 1).
    """

    lam1: complex
    lam2: complex


def proj_point(lam1, lam2) -> ProjPoint:
    z1, z2 = complex(lam1), complex(lam2)
    if z1 == 0 and z2 == 0:
        raise InvalidPointError("proj_point: (0, 0) is not a projective point")
    if abs(z2) >= abs(z1):
        return ProjPoint(z1 / z2, 1.0 + 0.0j)
    return ProjPoint(1.0 + 0.0j, z2 / z1)


def proj_distance(p: ProjPoint, q: ProjPoint) -> float:
    """Chordal distance |p x q| / (|p| |q|); zero iff equal points."""
    cross = p.lam1 * q.lam2 - p.lam2 * q.lam1
    np_ = math.hypot(abs(p.lam1), abs(p.lam2))
    nq = math.hypot(abs(q.lam1), abs(q.lam2))
    return abs(cross) / (np_ * nq)


def _cluster_roots(points, radius):
    """Greedy clustering of projective points; returns (rep, mult) pairs."""
    clusters = []  # [unit vector sum, count, first unit vector]
    for pt in points:
        u = np.array([pt.lam1, pt.lam2], dtype=np.complex128)
        u /= np.linalg.norm(u)
        placed = False
        for entry in clusters:
            rep = entry[0] / np.linalg.norm(entry[0])
            if proj_distance(ProjPoint(rep[0], rep[1]), pt) < radius:
                # align phase with the running representative before averaging
                ph = np.vdot(rep, u)
                if ph != 0:
                    u = u * (ph.conjugate() / abs(ph))
                entry[0] = entry[0] + u
                entry[1] += 1
                placed = True
                break
        if not placed:
            clusters.append([u, 1])
    out = []
    for vec, count in clusters:
        rep = vec / np.linalg.norm(vec)
        out.append((proj_point(rep[0], rep[1]), count))
    out.sort(key=lambda t: (t[0].lam1.real, t[0].lam1.imag, t[0].lam2.real, t[0].lam2.imag))
    return tuple(out)


def binary_form_roots(f: BinaryForm, tol: ToleranceConfig = DEFAULT_TOL):
    """Projective roots of a binary form, clustered with multiplicity.

    Returns a tuple of (ProjPoint, multiplicity) pairs whose multiplicities
    sum to the degree.  The form is dehomogenized at the end with the larger
    extreme coefficient; numerically vanishing leading coefficients of the
    resulting polynomial contribute roots at the opposite pole.
    """
    coeffs = np.asarray(f.coeffs, dtype=np.complex128)
    maxabs = float(np.abs(coeffs).max())
    if maxabs == 0.0:
        raise InvalidPointError("binary_form_roots: form is identically zero")
    deg = f.degree
    if deg == 0:
        return ()
    if abs(coeffs[0]) >= abs(coeffs[-1]):
        # polynomial in y = nu1/nu2, highest power first; lost roots sit at [1, 0]
        poly = coeffs.copy()
        to_point = lambda r: proj_point(r, 1.0)
        pole = proj_point(1.0, 0.0)
    else:
        poly = coeffs[::-1].copy()
        to_point = lambda r: proj_point(1.0, r)
        pole = proj_point(0.0, 1.0)
    k = 0
    while k < deg and abs(poly[k]) <= tol.rank_rel_tol * maxabs:
        k += 1
    points = [pole] * k
    upoly = poly[k:]
    if upoly.size > 1:
        points.extend(to_point(r) for r in np.roots(upoly))
    return _cluster_roots(points, tol.root_cluster_tol)


def random_invertible(rng, c, cond_cap=1e4, max_tries=64) -> np.ndarray:
    """Random complex c x c matrix with condition number below cond_cap."""
    for _ in range(max_tries):
        g = rng.normal(size=(c, c)) + 1j * rng.normal(size=(c, c))
        if np.linalg.cond(g) <= cond_cap:
            return g
    raise RuntimeError("random_invertible: could not draw a well-conditioned matrix")


def random_well_conditioned(rng, c, spread=16.0) -> np.ndarray:
    """Random invertible c x c matrix with condition number at most spread.

    Built as U diag(s) V* with Haar-ish unitary factors and log-uniform
    singular values, so the conditioning bound holds by construction rather
    than by rejection.  Useful wherever roundoff amplification must stay
    bounded (gauge draws in randomized identity checks).
    """
    if spread < 1.0:
        raise DomainError("random_well_conditioned: spread must be >= 1")
    u, _ = np.linalg.qr(rng.normal(size=(c, c)) + 1j * rng.normal(size=(c, c)))
    v, _ = np.linalg.qr(rng.normal(size=(c, c)) + 1j * rng.normal(size=(c, c)))
    half = np.sqrt(spread)
    s = np.exp(rng.uniform(np.log(1.0 / half), np.log(half), size=c))
    return (u * s) @ v.conj().T
