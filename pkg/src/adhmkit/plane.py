"""ADHM data for length-c subschemes of the affine plane.

A point is a triple (b1, b2, e) with b1, b2 complex c x c matrices and e a
row covector of length c, subject to two conditions:

  commutation   [b1, b2] = 0
  co-stability  no nonzero v with b1 v = -z v, b2 v = -w v and e v = 0,
                for any scalars (z, w); equivalently the largest
                (b1, b2)-invariant subspace inside ker(e) is zero.

GL(c) acts by b_i -> g b_i g^-1, e -> e g^-1, and orbits of valid triples
are in bijection with length-c subschemes; the joint spectrum of (b1, b2)
is the support with multiplicity.  This module also carries the fibrewise
chart-to-chart transition of the ambient atlas, which acts on such triples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidPointError, ShapeError
from .linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    as_covector,
    as_matrix,
    eigenvalues,
    freeze,
    kernel_basis,
    mats_close,
    rank_tol,
    rel_err,
)
from .report import FAIL, INDETERMINATE, PASS, Check, ValidationReport
from .sigma import angle_pair

__all__ = [
    "PlaneADHM",
    "plane_adhm",
    "validate_plane",
    "act_gl",
    "from_points",
    "joint_spectrum",
    "transition_plane",
    "canonical_form",
    "orbit_equal_plane",
]


@dataclass(frozen=True)
class PlaneADHM:
    c: int
    b1: np.ndarray
    b2: np.ndarray
    e: np.ndarray


def plane_adhm(b1, b2, e) -> PlaneADHM:
    """Build a PlaneADHM value after shape/finiteness checks (no validation)."""
    b1 = as_matrix(b1, "b1")
    b2 = as_matrix(b2, "b2")
    e = as_covector(e, "e")
    c = b1.shape[0]
    if b1.shape != (c, c) or b2.shape != (c, c) or e.shape != (c,):
        raise ShapeError(
            f"plane_adhm: inconsistent shapes b1={b1.shape} b2={b2.shape} e={e.shape}"
        )
    return PlaneADHM(c=c, b1=freeze(b1), b2=freeze(b2), e=freeze(e))


def _commutator_rel(b1, b2) -> float:
    comm = b1 @ b2 - b2 @ b1
    scale = np.linalg.norm(b1) * np.linalg.norm(b2)
    if scale == 0.0:
        return 0.0 if np.linalg.norm(comm) == 0.0 else np.inf
    return float(np.linalg.norm(comm) / scale)


def _stable_subspace_dim(b1, b2, e, tol: ToleranceConfig) -> int:
    """Dimension of the largest (b1, b2)-invariant subspace inside ker(e).

    Shrinks V_0 = ker(e) by V_{k+1} = {v in V_k : b1 v, b2 v in V_k} until
    the dimension stabilizes; at most c steps are needed.
    """
    # residual columns live at the scale of the operators, not of their own
    # noise floor, so the kernel cut must be anchored there
    scale = max(np.linalg.norm(b1), np.linalg.norm(b2), 1.0)
    v = kernel_basis(e.reshape(1, -1), tol)
    while v.shape[1] > 0:
        proj = v @ v.conj().T
        img1 = b1 @ v
        img2 = b2 @ v
        resid = np.vstack([img1 - proj @ img1, img2 - proj @ img2])
        keep = kernel_basis(resid, tol, scale=scale)
        if keep.shape[1] == v.shape[1]:
            break
        v = v @ keep
    return v.shape[1]


def validate_plane(d: PlaneADHM, tol: ToleranceConfig = DEFAULT_TOL) -> ValidationReport:
    """Check commutation and co-stability.

    Co-stability is refused (verdict ``indeterminate``) when commutation
    already fails beyond tolerance, since the subspace iteration is only
    meaningful for commuting pairs.
    """
    rel = _commutator_rel(d.b1, d.b2)
    t1 = Check(
        name="commutation",
        verdict=PASS if rel <= tol.eq_rel_tol else FAIL,
        residual=rel if np.isfinite(rel) else None,
        detail="[b1, b2] relative to |b1||b2|",
    )
    if t1.verdict != PASS:
        t2 = Check(
            name="costability",
            verdict=INDETERMINATE,
            detail="refused: commutation fails beyond tolerance",
        )
    else:
        dim = _stable_subspace_dim(d.b1, d.b2, d.e, tol)
        t2 = Check(
            name="costability",
            verdict=PASS if dim == 0 else FAIL,
            detail=f"largest invariant subspace inside ker(e) has dimension {dim}",
        )
    return ValidationReport(checks=(t1, t2))


def act_gl(d: PlaneADHM, phi, tol: ToleranceConfig = DEFAULT_TOL) -> PlaneADHM:
    """Gauge action b_i -> phi b_i phi^-1, e -> e phi^-1."""
    phi = as_matrix(phi, "phi")
    if phi.shape != (d.c, d.c):
        raise ShapeError(f"act_gl: phi must be {d.c} x {d.c}, got {phi.shape}")
    if rank_tol(phi, tol) < d.c:
        raise InvalidPointError("act_gl: gauge matrix is singular at tolerance")
    phi_inv = np.linalg.inv(phi)
    return plane_adhm(phi @ d.b1 @ phi_inv, phi @ d.b2 @ phi_inv, d.e @ phi_inv)


def from_points(points, tol: ToleranceConfig = DEFAULT_TOL) -> PlaneADHM:
    """Diagonal triple supported on the given pairwise-distinct plane points."""
    pts = [(complex(z), complex(w)) for z, w in points]
    if not pts:
        raise ShapeError("from_points: need at least one point")
    arr = np.asarray(pts, dtype=np.complex128)
    scale = max(float(np.abs(arr).max()), 1.0)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if np.linalg.norm(arr[i] - arr[j]) <= tol.eq_rel_tol * scale:
                raise InvalidPointError(
                    f"from_points: points {i} and {j} coincide at tolerance"
                )
    return plane_adhm(np.diag(arr[:, 0]), np.diag(arr[:, 1]), np.ones(len(pts)))


def _common_eigenvector(b1, b2, tol: ToleranceConfig):
    """A joint eigenvector of a commuting pair, chosen deterministically."""
    c = b1.shape[0]
    evals = np.linalg.eigvals(b1)
    lam = min(evals, key=lambda z: (z.real, z.imag))
    space = kernel_basis(b1 - lam * np.eye(c), tol)
    if space.shape[1] == 0:
        # fall back to the singular vector of the smallest singular value
        _, _, vh = np.linalg.svd(b1 - lam * np.eye(c))
        space = vh[-1:].conj().T
    if space.shape[1] == 1:
        return space[:, 0]
    restricted = space.conj().T @ b2 @ space
    mu_vals, mu_vecs = np.linalg.eig(restricted)
    idx = min(range(len(mu_vals)), key=lambda i: (mu_vals[i].real, mu_vals[i].imag))
    v = space @ mu_vecs[:, idx]
    return v / np.linalg.norm(v)


def joint_spectrum(d: PlaneADHM, tol: ToleranceConfig = DEFAULT_TOL):
    """Joint eigenvalue pairs of the commuting pair (b1, b2).

    Triangularizes b1 and b2 simultaneously by deflating joint eigenvectors
    and reads consistently paired diagonal entries.  Returns a list of
    (beta, eps) pairs sorted by (real, imag) of each component.
    """
    if _commutator_rel(d.b1, d.b2) > tol.eq_rel_tol:
        raise InvalidPointError("joint_spectrum: matrices do not commute at tolerance")
    b1 = np.array(d.b1)
    b2 = np.array(d.b2)
    pairs = []
    while b1.shape[0] > 1:
        c = b1.shape[0]
        v = _common_eigenvector(b1, b2, tol)
        q, _ = np.linalg.qr(np.column_stack([v, np.eye(c)]))
        b1 = q.conj().T @ b1 @ q
        b2 = q.conj().T @ b2 @ q
        pairs.append((complex(b1[0, 0]), complex(b2[0, 0])))
        b1 = b1[1:, 1:]
        b2 = b2[1:, 1:]
    pairs.append((complex(b1[0, 0]), complex(b2[0, 0])))
    pairs.sort(key=lambda t: (t[0].real, t[0].imag, t[1].real, t[1].imag))
    return pairs


def transition_plane(
    d: PlaneADHM, m: int, l: int, n: int, c_base: int, tol: ToleranceConfig = DEFAULT_TOL
) -> PlaneADHM:
    """Fibrewise chart transition from chart m to chart l.

    With (c, s) the angle pair of m - l and F = c*1 - s*b1:

        b1 -> F^-1 (s*1 + c*b1),   b2 -> F^n b2,   e -> e.

    The atlas base size c_base enters only through the angle denominator;
    it is global atlas data, independent of the matrix size.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"transition_plane: n must be a positive integer, got {n!r}")
    ap = angle_pair(c_base, m - l)
    ident = np.eye(d.c)
    f = ap.cos_val * ident - ap.sin_val * d.b1
    if rank_tol(f, tol) < d.c:
        raise DomainError(
            f"transition_plane: overlap condition fails between charts {m} and {l}: "
            f"det(c*1 - s*b1) = {np.linalg.det(f):.6e}"
        )
    new_b1 = np.linalg.solve(f, ap.sin_val * ident + ap.cos_val * d.b1)
    new_b2 = np.linalg.matrix_power(f, n) @ d.b2
    return plane_adhm(new_b1, new_b2, d.e)


def _monomial_covectors(d: PlaneADHM, max_degree: int):
    """Yield covectors e * b1^i * b2^j in graded order, b1-degree first."""
    pow1 = [np.eye(d.c)]
    pow2 = [np.eye(d.c)]
    for _ in range(max_degree):
        pow1.append(pow1[-1] @ d.b1)
        pow2.append(pow2[-1] @ d.b2)
    for degree in range(max_degree + 1):
        for i in range(degree, -1, -1):
            j = degree - i
            yield (d.e @ pow1[i]) @ pow2[j]


def canonical_form(d: PlaneADHM, tol: ToleranceConfig = DEFAULT_TOL):
    """Canonical orbit representative and the gauge that reaches it.

    Scans the covectors e * b1^i * b2^j in graded order (b1-degree taking
    lexicographic precedence) and greedily keeps the first c linearly
    independent ones; the gauge sending them to the standard dual basis
    maps e to (1, 0, ..., 0).  Returns (canonical PlaneADHM, gauge matrix).
    """
    rep = validate_plane(d, tol)
    if not rep.passed:
        raise InvalidPointError("canonical_form: input is not a valid plane triple")
    selected = []
    ortho = []
    for w in _monomial_covectors(d, max_degree=2 * d.c):
        norm_w = np.linalg.norm(w)
        if norm_w == 0.0:
            continue
        r = w.copy()
        for u in ortho:
            r = r - np.vdot(u, r) * u
        if np.linalg.norm(r) > tol.rank_rel_tol * norm_w:
            selected.append(w)
            ortho.append(r / np.linalg.norm(r))
            if len(selected) == d.c:
                break
    if len(selected) < d.c:
        raise InvalidPointError("canonical_form: covectors do not span (not co-stable)")
    gauge = np.vstack(selected)
    return act_gl(d, gauge, tol), freeze(gauge)


def orbit_equal_plane(d1: PlaneADHM, d2: PlaneADHM, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether two valid triples lie on the same gauge orbit."""
    if d1.c != d2.c:
        return False
    c1, _ = canonical_form(d1, tol)
    c2, _ = canonical_form(d2, tol)
    return (
        mats_close(c1.b1, c2.b1, tol)
        and mats_close(c1.b2, c2.b2, tol)
        and mats_close(c1.e, c2.e, tol)
    )
