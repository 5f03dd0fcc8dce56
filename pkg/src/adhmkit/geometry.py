"""Support data on the surface: pencils, base roots, and the c = 1 bridge.

The base direction of a point is read off the determinant of the matrix
pencil of (A1, A2); its roots, paired against chart spectra, realize the
map from a length-c subscheme to its support cycle.  For c = 1 the module
also walks single points between three models: the hypersurface
x1 y1^(n-1) = x2 y2^(n-1), the ADHM tuple, and the total space of O(-n)
written as pairs (y1, y2), (u1, u2) with u1 y1^n = u2 y2^n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hirz as hirz_mod
from . import plane as plane_mod
from .errors import DomainError, InvalidPointError, ShapeError
from .hirz import ChartCoords, HirzADHM, hirz_adhm, to_chart
from .linalg import (
    DEFAULT_TOL,
    BinaryForm,
    ToleranceConfig,
    as_matrix,
    binary_form,
    binary_form_roots,
    eigenvalues,
    greedy_match,
    proj_point,
)
from .plane import plane_adhm
from .sigma import angle_pair, sigma_matrix

__all__ = [
    "SupportMultiset",
    "TotPoint",
    "YTildePoint",
    "tot_point",
    "ytilde_point",
    "pencil_form",
    "base_support",
    "spectrum_vs_pencil_check",
    "chart_support",
    "um_membership",
    "ytilde_to_p1",
    "p1_to_tot",
]

# the c = 1 bridge identities are polynomial in a handful of scalars, so they
# hold essentially to machine precision
_C1_REL_TOL = 1e-12


@dataclass(frozen=True)
class SupportMultiset:
    """Base roots with multiplicity, optionally with chart fibre pairs."""

    base: tuple  # ((ProjPoint, multiplicity), ...)
    chart_pairs: tuple | None = None  # (m, ((beta, eps), ...))


@dataclass(frozen=True)
class TotPoint:
    y1: complex
    y2: complex
    u1: complex
    u2: complex


@dataclass(frozen=True)
class YTildePoint:
    y1: complex
    y2: complex
    x1: complex
    x2: complex


def tot_point(y1, y2, u1, u2, n: int) -> TotPoint:
    """Point of the total space model; checks u1 y1^n = u2 y2^n."""
    y1, y2, u1, u2 = complex(y1), complex(y2), complex(u1), complex(u2)
    if y1 == 0 and y2 == 0:
        raise InvalidPointError("tot_point: (y1, y2) must not both vanish")
    lhs = u1 * y1**n
    rhs = u2 * y2**n
    scale = max(abs(lhs), abs(rhs), 1e-30)
    if abs(lhs - rhs) > _C1_REL_TOL * scale:
        raise InvalidPointError(
            f"tot_point: relation u1 y1^{n} = u2 y2^{n} violated "
            f"(relative error {abs(lhs - rhs) / scale:.3e})"
        )
    return TotPoint(y1, y2, u1, u2)


def ytilde_point(y1, y2, x1, x2, n: int) -> YTildePoint:
    """Point of the hypersurface model; checks x1 y1^(n-1) = x2 y2^(n-1)."""
    y1, y2, x1, x2 = complex(y1), complex(y2), complex(x1), complex(x2)
    if y1 == 0 and y2 == 0:
        raise InvalidPointError("ytilde_point: (y1, y2) must not both vanish")
    lhs = x1 * y1 ** (n - 1)
    rhs = x2 * y2 ** (n - 1)
    scale = max(abs(lhs), abs(rhs), 1e-30)
    if abs(lhs - rhs) > _C1_REL_TOL * scale:
        raise InvalidPointError(
            f"ytilde_point: relation x1 y1^{n - 1} = x2 y2^{n - 1} violated "
            f"(relative error {abs(lhs - rhs) / scale:.3e})"
        )
    return YTildePoint(y1, y2, x1, x2)


def pencil_form(A1, A2) -> BinaryForm:
    """Coefficients of det(nu1 A1 + nu2 A2) as a degree-c binary form.

    The determinant is evaluated at the c+1 points [1 : w^k] for w a
    primitive (c+1)-th root of unity and the coefficients recovered by the
    inverse discrete Fourier transform, an exactly determined and perfectly
    conditioned interpolation.  The zero form is allowed here.
    """
    A1 = as_matrix(A1, "A1")
    A2 = as_matrix(A2, "A2")
    if A1.shape != A2.shape or A1.shape[0] != A1.shape[1]:
        raise ShapeError("pencil_form: A1, A2 must be square of equal size")
    c = A1.shape[0]
    w = np.exp(2j * np.pi * np.arange(c + 1) / (c + 1))
    values = np.array([np.linalg.det(A1 + wk * A2) for wk in w])
    # values[k] = sum_p coeff[p] w^{kp}, so the forward transform inverts it
    return binary_form(np.fft.fft(values) / (c + 1))


def _require_valid(d: HirzADHM, tol: ToleranceConfig, who: str):
    rep = hirz_mod.validate_hirz(d, tol)
    if not rep.passed:
        raise InvalidPointError(f"{who}: input is not a valid point")
    return rep


def base_support(d: HirzADHM, tol: ToleranceConfig = DEFAULT_TOL) -> SupportMultiset:
    """Roots of det(lam2 A1 + lam1 A2) with multiplicity, for a valid point.

    This is the pencil of the co-stability pairing: the same binary form as
    pencil_form(A1, A2) with the two projective coordinates swapped.
    """
    _require_valid(d, tol, "base_support")
    swapped = pencil_form(d.A2, d.A1)
    return SupportMultiset(base=binary_form_roots(swapped, tol))


def _root_to_fibre_coordinate(pt, ap):
    """z with lam2 A1 + lam1 A2 proportional to A2m (B + z); root maps to -z."""
    num = ap.cos_val * pt.lam1 + ap.sin_val * pt.lam2
    den = -ap.sin_val * pt.lam1 + ap.cos_val * pt.lam2
    return -num / den


def spectrum_vs_pencil_check(d: HirzADHM, m: int, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Base roots, pushed into chart m, must reproduce the spectrum of B."""
    support = base_support(d, tol)
    cc = to_chart(d, m, tol)
    ap = angle_pair(d.c, m)
    mapped = []
    for pt, mult in support.base:
        mapped.extend([_root_to_fibre_coordinate(pt, ap)] * mult)
    return greedy_match(mapped, eigenvalues(cc.B), tol)


def chart_support(d: HirzADHM, m: int, tol: ToleranceConfig = DEFAULT_TOL) -> SupportMultiset:
    """Support with fibre data: base roots plus joint (B, E) pairs at chart m."""
    support = base_support(d, tol)
    cc = to_chart(d, m, tol)
    pairs = plane_mod.joint_spectrum(hirz_mod.plane_part(cc), tol)
    return SupportMultiset(base=support.base, chart_pairs=(m, tuple(pairs)))


def um_membership(x, m: int, c_base: int, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether homogeneous coordinates x = (x_0..x_c) lie in the m-th cover set.

    Membership means sum_p sigma^c_{m; p 0} x_p != 0; for m = 0 this is the
    usual x_0 != 0 chart of projective space.
    """
    x = np.asarray(x, dtype=np.complex128).ravel()
    if x.shape[0] != c_base + 1:
        raise ShapeError(
            f"um_membership: expected {c_base + 1} homogeneous coordinates, got {x.shape[0]}"
        )
    if not np.all(np.isfinite(x)) or np.all(x == 0):
        raise ShapeError("um_membership: coordinates must be finite and not all zero")
    column = sigma_matrix(c_base, m, c_base).entries[:, 0]
    value = complex(column @ x)
    return abs(value) > tol.eq_rel_tol * float(np.linalg.norm(column) * np.linalg.norm(x))


def ytilde_to_p1(p: YTildePoint, n: int, tol: ToleranceConfig = DEFAULT_TOL) -> HirzADHM:
    """Embed a c = 1 hypersurface point as an ADHM tuple, branch by |y_i|.

    On |y1| >= |y2| the C-stack is C_q = (y2/y1)^(n-q) x2; otherwise
    C_q = (y1/y2)^(q-1) x1.  Ties take the first branch.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"ytilde_to_p1: n must be a positive integer, got {n!r}")
    p = ytilde_point(p.y1, p.y2, p.x1, p.x2, n)  # re-check relation at this n
    if abs(p.y1) >= abs(p.y2):
        ratio = p.y2 / p.y1
        cs = [ratio ** (n - q) * p.x2 for q in range(1, n + 1)]
    else:
        ratio = p.y1 / p.y2
        cs = [ratio ** (q - 1) * p.x1 for q in range(1, n + 1)]
    return hirz_adhm(
        n, 1,
        [[p.y1]], [[p.y2]],
        tuple([[z]] for z in cs),
        [1.0],
    )


def p1_to_tot(d: HirzADHM, tol: ToleranceConfig = DEFAULT_TOL) -> TotPoint:
    """Project a valid c = 1 tuple to the total space model.

    Gauge-normalizes e to 1 (so (y1, y2) = (A1, A2)/e up to the remaining
    frame scaling) and returns ((y1, y2), (C1 A2, C_n A1)); the fibre pair
    is gauge-invariant on the nose.
    """
    if d.c != 1:
        raise ShapeError(f"p1_to_tot: only c = 1 points project, got c = {d.c}")
    _require_valid(d, tol, "p1_to_tot")
    e = complex(d.e[0])
    y1 = complex(d.A1[0, 0]) / e
    y2 = complex(d.A2[0, 0]) / e
    u1 = complex(d.C[0][0, 0]) * complex(d.A2[0, 0])
    u2 = complex(d.C[d.n - 1][0, 0]) * complex(d.A1[0, 0])
    return tot_point(y1, y2, u1, u2, d.n)
