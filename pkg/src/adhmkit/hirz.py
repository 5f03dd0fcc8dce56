"""ADHM data for length-c subschemes of the total space of O(-n) over P1.

A point is a tuple (A1, A2; C_1, ..., C_n; e) of complex c x c matrices
plus a row covector e, subject to three conditions:

  intertwining  A1 C_q = A2 C_{q+1} and C_q A1 = C_{q+1} A2 for q < n
                (for n = 1 the single relation A1 C1 A2 = A2 C1 A1)
  nondegeneracy the pencil det(nu1 A1 + nu2 A2) is not identically zero
  co-stability  no nonzero v killed by e, by lam2 A1 + lam1 A2, and by
                C1 A2 + mu1 and C_n A1 + (-1)^(n-1) mu2, for any
                ([lam1 : lam2], (mu1, mu2)) with lam1^n mu1 + lam2^n mu2 = 0

The atlas has c + 1 charts indexed by m with angles pi*m/(c+1).  Chart m is
available when A2m = sin_m A1 + cos_m A2 is invertible, and the chart map
sends the tuple to plane-type coordinates

    B = A2m^-1 A1m,  E = D A2m,  e,      (with A1m = cos_m A1 - sin_m A2)

where D is the binomial contraction of the C_q at angle m.  Since the
degree-c pencil determinant cannot vanish at all c+1 distinct chart angles
unless it is identically zero, every nondegenerate point owns a chart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import plane as plane_mod
from .errors import (
    DomainError,
    IndeterminateError,
    InvalidPointError,
    ShapeError,
)
from .linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    as_covector,
    as_matrix,
    freeze,
    kernel_basis,
    mats_close,
    rank_tol,
    rel_err,
)
from .plane import PlaneADHM, plane_adhm
from .report import FAIL, INDETERMINATE, PASS, Check, ValidationReport, merge
from .sigma import angle_pair, sigma_matrix

__all__ = [
    "HirzADHM",
    "ChartCoords",
    "hirz_adhm",
    "chart_coords",
    "validate_p1",
    "validate_p2",
    "validate_p3",
    "validate_p3_direct",
    "validate_hirz",
    "chart_set",
    "act_gl2",
    "to_chart",
    "from_chart",
    "reconstruct_C",
    "syst_rank",
    "transition_omega",
    "canonicalize",
    "orbit_equal",
    "jacobian_nullity",
]

_MAX_TWIST = 64
_GAP_MIN = 1e3


@dataclass(frozen=True)
class HirzADHM:
    n: int
    c: int
    A1: np.ndarray
    A2: np.ndarray
    C: tuple
    e: np.ndarray


@dataclass(frozen=True)
class ChartCoords:
    m: int
    n: int
    c: int
    B: np.ndarray
    E: np.ndarray
    e: np.ndarray
    A2m: np.ndarray


def hirz_adhm(n, c, A1, A2, C, e) -> HirzADHM:
    """Build a HirzADHM value after shape/finiteness checks (no validation)."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"hirz_adhm: n must be a positive integer, got {n!r}")
    if n > _MAX_TWIST:
        raise ShapeError(f"hirz_adhm: n = {n} exceeds supported maximum {_MAX_TWIST}")
    A1 = as_matrix(A1, "A1")
    A2 = as_matrix(A2, "A2")
    e = as_covector(e, "e")
    if not isinstance(c, int) or c < 1:
        raise DomainError(f"hirz_adhm: c must be a positive integer, got {c!r}")
    if A1.shape != (c, c) or A2.shape != (c, c) or e.shape != (c,):
        raise ShapeError(
            f"hirz_adhm: inconsistent shapes A1={A1.shape} A2={A2.shape} e={e.shape} for c={c}"
        )
    cs = tuple(as_matrix(cq, f"C[{q}]") for q, cq in enumerate(C))
    if len(cs) != n:
        raise ShapeError(f"hirz_adhm: expected {n} C-matrices, got {len(cs)}")
    for q, cq in enumerate(cs):
        if cq.shape != (c, c):
            raise ShapeError(f"hirz_adhm: C[{q}] has shape {cq.shape}, expected ({c}, {c})")
    return HirzADHM(n=n, c=c, A1=freeze(A1), A2=freeze(A2),
                    C=tuple(freeze(cq) for cq in cs), e=freeze(e))


def chart_coords(m, n, c, B, E, e, A2m) -> ChartCoords:
    if not isinstance(m, int) or not 0 <= m <= c:
        raise ShapeError(f"chart_coords: chart index m={m!r} outside 0..{c}")
    if not isinstance(n, int) or n < 1 or n > _MAX_TWIST:
        raise ShapeError(f"chart_coords: bad twist n={n!r}")
    B = as_matrix(B, "B")
    E = as_matrix(E, "E")
    A2m = as_matrix(A2m, "A2m")
    e = as_covector(e, "e")
    if B.shape != (c, c) or E.shape != (c, c) or A2m.shape != (c, c) or e.shape != (c,):
        raise ShapeError("chart_coords: inconsistent matrix shapes")
    return ChartCoords(m=m, n=n, c=c, B=freeze(B), E=freeze(E), e=freeze(e), A2m=freeze(A2m))


def plane_part(cc: ChartCoords) -> PlaneADHM:
    """The plane-type triple (B, E, e) carried by chart coordinates."""
    return plane_adhm(cc.B, cc.E, cc.e)


def _pencil_at(d: HirzADHM, m: int):
    ap = angle_pair(d.c, m)
    a1m = ap.cos_val * d.A1 - ap.sin_val * d.A2
    a2m = ap.sin_val * d.A1 + ap.cos_val * d.A2
    return a1m, a2m


def validate_p1(d: HirzADHM, tol: ToleranceConfig = DEFAULT_TOL) -> ValidationReport:
    """Intertwining relations, one check per matrix equation.

    Residuals are scaled by the norms of the factors entering each product.
    """
    checks = []
    if d.n == 1:
        lhs = d.A1 @ d.C[0] @ d.A2
        rhs = d.A2 @ d.C[0] @ d.A1
        scale = 2 * np.linalg.norm(d.A1) * np.linalg.norm(d.C[0]) * np.linalg.norm(d.A2)
        resid = float(np.linalg.norm(lhs - rhs) / scale) if scale > 0 else 0.0
        checks.append(Check(
            name="intertwine",
            verdict=PASS if resid <= tol.eq_rel_tol else FAIL,
            residual=resid,
            detail="A1 C1 A2 = A2 C1 A1",
        ))
    else:
        for q in range(d.n - 1):
            left = d.A1 @ d.C[q] - d.A2 @ d.C[q + 1]
            sl = (np.linalg.norm(d.A1) * np.linalg.norm(d.C[q])
                  + np.linalg.norm(d.A2) * np.linalg.norm(d.C[q + 1]))
            rl = float(np.linalg.norm(left) / sl) if sl > 0 else 0.0
            checks.append(Check(
                name=f"intertwine_left_{q + 1}",
                verdict=PASS if rl <= tol.eq_rel_tol else FAIL,
                residual=rl,
                detail=f"A1 C{q + 1} = A2 C{q + 2}",
            ))
            right = d.C[q] @ d.A1 - d.C[q + 1] @ d.A2
            rr = float(np.linalg.norm(right) / sl) if sl > 0 else 0.0
            checks.append(Check(
                name=f"intertwine_right_{q + 1}",
                verdict=PASS if rr <= tol.eq_rel_tol else FAIL,
                residual=rr,
                detail=f"C{q + 1} A1 = C{q + 2} A2",
            ))
    return ValidationReport(checks=tuple(checks))


def validate_p2(d: HirzADHM, tol: ToleranceConfig = DEFAULT_TOL) -> ValidationReport:
    """Pencil nondegeneracy, decided exactly through the chart determinants.

    A degree-c binary form vanishing at the c+1 distinct chart angles is
    identically zero, so the pencil is nondegenerate iff some A2m is
    invertible.  Invertibility is judged by SVD at rank_rel_tol; an empty
    chart set with nonzero matrices is reported indeterminate because the
    determinants sit below the noise floor without being certainly zero.
    """
    charts = []
    dets = []
    for m in range(d.c + 1):
        _, a2m = _pencil_at(d, m)
        dets.append(complex(np.linalg.det(a2m)))
        if rank_tol(a2m, tol) == d.c:
            charts.append(m)
    detail = "chart determinants: " + ", ".join(f"{z:.3e}" for z in dets)
    if charts:
        verdict = PASS
    elif all(z == 0.0 for z in dets):
        # a degree-c form vanishing exactly at c+1 distinct angles is zero
        verdict = FAIL
    else:
        verdict = INDETERMINATE
        detail += " (all below noise floor but form not certainly zero)"
    check = Check(name="pencil_nondegenerate", verdict=verdict, detail=detail)
    return ValidationReport(checks=(check,), chart_set=tuple(charts))


def chart_set(d: HirzADHM, tol: ToleranceConfig = DEFAULT_TOL) -> tuple:
    return validate_p2(d, tol).chart_set


def validate_p3(d: HirzADHM, tol: ToleranceConfig = DEFAULT_TOL) -> ValidationReport:
    """Co-stability via the smallest available chart.

    Requires the intertwining and nondegeneracy conditions; forms the chart
    triple (B, E, e) there and returns its co-stability verdict.
    """
    if not validate_p1(d, tol).passed:
        raise InvalidPointError("validate_p3: intertwining relations fail")
    p2 = validate_p2(d, tol)
    if not p2.chart_set:
        raise InvalidPointError("validate_p3: empty chart set (pencil degenerate)")
    m = p2.chart_set[0]
    cc = to_chart(d, m, tol)
    rep = plane_mod.validate_plane(plane_part(cc), tol)
    t2 = rep.check("costability")
    check = Check(
        name="costability",
        verdict=t2.verdict,
        residual=t2.residual,
        detail=f"chart {m}: {t2.detail}",
    )
    return ValidationReport(checks=(check,), chart_set=p2.chart_set)


def validate_p3_direct(d: HirzADHM, tol: ToleranceConfig = DEFAULT_TOL) -> ValidationReport:
    """Root-by-root co-stability check, independent of the chart route.

    For each simple root [lam1 : lam2] of det(lam2 A1 + lam1 A2) with a
    one-dimensional kernel spanned by v, the point fails iff e v = 0, v is
    a joint eigenvector C1 A2 v = a v and C_n A1 v = b v, and the weights
    satisfy lam1^n a = (-1)^n lam2^n b.  Roots with higher-dimensional
    kernels yield an indeterminate verdict (use the chart method there).
    """
    if not validate_p1(d, tol).passed:
        raise InvalidPointError("validate_p3_direct: intertwining relations fail")
    if not validate_p2(d, tol).chart_set:
        raise InvalidPointError("validate_p3_direct: empty chart set (pencil degenerate)")
    from .geometry import pencil_form  # deferred to avoid a module cycle
    from .linalg import binary_form_roots

    swapped = pencil_form(d.A2, d.A1)  # det(lam1 A2 + lam2 A1) as a form in (lam1, lam2)
    roots = binary_form_roots(swapped, tol)
    checks = []
    c1a2 = d.C[0] @ d.A2
    cna1 = d.C[d.n - 1] @ d.A1
    scale_c1 = float(np.linalg.norm(c1a2))
    scale_cn = float(np.linalg.norm(cna1))
    norm_e = float(np.linalg.norm(d.e))
    # at a computed root the pencil matrix is pure cancellation noise in the
    # degenerate directions, so rank decisions must be anchored at the scale
    # of the generators rather than at the residual's own largest value
    op_scale = max(float(np.linalg.norm(d.A1)), float(np.linalg.norm(d.A2)), 1.0)
    for idx, (pt, mult) in enumerate(roots):
        lam1, lam2 = pt.lam1, pt.lam2
        pencil = lam2 * d.A1 + lam1 * d.A2
        kern = kernel_basis(pencil, tol, scale=op_scale)
        name = f"root_{idx}"
        where = f"[{lam1:.4g} : {lam2:.4g}] (multiplicity {mult})"
        if kern.shape[1] != 1:
            checks.append(Check(
                name=name,
                verdict=INDETERMINATE,
                detail=f"kernel dimension {kern.shape[1]} at {where}; use chart method",
            ))
            continue
        v = kern[:, 0]
        ev = abs(complex(d.e @ v))
        if ev > tol.eq_rel_tol * norm_e:
            checks.append(Check(name=name, verdict=PASS,
                                residual=ev / norm_e if norm_e > 0 else None,
                                detail=f"e v != 0 at {where}"))
            continue
        r1 = c1a2 @ v
        a = complex(np.vdot(v, r1))
        off1 = np.linalg.norm(r1 - a * v)
        r2 = cna1 @ v
        b = complex(np.vdot(v, r2))
        off2 = np.linalg.norm(r2 - b * v)
        if off1 > tol.eq_rel_tol * scale_c1 or off2 > tol.eq_rel_tol * scale_cn:
            checks.append(Check(name=name, verdict=PASS,
                                detail=f"v is not a joint eigenvector at {where}"))
            continue
        weight = lam1**d.n * a - (-1.0) ** d.n * lam2**d.n * b
        wscale = abs(lam1) ** d.n * abs(a) + abs(lam2) ** d.n * abs(b)
        if abs(weight) <= tol.eq_rel_tol * max(wscale, 1.0):
            checks.append(Check(
                name=name,
                verdict=FAIL,
                residual=abs(weight) / max(wscale, 1.0),
                detail=f"destabilizing vector at {where}",
            ))
        else:
            checks.append(Check(name=name, verdict=PASS,
                                detail=f"weight constraint unsatisfiable at {where}"))
    if any(c.verdict == FAIL for c in checks):
        overall = FAIL
    elif any(c.verdict == INDETERMINATE for c in checks):
        overall = INDETERMINATE
    else:
        overall = PASS
    summary = Check(name="costability_direct", verdict=overall,
                    detail=f"{len(roots)} distinct pencil roots examined")
    return ValidationReport(checks=(summary,) + tuple(checks))


def validate_hirz(d: HirzADHM, tol: ToleranceConfig = DEFAULT_TOL) -> ValidationReport:
    """All three conditions; co-stability is refused when the others fail."""
    p1 = validate_p1(d, tol)
    p2 = validate_p2(d, tol)
    if p1.passed and p2.passed:
        p3 = validate_p3(d, tol)
    else:
        p3 = ValidationReport(checks=(Check(
            name="costability",
            verdict=INDETERMINATE,
            detail="refused: intertwining or nondegeneracy already fails",
        ),))
    return merge(p1, p2, p3)


def act_gl2(d: HirzADHM, phi1, phi2, tol: ToleranceConfig = DEFAULT_TOL) -> HirzADHM:
    """Gauge action C -> phi1 C phi2^-1, A -> phi2 A phi1^-1, e -> e phi1^-1."""
    phi1 = as_matrix(phi1, "phi1")
    phi2 = as_matrix(phi2, "phi2")
    if phi1.shape != (d.c, d.c) or phi2.shape != (d.c, d.c):
        raise ShapeError("act_gl2: gauge matrices must match the point size")
    if rank_tol(phi1, tol) < d.c or rank_tol(phi2, tol) < d.c:
        raise InvalidPointError("act_gl2: gauge matrix is singular at tolerance")
    inv1 = np.linalg.inv(phi1)
    inv2 = np.linalg.inv(phi2)
    return hirz_adhm(
        d.n, d.c,
        phi2 @ d.A1 @ inv1,
        phi2 @ d.A2 @ inv1,
        tuple(phi1 @ cq @ inv2 for cq in d.C),
        d.e @ inv1,
    )


def to_chart(d: HirzADHM, m: int, tol: ToleranceConfig = DEFAULT_TOL) -> ChartCoords:
    """Chart-m coordinates (B, E, e; A2m) of a point.

    Requires m in the chart set.  D is the binomial contraction of the C_q
    at the chart angle and E = D A2m.
    """
    if not 0 <= m <= d.c:
        raise DomainError(f"to_chart: chart index {m} outside 0..{d.c}")
    ap = angle_pair(d.c, m)
    a1m, a2m = _pencil_at(d, m)
    if rank_tol(a2m, tol) < d.c:
        raise DomainError(
            f"to_chart: chart {m} unavailable: det(A2m) = {np.linalg.det(a2m):.6e}"
        )
    b = np.linalg.solve(a2m, a1m)
    dmat = sum(
        math.comb(d.n - 1, q - 1) * ap.cos_val ** (d.n - q) * ap.sin_val ** (q - 1) * d.C[q - 1]
        for q in range(1, d.n + 1)
    )
    return chart_coords(m, d.n, d.c, b, dmat @ a2m, d.e, a2m)


def reconstruct_C(B, D, m: int, n: int, c_base: int):
    """Solve the left intertwining system for the C-stack at chart m.

    C_{p+1} = sum_q sigma^{n-1}_{m; p q} B^q D.  For any D this satisfies
    A1 C_q = A2 C_{q+1}; the right family holds iff [B, D A2m] = 0.
    """
    B = as_matrix(B, "B")
    D = as_matrix(D, "D")
    if not isinstance(n, int) or n < 1 or n > _MAX_TWIST:
        raise DomainError(f"reconstruct_C: bad twist n={n!r}")
    sig = sigma_matrix(n - 1, m, c_base).entries
    powers = [np.eye(B.shape[0], dtype=np.complex128)]
    for _ in range(n - 1):
        powers.append(powers[-1] @ B)
    return tuple(
        sum(sig[p, q] * powers[q] for q in range(n)) @ D for p in range(n)
    )


def from_chart(m: int, d: PlaneADHM, A, n: int, tol: ToleranceConfig = DEFAULT_TOL) -> HirzADHM:
    """Inverse chart map: assemble a point from plane data and a frame A.

    A1 = A (cos_m b1 + sin_m), A2 = A (-sin_m b1 + cos_m), and the C-stack
    comes from reconstruct_C with D = b2 A^-1; then to_chart at m returns
    (b1, b2, e; A).
    """
    rep = plane_mod.validate_plane(d, tol)
    if not rep.passed:
        raise InvalidPointError("from_chart: plane data is not valid")
    A = as_matrix(A, "A")
    if A.shape != (d.c, d.c):
        raise ShapeError(f"from_chart: frame must be {d.c} x {d.c}, got {A.shape}")
    if rank_tol(A, tol) < d.c:
        raise InvalidPointError("from_chart: frame matrix is singular at tolerance")
    return _assemble_from_chart(m, d.b1, d.b2, d.e, A, n, d.c)


def _assemble_from_chart(m, b1, b2, e, A, n, c_base) -> HirzADHM:
    """Chart assembly formulas without validity checks (shared with tests)."""
    ap = angle_pair(c_base, m)
    c = b1.shape[0]
    ident = np.eye(c)
    a1 = A @ (ap.cos_val * b1 + ap.sin_val * ident)
    a2 = A @ (-ap.sin_val * b1 + ap.cos_val * ident)
    dmat = b2 @ np.linalg.inv(A)
    cs = reconstruct_C(b1, dmat, m, n, c_base)
    return hirz_adhm(n, c, a1, a2, cs, e)


def syst_rank(A1, A2, n: int, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Rank of the left intertwining system as a block matrix on the C-stack.

    The (n-1)c^2 x n c^2 system has block row q equal to
    (0 ... 0, A1, -A2, 0 ... 0) acting on vectorized C-matrices; at
    nondegenerate pencils the rank is maximal, (n-1) c^2.
    """
    A1 = as_matrix(A1, "A1")
    A2 = as_matrix(A2, "A2")
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"syst_rank: need n >= 2, got {n!r}")
    c = A1.shape[0]
    if A1.shape != (c, c) or A2.shape != (c, c):
        raise ShapeError("syst_rank: A1 and A2 must be square of equal size")
    c2 = c * c
    sys = np.zeros(((n - 1) * c2, n * c2), dtype=np.complex128)
    k1 = np.kron(np.eye(c), A1)
    k2 = np.kron(np.eye(c), A2)
    for q in range(n - 1):
        sys[q * c2:(q + 1) * c2, q * c2:(q + 1) * c2] = k1
        sys[q * c2:(q + 1) * c2, (q + 1) * c2:(q + 2) * c2] = -k2
    return rank_tol(sys, tol)


def transition_omega(cc: ChartCoords, l: int, tol: ToleranceConfig = DEFAULT_TOL) -> ChartCoords:
    """Full chart transition: fibrewise map on (B, E, e) plus A2m transport.

    A2l = A2m (cos_{m-l} 1 - sin_{m-l} B); requires the overlap condition
    det(cos_{m-l} 1 - sin_{m-l} B) != 0.
    """
    if not 0 <= l <= cc.c:
        raise DomainError(f"transition_omega: chart index {l} outside 0..{cc.c}")
    moved = plane_mod.transition_plane(plane_part(cc), cc.m, l, cc.n, cc.c, tol)
    ap = angle_pair(cc.c, cc.m - l)
    f = ap.cos_val * np.eye(cc.c) - ap.sin_val * cc.B
    return chart_coords(l, cc.n, cc.c, moved.b1, moved.b2, moved.e, cc.A2m @ f)


def canonicalize(d: HirzADHM, tol: ToleranceConfig = DEFAULT_TOL):
    """Deterministic orbit representative: (canonical point, chart index).

    Picks the smallest chart m, gauges A2m to the identity, then applies the
    diagonal plane gauge that canonicalizes (B, E, e).  The output has
    A2m = 1 and e = (1, 0, ..., 0).
    """
    full = validate_hirz(d, tol)
    if not full.passed:
        raise InvalidPointError("canonicalize: input is not a valid point")
    m = full.chart_set[0]
    _, a2m = _pencil_at(d, m)
    d1 = act_gl2(d, np.eye(d.c), np.linalg.inv(a2m), tol)
    cc = to_chart(d1, m, tol)
    _, gauge = plane_mod.canonical_form(plane_part(cc), tol)
    return act_gl2(d1, gauge, gauge, tol), m


def orbit_equal(d1: HirzADHM, d2: HirzADHM, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether two valid points lie on the same gauge-pair orbit."""
    if d1.n != d2.n or d1.c != d2.c:
        return False
    can1, m1 = canonicalize(d1, tol)
    can2, m2 = canonicalize(d2, tol)
    if m1 != m2:
        return False
    return (
        mats_close(can1.A1, can2.A1, tol)
        and mats_close(can1.A2, can2.A2, tol)
        and all(mats_close(x, y, tol) for x, y in zip(can1.C, can2.C))
        and mats_close(can1.e, can2.e, tol)
    )


def _p1_residuals(n, A1, A2, C):
    if n == 1:
        return [A1 @ C[0] @ A2 - A2 @ C[0] @ A1]
    out = []
    for q in range(n - 1):
        out.append(A1 @ C[q] - A2 @ C[q + 1])
        out.append(C[q] @ A1 - C[q + 1] @ A2)
    return out


def jacobian_nullity(d: HirzADHM, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Nullity of the intertwining-residual Jacobian at the point.

    The ambient space stacks (A1, A2, C_1..C_n, e), complex dimension
    (n+2)c^2 + c; e never enters the residuals, so its columns vanish.  The
    rank cut must be separated by a singular-value gap of at least 1e3,
    otherwise the verdict is indeterminate.
    """
    c = d.c
    n = d.n
    c2 = c * c
    ambient = (n + 2) * c2 + c
    zero = np.zeros((c, c), dtype=np.complex128)
    cols = []
    for slot in range(n + 2):
        for idx in range(c2):
            basis = np.zeros((c, c), dtype=np.complex128)
            basis[idx // c, idx % c] = 1.0
            da1 = basis if slot == 0 else zero
            da2 = basis if slot == 1 else zero
            dc = [basis if slot == q + 2 else zero for q in range(n)]
            if n == 1:
                dr = [
                    da1 @ d.C[0] @ d.A2 + d.A1 @ dc[0] @ d.A2 + d.A1 @ d.C[0] @ da2
                    - da2 @ d.C[0] @ d.A1 - d.A2 @ dc[0] @ d.A1 - d.A2 @ d.C[0] @ da1
                ]
            else:
                dr = []
                for q in range(n - 1):
                    dr.append(da1 @ d.C[q] + d.A1 @ dc[q] - da2 @ d.C[q + 1] - d.A2 @ dc[q + 1])
                    dr.append(dc[q] @ d.A1 + d.C[q] @ da1 - dc[q + 1] @ d.A2 - d.C[q + 1] @ da2)
            cols.append(np.concatenate([r.ravel() for r in dr]))
    jac = np.column_stack(cols + [np.zeros((cols[0].size, c), dtype=np.complex128)])
    s = np.linalg.svd(jac, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return ambient
    rank = int(np.count_nonzero(s > tol.rank_rel_tol * s[0]))
    if rank < s.size:
        kept = s[rank - 1] if rank > 0 else np.inf
        discarded = s[rank]
        if discarded > 0 and kept / discarded < _GAP_MIN:
            raise IndeterminateError(
                f"jacobian_nullity: no clear spectral gap "
                f"(kept {kept:.3e} / discarded {discarded:.3e} < {_GAP_MIN:.0e})"
            )
    return ambient - rank
