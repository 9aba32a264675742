"""Quantified verification of integral identities on computed solutions.

The weighted-measure identity (Nehari) holds for every variant; the
radial-multiplier identity (Pohozaev) is implemented for the Euclidean
standard problem only, in the lambda-restored form

    pi r^2 (u'(r))^2 = lam * int_{B_r} (e^{u^2}-1) dx
                       - lam pi r^2 (e^{u(r)^2}-1),

obtained by multiplying the equation by x . grad u and integrating; the
corresponding unweighted form without the lam factor fails numerically for
lam != 1 and is treated as a misprint (flagged in reports).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .integrate import RadialSolution
from .model import (EUCLIDEAN, SHIFTED, STANDARD, ResidualReport,
                    UnsupportedIdentity)
from .series import boundary_recurrence

DEFAULT_IDENTITY_TOL = 1e-8


def _require_euclidean_standard(solution: RadialSolution, what: str):
    p = solution.problem
    if p.geometry != EUCLIDEAN or p.nonlinearity != STANDARD:
        raise UnsupportedIdentity(
            f"{what} is only derived for the Euclidean standard problem; "
            f"got geometry={p.geometry}, nonlinearity={p.nonlinearity}")


def pohozaev_residual(solution: RadialSolution,
                      radii: Optional[Sequence[float]] = None,
                      tolerance: float = DEFAULT_IDENTITY_TOL
                      ) -> ResidualReport:
    """Residual of the radial-multiplier identity at the requested radii,
    normalised by the largest participating term.

    At r = R the identity reduces to pi R^2 u'(R)^2 = lam int (e^{u^2}-1)
    since u(R) = 0.  The weighted (hyperbolic) form carries extra
    weight-derivative terms and is not implemented: UnsupportedIdentity.
    """
    _require_euclidean_standard(solution, "the radial-multiplier identity")
    R = solution.boundary_radius
    if radii is None:
        radii = [0.25 * R, 0.5 * R, 0.75 * R, R]
    lam = solution.lam
    rs, absres, relres = [], [], []
    for r in radii:
        u, du, acc = solution.evaluate_dense(float(r))
        mass = acc[1]
        t1 = math.pi * r * r * du * du
        t2 = lam * mass
        t3 = lam * math.pi * r * r * math.expm1(u * u)
        res = t1 - t2 + t3
        denom = max(abs(t1), abs(t2), abs(t3), 1e-30)
        rs.append(float(r))
        absres.append(abs(res))
        relres.append(abs(res) / denom)
    return ResidualReport(identity="pohozaev(lambda-restored)",
                          radii=np.asarray(rs),
                          absolute=np.asarray(absres),
                          relative=np.asarray(relres),
                          tolerance=tolerance)


def nehari_residual(solution: RadialSolution,
                    tolerance: float = DEFAULT_IDENTITY_TOL
                    ) -> ResidualReport:
    """Residual of ||grad u||^2 = lam int u f(u) w dx (the shifted variant
    subtracts lam_shift ||u||^2 from the left side), relative to the
    largest term.  Both sides come from independently accumulated
    integrals."""
    p = solution.problem
    lam = solution.lam
    dirich = float(solution.dirichlet[-1])
    neh = float(solution.nehari[-1])
    terms = [dirich, lam * neh]
    lhs = dirich
    if p.nonlinearity == SHIFTED:
        quad = p.lambda_shift * float(solution.u2_mass[-1])
        lhs -= quad
        terms.append(quad)
    res = abs(lhs - lam * neh)
    denom = max(*(abs(x) for x in terms), 1e-30)
    return ResidualReport(identity="nehari",
                          radii=np.asarray([solution.boundary_radius]),
                          absolute=np.asarray([res]),
                          relative=np.asarray([res / denom]),
                          tolerance=tolerance)


@dataclass(frozen=True)
class BoundaryDerivatives:
    """u^{(k)} at the boundary from repeated differentiation of the ODE,
    seeded by the numerical slope, plus finite-difference cross-checks."""

    values: tuple            # k = 0 .. order
    fd_u2: float
    fd_u3: float
    fd_rel_err_u2: float
    fd_rel_err_u3: float
    flagged: bool            # FD discrepancy beyond 1e-4 relative


def boundary_derivatives(solution: RadialSolution, order: int = 6
                         ) -> BoundaryDerivatives:
    """Boundary derivatives u^{(k)}(R), k <= order <= 6.

    The recurrence lives on the unit disc; a disc of radius R maps onto it
    by s = r/R with slope a1 = R u'(R) and parameter lam1 = lam R^2, and
    u^{(k)}(R) = u1^{(k)}(1) / R^k.  Orders 2 and 3 are cross-checked
    against one-sided finite differences of the dense trajectory and
    flagged beyond 1e-4 relative discrepancy.
    """
    if order > 6:
        raise ValueError("order must be <= 6")
    _require_euclidean_standard(solution, "the boundary recurrence")
    R = solution.boundary_radius
    a1 = R * solution.du_at_boundary
    lam1 = solution.lam * R * R
    rec = boundary_recurrence(max(order, 2))
    point = {"a": a1, "b": 0.0, "t": 0.0, "lam": lam1}
    vals = [0.0, solution.du_at_boundary]
    for k in range(2, order + 1):
        vals.append(rec[k].evaluate_float(point) / R ** k)

    # one-sided finite differences of u' near the boundary; steps balance
    # the h^2 truncation term against dense-output noise / h^2
    h2 = 1e-3 * R
    v = [solution.evaluate_dense(R - j * h2)[1] for j in range(3)]
    fd_u2 = (3.0 * v[0] - 4.0 * v[1] + v[2]) / (2.0 * h2)
    h3 = 2.5e-3 * R
    vv = [solution.evaluate_dense(R - j * h3)[1] for j in range(4)]
    fd_u3 = (2.0 * vv[0] - 5.0 * vv[1] + 4.0 * vv[2] - vv[3]) / (h3 * h3)
    rel2 = abs(fd_u2 - vals[2]) / max(abs(vals[2]), 1e-30)
    rel3 = abs(fd_u3 - vals[3]) / max(abs(vals[3]), 1e-30) \
        if order >= 3 else 0.0
    return BoundaryDerivatives(
        values=tuple(vals[:order + 1]),
        fd_u2=fd_u2, fd_u3=fd_u3,
        fd_rel_err_u2=rel2, fd_rel_err_u3=rel3,
        flagged=(rel2 > 1e-4 or rel3 > 1e-4))


@dataclass(frozen=True)
class ComparisonReport:
    """Empirical intersection/ratio diagnostics for two branch solutions
    rescaled to the unit disc (observational only; the exact hypotheses of
    the underlying comparison lemmas require equal lambda, which uniqueness
    precludes for distinct solutions)."""

    alpha_a: float
    alpha_b: float
    intersection_count: int
    intersection_radii: tuple
    ratio_monotone: str          # 'increasing' | 'decreasing' | 'non-monotone'
    ratio_direction_changes: int
    touching_t: float
    contact_radius: float
    contact_w: float
    contact_dw: float
    contact_d2w: float


def comparison_diagnostics(solution_a: RadialSolution,
                           solution_b: RadialSolution,
                           n_samples: int = 4000) -> ComparisonReport:
    """Diagnostics on u_a - u_b and r -> u_a/u_b for two Euclidean-standard
    solutions, plus the max-ratio touching construction
    t = [max u_b/u_a]^{-1} and the contact data of w = u_a - t u_b."""
    for s in (solution_a, solution_b):
        _require_euclidean_standard(s, "comparison diagnostics")
    a_sol = solution_a.rescaled(1.0 / solution_a.boundary_radius)
    b_sol = solution_b.rescaled(1.0 / solution_b.boundary_radius)

    rs = np.linspace(1e-6, 1.0 - 1e-6, n_samples)
    ua = np.array([a_sol.evaluate_dense(float(r))[0] for r in rs])
    ub = np.array([b_sol.evaluate_dense(float(r))[0] for r in rs])

    # intersections: sign changes of u_a - u_b away from the boundary foot
    interior = rs <= 0.999
    d = (ua - ub)[interior]
    ri = rs[interior]
    scale = max(np.max(np.abs(ua)), np.max(np.abs(ub)))
    sgn = np.sign(np.where(np.abs(d) < 1e-12 * scale, 0.0, d))
    crossings = []
    prev = 0.0
    for i, s in enumerate(sgn):
        if s == 0.0:
            continue
        if prev != 0.0 and s != prev:
            crossings.append(float(ri[i]))
        prev = s
    # ratio profile (cut before the boundary foot where 0/0 noise sets in)
    cut = rs <= 0.99
    ratio = ua[cut] / ub[cut]
    dr = np.diff(ratio)
    tol = 1e-8 * float(np.max(np.abs(ratio)))
    rising = dr > tol
    falling = dr < -tol
    changes = 0
    state = 0
    for up, down in zip(rising, falling):
        cur = 1 if up else (-1 if down else 0)
        if cur and state and cur != state:
            changes += 1
        if cur:
            state = cur
    if not falling.any() and rising.any():
        mono = "increasing"
    elif not rising.any() and falling.any():
        mono = "decreasing"
    elif not rising.any() and not falling.any():
        mono = "constant"
    else:
        mono = "non-monotone"

    # touching construction: t = [max u_b/u_a]^{-1}, contact where the max
    # is attained (endpoint limits included)
    inv_ratio = ub / ua
    j = int(np.argmax(inv_ratio))
    best_r, best = float(rs[j]), float(inv_ratio[j])
    limit0 = solution_b.alpha / solution_a.alpha
    if limit0 > best:
        best, best_r = limit0, 0.0
    limit1 = b_sol.du_at_boundary / a_sol.du_at_boundary
    if limit1 > best:
        best, best_r = limit1, 1.0
    t = 1.0 / best

    def w_at(r):
        if r <= 0.0:
            return solution_a.alpha - t * solution_b.alpha
        if r >= 1.0:
            return 0.0
        return (a_sol.evaluate_dense(r)[0] - t * b_sol.evaluate_dense(r)[0])

    h = 1e-4
    rc = min(max(best_r, h), 1.0 - h)
    w0 = w_at(rc)
    dw = (w_at(rc + h) - w_at(rc - h)) / (2.0 * h)
    d2w = (w_at(rc + h) - 2.0 * w0 + w_at(rc - h)) / (h * h)
    return ComparisonReport(
        alpha_a=solution_a.alpha, alpha_b=solution_b.alpha,
        intersection_count=len(crossings),
        intersection_radii=tuple(crossings),
        ratio_monotone=mono,
        ratio_direction_changes=changes,
        touching_t=t,
        contact_radius=best_r,
        contact_w=w_at(best_r),
        contact_dw=dw,
        contact_d2w=d2w)
