"""First Dirichlet eigenvalue of the radial weighted operator.

Shooting formulation: integrate the linear IVP

    -(r phi')' = mu r w(r) phi,   phi(0) = 1,  phi'(0) = 0,

and bisect mu so that the first zero of phi lands on the boundary radius.
The first eigenvalue is the one whose eigenfunction stays positive inside.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .integrate import IntegratorConfig, _core_integrate, _dense_eval
from .model import ProblemSpec, ResidualReport, TWO_PI


class EigenBracketError(RuntimeError):
    """Could not bracket the first eigenvalue (pathological weight)."""


EIGEN_CONFIG = IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14)


def _linear_rhs(problem: ProblemSpec, mu: float):
    hyper = problem.weighted

    def rhs(r, y):
        phi, psi = y[0], y[1]
        w = 4.0 / ((1.0 - r * r) ** 2) if hyper else 1.0
        tpr = TWO_PI * r
        return (psi, -psi / r - mu * w * phi, tpr * psi * psi,
                tpr * w * phi * phi, 0.0, 0.0)
    return rhs


def _linear_startup(problem: ProblemSpec, mu: float, config: IntegratorConfig):
    w0, w2 = problem.weight_series()
    c2 = -w0 * mu / 4.0
    c4 = -(w2 * mu + w0 * mu * c2) / 16.0
    r0 = min(config.startup_radius, 1e-3 * problem.boundary_radius)
    phi0 = 1.0 + c2 * r0 * r0 + c4 * r0 ** 4
    psi0 = 2.0 * c2 * r0 + 4.0 * c4 * r0 ** 3
    y0 = (phi0, psi0, TWO_PI * c2 * c2 * r0 ** 4,
          0.5 * TWO_PI * w0 * r0 * r0, 0.0, 0.0)
    return r0, (c2, c4), y0


@dataclass(frozen=True, eq=False)
class EigenProfile:
    """First eigenfunction profile, normalised to phi(0) = 1."""

    problem: ProblemSpec
    mu: float
    grid: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    dirichlet: np.ndarray    # 2 pi int (phi')^2 r dr
    weighted_l2: np.ndarray  # 2 pi int phi^2 w r dr
    _steps: tuple = ()
    _taylor: tuple = (0.0, 0.0, 0.0)

    def rayleigh_quotient(self) -> float:
        return float(self.dirichlet[-1] / self.weighted_l2[-1])

    def evaluate(self, r: float) -> tuple[float, float]:
        """(phi, phi') at radius r from dense output."""
        c2, c4, r0 = self._taylor
        if r <= r0 or not self._steps:
            r2 = r * r
            return (1.0 + c2 * r2 + c4 * r2 * r2,
                    2.0 * c2 * r + 4.0 * c4 * r * r2)
        starts = [s[0] for s in self._steps]
        j = min(max(bisect_right(starts, r) - 1, 0), len(self._steps) - 1)
        rs, h, y0, D = self._steps[j]
        theta = min(max((r - rs) / h, 0.0), 1.0)
        y = _dense_eval(y0, D, theta)
        return y[0], y[1]


def _crosses_inside(problem: ProblemSpec, mu: float,
                    config: IntegratorConfig) -> bool:
    """True if phi has a zero strictly before the boundary radius."""
    rhs = _linear_rhs(problem, mu)
    r0, _, y0 = _linear_startup(problem, mu, config)
    status, _, _, _ = _core_integrate(rhs, r0, y0, problem.boundary_radius,
                                      config, record=False)
    return status == "zero"


def first_eigenvalue(problem: ProblemSpec,
                     config: IntegratorConfig = EIGEN_CONFIG,
                     rel_accuracy: float = 1e-11
                     ) -> tuple[float, EigenProfile]:
    """First Dirichlet eigenvalue and eigenfunction of
    -(r phi')' = mu r w phi on [0, boundary_radius].

    Bisection on the first-zero position; converges to ~1e-10 relative.
    """
    R = problem.boundary_radius
    lo = 0.25 / (R * R)
    grow = 0
    while _crosses_inside(problem, lo, config):
        lo *= 0.25
        grow += 1
        if grow > 60:
            raise EigenBracketError("no lower eigenvalue bracket found")
    hi = max(4.0 / (R * R), 4.0 * lo)
    grow = 0
    while not _crosses_inside(problem, hi, config):
        hi *= 4.0
        grow += 1
        if grow > 60:
            raise EigenBracketError("no upper eigenvalue bracket found")
    while (hi - lo) > rel_accuracy * hi:
        mid = 0.5 * (lo + hi)
        if _crosses_inside(problem, mid, config):
            hi = mid
        else:
            lo = mid
    mu1 = 0.5 * (lo + hi)
    return mu1, _profile(problem, mu1, config)


def _profile(problem: ProblemSpec, mu: float,
             config: IntegratorConfig) -> EigenProfile:
    rhs = _linear_rhs(problem, mu)
    r0, taylor, y0 = _linear_startup(problem, mu, config)
    status, r_term, y_term, steps = _core_integrate(
        rhs, r0, y0, problem.boundary_radius, config, record=True)
    rs = [0.0] + [s[0] for s in steps] + [r_term]
    states = [(1.0, 0.0, 0.0, 0.0, 0.0, 0.0)] + [s[2] for s in steps] \
        + [y_term]
    c2, c4 = taylor
    return EigenProfile(
        problem=problem, mu=mu,
        grid=np.asarray(rs),
        phi=np.asarray([s[0] for s in states]),
        dphi=np.asarray([s[1] for s in states]),
        dirichlet=np.asarray([s[2] for s in states]),
        weighted_l2=np.asarray([s[3] for s in states]),
        _steps=tuple(steps), _taylor=(c2, c4, r0))


def eigen_residual(profile: EigenProfile) -> ResidualReport:
    """Mean linear-ODE residual |Delta(r phi') + mu int s w phi ds| / h per
    accepted step, via Simpson on dense output, normalised by
    (mu r w |phi| + 1) at the step midpoint."""
    prob, mu = profile.problem, profile.mu
    grid, dphi = profile.grid, profile.dphi
    radii, absres, relres = [], [], []
    for i in range(1, len(grid) - 1):
        r_lo, r_hi = float(grid[i]), float(grid[i + 1])
        h = r_hi - r_lo
        if h <= 4e-16 * max(r_hi, 1.0):
            continue
        flux = r_hi * float(dphi[i + 1]) - r_lo * float(dphi[i])
        n = 16
        hh = h / n
        total = 0.0
        for m in range(n + 1):
            r = r_lo + m * hh
            p = profile.evaluate(r)[0]
            wgt = 1.0 if m in (0, n) else (4.0 if m % 2 else 2.0)
            total += wgt * r * prob.weight(r) * p
        integral = mu * total * hh / 3.0
        res = abs(flux + integral) / h
        rm = 0.5 * (r_lo + r_hi)
        pm = profile.evaluate(rm)[0]
        scale = abs(mu * rm * prob.weight(rm) * pm) + 1.0
        radii.append(rm)
        absres.append(res)
        relres.append(res / scale)
    return ResidualReport(identity="eigen-equation",
                          radii=np.asarray(radii),
                          absolute=np.asarray(absres),
                          relative=np.asarray(relres),
                          tolerance=1e-9)


@lru_cache(maxsize=64)
def _cached_mu1(problem: ProblemSpec) -> float:
    return first_eigenvalue(problem)[0]


def first_eigenvalue_cached(problem: ProblemSpec) -> float:
    """Memoised eigenvalue for admissibility checks in the shooting layer."""
    return _cached_mu1(problem)
