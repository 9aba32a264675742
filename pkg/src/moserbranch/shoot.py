"""Boundary-condition solvers: lambda(alpha) and its inverse.

Both parameterisations of the solution branch are exposed: lambda_of_alpha
(single-valued along the branch) and solve_for_lambda (the inverse,
well-defined by uniqueness).  The Euclidean standard problem uses the exact
scaling shortcut r -> s r, lambda -> s^2 lambda; every weighted, shifted or
perturbed problem goes through genuine one-dimensional root finding on the
first-zero radius, which is empirically strictly monotone in both lambda
and alpha.  A detected monotonicity violation would contradict uniqueness
and is surfaced loudly as MultiplicityWarning, never silently resolved.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Optional

from .eigen import first_eigenvalue_cached
from .integrate import (DEFAULT_CONFIG, IntegratorConfig, RadialSolution,
                        integrate_ivp, integrate_to_radius)
from .model import (EUCLIDEAN, PERTURBED, SHIFTED, STANDARD, DomainError,
                    ProblemSpec)

RHO_REL_TOL = 1e-10         # |rho - R| <= RHO_REL_TOL * R at convergence
LAMBDA_FLOOR = 1e-12
EIGEN_GUARD = 1.0 - 1e-9    # admissible lambda stays below mu1 * EIGEN_GUARD


class ShootingError(RuntimeError):
    """Root bracketing or convergence failure in the shooting layer."""


class MultiplicityWarning(RuntimeError):
    """The first-zero radius was observed non-monotone: two shots ordered
    against the expected direction.  Carries both offending samples; a
    genuine instance would be a counterexample to uniqueness, so it is
    never swallowed."""

    def __init__(self, msg, sample_a, sample_b):
        super().__init__(msg)
        self.sample_a = sample_a
        self.sample_b = sample_b


def _lambda_ceiling(problem: ProblemSpec) -> Optional[float]:
    """Largest admissible branch parameter, from the linear eigenvalue:
    mu1 for the standard problem, mu1 - lambda_shift for the shifted one,
    unbounded for the perturbed variant (its linearisation at zero has no
    linear term)."""
    if problem.nonlinearity == PERTURBED:
        return None
    mu1 = first_eigenvalue_cached(problem)
    if problem.nonlinearity == SHIFTED:
        if problem.lambda_shift >= mu1 * EIGEN_GUARD:
            raise DomainError(
                f"lambda_shift={problem.lambda_shift} >= first eigenvalue "
                f"{mu1:.12g}")
        return (mu1 - problem.lambda_shift) * EIGEN_GUARD
    return mu1 * EIGEN_GUARD


def _is_euclidean_standard(problem: ProblemSpec) -> bool:
    return problem.geometry == EUCLIDEAN and problem.nonlinearity == STANDARD


class _ShotRecorder:
    """Collects (parameter -> first-zero radius) samples and raises if the
    radius fails to decrease as the parameter increases."""

    def __init__(self, what: str):
        self.what = what
        self.zero_shots = []   # (param, rho)

    def add(self, param, status, r_term, y_term):
        if status != "zero":
            return
        tol = 1e-8 * max(r_term, 1e-6)
        for (p, rho) in self.zero_shots:
            if param > p:
                ok = r_term <= rho + tol
            else:
                ok = r_term >= rho - tol
            if not ok:
                raise MultiplicityWarning(
                    f"first-zero radius not monotone in {self.what}: "
                    f"rho({p:.12g})={rho:.12g} vs "
                    f"rho({param:.12g})={r_term:.12g}",
                    (p, rho), (param, r_term))
        self.zero_shots.append((param, r_term))


def _shoot_once(problem, lam, alpha, config):
    return integrate_to_radius(problem, lam, alpha,
                               problem.boundary_radius, config)


def _final_solution(problem, lam, alpha, config) -> RadialSolution:
    """Dense-recorded integration at the converged parameters; the event
    radius sits within RHO_REL_TOL of the boundary, so allow a hair of
    slack past it."""
    R = problem.boundary_radius
    run_cfg = replace(config, max_radius=R * (1.0 + 1e-7))
    return integrate_ivp(problem, lam, alpha, run_cfg)


def lambda_of_alpha(problem: ProblemSpec, alpha: float,
                    config: IntegratorConfig = DEFAULT_CONFIG,
                    lam_hint: Optional[float] = None
                    ) -> tuple[float, RadialSolution]:
    """Branch parameter lambda for prescribed centre value alpha = u(0),
    with the full solution.

    Euclidean standard route: one integration at lambda = 1; the first zero
    rho gives lambda = rho^2 / radius^2 and the trajectory rescales onto
    [0, radius].  All other problems: secant iteration with bisection
    fallback on rho(lambda) = boundary_radius, bracket grown geometrically,
    terminating at |rho - R| <= 1e-10 R.
    """
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    if _is_euclidean_standard(problem):
        sol = integrate_ivp(problem, 1.0, alpha, config)
        rho = sol.boundary_radius
        R = problem.boundary_radius
        lam = (rho / R) ** 2
        return lam, sol.rescaled(R / rho)

    R = problem.boundary_radius
    ceiling = _lambda_ceiling(problem)
    recorder = _ShotRecorder("lambda")

    def gauge(lam):
        """Smooth root objective: u(R) on the miss side, its first-order
        continuation u'(rho)(R - rho) past the zero on the crossing side.
        Positive iff the shot misses."""
        status, r_term, y_term = _shoot_once(problem, lam, alpha, config)
        recorder.add(lam, status, r_term, y_term)
        if status == "end":
            return y_term[0], None
        return y_term[1] * (R - r_term), r_term

    use_hint = lam_hint is not None and lam_hint > 0.0
    lam = lam_hint if use_hint else (0.5 * ceiling if ceiling else 1.0)
    if ceiling:
        lam = min(lam, ceiling)
    g, rho = gauge(lam)
    lam_lo = lam_hi = None
    g_lo = g_hi = rho_hi = None
    if g <= 0.0:
        lam_hi, g_hi, rho_hi = lam, g, rho
        probe, step = lam, 0.95 if use_hint else 0.5
        while lam_lo is None:
            probe *= step
            step *= step
            if probe < LAMBDA_FLOOR:
                raise ShootingError(
                    f"no miss-side bracket above lambda={LAMBDA_FLOOR}")
            g, rho = gauge(probe)
            if g > 0.0:
                lam_lo, g_lo = probe, g
            else:
                lam_hi, g_hi, rho_hi = probe, g, rho
    else:
        lam_lo, g_lo = lam, g
        probe, step = lam, 1.05 if use_hint else 2.0
        while lam_hi is None:
            if ceiling is not None and probe >= ceiling:
                raise ShootingError(
                    f"no crossing bracket below the eigenvalue ceiling "
                    f"{ceiling:.12g} (alpha={alpha})")
            probe = probe * step if ceiling is None \
                else min(probe * step, ceiling)
            step *= step
            if probe > 1e300:
                raise ShootingError("lambda bracket growth overflow")
            g, rho = gauge(probe)
            if g <= 0.0:
                lam_hi, g_hi, rho_hi = probe, g, rho
            else:
                lam_lo, g_lo = probe, g

    # secant on the gauge with bisection safeguard inside [lam_lo, lam_hi]
    prev = (lam_lo, g_lo)
    cur = (lam_hi, g_hi)
    for _ in range(200):
        if rho_hi is not None and abs(rho_hi - R) <= RHO_REL_TOL * R:
            return lam_hi, _final_solution(problem, lam_hi, alpha, config)
        candidate = None
        (l1, g1), (l2, g2) = prev, cur
        if g1 != g2:
            c = l2 - g2 * (l2 - l1) / (g2 - g1)
            if lam_lo < c < lam_hi:
                candidate = c
        if candidate is None:
            candidate = 0.5 * (lam_lo + lam_hi)
        g, rho = gauge(candidate)
        prev, cur = cur, (candidate, g)
        if g <= 0.0:
            lam_hi, g_hi, rho_hi = candidate, g, rho
        else:
            lam_lo, g_lo = candidate, g
        if (lam_hi - lam_lo) <= 1e-15 * lam_hi:
            return lam_hi, _final_solution(problem, lam_hi, alpha, config)
    raise ShootingError(
        f"root finding stagnated for alpha={alpha}: bracket "
        f"[{lam_lo}, {lam_hi}], rho={rho_hi}")


def solve_for_lambda(problem: ProblemSpec, lam: float,
                     config: IntegratorConfig = DEFAULT_CONFIG
                     ) -> RadialSolution:
    """The unique positive solution at prescribed branch parameter lambda
    (theta for the shifted variant), by monotone bisection on alpha.

    The first-zero radius decreases in alpha; bisection keeps the bracket
    [alpha stays positive through R | alpha crosses inside R] and aborts
    with MultiplicityWarning if samples violate that ordering.
    """
    if lam <= 0.0:
        raise DomainError("lambda must be positive")
    ceiling = _lambda_ceiling(problem)
    if ceiling is not None and lam >= ceiling:
        raise DomainError(
            f"lambda={lam} not below the admissible ceiling {ceiling:.12g}")
    R = problem.boundary_radius
    recorder = _ShotRecorder("alpha")

    a_lo = a_hi = None
    probe = 1.0
    status, r_term, y_term = _shoot_once(problem, lam, probe, config)
    recorder.add(probe, status, r_term, y_term)
    if status == "zero":
        a_hi = probe
        while a_lo is None:
            probe *= 0.5
            if probe < 1e-12:
                raise ShootingError("no positive-side alpha bracket found")
            status, r_term, y_term = _shoot_once(problem, lam, probe, config)
            recorder.add(probe, status, r_term, y_term)
            if status == "end":
                a_lo = probe
            else:
                a_hi = probe
    else:
        a_lo = probe
        while a_hi is None:
            if probe >= config.alpha_cap:
                raise ShootingError(
                    f"no crossing below the alpha cap {config.alpha_cap} "
                    f"(lambda={lam})")
            probe = min(probe * 2.0, config.alpha_cap)
            status, r_term, y_term = _shoot_once(problem, lam, probe, config)
            recorder.add(probe, status, r_term, y_term)
            if status == "zero":
                a_hi = probe
            else:
                a_lo = probe

    for _ in range(200):
        mid = 0.5 * (a_lo + a_hi)
        status, r_term, y_term = _shoot_once(problem, lam, mid, config)
        recorder.add(mid, status, r_term, y_term)
        if status == "zero":
            a_hi = mid
            if abs(r_term - R) <= RHO_REL_TOL * R:
                break
        else:
            a_lo = mid
        if (a_hi - a_lo) <= 4e-16 * a_hi:
            break
    return _final_solution(problem, lam, a_hi, config)
