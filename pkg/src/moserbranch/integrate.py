"""Adaptive integration of the singular-origin radial IVP.

Solves -(r u')' = r w(r) * forcing(u) with u(0) = alpha, u'(0) = 0, as a
first-order system augmented with four integral accumulators,

    state y = (u, u', dirichlet, mass_exp, nehari, u2_mass),

    dirichlet(r) = 2*pi * int_0^r (u')^2 s ds          (no weight: the
                   Dirichlet energy is conformally invariant),
    mass_exp(r)  = 2*pi * int_0^r F(u) w(s) s ds,
    nehari(r)    = 2*pi * int_0^r u f(u) w(s) s ds,
    u2_mass(r)   = 2*pi * int_0^r u^2 w(s) s ds,

using a Dormand-Prince 5(4) pair with quartic dense output.  The removable
singularity at r = 0 is stepped over with a two-term even Taylor expansion;
the trajectory terminates at the first zero of u, located by sign-change
bracketing plus bisection on the dense interpolant (no derivative-based
polish).  Everything is plain-float arithmetic in a fixed evaluation order,
so repeated runs are bit-identical.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .model import (PERTURBED, SHIFTED, ProblemSpec, ResidualReport, TWO_PI)


class IntegrationError(RuntimeError):
    """Base class for integrator failures."""


class NoZeroError(IntegrationError):
    """u never crossed zero before max_radius (lambda too small for the
    truncation radius).  Carries the final state for shooting layers."""

    def __init__(self, msg: str, r_end: float, y_end: tuple):
        super().__init__(msg)
        self.r_end = r_end
        self.y_end = y_end


class StepLimitError(IntegrationError):
    """Step budget exhausted before an event or the end radius."""


class AlphaRangeError(IntegrationError):
    """alpha outside the configured floating-safe range (e^{alpha^2} would
    overflow or degrade accuracy)."""


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    startup_radius: float = 1e-6
    max_radius: Optional[float] = None
    max_steps: int = 100_000
    alpha_cap: float = 8.0

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.startup_radius <= 0:
            raise ValueError("startup_radius must be positive")


DEFAULT_CONFIG = IntegratorConfig()

# Dormand-Prince 5(4) tableau, FSAL, with the quartic dense-output matrix.
_C2, _C3, _C4, _C5 = 0.2, 0.3, 0.8, 8.0 / 9.0
_A21 = 0.2
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = (19372.0 / 6561.0, -25360.0 / 2187.0,
                          64448.0 / 6561.0, -212.0 / 729.0)
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0,
                                46732.0 / 5247.0, 49.0 / 176.0,
                                -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = (35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0,
                           -2187.0 / 6784.0, 11.0 / 84.0)
_E = (71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0,
      -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)
_P = ((1.0, -8048581381.0 / 2820520608.0, 8663915743.0 / 2820520608.0,
       -12715105075.0 / 11282082432.0),
      (0.0, 0.0, 0.0, 0.0),
      (0.0, 131558114200.0 / 32700410799.0, -68118460800.0 / 10900136933.0,
       87487479700.0 / 32700410799.0),
      (0.0, -1754552775.0 / 470086768.0, 14199869525.0 / 1410260304.0,
       -10690763975.0 / 1880347072.0),
      (0.0, 127303824393.0 / 49829197408.0, -318862633887.0 / 49829197408.0,
       701980252875.0 / 199316789632.0),
      (0.0, -282668133.0 / 205662961.0, 2019193451.0 / 616988883.0,
       -1453857185.0 / 822651844.0),
      (0.0, 40617522.0 / 29380423.0, -110615467.0 / 29380423.0,
       69997945.0 / 29380423.0))

_NSTATE = 6


def _make_rhs(problem: ProblemSpec, lam: float) -> Callable:
    """Variant-specialised derivative of the augmented state.

    Closures keep per-call dispatch cheap; each returns a 6-tuple.
    """
    hyper = problem.weighted
    kind = problem.nonlinearity
    lam_shift = problem.lambda_shift
    exp = math.exp

    if kind == PERTURBED:
        def rhs(r, y):
            u, v = y[0], y[1]
            w = 4.0 / ((1.0 - r * r) ** 2) if hyper else 1.0
            em1 = exp(u * u) - 1.0
            tpr = TWO_PI * r
            u2 = u * u
            return (v,
                    -v / r - w * lam * u * em1,
                    tpr * v * v,
                    tpr * w * (em1 - u2),
                    tpr * w * u2 * em1,
                    tpr * w * u2)
    elif kind == SHIFTED:
        def rhs(r, y):
            u, v = y[0], y[1]
            w = 4.0 / ((1.0 - r * r) ** 2) if hyper else 1.0
            e = exp(u * u)
            tpr = TWO_PI * r
            u2 = u * u
            return (v,
                    -v / r - w * (lam * u * e + lam_shift * u),
                    tpr * v * v,
                    tpr * w * (e - 1.0),
                    tpr * w * u2 * e,
                    tpr * w * u2)
    else:
        def rhs(r, y):
            u, v = y[0], y[1]
            w = 4.0 / ((1.0 - r * r) ** 2) if hyper else 1.0
            e = exp(u * u)
            tpr = TWO_PI * r
            u2 = u * u
            return (v,
                    -v / r - w * lam * u * e,
                    tpr * v * v,
                    tpr * w * (e - 1.0),
                    tpr * w * u2 * e,
                    tpr * w * u2)
    return rhs


def _startup_coefficients(problem: ProblemSpec, lam: float, alpha: float):
    """Even-series coefficients u = alpha + c2 r^2 + c4 r^4 + O(r^6) at the
    regular singular point, from matching -(ru')' = r w(r) G(u):

        4 c2  = -w0 G(alpha),
        16 c4 = -(w2 G(alpha) + w0 G'(alpha) c2).
    """
    w0, w2 = problem.weight_series()
    try:
        g = problem.forcing(lam, alpha)
        dg = problem.dforcing(lam, alpha)
    except OverflowError as exc:
        raise AlphaRangeError(
            f"exp(alpha^2) overflows double range at alpha={alpha}") from exc
    if not math.isfinite(g) or not math.isfinite(dg):
        raise AlphaRangeError(
            f"forcing not finite at alpha={alpha} (lambda={lam})")
    c2 = -w0 * g / 4.0
    c4 = -(w2 * g + w0 * dg * c2) / 16.0
    return c2, c4


def taylor_startup(problem: ProblemSpec, lam: float, alpha: float,
                   r0: float) -> tuple[float, float]:
    """Series values (u(r0), u'(r0)) used to step over the origin."""
    if r0 <= 0:
        raise ValueError("r0 must be positive")
    c2, c4 = _startup_coefficients(problem, lam, alpha)
    r2 = r0 * r0
    return alpha + c2 * r2 + c4 * r2 * r2, 2.0 * c2 * r0 + 4.0 * c4 * r0 * r2


def _taylor_accumulators(problem: ProblemSpec, alpha: float, c2: float,
                         ri: float) -> tuple:
    """Leading-order accumulator values inside the startup region."""
    w0, _ = problem.weight_series()
    r2 = ri * ri
    half = 0.5 * TWO_PI * r2 * w0
    return (TWO_PI * c2 * c2 * r2 * r2,
            half * problem.potential(alpha),
            half * problem.nehari_density(alpha),
            half * alpha * alpha)


def _startup_state(problem: ProblemSpec, lam: float, alpha: float,
                   config: IntegratorConfig, r_end: float = math.inf):
    """Effective startup radius, series coefficients and the full 6-state
    there.  The radius shrinks with the interior length scale
    sqrt(alpha/|c2|) so that steep large-alpha profiles stay inside the
    series' range of validity, and stays well inside tiny domains."""
    c2, c4 = _startup_coefficients(problem, lam, alpha)
    scale = math.sqrt(alpha / abs(c2)) if c2 != 0.0 else 1.0
    r0 = min(config.startup_radius, 1e-3 * scale, 1e-3 * r_end)
    u0 = alpha + c2 * r0 * r0 + c4 * r0 ** 4
    v0 = 2.0 * c2 * r0 + 4.0 * c4 * r0 ** 3
    y0 = (u0, v0) + _taylor_accumulators(problem, alpha, c2, r0)
    return r0, (c2, c4), y0


def _default_max_radius(problem: ProblemSpec, lam: float) -> float:
    if problem.weighted:
        return problem.boundary_radius
    if problem.nonlinearity == SHIFTED:
        # f >= u gives a Sturm bound by the linear problem's first zero
        return 2.5 / math.sqrt(lam + problem.lambda_shift)
    if problem.nonlinearity == PERTURBED:
        # no linear floor under f; generous cap (shooting layers pass the
        # boundary radius explicitly)
        return 1000.0 / math.sqrt(lam)
    return 2.5 / math.sqrt(lam)


def _initial_step(rhs, r0, y0, f0, r_end, rtol, atol):
    """Hairer-style starting step selection (order 5)."""
    span = r_end - r0
    scale = [atol + rtol * abs(y) for y in y0]
    d0 = math.sqrt(sum((y / s) ** 2 for y, s in zip(y0, scale)) / _NSTATE)
    d1 = math.sqrt(sum((f / s) ** 2 for f, s in zip(f0, scale)) / _NSTATE)
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, span)
    y1 = tuple(y + h0 * f for y, f in zip(y0, f0))
    f1 = rhs(r0 + h0, y1)
    d2 = math.sqrt(sum(((a - b) / s) ** 2
                       for a, b, s in zip(f1, f0, scale)) / _NSTATE) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100.0 * h0, h1, span)


def _core_integrate(rhs, r0, y0, r_end, config, record=True, event_on_u=True):
    """Dormand-Prince stepping from (r0, y0) towards r_end.

    Returns (status, r_term, y_term, steps) where status is 'zero' (first
    zero of y[0], located on dense output) or 'end' (reached r_end).
    steps is the dense data [(r_start, h, y_start, D)] when record.
    """
    rtol, atol = config.rel_tol, config.abs_tol
    r, y = r0, y0
    f = rhs(r, y)
    h = _initial_step(rhs, r, y, f, r_end, rtol, atol)
    steps = [] if record else None
    n_acc = 0
    rng6 = range(_NSTATE)

    while True:
        if n_acc >= config.max_steps:
            raise StepLimitError(
                f"exceeded {config.max_steps} accepted steps at r={r}")
        h = min(h, r_end - r)
        if h <= 1e-15 * max(r, 1.0) and r_end - r > 1e-12 * max(r_end, 1.0):
            raise IntegrationError(f"step size underflow at r={r}")

        k1 = f
        y2 = tuple(y[i] + h * _A21 * k1[i] for i in rng6)
        k2 = rhs(r + _C2 * h, y2)
        y3 = tuple(y[i] + h * (_A31 * k1[i] + _A32 * k2[i]) for i in rng6)
        k3 = rhs(r + _C3 * h, y3)
        y4 = tuple(y[i] + h * (_A41 * k1[i] + _A42 * k2[i] + _A43 * k3[i])
                   for i in rng6)
        k4 = rhs(r + _C4 * h, y4)
        y5 = tuple(y[i] + h * (_A51 * k1[i] + _A52 * k2[i] + _A53 * k3[i]
                               + _A54 * k4[i]) for i in rng6)
        k5 = rhs(r + _C5 * h, y5)
        y6 = tuple(y[i] + h * (_A61 * k1[i] + _A62 * k2[i] + _A63 * k3[i]
                               + _A64 * k4[i] + _A65 * k5[i]) for i in rng6)
        k6 = rhs(r + h, y6)
        y_new = tuple(y[i] + h * (_B1 * k1[i] + _B3 * k3[i] + _B4 * k4[i]
                                  + _B5 * k5[i] + _B6 * k6[i]) for i in rng6)
        k7 = rhs(r + h, y_new)

        err = 0.0
        for i in rng6:
            e = h * (_E[0] * k1[i] + _E[2] * k3[i] + _E[3] * k4[i]
                     + _E[4] * k5[i] + _E[5] * k6[i] + _E[6] * k7[i])
            sc = atol + rtol * max(abs(y[i]), abs(y_new[i]))
            err += (e / sc) ** 2
        err = math.sqrt(err / _NSTATE)

        if err > 1.0:
            h *= max(0.2, 0.9 * err ** -0.2)
            continue

        ks = (k1, k2, k3, k4, k5, k6, k7)
        D = tuple(tuple(h * (ks[0][i] * _P[0][j] + ks[2][i] * _P[2][j]
                             + ks[3][i] * _P[3][j] + ks[4][i] * _P[4][j]
                             + ks[5][i] * _P[5][j] + ks[6][i] * _P[6][j])
                        for j in range(4)) for i in rng6)
        n_acc += 1
        if steps is not None:
            steps.append((r, h, y, D))

        if event_on_u and y_new[0] <= 0.0:
            rho, y_rho = _locate_zero(r, h, y, D, y_new, atol)
            return "zero", rho, y_rho, steps
        r_next = r + h
        if r_end - r_next <= 1e-15 * max(r_end, 1.0):
            return "end", r_end, y_new, steps
        r, y, f = r_next, y_new, k7
        factor = 10.0 if err == 0.0 else min(10.0, 0.9 * err ** -0.2)
        h *= max(0.2, factor)


def _dense_eval(y, D, theta):
    """Interpolant value at fraction theta of a step."""
    t2 = theta * theta
    t3 = t2 * theta
    t4 = t3 * theta
    return tuple(y[i] + D[i][0] * theta + D[i][1] * t2 + D[i][2] * t3
                 + D[i][3] * t4 for i in range(_NSTATE))


def _locate_zero(r, h, y, D, y_new, atol):
    """Bisection for the first zero of u on a step's dense output.

    Keeps the bracket u(lo) > 0 >= u(hi); returns the endpoint with the
    smaller |u| once |u| <= atol or the bracket is at rounding width.
    """
    if y_new[0] == 0.0:
        return r + h, y_new
    lo, u_lo = 0.0, y[0]
    hi, u_hi = 1.0, y_new[0]
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        um = _dense_eval(y, D, mid)[0]
        if um > 0.0:
            lo, u_lo = mid, um
        else:
            hi, u_hi = mid, um
        if abs(um) <= atol or (hi - lo) * h <= 1e-16 * (r + h):
            break
    theta = lo if abs(u_lo) < abs(u_hi) else hi
    y_rho = _dense_eval(y, D, theta)
    return r + theta * h, y_rho


@dataclass(frozen=True, eq=False)
class RadialSolution:
    """Dense trajectory of one (problem, lambda, alpha) up to the first zero.

    Node arrays are in physical coordinates.  Dense step data may live in a
    rescaled internal coordinate (Euclidean scaling route); evaluate_dense
    applies the transform.  Immutable once built; safe to share between
    threads.
    """

    problem: ProblemSpec
    lam: float
    alpha: float
    grid: np.ndarray
    u_values: np.ndarray
    du_values: np.ndarray
    dirichlet: np.ndarray
    mass_exp: np.ndarray
    nehari: np.ndarray
    u2_mass: np.ndarray
    boundary_radius: float
    du_at_boundary: float
    config: IntegratorConfig
    _steps: tuple = ()
    _taylor: tuple = (0.0, 0.0, 0.0)   # (c2, c4, r0) in internal coords
    _scale: float = 1.0                # physical r = _scale * internal r
    _internal_lam: float = 1.0

    @property
    def Lambda(self) -> float:
        """Dirichlet energy ||grad u||^2 at the boundary."""
        return float(self.dirichlet[-1])

    def energy(self) -> float:
        """Functional value I_lam; the shifted variant subtracts its
        quadratic term lam_shift ||u||^2 from the gradient part."""
        lam_s = self.problem.lambda_shift
        quad = self.Lambda - lam_s * float(self.u2_mass[-1])
        return 0.5 * quad - 0.5 * self.lam * float(self.mass_exp[-1])

    def _transform(self, y_int: tuple) -> tuple:
        s = self._scale
        if s == 1.0:
            return y_int
        s2 = s * s
        return (y_int[0], y_int[1] / s, y_int[2], y_int[3] * s2,
                y_int[4] * s2, y_int[5] * s2)

    def evaluate_dense(self, r: float) -> tuple[float, float, tuple]:
        """(u, u', (dirichlet, mass_exp, nehari, u2_mass)) at radius r."""
        if r < 0.0 or r > self.boundary_radius * (1.0 + 1e-12):
            raise ValueError(f"r={r} outside [0, {self.boundary_radius}]")
        idx = np.searchsorted(self.grid, r)
        if idx < len(self.grid) and self.grid[idx] == r:
            i = int(idx)
            return (float(self.u_values[i]), float(self.du_values[i]),
                    (float(self.dirichlet[i]), float(self.mass_exp[i]),
                     float(self.nehari[i]), float(self.u2_mass[i])))
        ri = r / self._scale
        c2, c4, r0 = self._taylor
        if ri <= r0 or not self._steps:
            r2 = ri * ri
            u = self.alpha + c2 * r2 + c4 * r2 * r2
            v = 2.0 * c2 * ri + 4.0 * c4 * ri * r2
            y = (u, v) + _taylor_accumulators(self.problem, self.alpha, c2, ri)
            y = self._transform(y)
            return y[0], y[1], y[2:]
        starts = self._step_starts
        j = min(max(bisect_right(starts, ri) - 1, 0), len(self._steps) - 1)
        rs, h, y0, D = self._steps[j]
        theta = min(max((ri - rs) / h, 0.0), 1.0)
        y = self._transform(_dense_eval(y0, D, theta))
        return y[0], y[1], y[2:]

    @property
    def _step_starts(self):
        starts = getattr(self, "_starts_cache", None)
        if starts is None:
            starts = [s[0] for s in self._steps]
            object.__setattr__(self, "_starts_cache", starts)
        return starts

    def rescaled(self, factor: float) -> "RadialSolution":
        """Same profile on a domain stretched by ``factor`` (r -> factor r),
        lambda divided by factor^2.  Only meaningful for unweighted
        scale-covariant problems; used by the Euclidean shooting route."""
        s = factor
        s2 = s * s
        return replace(
            self,
            lam=self.lam / s2,
            grid=self.grid * s,
            du_values=self.du_values / s,
            mass_exp=self.mass_exp * s2,
            nehari=self.nehari * s2,
            u2_mass=self.u2_mass * s2,
            boundary_radius=self.boundary_radius * s,
            du_at_boundary=self.du_at_boundary / s,
            _scale=self._scale * s)


def _build_solution(problem, lam, alpha, config, r0, taylor, steps, rho,
                    y_rho) -> RadialSolution:
    origin = (alpha, 0.0, 0.0, 0.0, 0.0, 0.0)
    node_states = [origin] + [s[2] for s in steps] + [y_rho]
    rs = [0.0] + [s[0] for s in steps] + [rho]
    grid = np.asarray(rs)
    arrays = [np.asarray([st[i] for st in node_states])
              for i in range(_NSTATE)]
    c2, c4 = taylor
    return RadialSolution(
        problem=problem, lam=lam, alpha=alpha, grid=grid,
        u_values=arrays[0], du_values=arrays[1], dirichlet=arrays[2],
        mass_exp=arrays[3], nehari=arrays[4], u2_mass=arrays[5],
        boundary_radius=float(rho), du_at_boundary=float(y_rho[1]),
        config=config, _steps=tuple(steps), _taylor=(c2, c4, r0),
        _scale=1.0, _internal_lam=lam)


def integrate_ivp(problem: ProblemSpec, lam: float, alpha: float,
                  config: IntegratorConfig = DEFAULT_CONFIG) -> RadialSolution:
    """Integrate the IVP up to the first zero of u, with dense output.

    Raises NoZeroError if u stays positive through max_radius (the problem's
    boundary radius for hyperbolic geometry), StepLimitError on budget
    exhaustion, AlphaRangeError outside the floating-safe alpha cap.
    """
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    if lam <= 0.0:
        raise ValueError("lambda must be positive")
    if alpha > config.alpha_cap:
        raise AlphaRangeError(
            f"alpha={alpha} exceeds cap {config.alpha_cap}; raise "
            f"IntegratorConfig.alpha_cap explicitly to override")
    r_end = config.max_radius or _default_max_radius(problem, lam)
    rhs = _make_rhs(problem, lam)
    r0, taylor, y0 = _startup_state(problem, lam, alpha, config, r_end)
    status, r_term, y_term, steps = _core_integrate(rhs, r0, y0, r_end,
                                                    config, record=True)
    if status == "end":
        raise NoZeroError(
            f"u still positive at r={r_term} (u={y_term[0]:.3e}); lambda "
            f"too small for the truncation radius", r_term, y_term)
    return _build_solution(problem, lam, alpha, config, r0, taylor, steps,
                           r_term, y_term)


def integrate_to_radius(problem: ProblemSpec, lam: float, alpha: float,
                        r_end: float,
                        config: IntegratorConfig = DEFAULT_CONFIG):
    """Shooting helper: integrate to r_end or the first zero, whichever
    comes first.  Returns ('zero', rho, y) or ('end', r_end, y_end); no
    dense recording."""
    if alpha > config.alpha_cap:
        raise AlphaRangeError(
            f"alpha={alpha} exceeds cap {config.alpha_cap}")
    rhs = _make_rhs(problem, lam)
    r0, _, y0 = _startup_state(problem, lam, alpha, config, r_end)
    status, r_term, y_term, _ = _core_integrate(rhs, r0, y0, r_end, config,
                                                record=False)
    return status, r_term, y_term


def evaluate_dense(solution: RadialSolution, r: float):
    """Module-level alias for RadialSolution.evaluate_dense."""
    return solution.evaluate_dense(r)


# ----------------------------------------------------------------------
# residual diagnostics

def _simpson_forcing(solution: RadialSolution, r_lo: float, r_hi: float,
                     panels: int = 8) -> float:
    """int_{r_lo}^{r_hi} s w(s) forcing(u(s)) ds by composite Simpson on
    dense output."""
    problem, lam = solution.problem, solution.lam
    n = 2 * panels
    h = (r_hi - r_lo) / n
    total = 0.0
    for i in range(n + 1):
        r = r_lo + i * h
        u = solution.evaluate_dense(r)[0]
        val = r * problem.weight(r) * problem.forcing(lam, u)
        wgt = 1.0 if i in (0, n) else (4.0 if i % 2 else 2.0)
        total += wgt * val
    return total * h / 3.0


def defining_residual(solution: RadialSolution,
                      tolerance_factor: float = 100.0) -> ResidualReport:
    """Mean residual of -(r u')' = r w forcing(u) over each accepted step.

    The exact solution satisfies Delta(r u') + int s w G(u) ds = 0 across
    any interval; the per-step mean of that defect, normalised by
    (lam r w |f| + 1) at the step midpoint, is the computable shadow of the
    pointwise residual at the step midpoint.  Budget: tolerance_factor *
    rel_tol.
    """
    prob, lam = solution.problem, solution.lam
    grid = solution.grid
    radii, absres, relres = [], [], []
    budget = tolerance_factor * solution.config.rel_tol
    for i in range(1, len(grid) - 1):
        r_lo, r_hi = float(grid[i]), float(grid[i + 1])
        h = r_hi - r_lo
        if h <= 4e-16 * r_hi:
            continue
        flux = (r_hi * float(solution.du_values[i + 1])
                - r_lo * float(solution.du_values[i]))
        integral = _simpson_forcing(solution, r_lo, r_hi)
        mean_res = abs(flux + integral) / h
        rm = 0.5 * (r_lo + r_hi)
        um = solution.evaluate_dense(rm)[0]
        scale = abs(rm * prob.weight(rm) * prob.forcing(lam, um)) + 1.0
        radii.append(rm)
        absres.append(mean_res)
        relres.append(mean_res / scale)
    return ResidualReport(identity="defining-equation",
                          radii=np.asarray(radii),
                          absolute=np.asarray(absres),
                          relative=np.asarray(relres),
                          tolerance=budget)


def dirichlet_quadrature(solution: RadialSolution, panels: int = 6) -> float:
    """Post-hoc composite-Simpson recomputation of the Dirichlet
    accumulator on the dense grid (cross-check of the augmented ODE)."""
    grid = solution.grid
    total = float(solution.dirichlet[1])  # series value at the startup node
    for i in range(1, len(grid) - 1):
        r_lo, r_hi = float(grid[i]), float(grid[i + 1])
        n = 2 * panels
        h = (r_hi - r_lo) / n
        if h <= 0.0:
            continue
        acc = 0.0
        for j in range(n + 1):
            r = r_lo + j * h
            v = solution.evaluate_dense(r)[1]
            wgt = 1.0 if j in (0, n) else (4.0 if j % 2 else 2.0)
            acc += wgt * v * v * r
        total += TWO_PI * acc * h / 3.0
    return total
