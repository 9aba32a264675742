"""Branch tracing, quantization limits, gamma* and critical-point counting.

The branch is parameterised by alpha = u(0), along which it is
single-valued; lambda- and energy-level queries (multiplicity counting)
read the table.  Grid points are independent computations keyed by grid
index, so a parallel map merges order-independently and reproduces the
serial result bit for bit.
"""

from __future__ import annotations

import hashlib
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import identities
from .eigen import first_eigenvalue_cached
from .integrate import DEFAULT_CONFIG, IntegratorConfig, RadialSolution
from .model import (EUCLIDEAN, FOUR_PI, PERTURBED, STANDARD, TWO_PI,
                    BranchPoint, ProblemSpec, make_problem)
from .shoot import lambda_of_alpha

TOL_ENERGY_BAND = 1e-9


class GridRangeError(RuntimeError):
    """The requested feature sits at (or beyond) the grid edge; the grid
    must be extended."""


class AmbiguousCountError(RuntimeError):
    """gamma lies within grid resolution of gamma*; the crossing count is
    not decidable at this table's resolution."""


class EnergyBoundViolation(RuntimeError):
    """A branch energy bound that should hold analytically was violated."""


class BranchResidualError(RuntimeError):
    """A branch point failed its identity-residual budget."""


@dataclass(frozen=True)
class BranchTable:
    """Solution branch on an increasing alpha grid."""

    problem: ProblemSpec
    points: tuple            # BranchPoint, ordered by alpha
    grid_descriptor: dict
    config: IntegratorConfig
    residual_tol: float
    provenance: str

    @property
    def alphas(self) -> np.ndarray:
        return np.array([p.alpha for p in self.points])

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([p.lam for p in self.points])

    @property
    def Lambdas(self) -> np.ndarray:
        return np.array([p.Lambda for p in self.points])

    @property
    def energies(self) -> np.ndarray:
        return np.array([p.energy for p in self.points])

    def validate(self) -> None:
        """Per-point invariants: residual budget, positive Dirichlet
        energy, energy inside (0, 2 pi (1 + tol)), lambda below the linear
        ceiling where one exists."""
        ceiling = None
        if self.problem.nonlinearity != PERTURBED:
            mu1 = first_eigenvalue_cached(self.problem)
            ceiling = mu1 - self.problem.lambda_shift
        bound = TWO_PI * (1.0 + TOL_ENERGY_BAND)
        for p in self.points:
            if p.residual_summary > self.residual_tol:
                raise BranchResidualError(
                    f"alpha={p.alpha}: residual {p.residual_summary:.3e} "
                    f"> {self.residual_tol:.1e}")
            if not (p.Lambda > 0.0 and p.lam > 0.0):
                raise BranchResidualError(
                    f"alpha={p.alpha}: nonpositive Lambda or lambda")
            if not (0.0 < p.energy < bound):
                raise BranchResidualError(
                    f"alpha={p.alpha}: energy {p.energy} outside "
                    f"(0, 2pi(1+{TOL_ENERGY_BAND}))")
            if ceiling is not None and p.lam >= ceiling:
                raise BranchResidualError(
                    f"alpha={p.alpha}: lambda {p.lam} above ceiling")

    def lambda_monotonicity(self) -> tuple[bool, float]:
        """(strictly decreasing?, minimum adjacent gap)."""
        lams = self.lambdas
        gaps = lams[:-1] - lams[1:]
        return bool(np.all(gaps > 0.0)), float(np.min(gaps))


def _point_from_solution(lam: float, sol: RadialSolution,
                         identity_tol: float) -> BranchPoint:
    neh = identities.nehari_residual(sol, identity_tol).max_relative
    p = sol.problem
    poh = float("nan")
    summary = neh
    if p.geometry == EUCLIDEAN and p.nonlinearity == STANDARD:
        poh = identities.pohozaev_residual(
            sol, tolerance=identity_tol).max_relative
        summary = max(summary, poh)
    return BranchPoint(alpha=sol.alpha, lam=lam, Lambda=sol.Lambda,
                       energy=sol.energy(),
                       du_at_boundary=sol.du_at_boundary,
                       res_pohozaev=poh, res_nehari=neh,
                       residual_summary=summary)


def solve_point(problem: ProblemSpec, alpha: float,
                config: IntegratorConfig = DEFAULT_CONFIG,
                lam_hint: Optional[float] = None,
                identity_tol: float = 1e-8
                ) -> tuple[BranchPoint, RadialSolution]:
    lam, sol = lambda_of_alpha(problem, alpha, config, lam_hint)
    return _point_from_solution(lam, sol, identity_tol), sol


def _worker(args):
    idx, problem, alpha, config, hint, identity_tol = args
    point, _ = solve_point(problem, alpha, config, hint, identity_tol)
    return idx, point


def _needs_hints(problem: ProblemSpec) -> bool:
    return not (problem.geometry == EUCLIDEAN
                and problem.nonlinearity == STANDARD)


def _hint_curve(problem: ProblemSpec, alphas: np.ndarray,
                config: IntegratorConfig) -> list:
    """Coarse serial pre-pass: chained-warm-start lambda(alpha) samples,
    interpolated in log-log onto the full grid.  Keeps every main grid
    point independent of its neighbours (deterministic parallel map)."""
    if not _needs_hints(problem):
        return [None] * len(alphas)
    n_coarse = min(17, len(alphas))
    coarse_a = np.geomspace(alphas[0], alphas[-1], n_coarse)
    hints = []
    prev = None
    for a in coarse_a:
        lam, _ = lambda_of_alpha(problem, float(a), config, prev)
        hints.append(lam)
        prev = lam
    log_l = np.interp(np.log(alphas), np.log(coarse_a), np.log(hints))
    return [float(x) for x in np.exp(log_l)]


def default_alpha_grid(alpha_min: float = 0.05, alpha_max: float = 6.0,
                       points: int = 200) -> np.ndarray:
    """Log-spaced alpha grid resolving both the small-alpha foot and the
    quantization tail."""
    return np.geomspace(alpha_min, alpha_max, points)


def trace_branch(problem: ProblemSpec,
                 alpha_grid: Optional[Sequence[float]] = None,
                 config: IntegratorConfig = DEFAULT_CONFIG,
                 workers: Optional[int] = None,
                 residual_tol: float = 1e-8) -> BranchTable:
    """One BranchPoint per grid alpha via lambda_of_alpha; deterministic
    and independent of evaluation order.  Solver errors propagate annotated
    with the grid index."""
    if alpha_grid is None:
        alpha_grid = default_alpha_grid()
    alphas = np.asarray([float(a) for a in alpha_grid])
    if len(alphas) < 1 or np.any(np.diff(alphas) <= 0.0):
        raise ValueError("alpha grid must be strictly increasing")
    hints = _hint_curve(problem, alphas, config)
    jobs = [(i, problem, float(a), config, hints[i], residual_tol)
            for i, a in enumerate(alphas)]
    results: list = [None] * len(jobs)
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for idx, point in pool.map(_worker, jobs, chunksize=4):
                results[idx] = point
    else:
        for job in jobs:
            try:
                idx, point = _worker(job)
            except Exception as exc:
                raise type(exc)(
                    f"grid index {job[0]} (alpha={job[2]}): {exc}") from exc
            results[idx] = point
    descriptor = {"alpha_min": float(alphas[0]),
                  "alpha_max": float(alphas[-1]),
                  "points": len(alphas), "spacing": "log"}
    return BranchTable(problem=problem, points=tuple(results),
                       grid_descriptor=descriptor, config=config,
                       residual_tol=residual_tol,
                       provenance=_provenance(problem, config, descriptor))


def _provenance(problem, config, descriptor) -> str:
    from . import __version__
    payload = f"{__version__}|{problem!r}|{config!r}|{descriptor!r}"
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


# ----------------------------------------------------------------------
# gamma* and critical-point counting

def _parabola_vertex(x: np.ndarray, y: np.ndarray
                     ) -> Optional[tuple[float, float]]:
    """Vertex of the quadratic through three points (Newton form); None if
    the fit is not concave."""
    d1 = (y[1] - y[0]) / (x[1] - x[0])
    d2 = (y[2] - y[1]) / (x[2] - x[1])
    c = (d2 - d1) / (x[2] - x[0])
    if c >= 0.0:
        return None
    xs = 0.5 * (x[0] + x[1]) - d1 / (2.0 * c)
    ys = y[0] + d1 * (xs - x[0]) + c * (xs - x[0]) * (xs - x[1])
    return xs, ys


def gamma_star(table: BranchTable) -> tuple[float, float]:
    """sup of the Dirichlet energy along the branch, refined by a local
    quadratic fit over the three points around the discrete argmax.
    Returns (gamma_star, alpha_at_max); the maximum must be interior."""
    L = table.Lambdas
    a = table.alphas
    i = int(np.argmax(L))
    if i == 0 or i == len(L) - 1:
        raise GridRangeError(
            f"Lambda maximum at grid endpoint alpha={a[i]}; extend the grid")
    fit = _parabola_vertex(a[i - 1:i + 2], L[i - 1:i + 2])
    if fit is None:
        return float(L[i]), float(a[i])
    xs, ys = fit
    return float(ys), float(xs)


def _grid_resolution_at_peak(table: BranchTable, gs: float) -> float:
    L = table.Lambdas
    i = int(np.argmax(L))
    lo = max(i - 1, 0)
    hi = min(i + 1, len(L) - 1)
    return max(abs(gs - L[lo]), abs(gs - L[hi]))


def count_critical_points(table: BranchTable, gamma: float,
                          refine: bool = True
                          ) -> tuple[int, list[tuple[float, float]]]:
    """Number of branch crossings of the Dirichlet-energy level gamma, with
    each crossing refined by bisection (fresh solves between the
    bracketing grid points).  Counts all sign changes rather than assuming
    a single fold."""
    if gamma <= 0.0:
        raise ValueError("gamma must be positive")
    L = table.Lambdas
    a = table.alphas
    lam = table.lambdas
    try:
        gs, _ = gamma_star(table)
        if abs(gamma - gs) <= _grid_resolution_at_peak(table, gs):
            raise AmbiguousCountError(
                f"gamma={gamma} within grid resolution of gamma*={gs}; "
                f"refine the table")
    except GridRangeError:
        pass

    s = L - gamma
    crossings = []
    i = 0
    n = len(s)
    while i < n:
        if s[i] == 0.0:
            crossings.append((float(a[i]), float(lam[i])))
            i += 1
            continue
        if i + 1 < n and s[i] * s[i + 1] < 0.0:
            if refine:
                crossings.append(_refine_crossing(table, gamma, i))
            else:
                f = s[i] / (s[i] - s[i + 1])
                crossings.append((float(a[i] + f * (a[i + 1] - a[i])),
                                  float(lam[i] + f * (lam[i + 1] - lam[i]))))
        i += 1
    return len(crossings), crossings


def _refine_crossing(table: BranchTable, gamma: float, i: int
                     ) -> tuple[float, float]:
    """Bisection on alpha between grid neighbours i, i+1 for
    Lambda(alpha) = gamma, using fresh solves."""
    problem, config = table.problem, table.config
    a_lo, a_hi = float(table.alphas[i]), float(table.alphas[i + 1])
    s_lo = float(table.Lambdas[i]) - gamma
    lam_lo, lam_hi = float(table.lambdas[i]), float(table.lambdas[i + 1])
    lam_mid, val_mid = lam_lo, None
    for _ in range(30):
        mid = 0.5 * (a_lo + a_hi)
        hint = math.sqrt(lam_lo * lam_hi)
        lam_mid, sol = lambda_of_alpha(problem, mid, config, hint)
        val_mid = sol.Lambda - gamma
        if val_mid == 0.0:
            return mid, lam_mid
        if (val_mid > 0.0) == (s_lo > 0.0):
            a_lo, lam_lo = mid, lam_mid
        else:
            a_hi, lam_hi = mid, lam_mid
        if (a_hi - a_lo) <= 1e-7 * a_hi:
            break
    return 0.5 * (a_lo + a_hi), lam_mid


# ----------------------------------------------------------------------
# quantization tail

@dataclass(frozen=True)
class QuantizationRow:
    alpha: float
    lam: float
    Lambda: float
    energy: float
    half_energy_radius: float


@dataclass(frozen=True)
class RichardsonFit:
    """Three-point extrapolation under the geometric tail model
    value(alpha) = limit + C * q^alpha (the tail's adjacent differences
    decay at a near-constant ratio, so a power law in alpha is the wrong
    model and the geometric one is used)."""

    limit: float
    decay_per_unit_alpha: float
    used_alphas: tuple


@dataclass(frozen=True)
class QuantizationReport:
    problem: ProblemSpec
    rows: tuple
    lambda_decreasing: bool
    gap_to_4pi_decreasing: bool
    half_radius_decreasing: bool
    energy_increasing: bool
    energy_below_2pi: bool
    richardson: Optional[RichardsonFit]

    @property
    def monotone_ok(self) -> bool:
        return (self.lambda_decreasing and self.gap_to_4pi_decreasing
                and self.half_radius_decreasing and self.energy_increasing)


def half_energy_radius(sol: RadialSolution) -> float:
    """Radius where the Dirichlet accumulator reaches half its final value
    (concentration diagnostic)."""
    target = 0.5 * sol.Lambda
    lo, hi = 0.0, sol.boundary_radius
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if sol.evaluate_dense(mid)[2][0] < target:
            lo = mid
        else:
            hi = mid
        if (hi - lo) <= 1e-12 * sol.boundary_radius:
            break
    return 0.5 * (lo + hi)


def richardson_limit(alphas: Sequence[float], values: Sequence[float]
                     ) -> Optional[RichardsonFit]:
    """Geometric-model extrapolation from the last three tail points.
    Returns None when the tail differences do not decay monotonically."""
    if len(alphas) < 3:
        return None
    a1, a2, a3 = (float(x) for x in alphas[-3:])
    v1, v2, v3 = (float(x) for x in values[-3:])
    d1, d2 = v1 - v2, v2 - v3
    if d1 == 0.0 or d2 == 0.0 or (d1 > 0) != (d2 > 0) or abs(d2) >= abs(d1):
        return None
    h1, h2 = a2 - a1, a3 - a2
    if abs(h1 - h2) <= 1e-12 * max(h1, h2):
        # with q^h = d2/d1 the limit collapses to the Aitken form
        limit = v3 - d2 * d2 / (d1 - d2)
    else:
        q = _solve_geometric_ratio(a1, a2, a3, d1 / d2)
        if q is None:
            return None
        c = d2 / (q ** a2 - q ** a3)
        limit = v3 - c * q ** a3
    return RichardsonFit(limit=limit, decay_per_unit_alpha=(d2 / d1) **
                         (1.0 / h2), used_alphas=(a1, a2, a3))


def _solve_geometric_ratio(a1, a2, a3, target) -> Optional[float]:
    """q in (0, 1) with (q^a1 - q^a2)/(q^a2 - q^a3) = target, bisection."""
    def f(q):
        return (q ** a1 - q ** a2) / (q ** a2 - q ** a3) - target
    lo, hi = 1e-9, 1.0 - 1e-9
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if flo * fhi > 0.0:
        return None
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def quantization_report(problem: ProblemSpec,
                        alpha_tail_grid: Sequence[float],
                        config: IntegratorConfig = DEFAULT_CONFIG
                        ) -> QuantizationReport:
    """Tail diagnostics: lambda(alpha), Dirichlet energy against 4 pi, the
    half-energy concentration radius and the functional energy against
    2 pi, plus a geometric Richardson extrapolation of the energy limit.

    Non-monotone flags are diagnostics carried in the report, not
    failures."""
    tail = [float(a) for a in alpha_tail_grid]
    if len(tail) < 2 or any(a < 3.0 for a in tail):
        raise ValueError("tail grid must hold at least two alphas >= 3")
    rows = []
    hint = None
    for a in tail:
        lam, sol = lambda_of_alpha(problem, a, config, hint)
        hint = lam
        rows.append(QuantizationRow(
            alpha=a, lam=lam, Lambda=sol.Lambda, energy=sol.energy(),
            half_energy_radius=half_energy_radius(sol)))
    lams = [r.lam for r in rows]
    gaps = [abs(r.Lambda - FOUR_PI) for r in rows]
    halves = [r.half_energy_radius for r in rows]
    energies = [r.energy for r in rows]
    fit = richardson_limit([r.alpha for r in rows], [r.Lambda for r in rows])
    return QuantizationReport(
        problem=problem, rows=tuple(rows),
        lambda_decreasing=all(x > y for x, y in zip(lams, lams[1:])),
        gap_to_4pi_decreasing=all(x > y for x, y in zip(gaps, gaps[1:])),
        half_radius_decreasing=all(x > y for x, y in zip(halves, halves[1:])),
        energy_increasing=all(x < y for x, y in zip(energies, energies[1:])),
        energy_below_2pi=all(e < TWO_PI for e in energies),
        richardson=fit)


def perturbed_energy_bound(alpha_grid: Optional[Sequence[float]] = None,
                           radius: float = 1.0,
                           config: IntegratorConfig = DEFAULT_CONFIG,
                           workers: Optional[int] = None
                           ) -> tuple[float, BranchTable]:
    """Trace the perturbed branch on the Euclidean disc and return its
    Dirichlet-energy supremum, which must stay below 8 pi."""
    problem = make_problem(EUCLIDEAN, radius, PERTURBED)
    if alpha_grid is None:
        alpha_grid = default_alpha_grid(points=60)
    table = trace_branch(problem, alpha_grid, config, workers=workers)
    max_lambda = float(np.max(table.Lambdas))
    if max_lambda >= 8.0 * math.pi:
        raise EnergyBoundViolation(
            f"perturbed branch energy {max_lambda} >= 8 pi")
    return max_lambda, table
