"""Problem geometries, nonlinearity variants and shared domain types.

Every problem is stored post-reduction as a weighted radial ODE on a
Euclidean interval [0, R]:

    -(r u')' = r w(r) * forcing(u),    u'(0) = 0,  u(R) = 0,  u > 0 on (0, R).

A geodesic ball of radius ``R`` in the hyperbolic plane reduces conformally
to the Euclidean disc of radius ``Rt = (e^R - 1)/(e^R + 1)`` with weight
``w(r) = (2/(1 - r^2))^2``; the Euclidean disc has ``w == 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

TWO_PI = 2.0 * math.pi
FOUR_PI = 4.0 * math.pi

# Variant tags for the nonlinearity f in -(ru')' = r w (lam f(u) + ...).
STANDARD = "standard"     # f(u) = u e^{u^2}
PERTURBED = "perturbed"   # f(u) = u (e^{u^2} - 1)
SHIFTED = "shifted"       # operator -Delta - lam_shift, forcing theta u e^{u^2}

EUCLIDEAN = "euclidean"
HYPERBOLIC = "hyperbolic"


class DomainError(ValueError):
    """Invalid problem data (geometry, radii, variant parameters)."""


class UnsupportedIdentity(ValueError):
    """An identity was requested for a problem variant it is not derived for."""


@dataclass(frozen=True)
class ProblemSpec:
    """One radial boundary value problem: geometry plus nonlinearity variant.

    ``boundary_radius`` is the endpoint of the reduced Euclidean interval:
    the disc radius itself for Euclidean problems, the conformal radius
    ``Rt`` for hyperbolic balls (``geodesic_radius`` keeps the original R).
    Instances are immutable and safe to share between threads.
    """

    geometry: str = EUCLIDEAN
    radius: float = 1.0
    nonlinearity: str = STANDARD
    lambda_shift: float = 0.0
    geodesic_radius: Optional[float] = None

    @property
    def boundary_radius(self) -> float:
        return self.radius

    @property
    def weighted(self) -> bool:
        return self.geometry == HYPERBOLIC

    def weight(self, r: float) -> float:
        """Conformal weight w(r); 1 on Euclidean discs, (2/(1-r^2))^2 on
        hyperbolic balls.  Lenient upper bound: the Euclidean weight exists
        for every r >= 0 (internal lambda=1 trajectories overrun the
        nominal radius before rescaling); the hyperbolic one only needs
        r < 1.  The module-level ``weight`` wrapper enforces the strict
        0 <= r <= boundary_radius contract."""
        if r < 0.0:
            raise DomainError(f"negative radius {r}")
        if self.geometry == EUCLIDEAN:
            return 1.0
        if r >= 1.0:
            raise DomainError(f"radius {r} outside the conformal disc")
        q = 1.0 - r * r
        return 4.0 / (q * q)

    def weight_series(self) -> tuple[float, float]:
        """Leading even Taylor coefficients (w0, w2) of w at r = 0."""
        if self.geometry == EUCLIDEAN:
            return 1.0, 0.0
        return 4.0, 8.0

    # -- nonlinearity pieces -------------------------------------------------
    #
    # forcing(u)   : right-hand side of -(ru')' = r w * forcing(u), with the
    #                branch parameter lam multiplying f(u); the Shifted
    #                variant keeps its -lam_shift u on the operator side,
    #                which lands here as + lam_shift * u.
    # potential(u) : F with F(0)=0, F'(u) = 2 u-part of f; the mass density.
    # nehari_density(u): u f(u), the Nehari-identity integrand.

    def f(self, u: float) -> float:
        e = math.exp(u * u)
        if self.nonlinearity == PERTURBED:
            return u * (e - 1.0)
        return u * e

    def df(self, u: float) -> float:
        e = math.exp(u * u)
        if self.nonlinearity == PERTURBED:
            return (e - 1.0) + 2.0 * u * u * e
        return e * (1.0 + 2.0 * u * u)

    def forcing(self, lam: float, u: float) -> float:
        if self.nonlinearity == SHIFTED:
            return lam * self.f(u) + self.lambda_shift * u
        return lam * self.f(u)

    def dforcing(self, lam: float, u: float) -> float:
        if self.nonlinearity == SHIFTED:
            return lam * self.df(u) + self.lambda_shift
        return lam * self.df(u)

    def potential(self, u: float) -> float:
        e = math.expm1(u * u)
        if self.nonlinearity == PERTURBED:
            return e - u * u
        return e

    def nehari_density(self, u: float) -> float:
        if self.nonlinearity == PERTURBED:
            return u * u * math.expm1(u * u)
        return u * u * math.exp(u * u)

    def describe(self) -> dict:
        d = {"geometry": self.geometry, "nonlinearity": self.nonlinearity,
             "boundary_radius": self.boundary_radius}
        if self.geometry == HYPERBOLIC:
            d["geodesic_radius"] = self.geodesic_radius
        if self.nonlinearity == SHIFTED:
            d["lambda_shift"] = self.lambda_shift
        return d


def conformal_radius(geodesic_radius: float) -> float:
    """Euclidean radius of the conformal image of a hyperbolic ball:
    Rt = (e^R - 1)/(e^R + 1) = tanh(R/2)."""
    return math.tanh(0.5 * geodesic_radius)


def make_problem(geometry: str = EUCLIDEAN, radius: float = 1.0,
                 nonlinearity: str = STANDARD,
                 lambda_shift: float = 0.0) -> ProblemSpec:
    """Validate and build a ProblemSpec.

    ``radius`` is the disc radius for Euclidean geometry and the geodesic
    radius R for hyperbolic geometry (the spec then carries the computed
    conformal radius as its boundary_radius).

    Admissibility of ``lambda_shift`` against the first eigenvalue cannot be
    decided here; the shooting layer rejects lambda_shift >= mu_1 once the
    eigenvalue is available.
    """
    if geometry not in (EUCLIDEAN, HYPERBOLIC):
        raise DomainError(f"unknown geometry {geometry!r}")
    if nonlinearity not in (STANDARD, PERTURBED, SHIFTED):
        raise DomainError(f"unknown nonlinearity {nonlinearity!r}")
    if not (radius > 0.0) or not math.isfinite(radius):
        raise DomainError("radius must be positive and finite")
    if lambda_shift < 0.0:
        raise DomainError("lambda_shift must be >= 0")
    if lambda_shift and nonlinearity != SHIFTED:
        raise DomainError("lambda_shift only applies to the shifted variant")
    if geometry == HYPERBOLIC:
        return ProblemSpec(geometry=geometry, radius=conformal_radius(radius),
                           nonlinearity=nonlinearity, lambda_shift=lambda_shift,
                           geodesic_radius=radius)
    return ProblemSpec(geometry=geometry, radius=radius,
                       nonlinearity=nonlinearity, lambda_shift=lambda_shift)


def weight(problem: ProblemSpec, r: float) -> float:
    """Conformal weight at radius r, restricted to the problem domain
    0 <= r <= boundary_radius."""
    if r < 0.0 or r > problem.boundary_radius * (1.0 + 1e-12):
        raise DomainError(
            f"radius {r} outside [0, {problem.boundary_radius}]")
    return problem.weight(r)


@dataclass(frozen=True)
class ResidualReport:
    """Quantified violation of one integral identity on one solution."""

    identity: str
    radii: np.ndarray
    absolute: np.ndarray
    relative: np.ndarray
    tolerance: float

    @property
    def max_relative(self) -> float:
        return float(np.max(self.relative)) if self.relative.size else 0.0

    @property
    def passed(self) -> bool:
        return self.max_relative <= self.tolerance

    def __str__(self) -> str:
        state = "pass" if self.passed else "FAIL"
        return (f"{self.identity}: max rel residual {self.max_relative:.3e} "
                f"(tol {self.tolerance:.1e}) [{state}]")


@dataclass(frozen=True)
class BranchPoint:
    """One point of the solution branch alpha -> (lambda, Lambda, ...).

    ``Lambda`` is the Dirichlet energy ||grad u||^2 (conformally invariant,
    no weight in the integrand); ``energy`` is the functional value
    I_lam(u) = Lambda/2 - (lam/2) * mass  with the variant's own quadratic
    part subtracted for the shifted problem.  ``res_pohozaev`` is NaN for
    problems the radial-multiplier identity is not derived for.
    """

    alpha: float
    lam: float
    Lambda: float
    energy: float
    du_at_boundary: float
    res_pohozaev: float
    res_nehari: float
    residual_summary: float

    @property
    def sup_u(self) -> float:
        return self.alpha
