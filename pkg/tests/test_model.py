import math

import numpy as np
import pytest

import moserbranch as mb
from moserbranch.model import DomainError


def test_hyperbolic_conformal_radius():
    prob = mb.make_problem("hyperbolic", 1.0)
    expected = (math.e - 1.0) / (math.e + 1.0)
    assert prob.boundary_radius == pytest.approx(expected, abs=1e-15)
    assert prob.boundary_radius == pytest.approx(0.46212, abs=5e-6)
    assert prob.geodesic_radius == 1.0


def test_euclidean_weight_is_one():
    prob = mb.make_problem()
    for r in (0.0, 0.3, 0.5, 1.0):
        assert mb.weight(prob, r) == 1.0


def test_hyperbolic_weight_values():
    prob = mb.make_problem("hyperbolic", 1.0)
    assert mb.weight(prob, 0.0) == 4.0
    rt = prob.boundary_radius
    expected = (2.0 / (1.0 - rt * rt)) ** 2
    assert mb.weight(prob, rt) == pytest.approx(expected, rel=1e-15)
    # finite and >= 4 throughout the domain
    rs = np.linspace(0.0, rt, 50)
    ws = [mb.weight(prob, float(r)) for r in rs]
    assert all(4.0 <= w < 7.0 for w in ws)


def test_weight_domain_errors():
    prob = mb.make_problem("hyperbolic", 1.0)
    with pytest.raises(DomainError):
        mb.weight(prob, -0.1)
    with pytest.raises(DomainError):
        mb.weight(prob, prob.boundary_radius + 0.01)
    with pytest.raises(DomainError):
        mb.weight(mb.make_problem(), 1.5)


def test_make_problem_validation():
    with pytest.raises(DomainError):
        mb.make_problem(radius=0.0)
    with pytest.raises(DomainError):
        mb.make_problem("hyperbolic", -1.0)
    with pytest.raises(DomainError):
        mb.make_problem("hyperbolic", math.inf)
    with pytest.raises(DomainError):
        mb.make_problem(geometry="spherical")
    with pytest.raises(DomainError):
        mb.make_problem(nonlinearity="cubic")
    with pytest.raises(DomainError):
        mb.make_problem(nonlinearity="shifted", lambda_shift=-1.0)
    with pytest.raises(DomainError):
        mb.make_problem(nonlinearity="standard", lambda_shift=1.0)


def test_problem_immutable_and_hashable():
    prob = mb.make_problem()
    with pytest.raises(Exception):
        prob.radius = 2.0
    assert hash(prob) == hash(mb.make_problem())


@pytest.mark.parametrize("alpha", [1e-3, 0.01, 0.05, 0.1])
def test_variant_consistency_small_u(alpha):
    # f_std(a) - f_pert(a) - a vanishes identically; the bound
    # a^3 e^{a^2} dominates any rounding noise
    std = mb.make_problem()
    pert = mb.make_problem(nonlinearity="perturbed")
    gap = abs(std.f(alpha) - pert.f(alpha) - alpha)
    assert gap <= alpha ** 3 * math.exp(alpha * alpha)


def test_nonlinearity_pieces():
    prob = mb.make_problem()
    assert prob.f(1.0) == pytest.approx(math.e, rel=1e-15)
    assert prob.potential(1.0) == pytest.approx(math.e - 1.0, rel=1e-14)
    assert prob.nehari_density(1.0) == pytest.approx(math.e, rel=1e-15)
    pert = mb.make_problem(nonlinearity="perturbed")
    assert pert.f(1.0) == pytest.approx(math.e - 1.0, rel=1e-14)
    assert pert.potential(1.0) == pytest.approx(math.e - 2.0, rel=1e-13)
    shf = mb.make_problem(nonlinearity="shifted", lambda_shift=0.5)
    # the shift rides on the operator side: forcing = lam f + lam_shift u
    assert shf.forcing(2.0, 1.0) == pytest.approx(2 * math.e + 0.5, rel=1e-14)


def test_dirichlet_accumulator_is_unweighted(hyper_problem):
    # conformal invariance: recomputing the dirichlet integral from dense
    # output without any weight reproduces the accumulator, while the
    # weighted mass accumulator strictly exceeds its unweighted analogue
    lam, sol = mb.lambda_of_alpha(hyper_problem, 1.0)
    posthoc = mb.dirichlet_quadrature(sol)
    assert abs(posthoc - sol.Lambda) <= 1e-8 * sol.Lambda

    from oracle_tools import simpson

    def unweighted_mass(r):
        u = sol.evaluate_dense(r)[0]
        return 2.0 * math.pi * r * math.expm1(u * u)

    unweighted = simpson(unweighted_mass, 1e-9, sol.boundary_radius, 400)
    weighted = float(sol.mass_exp[-1])
    assert weighted > 4.0 * unweighted * 0.999  # w >= 4 everywhere
