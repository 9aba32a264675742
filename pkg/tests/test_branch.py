import numpy as np
import pytest

import moserbranch as mb
from moserbranch.branch import (AmbiguousCountError, GridRangeError,
                                _grid_resolution_at_peak)
from oracle_values import (FOUR_PI, GAMMA_STAR_EUCLID_ORACLE,
                           GAMMA_STAR_HYPER_ORACLE, TWO_PI)


def test_trace_small_grid_deterministic():
    prob = mb.make_problem()
    grid = mb.default_alpha_grid(0.1, 3.0, 16)
    t1 = mb.trace_branch(prob, grid)
    t2 = mb.trace_branch(prob, grid)
    assert all(a.lam == b.lam and a.Lambda == b.Lambda
               for a, b in zip(t1.points, t2.points))
    t1.validate()
    mono, gap = t1.lambda_monotonicity()
    assert mono and gap > 0.0


def test_parallel_map_matches_serial():
    prob = mb.make_problem("hyperbolic", 1.0)
    grid = mb.default_alpha_grid(0.2, 2.5, 8)
    serial = mb.trace_branch(prob, grid)
    parallel = mb.trace_branch(prob, grid, workers=2)
    assert all(a.lam == b.lam and a.Lambda == b.Lambda
               and a.energy == b.energy
               for a, b in zip(serial.points, parallel.points))


def test_grid_validation_and_error_annotation():
    prob = mb.make_problem()
    with pytest.raises(ValueError):
        mb.trace_branch(prob, [0.5, 0.4])
    with pytest.raises(Exception, match="grid index"):
        mb.trace_branch(prob, [0.5, 9.0])


def test_lambda_strictly_decreasing_full(euclid_table):
    table, _ = euclid_table
    mono, gap = table.lambda_monotonicity()
    assert mono
    assert gap > 1e-10


def test_branch_limits(euclid_table):
    table, _ = euclid_table
    # Lambda -> 0 at the foot, lambda -> 0 along the tail
    assert table.points[0].Lambda < 0.05
    assert table.points[-1].lam < 0.05
    # quantization approach: |Lambda - 4pi| smaller at 6 than at 5
    idx5 = int(np.argmin(np.abs(table.alphas - 5.0)))
    gap5 = abs(table.points[idx5].Lambda - FOUR_PI)
    gap6 = abs(table.points[-1].Lambda - FOUR_PI)
    assert gap6 < gap5


def test_gamma_star_euclid(euclid_table):
    table, _ = euclid_table
    gs, alpha_at = mb.gamma_star(table)
    assert gs > FOUR_PI
    assert 3.0 < alpha_at < 5.0
    assert abs(gs - GAMMA_STAR_EUCLID_ORACLE) <= 1e-5 * gs


def test_gamma_star_hyper_oracle(hyper_table):
    gs, alpha_at = mb.gamma_star(hyper_table)
    assert gs > FOUR_PI
    assert abs(gs - GAMMA_STAR_HYPER_ORACLE) <= 1e-5 * gs


def test_gamma_star_endpoint_rejection():
    prob = mb.make_problem()
    table = mb.trace_branch(prob, mb.default_alpha_grid(0.05, 2.0, 12))
    with pytest.raises(GridRangeError):
        mb.gamma_star(table)


def test_count_self_consistency(euclid_table):
    table, _ = euclid_table
    # gamma equal to a tabulated Lambda: that alpha appears among crossings
    i = 30
    gamma = float(table.points[i].Lambda)
    count, crossings = mb.count_critical_points(table, gamma, refine=False)
    assert any(abs(a - table.points[i].alpha) <= 1e-12
               for a, _ in crossings)


def test_count_ambiguous_near_gamma_star(hyper_table):
    gs, _ = mb.gamma_star(hyper_table)
    res = _grid_resolution_at_peak(hyper_table, gs)
    with pytest.raises(AmbiguousCountError):
        mb.count_critical_points(hyper_table, gs - 0.25 * res)


def test_count_validation(hyper_table):
    with pytest.raises(ValueError):
        mb.count_critical_points(hyper_table, -1.0)


def test_richardson_exact_geometric():
    q, L, C = 0.37, 5.0, 2.5
    alphas = [4.0, 5.0, 6.0]
    vals = [L + C * q ** a for a in alphas]
    fit = mb.richardson_limit(alphas, vals)
    assert fit.limit == pytest.approx(L, rel=1e-12)
    # non-uniform spacing goes through the bisection solver
    alphas = [3.0, 4.5, 6.0]
    vals = [L + C * q ** a for a in alphas]
    fit = mb.richardson_limit(alphas, vals)
    assert fit.limit == pytest.approx(L, rel=1e-9)


def test_richardson_rejects_non_monotone():
    assert mb.richardson_limit([4, 5, 6], [1.0, 2.0, 1.5]) is None
    assert mb.richardson_limit([4, 5], [1.0, 2.0]) is None


def test_quantization_tail_validation():
    prob = mb.make_problem()
    with pytest.raises(ValueError):
        mb.quantization_report(prob, [2.0, 4.0])


def test_quantization_euclid_tail():
    prob = mb.make_problem()
    rep = mb.quantization_report(prob, [4.0, 5.0, 6.0])
    assert rep.monotone_ok
    assert rep.energy_below_2pi
    assert all(r.energy < TWO_PI for r in rep.rows)
    assert rep.richardson is not None
    assert abs(rep.richardson.limit - FOUR_PI) < 0.01 * FOUR_PI


def test_half_energy_radius_monotone_in_alpha():
    prob = mb.make_problem()
    _, s4 = mb.lambda_of_alpha(prob, 4.0)
    _, s6 = mb.lambda_of_alpha(prob, 6.0)
    r4 = mb.half_energy_radius(s4)
    r6 = mb.half_energy_radius(s6)
    assert r6 < r4
    # the accumulator really is half its total there
    assert s4.evaluate_dense(r4)[2][0] == pytest.approx(0.5 * s4.Lambda,
                                                        rel=1e-9)


def test_validate_rejects_doctored_point(euclid_table):
    import dataclasses
    table, _ = euclid_table
    bad_point = dataclasses.replace(table.points[3], residual_summary=1.0)
    bad = dataclasses.replace(table,
                              points=table.points[:3] + (bad_point,)
                              + table.points[4:])
    with pytest.raises(mb.BranchResidualError):
        bad.validate()


def test_energy_band_all_tables(euclid_table, hyper_table, shifted_table,
                                perturbed_result):
    _, perturbed_table = perturbed_result
    bound = TWO_PI * (1.0 + 1e-9)
    for table in (euclid_table[0], hyper_table, shifted_table,
                  perturbed_table):
        for p in table.points:
            assert 0.0 < p.energy < bound
