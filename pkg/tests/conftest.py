import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import moserbranch as mb


@pytest.fixture(scope="session")
def euclid_problem():
    return mb.make_problem()


@pytest.fixture(scope="session")
def hyper_problem():
    return mb.make_problem("hyperbolic", 1.0)


@pytest.fixture(scope="session")
def euclid_table(euclid_problem):
    """Euclidean standard branch, the acceptance grid, with wall time."""
    t0 = time.perf_counter()
    table = mb.trace_branch(euclid_problem)
    elapsed = time.perf_counter() - t0
    return table, elapsed


@pytest.fixture(scope="session")
def hyper_table(hyper_problem):
    return mb.trace_branch(hyper_problem)


@pytest.fixture(scope="session")
def perturbed_result():
    return mb.perturbed_energy_bound()


@pytest.fixture(scope="session")
def shifted_table():
    problem = mb.make_problem(nonlinearity="shifted", lambda_shift=1.0)
    return mb.trace_branch(problem, mb.default_alpha_grid(points=40))


@pytest.fixture(scope="session")
def hyper_quantization(hyper_problem):
    return mb.quantization_report(hyper_problem, [4.0, 5.0, 6.0])
