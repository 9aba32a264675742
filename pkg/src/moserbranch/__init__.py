"""Radial shooting, branch tracing and identity verification for planar
elliptic problems with critical exponential growth on discs and hyperbolic
balls."""

__version__ = "0.1.0"

from .model import (BranchPoint, DomainError, ProblemSpec, ResidualReport,
                    UnsupportedIdentity, conformal_radius, make_problem,
                    weight, EUCLIDEAN, HYPERBOLIC, STANDARD, PERTURBED,
                    SHIFTED, TWO_PI, FOUR_PI)
from .integrate import (AlphaRangeError, IntegratorConfig, IntegrationError,
                        NoZeroError, RadialSolution, StepLimitError,
                        DEFAULT_CONFIG, defining_residual,
                        dirichlet_quadrature, evaluate_dense, integrate_ivp,
                        taylor_startup)
from .shoot import (MultiplicityWarning, ShootingError, lambda_of_alpha,
                    solve_for_lambda)
from .eigen import (EigenBracketError, EigenProfile, eigen_residual,
                    first_eigenvalue, first_eigenvalue_cached)
from .branch import (AmbiguousCountError, BranchResidualError, BranchTable,
                     EnergyBoundViolation, GridRangeError, QuantizationReport,
                     RichardsonFit, count_critical_points, default_alpha_grid,
                     gamma_star, half_energy_radius, perturbed_energy_bound,
                     quantization_report, richardson_limit, solve_point,
                     trace_branch)
from .identities import (BoundaryDerivatives, ComparisonReport,
                         boundary_derivatives, comparison_diagnostics,
                         nehari_residual, pohozaev_residual)
from .series import (ContradictionCertificate, PairRelationReport, PolyQ,
                     SeriesPoly, boundary_recurrence,
                     contradiction_certificate, verify_pair_relations)
