"""The perturbed functional's 8 pi energy bound and the shifted-operator
branch.

Perturbed: f(u) = u(e^{u^2}-1); its branch energy never reaches 8 pi, and
every point satisfies I >= Lambda/4.  Shifted: -Delta u - lambda_s u =
theta u e^{u^2}; the branch in theta lives below mu_1 - lambda_s.
"""

import math

import moserbranch as mb

EIGHT_PI = 8.0 * math.pi

max_lambda, table = mb.perturbed_energy_bound()
print(f"perturbed branch ({len(table.points)} points, alpha up to 6):")
print(f"  sup Lambda = {max_lambda:.8f} < 8 pi = {EIGHT_PI:.8f} "
      f"(margin {EIGHT_PI - max_lambda:.4f})")
worst = min(p.energy - p.Lambda / 4.0 for p in table.points)
print(f"  pointwise I - Lambda/4 >= {worst:.3e}")
print(f"  energies stay in (0, 2 pi): "
      f"({min(p.energy for p in table.points):.2e}, "
      f"{max(p.energy for p in table.points):.6f})")

shifted = mb.make_problem(nonlinearity="shifted", lambda_shift=1.0)
mu1 = mb.first_eigenvalue_cached(shifted)
print(f"\nshifted variant (lambda_shift = 1): theta ranges in "
      f"(0, {mu1 - 1.0:.6f})")
stable = mb.trace_branch(shifted, mb.default_alpha_grid(points=40))
stable.validate()
print(f"  theta at the foot: {stable.points[0].lam:.6f}")
print(f"  peak Dirichlet energy: {max(p.Lambda for p in stable.points):.6f}")
print(f"  max functional energy: {max(p.energy for p in stable.points):.6f} "
      f"< 2 pi = {2 * math.pi:.6f}")
