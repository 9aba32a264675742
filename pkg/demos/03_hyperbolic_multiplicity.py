"""Critical points of the constrained exponential functional on a
hyperbolic geodesic ball: two below gamma*, none above.

The ball of geodesic radius R reduces conformally to the Euclidean disc of
radius tanh(R/2) with weight (2/(1-r^2))^2; the branch is traced there and
the Dirichlet energy level gamma is scanned for crossings.
"""

import math

import moserbranch as mb

FOUR_PI = 4.0 * math.pi

problem = mb.make_problem("hyperbolic", 1.0)
print(f"geodesic radius 1  ->  conformal radius {problem.boundary_radius:.6f}")

mu1 = mb.first_eigenvalue_cached(problem)
print(f"first Dirichlet eigenvalue mu_1 = {mu1:.10f}")

table = mb.trace_branch(problem)
gs, alpha_at = mb.gamma_star(table)
print(f"gamma* = {gs:.8f} at alpha = {alpha_at:.4f}  "
      f"(exceeds 4 pi by {gs - FOUR_PI:.4f})")

for gamma, label in [((FOUR_PI + gs) / 2.0, "between 4 pi and gamma*"),
                     (gs * 1.05, "above gamma*"),
                     (FOUR_PI * 0.5, "below the quantized floor")]:
    count, crossings = mb.count_critical_points(table, gamma)
    pts = ", ".join(f"(alpha={a:.4f}, lambda={l:.6f})" for a, l in crossings)
    print(f"gamma = {gamma:8.4f} ({label}): {count} critical point(s) "
          f"{pts}")
