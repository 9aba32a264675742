"""Exact-arithmetic verification of the boundary Taylor-expansion argument.

Everything here is symbolic over exact rationals in a = u'(1), b = v'(1),
the touching parameter t (with a = t b imposed) and lam: no floating
point, no tolerances.
"""

import moserbranch as mb

rec = mb.boundary_recurrence(6)
print("boundary derivatives of r u'' + u' + lam r u e^{u^2} = 0 at r = 1:")
for k in range(2, 7):
    print(f"  u^({k})(1) = {rec[k]}")

print("\npair relations under u'(1) = t v'(1):")
print(mb.verify_pair_relations().summary())

print("\ncontradiction certificate (eps = r - 1):")
cert = mb.contradiction_certificate()
print(cert.to_json())
