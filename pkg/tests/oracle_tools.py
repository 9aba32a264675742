"""Independent numerical oracles used by the tests.

Nothing here imports from moserbranch: the point is a second, simpler
route to the same numbers (power series, bisection, fixed-step RK4,
composite quadrature).
"""

from __future__ import annotations

import math


def j0_series(x: float) -> float:
    """Bessel J0 by its power series (ample accuracy for |x| <= 12)."""
    s = 1.0
    term = 1.0
    q = 0.25 * x * x
    m = 0
    while True:
        m += 1
        term *= -q / (m * m)
        s += term
        if abs(term) < 1e-18 * max(1.0, abs(s)):
            return s


def j0_series_derivative(x: float, k: int) -> float:
    """k-th derivative of J0 at x, term-by-term from the series.

    The coefficient (-1)^m / (4^m (m!)^2) is updated incrementally so that
    no factorial is ever formed as a float.
    """
    total = 0.0
    coef = 1.0
    for m in range(0, 160):
        p = 2 * m
        if p >= k:
            fall = 1.0
            for j in range(k):
                fall *= (p - j)
            term = coef * fall * x ** (p - k)
            total += term
            if m > 8 and abs(term) < 1e-20 * max(1.0, abs(total)):
                break
        coef = -coef / (4.0 * (m + 1) * (m + 1))
    return total


def j0_first_zero() -> float:
    lo, hi = 2.0, 3.0
    assert j0_series(lo) > 0.0 > j0_series(hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if j0_series(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16:
            break
    return 0.5 * (lo + hi)


def rk4_first_zero(alpha: float, lam: float = 1.0, h: float = 1e-4) -> float:
    """Fixed-step RK4 on -(ru')' = r lam u e^{u^2} from a quartic startup
    at r0 = 1e-6, with RK4-substep bisection of the final step."""
    exp = math.exp
    g = lam * alpha * exp(alpha * alpha)
    c2 = -g / 4.0
    gp = lam * exp(alpha * alpha) * (1.0 + 2.0 * alpha * alpha)
    c4 = -(gp * c2) / 16.0
    r0 = 1e-6
    u = alpha + c2 * r0 * r0 + c4 * r0 ** 4
    v = 2.0 * c2 * r0 + 4.0 * c4 * r0 ** 3
    r = r0

    def step(r, u, v, hh):
        k1u = v
        k1v = -v / r - lam * u * exp(u * u)
        rm = r + 0.5 * hh
        u2 = u + 0.5 * hh * k1u
        v2 = v + 0.5 * hh * k1v
        k2u = v2
        k2v = -v2 / rm - lam * u2 * exp(u2 * u2)
        u3 = u + 0.5 * hh * k2u
        v3 = v + 0.5 * hh * k2v
        k3u = v3
        k3v = -v3 / rm - lam * u3 * exp(u3 * u3)
        re = r + hh
        u4 = u + hh * k3u
        v4 = v + hh * k3v
        k4u = v4
        k4v = -v4 / re - lam * u4 * exp(u4 * u4)
        return (u + (hh / 6.0) * (k1u + 2 * k2u + 2 * k3u + k4u),
                v + (hh / 6.0) * (k1v + 2 * k2v + 2 * k3v + k4v))

    while True:
        un, vn = step(r, u, v, h)
        if un <= 0.0:
            lo, hi = 0.0, h
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                um, _ = step(r, u, v, mid)
                if um > 0.0:
                    lo = mid
                else:
                    hi = mid
            return r + 0.5 * (lo + hi)
        u, v = un, vn
        r += h


def simpson(f, a: float, b: float, n: int = 200) -> float:
    """Composite Simpson with n panels (2n+1 evaluations)."""
    m = 2 * n
    h = (b - a) / m
    total = f(a) + f(b)
    for i in range(1, m):
        total += f(a + i * h) * (4.0 if i % 2 else 2.0)
    return total * h / 3.0
