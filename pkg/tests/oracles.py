"""Reference values computed independently of the package (mpmath, closed forms)."""
from __future__ import annotations

import math

import mpmath as mp

mp.mp.dps = 30


def bessel_deriv(nu, n, x):
    return float(mp.besselj(nu, x, derivative=n))


def struve_deriv(nu, n, x):
    if n == 0:
        return float(mp.struveh(nu, x))
    return float(mp.diff(lambda t: mp.struveh(nu, t), mp.mpf(x), n))


def bisect(f, a, b, tol=mp.mpf("1e-25")):
    """Plain bisection in 30-digit arithmetic; f(a) and f(b) must differ in sign."""
    a, b = mp.mpf(a), mp.mpf(b)
    fa = f(a)
    if fa * f(b) > 0:
        raise ValueError("no sign change")
    while b - a > tol:
        c = (a + b) / 2
        fc = f(c)
        if fa * fc <= 0:
            b = c
        else:
            a, fa = c, fc
    return float((a + b) / 2)


def bessel_zero(nu, n, a, b):
    return bisect(lambda t: mp.besselj(nu, t, derivative=n), a, b)


def bessel_zeros(nu, m, derivative=0):
    return [float(mp.besseljzero(nu, k, derivative)) for k in range(1, m + 1)]


def half_order_bessel(x):
    """J_{1/2}(x) = sqrt(2/(pi x)) sin x."""
    return math.sqrt(2 / (math.pi * x)) * math.sin(x)


def half_order_struve(x):
    """H_{1/2}(x) = sqrt(2/(pi x)) (1 - cos x)."""
    return math.sqrt(2 / (math.pi * x)) * (1 - math.cos(x))


def basel(k, spacing=math.pi, weight=1):
    """sum_m weight * (spacing m)^(-2k) via the Bernoulli-number closed form."""
    return float(weight * mp.zeta(2 * k) / mp.mpf(spacing) ** (2 * k))


def rayleigh_bessel(nu):
    """Classical sum_m j_{nu,m}^-2 = 1/(4(nu+1))."""
    return 1 / (4 * (nu + 1))


# Complex zero counts of J_nu from the classical Hurwitz theorem:
# (total nonreal, purely imaginary).
HURWITZ = {
    -0.5: (0, 0), 0.5: (0, 0), 3.0: (0, 0),
    -1.5: (2, 2), -1.25: (2, 2),
    -2.5: (4, 0), -2.75: (4, 0),
}
