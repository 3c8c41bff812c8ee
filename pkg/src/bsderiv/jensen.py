"""Jensen polynomials of the even kernels and an exact real-rootedness test.

For an entire function f(x) = sum gamma_m x^m / m! the degree-s Jensen
polynomial is sum_m C(s, m) gamma_m x^m.  Applied to x -> JJ_{nu,n}(2 sqrt x)
and x -> HH_{nu,n}(2 sqrt x) / HH_{nu,n}(0) this gives

    Bessel:  3F3(-s, (nu+1)/2, nu/2+1; nu+1, (nu-n+1)/2, (nu-n)/2+1; x)
    Struve:  4F4(-s, 1, nu/2+1, nu/2+3/2; 3/2, nu+3/2, (nu-n)/2+1, (nu-n)/2+3/2; x)

Both are built twice, once from falling-factorial ratios of the series
coefficients and once from Pochhammer symbols, and the two must agree.

Real-rootedness is decided exactly for the polynomial whose coefficients are
the stored doubles: a Sturm sequence over the integers (primitive pseudo-
remainders, so nothing is rounded) counts the distinct real roots of each
square-free factor.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np
import sympy
from scipy import special as sc

from .errors import DegenerateLeadingCoefficient, PoleInNormalization
from .specfun import Family, Params, falling_factorial, rising_factorial, series_coefficients

__all__ = [
    "S_CAP",
    "JensenPoly",
    "RootReport",
    "jensen_coeffs_bessel",
    "jensen_coeffs_struve",
    "real_rooted_check",
    "sturm_count",
    "scaled_value",
]

S_CAP = 30
CROSSCHECK_TOL = 1e-13


@dataclass(frozen=True)
class JensenPoly:
    """Monomial coefficients (ascending, constant term 1) of a Jensen polynomial."""

    family: Family
    nu: float
    n: int
    s: int
    coeffs: tuple
    crosscheck_err: float = 0.0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return np.polyval(self.coeffs[::-1], x)


@dataclass(frozen=True)
class RootReport:
    roots: tuple
    all_real: bool
    all_simple: bool
    max_imag_ratio: float
    min_root_gap: float
    real_root_count: int = 0
    square_free: bool = True


def _check_s(s: int):
    if int(s) != s or s < 1:
        raise ValueError(f"degree s must be a positive integer, got {s!r}")
    if s > S_CAP:
        warnings.warn(
            f"s={s} exceeds {S_CAP}; coefficient rounding may change the real-root count",
            RuntimeWarning,
            stacklevel=3,
        )


def _rel_diff(a: np.ndarray, b: np.ndarray) -> float:
    scale = np.maximum(np.abs(a), np.abs(b))
    with np.errstate(invalid="ignore", divide="ignore"):
        d = np.where(scale > 0, np.abs(a - b) / scale, 0.0)
    return float(np.max(d))


def _binomial_signs(s: int) -> np.ndarray:
    return np.array([(-1) ** m * math.comb(s, m) for m in range(s + 1)], dtype=float)


def jensen_coeffs_bessel(nu: float, n: int, s: int) -> JensenPoly:
    """Jensen polynomial of x -> JJ_{nu,n}(2 sqrt x)."""
    _check_s(s)
    p = Params.bessel(nu, n)
    b = nu + 1 - n
    if round(b) <= 0 and abs(b - round(b)) < 1e-12:
        raise PoleInNormalization(f"Gamma(nu+1-n) has a pole at nu={nu}, n={n}")
    m = np.arange(s + 1)
    # falling-factorial route: (nu+2m)_n^falling / (nu+1-n)^rising_(n+m)
    ratio = np.array([falling_factorial(nu + 2.0 * k, n) / rising_factorial(b, n + k) for k in m])
    direct = _binomial_signs(s) * ratio
    # Pochhammer route (3F3 after the duplication formula)
    num = sc.poch(-float(s), m) * sc.poch((nu + 1) / 2, m) * sc.poch(nu / 2 + 1, m)
    den = sc.poch(nu + 1, m) * sc.poch((nu - n + 1) / 2, m) * sc.poch((nu - n) / 2 + 1, m) * sc.factorial(m)
    hyper = num / den
    return JensenPoly(p.family, float(nu), int(n), int(s), tuple(direct.tolist()), _rel_diff(direct, hyper))


def jensen_coeffs_struve(nu: float, n: int, s: int) -> JensenPoly:
    """Jensen polynomial of x -> HH_{nu,n}(2 sqrt x) / HH_{nu,n}(0)."""
    _check_s(s)
    p = Params.struve(nu, n)
    for a in ((nu - n) / 2 + 1, (nu - n) / 2 + 1.5):
        if round(a) <= 0 and abs(a - round(a)) < 1e-12:
            raise PoleInNormalization(f"nu - n + 2 = {nu - n + 2} is a nonpositive integer")
    c = series_coefficients(p, s + 1)
    if c[0] == 0:
        raise PoleInNormalization(f"HH_{{nu,n}}(0) vanishes for nu={nu}, n={n}")
    m = np.arange(s + 1)
    # series route: gamma_m = m! 4^m c_m / c_0
    gam = sc.factorial(m) * 4.0**m * c / c[0]
    direct = np.array([math.comb(s, int(k)) for k in m], dtype=float) * gam
    num = sc.poch(-float(s), m) * sc.poch(1.0, m) * sc.poch(nu / 2 + 1, m) * sc.poch(nu / 2 + 1.5, m)
    den = (sc.poch(1.5, m) * sc.poch(nu + 1.5, m) * sc.poch((nu - n) / 2 + 1, m)
           * sc.poch((nu - n) / 2 + 1.5, m) * sc.factorial(m))
    hyper = num / den
    return JensenPoly(p.family, float(nu), int(n), int(s), tuple(direct.tolist()), _rel_diff(direct, hyper))


def scaled_value(poly: JensenPoly, x: float) -> float:
    """p_s(x/s), which tends to the generating entire function as s grows."""
    return float(np.polyval(np.array(poly.coeffs[::-1]), x / poly.s))


# -- exact integer Sturm sequences -------------------------------------------------

def _to_int_poly(coeffs) -> list[int]:
    """Scale exact binary values of the coefficients to a common integer basis."""
    fr = [Fraction(float(v)) if not isinstance(v, Fraction) else v for v in coeffs]
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fr), 1)
    return [int(f * den) for f in fr]


def _trim(a: list) -> list:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _primitive(a: list) -> list:
    g = reduce(math.gcd, a, 0)
    return [v // g for v in a] if g > 1 else a


def _prem_positive(a: list, b: list) -> list:
    """A positive multiple of the remainder of a by b (ascending coefficients)."""
    a = a[:]
    lb = b[-1]
    sb = 1 if lb > 0 else -1
    alb = abs(lb)
    while len(a) >= len(b) and any(a):
        f = a[-1] * sb
        shift = len(a) - len(b)
        a = [v * alb for v in a]
        for i, bv in enumerate(b):
            a[shift + i] -= f * bv
        a.pop()
        a = _trim(a) if a else [0]
    return a or [0]


def _variations(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_count(coeffs) -> int:
    """Number of distinct real roots of the polynomial with these (ascending) coefficients."""
    p = _primitive(_trim(_to_int_poly(coeffs)))
    if len(p) < 2:
        return 0
    seq = [p, _primitive(_trim([p[i] * i for i in range(1, len(p))]))]
    while len(seq[-1]) > 1:
        r = _prem_positive(seq[-2], seq[-1])
        if not any(r):
            break
        seq.append(_primitive([-v for v in r]))
    at_minus = _variations([a[-1] * (-1) ** (len(a) - 1) for a in seq])
    at_plus = _variations([a[-1] for a in seq])
    return at_minus - at_plus


def _square_free_parts(coeffs):
    """[(factor_coeffs_ascending, multiplicity), ...] by sympy's square-free decomposition."""
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(Fraction(float(v))) for v in reversed(coeffs)], x, domain="QQ")
    _, parts = poly.sqf_list()
    out = []
    for f, mult in parts:
        out.append(([Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())], mult))
    return out


def _polish(coeffs: np.ndarray, roots: np.ndarray, real: bool) -> np.ndarray:
    """A few Newton steps on each root of the polynomial (descending coefficients)."""
    dcoeffs = np.polyder(coeffs)
    r = roots.real.copy() if real else roots.astype(complex)
    for _ in range(8):
        f = np.polyval(coeffs, r)
        fp = np.polyval(dcoeffs, r)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(fp != 0, f / fp, 0)
        step = np.where(np.isfinite(step), step, 0)
        r = r - step
    return r


def real_rooted_check(poly) -> RootReport:
    """Exact real-root count plus refined roots of a Jensen (or any) polynomial.

    Accepts a JensenPoly or ascending coefficients.  ``all_real`` compares
    the Sturm count, with multiplicities from the square-free decomposition,
    to the degree.  ``all_simple`` requires a square-free polynomial whose
    refined roots are separated by more than 1e-8 of the largest root.
    """
    coeffs = list(poly.coeffs if isinstance(poly, JensenPoly) else poly)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    deg = len(coeffs) - 1
    if deg < 1:
        raise ValueError("polynomial must have degree at least 1")
    if abs(coeffs[-1]) <= 1e-300:
        raise DegenerateLeadingCoefficient(f"leading coefficient {coeffs[-1]!r} is too small")
    parts = _square_free_parts(coeffs)
    real_count = 0
    for factor, mult in parts:
        real_count += mult * sturm_count(factor)
    square_free = all(mult == 1 for _, mult in parts)
    all_real = real_count == deg

    desc = np.array(coeffs[::-1], dtype=float)
    if all_real:
        # roots of each square-free factor, repeated by multiplicity
        pieces = []
        for factor, mult in parts:
            if len(factor) < 2:
                continue
            fd = np.array([float(c) for c in factor[::-1]])
            r = _polish(fd, np.roots(fd), real=True)
            pieces.append(np.repeat(r, mult))
        roots = np.sort(np.concatenate(pieces)).astype(complex)
        max_imag = 0.0
    else:
        roots = _polish(desc, np.roots(desc), real=False)
        roots = roots[np.argsort(roots.real)]
        scale = float(np.max(np.abs(roots))) or 1.0
        max_imag = float(np.max(np.abs(roots.imag)) / scale)
    if deg >= 2:
        gaps = [abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1:]]
        min_gap = float(min(gaps))
    else:
        min_gap = math.inf
    scale = float(np.max(np.abs(roots)))
    all_simple = square_free and min_gap > 1e-8 * scale
    return RootReport(tuple(complex(r) for r in roots), all_real, all_simple, max_imag, min_gap, real_count, square_free)
