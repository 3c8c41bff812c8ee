"""Evaluation of J_nu^(n), H_nu^(n) and their even normalized kernels.

The normalized kernels are

    JJ_{nu,n}(x) = 2^nu Gamma(nu+1-n) x^(n-nu) J_nu^(n)(x)
    HH_{nu,n}(x) = 2^(nu+1) x^(n-nu-1) H_nu^(n)(x)

both even entire functions of x.  Two evaluation routes exist:

* ``series``: the Maclaurin series in x^2, coefficients built from falling
  factorials and reciprocal gamma values so every real order is covered.
* ``closed``: exact derivative identities on top of ``scipy.special`` --
  J^(k) = 2^-k sum_l (-1)^l C(k, l) J_{nu-k+2l} for Bessel, and the Struve
  differential equation differentiated k times for Struve.

``method="auto"`` uses the series for |x| <= SERIES_RADIUS and the closed
route outside, where the alternating series loses too many digits to
cancellation in double precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
from scipy import special as sc

from .errors import NonConvergence, PoleInNormalization

__all__ = [
    "Family",
    "Params",
    "EvalOptions",
    "SeriesValue",
    "EvenKernel",
    "SERIES_RADIUS",
    "falling_factorial",
    "rising_factorial",
    "series_coefficients",
    "normalization_pole",
    "eval_J_norm",
    "eval_J_deriv",
    "eval_H_norm",
    "eval_H_deriv",
    "eval_f_aux",
    "raw_derivatives",
]

SERIES_RADIUS = 5.0
_EPS = np.finfo(float).eps


class Family(str, Enum):
    BESSEL_J = "besselj"
    STRUVE_H = "struveh"


@dataclass(frozen=True)
class Params:
    """Order ``nu``, derivative order ``n`` and function family."""

    family: Family
    nu: float
    n: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"derivative order must be a nonnegative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "nu", float(self.nu))

    @classmethod
    def bessel(cls, nu, n=0):
        return cls(Family.BESSEL_J, nu, n)

    @classmethod
    def struve(cls, nu, n=0):
        return cls(Family.STRUVE_H, nu, n)

    def with_n(self, n):
        return replace(self, n=n)

    def with_nu(self, nu):
        return replace(self, nu=nu)


@dataclass(frozen=True)
class EvalOptions:
    """Truncation controls.

    ``normalized=False`` drops the Gamma(nu+1-n) factor from the Bessel
    kernel, which is the only well-defined choice on the integer orders where
    that factor has a pole.
    """

    rel_tol: float = 1e-15
    max_terms: int = 500
    normalized: bool = True
    method: str = "auto"

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 10:
            raise ValueError("max_terms must be at least 10")
        if self.method not in ("auto", "series", "closed"):
            raise ValueError(f"unknown method {self.method!r}")


DEFAULT_OPTIONS = EvalOptions()


@dataclass(frozen=True)
class SeriesValue:
    value: object
    terms_used: int
    est_rel_err: float


def falling_factorial(a, n: int):
    """a (a-1) ... (a-n+1); the empty product for n = 0."""
    out = np.ones_like(np.asarray(a, dtype=float)) if np.ndim(a) else 1.0
    for i in range(int(n)):
        out = out * (a - i)
    return out


def rising_factorial(a, n: int):
    """a (a+1) ... (a+n-1)."""
    out = np.ones_like(np.asarray(a, dtype=float)) if np.ndim(a) else 1.0
    for i in range(int(n)):
        out = out * (a + i)
    return out


def _is_nonpositive_int(v: float) -> bool:
    r = round(v)
    return r <= 0 and abs(v - r) < 1e-12


def normalization_pole(p: Params) -> bool:
    """True when Gamma(nu+1-n) is infinite (Bessel family only)."""
    return p.family is Family.BESSEL_J and _is_nonpositive_int(p.nu + 1 - p.n)


def _recip_gamma_ladder(b: float, count: int) -> np.ndarray:
    """r[m] = 1/(Gamma(b+m) m! 4^m), pole-safe."""
    r = np.zeros(count)
    start = -int(round(b)) + 1 if _is_nonpositive_int(b) else 0
    if start >= count:
        return r
    r[start] = sc.rgamma(b + start) * math.exp(-math.lgamma(start + 1) - start * math.log(4.0))
    for m in range(start + 1, count):
        r[m] = r[m - 1] / (4.0 * m * (b + m - 1))
    return r


def series_coefficients(p: Params, count: int, normalized: bool = True) -> np.ndarray:
    """Coefficients c_m of x^(2m) in JJ_{nu,n} (Bessel) or HH_{nu,n} (Struve)."""
    nu, n = p.nu, p.n
    m = np.arange(count)
    sign = np.where(m % 2 == 1, -1.0, 1.0)
    if p.family is Family.BESSEL_J:
        fall = falling_factorial(nu + 2.0 * m, n)
        if normalized:
            if normalization_pole(p):
                raise PoleInNormalization(
                    f"Gamma(nu+1-n) has a pole at nu={nu}, n={n}; request normalized=False"
                )
            a = np.empty(count)
            a[0] = 1.0 / falling_factorial(nu, n)
            for k in range(1, count):
                a[k] = a[k - 1] / (4.0 * k * (nu + k))
        else:
            a = _recip_gamma_ladder(nu + 1.0, count)
        return sign * fall * a
    # Struve: (-1)^m (2m+nu+1)_n^falling / (4^m Gamma(m+3/2) Gamma(m+nu+3/2))
    fall = falling_factorial(nu + 1.0 + 2.0 * m, n)
    r = _recip_gamma_ladder(nu + 1.5, count)
    # r carries 1/m!; swap it for 1/Gamma(m+3/2)
    ratio = np.exp(sc.gammaln(m + 1.0) - sc.gammaln(m + 1.5))
    return sign * fall * r * ratio


def _prefactor(p: Params, normalized: bool):
    """F(x) = A x^a y(x) where y is the raw n-th derivative."""
    if p.family is Family.BESSEL_J:
        amp = 2.0**p.nu
        if normalized:
            amp *= sc.gamma(p.nu + 1 - p.n)
        return amp, p.n - p.nu
    return 2.0 ** (p.nu + 1), p.n - p.nu - 1


def _struve(nu, x):
    """scipy's struve, patched where it returns NaN at isolated points.

    The cephes routine refuses some arguments (exact multiples of pi for
    half-integer orders, points next to zeros at large x).  Those values are
    rebuilt from symmetric neighbours, exact to O(h^6).
    """
    v = np.array(sc.struve(nu, x), dtype=float)
    bad = np.isnan(v) & np.isfinite(x)
    if not np.any(bad):
        return v
    xb = np.broadcast_to(x, v.shape)[bad]
    fixed = np.full(xb.shape, np.nan)
    for h0 in (1e-3, 1.37e-3, 2.11e-3, 3.3e-3):
        h = np.minimum(h0, 0.05 * np.abs(xb))
        a1, a2, a3 = (0.5 * (sc.struve(nu, xb - k * h) + sc.struve(nu, xb + k * h)) for k in (1, 2, 3))
        trial = (15.0 * a1 - 6.0 * a2 + a3) / 10.0
        fixed = np.where(np.isnan(fixed), trial, fixed)
        if not np.any(np.isnan(fixed)):
            break
    v[bad] = fixed
    return v


def raw_derivatives(p: Params, x, count: int) -> list:
    """[y^(n), y^(n+1), ..., y^(n+count-1)] by the closed route.

    Bessel accepts complex x (principal branch); Struve requires real x > 0.
    """
    nu, n = p.nu, p.n
    if p.family is Family.BESSEL_J:
        cache = {}

        def jv(order):
            key = round(order, 12)
            if key not in cache:
                cache[key] = sc.jv(order, x)
            return cache[key]

        out = []
        for k in range(n, n + count):
            acc = 0
            for l in range(k + 1):
                acc = acc + (-1) ** l * math.comb(k, l) * jv(nu - k + 2 * l)
            out.append(acc / 2.0**k)
        return out
    x = np.asarray(x, dtype=float)
    top = n + count
    ys = [_struve(nu, x)]
    if top > 1:
        ys.append(_struve(nu - 1, x) - nu * ys[0] / x)
    src = 4.0 * sc.rgamma(nu + 0.5) / (math.sqrt(math.pi) * 2.0 ** (nu + 1))
    x2 = x * x
    for k in range(0, top - 2):
        g = src * falling_factorial(nu + 1.0, k) * x ** (nu + 1 - k)
        acc = g - (2 * k + 1) * x * ys[k + 1] - (k * k - nu * nu + x2) * ys[k]
        if k >= 1:
            acc = acc - 2 * k * x * ys[k - 1]
        if k >= 2:
            acc = acc - k * (k - 1) * ys[k - 2]
        ys.append(acc / x2)
    return ys[n:top]


def _series_derivs(coeffs, x, kmax, rel_tol, max_terms):
    """Term-wise differentiated even series; returns (vals, terms, err)."""
    x = np.asarray(x)
    nz = np.flatnonzero(coeffs)
    first = int(nz[0]) if nz.size else 0
    x2 = x * x
    vals = []
    terms_used = 0
    err = np.zeros(x.shape)
    for j in range(kmax + 1):
        m0 = max(first, (j + 1) // 2)
        power = x ** (2 * m0 - j) if 2 * m0 - j > 0 else np.ones_like(x)
        total = np.zeros_like(x, dtype=np.result_type(x, float))
        absum = np.zeros(x.shape)
        small_run = np.zeros(x.shape, dtype=int)
        converged = False
        m = m0
        while m < max_terms:
            c = coeffs[m] if m < len(coeffs) else 0.0
            term = c * falling_factorial(2.0 * m, j) * power
            total = total + term
            absum = absum + np.abs(term)
            small = np.abs(term) <= rel_tol * np.abs(total)
            small_run = np.where(small, small_run + 1, 0)
            m += 1
            power = power * x2
            if m - m0 >= 2 and np.all(small_run >= 2):
                converged = True
                break
        if not converged:
            raise NonConvergence(
                f"series did not reach rel_tol={rel_tol} within {max_terms} terms "
                f"(max |x| = {float(np.max(np.abs(x))) if x.size else 0.0:.6g})"
            )
        terms_used = max(terms_used, m)
        with np.errstate(divide="ignore", invalid="ignore"):
            e = np.where(np.abs(total) > 0, _EPS * absum / np.abs(total), 0.0)
        err = np.maximum(err, e)
        vals.append(total)
    return vals, terms_used, err


def _coeff_count(opts):
    return opts.max_terms + 2


def _even_derivs(p, x, kmax, opts, normalized, shift=0, lead=1.0):
    """Derivatives 0..kmax of G(x) = F(x) / (lead x^(2 shift)).

    Returns (array of shape (kmax+1,) + x.shape, terms_used, est_rel_err).
    """
    x0 = np.asarray(x)
    x = np.atleast_1d(x0)
    is_complex = np.iscomplexobj(x)
    dtype = complex if is_complex else float
    out = np.zeros((kmax + 1,) + x.shape, dtype=dtype)
    if opts.method == "series":
        series_mask = np.ones(x.shape, dtype=bool)
    elif opts.method == "closed":
        series_mask = np.zeros(x.shape, dtype=bool)
    else:
        series_mask = np.abs(x) <= SERIES_RADIUS
    if p.family is Family.STRUVE_H and is_complex:
        series_mask = np.ones(x.shape, dtype=bool)
    terms_used = 0
    err = np.zeros(x.shape)
    if np.any(series_mask):
        coeffs = series_coefficients(p, _coeff_count(opts), normalized)[shift:] / lead
        vals, terms_used, e = _series_derivs(coeffs, x[series_mask], kmax, opts.rel_tol, opts.max_terms)
        for j in range(kmax + 1):
            out[j][series_mask] = vals[j]
        err[series_mask] = e
    rest = ~series_mask
    if np.any(rest):
        xr = x[rest]
        # the kernel is even: fold onto Re x >= 0, away from the branch cut
        flip = np.real(xr) < 0
        xf = np.where(flip, -xr, xr)
        if p.family is Family.STRUVE_H:
            xf = np.real(xf)
        amp, a = _prefactor(p, normalized)
        amp = amp / lead
        a = a - 2 * shift
        ys = raw_derivatives(p, xf, kmax + 1)
        for j in range(kmax + 1):
            acc = 0
            for i in range(j + 1):
                acc = acc + math.comb(j, i) * falling_factorial(a, j - i) * xf ** (a - (j - i)) * ys[i]
            val = amp * acc
            if j % 2 == 1:
                val = np.where(flip, -val, val)
            out[j][rest] = val
        err[rest] = 64 * _EPS * (p.n + kmax + 1)
    return out.reshape((kmax + 1,) + x0.shape), terms_used, err.reshape(x0.shape)


def _pack(vals, terms, err, x):
    v = vals
    est = float(np.max(err)) if np.size(err) else 0.0
    if np.ndim(x) == 0:
        v = v[()]
        v = complex(v) if np.iscomplexobj(v) else float(v)
    return SeriesValue(v, int(terms), est)


def _opts(opts):
    return DEFAULT_OPTIONS if opts is None else opts


def _check_family(p, family):
    if p.family is not family:
        raise ValueError(f"expected {family.value} parameters, got {p.family.value}")


def eval_J_norm(p: Params, x, opts: EvalOptions | None = None) -> SeriesValue:
    """JJ_{nu,n}(x); with ``normalized=False`` the Gamma(nu+1-n) factor is dropped."""
    _check_family(p, Family.BESSEL_J)
    opts = _opts(opts)
    if opts.normalized and normalization_pole(p):
        raise PoleInNormalization(f"Gamma(nu+1-n) has a pole at nu={p.nu}, n={p.n}")
    vals, terms, err = _even_derivs(p, x, 0, opts, opts.normalized)
    return _pack(vals[0], terms, err, x)


def eval_H_norm(p: Params, x, opts: EvalOptions | None = None) -> SeriesValue:
    """HH_{nu,n}(x) = 2^(nu+1) x^(n-nu-1) H_nu^(n)(x)."""
    _check_family(p, Family.STRUVE_H)
    vals, terms, err = _even_derivs(p, x, 0, _opts(opts), True)
    return _pack(vals[0], terms, err, x)


def _power_prefactor(x, expo):
    x = np.asarray(x)
    if not np.iscomplexobj(x) and np.any(x < 0) and expo != int(expo):
        x = x.astype(complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        return x**expo


def eval_J_deriv(p: Params, x, opts: EvalOptions | None = None) -> SeriesValue:
    """J_nu^(n)(x) = x^(nu-n) / 2^nu * (un-normalized kernel)."""
    _check_family(p, Family.BESSEL_J)
    opts = _opts(opts)
    xa = np.asarray(x)
    if opts.method != "series" and not np.iscomplexobj(xa) and np.all(xa > SERIES_RADIUS):
        vals = raw_derivatives(p, xa, 1)[0]
        return _pack(np.asarray(vals), 0, np.full(xa.shape, 64 * _EPS * (p.n + 1)), x)
    vals, terms, err = _even_derivs(p, xa, 0, opts, False)
    value = _power_prefactor(xa, p.nu - p.n) / 2.0**p.nu * vals[0]
    if p.nu - p.n == 0:
        value = vals[0] / 2.0**p.nu
    return _pack(np.asarray(value), terms, err, x)


def eval_H_deriv(p: Params, x, opts: EvalOptions | None = None) -> SeriesValue:
    """H_nu^(n)(x) = x^(nu-n+1) / 2^(nu+1) * HH_{nu,n}(x)."""
    _check_family(p, Family.STRUVE_H)
    opts = _opts(opts)
    xa = np.asarray(x)
    if opts.method != "series" and not np.iscomplexobj(xa) and np.all(xa > SERIES_RADIUS):
        vals = raw_derivatives(p, xa, 1)[0]
        return _pack(np.asarray(vals), 0, np.full(xa.shape, 64 * _EPS * (p.n + 1)), x)
    vals, terms, err = _even_derivs(p, xa, 0, opts, True)
    expo = p.nu - p.n + 1
    value = vals[0] / 2.0 ** (p.nu + 1) if expo == 0 else _power_prefactor(xa, expo) / 2.0 ** (p.nu + 1) * vals[0]
    return _pack(np.asarray(value), terms, err, x)


def eval_f_aux(p: Params, x, opts: EvalOptions | None = None) -> SeriesValue:
    """f_{nu,n}(x) = sum_m Gamma(nu+2m+1) x^m / (Gamma(nu+2m-n+1) Gamma(nu+m+1) m!).

    This is the un-normalized Bessel kernel at 2 sqrt(-x), so negative x far
    from the origin go through the closed route.
    """
    _check_family(p, Family.BESSEL_J)
    opts = _opts(opts)
    xa = np.asarray(x, dtype=float)
    out = np.empty(xa.shape)
    terms = 0
    err = np.zeros(xa.shape)
    far = (xa < 0) & (2.0 * np.sqrt(np.abs(xa)) > SERIES_RADIUS) & (opts.method != "series")
    if np.any(far):
        vals, _, e = _even_derivs(p, 2.0 * np.sqrt(-xa[far]), 0, replace(opts, method="closed"), False)
        out[far] = vals[0]
        err[far] = e
    near = ~far
    if np.any(near):
        # coefficients of x^m: c_m 4^m (-1)^m from the x^(2m) kernel series
        c = series_coefficients(p, _coeff_count(opts), False)
        m = np.arange(len(c))
        with np.errstate(over="ignore", invalid="ignore"):
            scale = np.where(m % 2 == 1, -1.0, 1.0) * np.exp(m * math.log(4.0))
            d = np.nan_to_num(c * scale, nan=0.0, posinf=0.0, neginf=0.0)
        # evaluate as an even series in t = sqrt|x|, sign folded into coefficients
        xs = xa[near]
        vals = np.empty(xs.shape)
        pos = xs >= 0
        for mask, coeffs in ((pos, d), (~pos, d * np.where(m % 2 == 1, -1.0, 1.0))):
            if np.any(mask):
                v, t, e = _series_derivs(coeffs, np.sqrt(np.abs(xs[mask])), 0, opts.rel_tol, opts.max_terms)
                vals[mask] = v[0]
                terms = max(terms, t)
                sub = np.zeros(xs.shape)
                sub[mask] = e
                err[near] = np.maximum(err[near], sub)
        out[near] = vals
    return _pack(out, terms, err, x)


class EvenKernel:
    """Even entire function g with g(0) = 1 sharing the nonzero zeros of y^(n).

    g(x) = F(x) / (lead * x^(2 shift)) where F is JJ_{nu,n} (Bessel, with or
    without the gamma normalization) or HH_{nu,n} (Struve), and ``shift``
    strips coefficients that vanish identically (integer-order corner cases).
    """

    def __init__(self, params: Params, normalized: bool | None = None, opts: EvalOptions | None = None):
        self.params = params
        if normalized is None:
            normalized = not normalization_pole(params)
        self.normalized = normalized
        self.opts = _opts(opts)
        coeffs = series_coefficients(params, 64, normalized)
        nz = np.flatnonzero(np.abs(coeffs) > 0)
        if nz.size == 0:
            raise PoleInNormalization(f"kernel vanishes identically for {params}")
        self.shift = int(nz[0])
        self.lead = float(coeffs[self.shift])

    def coefficients(self, count: int) -> np.ndarray:
        c = series_coefficients(self.params, count + self.shift, self.normalized)
        return c[self.shift:] / self.lead

    def derivs(self, x, kmax: int = 1):
        vals, _, _ = _even_derivs(self.params, x, kmax, self.opts, self.normalized, self.shift, self.lead)
        return vals

    def __call__(self, x):
        return self.derivs(x, 0)[0]

    def __repr__(self):
        return f"EvenKernel({self.params}, normalized={self.normalized}, shift={self.shift})"
