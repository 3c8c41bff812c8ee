"""Product and partial-fraction representations built from zero tables.

For the even kernel g of ``specfun.EvenKernel`` (normalized so g(0) = 1) the
Hadamard factorization is the plain product

    g(x) = prod_m (1 - x^2 / z_m^2)

over the positive zeros z_m, and the raw derivative follows by putting the
power prefactor back.  The logarithmic derivative gives the partial-fraction
(Mittag-Leffler) expansion of y^(n+1)/y^(n).

Truncating after M zeros leaves tails of the form T_2j(M) = sum_{m>M} z_m^-2j.
These are estimated by modelling the omitted zeros as an arithmetic
progression with the asymptotic spacing pi plus a fitted 1/z drift (the
McMahon form), which turns every tail into Hurwitz zeta values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sc

from .errors import IntervalStraddlesZero, PoleAtInput, RangeExceeded, TableMismatch
from .specfun import EvalOptions, EvenKernel, Params, _prefactor
from .zerofinder import ZeroTable, zero_table

__all__ = [
    "ProductApprox",
    "RatioReport",
    "TailModel",
    "tail_model",
    "eval_weierstrass",
    "eval_ml_ratio",
    "laguerre_inequality",
    "ratio_monotonic_check",
]

_MIN_FIT = 6


@dataclass(frozen=True)
class TailModel:
    """Omitted zeros modelled as b_k + e/b_k with b_k = A + d k (k = 1, 2, ...).

    ``d`` is the asymptotic spacing (pi times the multiplicity) and each
    model zero carries weight ``weight``.
    """

    anchor: float
    spacing: float
    drift: float
    weight: int

    @property
    def last(self) -> float:
        return self.anchor

    def power_sum(self, j: int) -> float:
        """Estimate of sum_{m>M} z_m^(-2j), first order in the drift."""
        s = 2.0 * j
        d = self.spacing
        q = 1.0 + self.anchor / d
        main = d**-s * sc.zeta(s, q)
        drift = -s * self.drift * d ** (-s - 2) * sc.zeta(s + 2, q)
        return float(self.weight * (main + drift))

    def power_sums(self, j_max: int) -> np.ndarray:
        return np.array([self.power_sum(j) for j in range(1, j_max + 1)])


def tail_model(table: ZeroTable, M: int | None = None) -> TailModel:
    """Tail model after the first M distinct zeros of ``table``.

    A and e are fitted by least squares to the used zeros in the second half
    of the table, with the slope fixed at the asymptotic spacing.  The window
    is long enough for 1/z to vary appreciably, and its even length averages
    out the alternating offsets of paired Struve zeros.
    """
    M = len(table) if M is None else int(M)
    if M < 1 or M > len(table):
        raise RangeExceeded(f"M={M} outside 1..{len(table)}")
    w = int(table.multiplicity[M - 1])
    d = math.pi * w
    z = table.zeros[:M]
    k = M - M // 2
    k -= k % 2 if k > 1 else 0
    zi = z[M - k:]
    back = np.arange(k - 1, -1, -1.0)
    if k >= _MIN_FIT:
        mat = np.column_stack([np.ones(k), 1.0 / zi])
        (anchor, drift), *_ = np.linalg.lstsq(mat, zi + d * back, rcond=None)
    else:
        anchor, drift = float(np.mean(zi + d * back)), 0.0
    return TailModel(float(anchor), d, float(drift), w)


@dataclass(frozen=True)
class ProductApprox:
    value: float
    factors_used: int
    tail_correction: float
    normalized: bool = False

    @property
    def uncorrected(self) -> float:
        return self.value / math.exp(self.tail_correction)


def _check_table(p: Params, table: ZeroTable):
    if table.params != p or table.derivative != 0:
        raise TableMismatch(f"zero table for {table.params} does not belong to {p}")


def _log_tail(x: float, tail: TailModel, tol: float = 1e-18) -> float:
    """log prod_{m>M} (1 - x^2/z_m^2) = -sum_j x^(2j)/j * T_2j."""
    r = (x / tail.last) ** 2
    total = 0.0
    j = 1
    while True:
        term = x ** (2 * j) / j * tail.power_sum(j)
        total -= term
        if term <= tol * max(abs(total), 1e-300) or j > 200:
            break
        j += 1
        if r**j < 1e-300:
            break
    return total


def _raw_factor(kernel: EvenKernel, x: float):
    """y(x) = g(x) * factor(x), with factor = lead x^(2 shift - a) / amp."""
    amp, a = _prefactor(kernel.params, kernel.normalized)
    expo = 2 * kernel.shift - a
    if x == 0:
        if expo > 0:
            return 0.0
        if expo == 0:
            return kernel.lead / amp
        raise PoleAtInput(f"{kernel.params} is singular at the origin")
    return kernel.lead * x**expo / amp


def eval_weierstrass(p: Params, x: float, table: ZeroTable, M: int | None = None, *,
                     normalized: bool = False, tail: bool = True) -> ProductApprox:
    """Truncated Weierstrass product for y^(n)(x) (or the kernel if ``normalized``).

    Uses the first M distinct zeros of ``table`` (multiple zeros contribute
    their factor repeatedly) and, if ``tail``, multiplies by the estimated
    contribution of the omitted factors.
    """
    _check_table(p, table)
    M = len(table) if M is None else int(M)
    if M < 1 or M > len(table):
        raise RangeExceeded(f"M={M} outside 1..{len(table)}")
    x = float(x)
    if abs(x) >= table.zeros[M - 1]:
        raise RangeExceeded(f"|x|={abs(x)} is not below the last used zero {table.zeros[M - 1]}")
    z = table.zeros[:M]
    mult = table.multiplicity[:M]
    prod = float(np.prod((1.0 - (x / z) ** 2) ** mult))
    corr = _log_tail(x, tail_model(table, M)) if tail and x != 0 else 0.0
    value = prod * math.exp(corr)
    if not normalized:
        kernel = EvenKernel(p, normalized=table.normalized)
        if x < 0:
            raise RangeExceeded("the raw derivative is evaluated for x >= 0 only")
        value *= _raw_factor(kernel, x)
    return ProductApprox(value, M, corr, normalized)


def _ml_tail(x: float, tail: TailModel, tol: float = 1e-18) -> float:
    """sum_{m>M} 2x/(z_m^2 - x^2) = 2x sum_j x^(2j-2) T_2j."""
    total = 0.0
    for j in range(1, 400):
        term = 2.0 * x ** (2 * j - 1) * tail.power_sum(j)
        total += term
        if abs(term) <= tol * max(abs(total), 1e-300):
            break
    return total


def eval_ml_ratio(p: Params, x: float, table: ZeroTable, M: int | None = None, *, tail: bool = True) -> float:
    """y^(n+1)(x) / y^(n)(x) from the partial-fraction expansion over the zeros.

    For Bessel this is (nu - n)/x - sum_m 2x/(z_m^2 - x^2).
    """
    _check_table(p, table)
    M = len(table) if M is None else int(M)
    if M < 1 or M > len(table):
        raise RangeExceeded(f"M={M} outside 1..{len(table)}")
    x = float(x)
    if abs(x) < 1e-9 or np.any(np.abs(table.zeros[:M] - abs(x)) < 1e-9):
        raise PoleAtInput(f"x={x} is at the origin or at a tabulated zero")
    if abs(x) >= table.zeros[M - 1]:
        raise RangeExceeded(f"|x|={abs(x)} is not below the last used zero {table.zeros[M - 1]}")
    _, a = _prefactor(p, table.normalized)
    lead = 2 * table.shift - a
    z = table.zeros[:M]
    mult = table.multiplicity[:M]
    s = float(np.sum(mult * 2.0 * x / (z * z - x * x)))
    if tail:
        s += _ml_tail(x, tail_model(table, M))
    return lead / x - s


def laguerre_inequality(p: Params, x, k: int = 1, opts: EvalOptions | None = None):
    """(g^(k))^2 - g^(k-1) g^(k+1) for the normalized kernel g."""
    if int(k) != k or k < 1:
        raise ValueError("k must be a positive integer")
    kernel = EvenKernel(p, opts=opts)
    d = kernel.derivs(x, k + 1)
    return d[k] ** 2 - d[k - 1] * d[k + 1]


@dataclass(frozen=True)
class RatioReport:
    interval: tuple
    samples: int
    strictly_decreasing: bool
    min_decrement: float
    left_value: float
    right_value: float


def _ratio(p: Params, x, opts: EvalOptions | None = None):
    """y^(n+1)/y^(n) via the kernel: (2 shift - a)/x + g'/g."""
    kernel = EvenKernel(p, opts=opts)
    _, a = _prefactor(p, kernel.normalized)
    d = kernel.derivs(x, 1)
    return (2 * kernel.shift - a) / x + d[1] / d[0]


def ratio_monotonic_check(p: Params, interval, samples: int = 64, opts: EvalOptions | None = None) -> RatioReport:
    """Sample y^(n+1)/y^(n) on a zero-free interval and test strict decrease."""
    a, b = float(interval[0]), float(interval[1])
    if not 0 < a < b:
        raise ValueError(f"need 0 < a < b, got {interval!r}")
    if samples < 2:
        raise ValueError("need at least two samples")
    count = int(b / math.pi) + 3
    zeros = zero_table(p, count, opts).zeros
    inside = zeros[(zeros >= a) & (zeros <= b)]
    if inside.size:
        raise IntervalStraddlesZero(f"({a}, {b}) contains the zero {inside[0]!r} of {p}")
    xs = np.linspace(a, b, samples)
    vals = _ratio(p, xs, opts)
    dec = -np.diff(vals)
    return RatioReport((a, b), samples, bool(np.all(dec > 0)), float(np.min(dec)), float(vals[0]), float(vals[-1]))
