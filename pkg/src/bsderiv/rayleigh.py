"""Rayleigh sums sigma_2k = sum_m z_m^(-2k) over positive zeros.

Three routes are provided and cross-checked against each other:

* closed forms for the Struve family (H, H', H'') on -1/2 <= nu <= 1/2;
* Newton's identities applied to the Maclaurin coefficients of the even
  kernel g(x) = prod (1 - x^2/z_m^2) = sum c_k x^(2k), which gives every
  sigma_2k exactly (c_k = (-1)^k e_k with e_k the elementary symmetric
  functions of z_m^-2);
* direct summation over a zero table, with a tail bound and a
  tail-corrected, Richardson-extrapolated estimate of sigma_2.

Multiple zeros (the double zeros of H_{1/2}) are counted with their
multiplicity, which is what the product representation requires.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import NotNormalized, OutOfTheoremRange
from .expansions import tail_model
from .specfun import EvenKernel, Params
from .zerofinder import ZeroTable, zero_table

__all__ = [
    "Variant",
    "RayleighReport",
    "closed_form_sums",
    "numeric_sums",
    "richardson_sigma2",
    "sums_from_coefficients",
    "lower_bounds",
    "rayleigh_report",
]

RICHARDSON_ORDER = 3


class Variant(str, Enum):
    H = "h"
    HPRIME = "hprime"
    HDOUBLEPRIME = "hdoubleprime"
    JNORM = "jnorm"

    @property
    def struve_n(self) -> int:
        return {"h": 0, "hprime": 1, "hdoubleprime": 2}[self.value]


def _struve_range(variant: Variant, nu: float, closed: bool = True):
    if variant is Variant.JNORM:
        raise ValueError("closed forms exist only for the Struve variants h, hprime, hdoubleprime")
    if closed:
        if not -0.5 <= nu <= 0.5:
            raise OutOfTheoremRange(f"closed forms hold for nu in [-1/2, 1/2], got {nu}")
    elif not abs(nu) < 0.5:
        raise OutOfTheoremRange(f"first-zero bounds hold for |nu| < 1/2, got {nu}")
    if variant is Variant.HDOUBLEPRIME and not nu > 0:
        raise OutOfTheoremRange(f"the H'' formulas need nu > 0, got {nu}")


def closed_form_sums(variant, nu: float) -> tuple[float, float]:
    """(sigma_2, sigma_4) for the zeros of H_nu, H_nu' or H_nu''."""
    variant = Variant(variant)
    _struve_range(variant, nu)
    a = 2 * nu + 3
    if variant is Variant.H:
        return 1 / (3 * a), (7 - 2 * nu) / (45 * a**2 * (2 * nu + 5))
    if variant is Variant.HPRIME:
        s2 = (nu + 3) / (3 * (nu + 1) * a)
        s4 = (-2 * nu**3 - 5 * nu**2 + 72 * nu + 135) / (45 * (nu + 1) ** 2 * a**2 * (2 * nu + 5))
        return s2, s4
    s2 = (nu + 2) * (nu + 3) / (3 * nu * (nu + 1) * a)
    num = -2 * nu**5 - 13 * nu**4 + 92 * nu**3 + 763 * nu**2 + 1500 * nu + 900
    s4 = num / (45 * nu**2 * (nu + 1) ** 2 * a**2 * (2 * nu + 5))
    return s2, s4


def sums_from_coefficients(series_coeffs, k_max: int) -> np.ndarray:
    """sigma_2, sigma_4, ..., sigma_2k_max from c_0 = 1, c_1, c_2, ...

    Newton's identities: sigma_2k = -k c_k - sum_{i=1}^{k-1} c_i sigma_2(k-i).
    """
    c = np.asarray(series_coeffs, dtype=float)
    if c.size == 0 or abs(c[0] - 1.0) > 1e-14:
        raise NotNormalized(f"leading coefficient must be 1, got {c[0] if c.size else None!r}")
    if k_max < 1 or c.size < k_max + 1:
        raise ValueError(f"need at least k_max + 1 = {k_max + 1} coefficients")
    sig = np.zeros(k_max + 1)
    for k in range(1, k_max + 1):
        acc = -k * c[k]
        for i in range(1, k):
            acc -= c[i] * sig[k - i]
        sig[k] = acc
    return sig[1:]


def numeric_sums(table: ZeroTable, k_max: int, M: int | None = None) -> list[tuple[float, float]]:
    """Partial sums over the first M zeros with an integral-comparison tail bound.

    The omitted zeros are spaced about pi apart (pi times the multiplicity
    for multiple zeros), so sum_{m>M} z_m^-2k <= z_M^(1-2k) / (pi (2k-1)).
    """
    if len(table) == 0:
        raise ValueError("empty zero table")
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    M = len(table) if M is None else int(M)
    z = table.zeros[:M]
    w = table.multiplicity[:M]
    out = []
    for k in range(1, k_max + 1):
        s = float(np.sum(w * z ** (-2.0 * k)))
        bound = float(z[-1] ** (1 - 2 * k) / (math.pi * (2 * k - 1)))
        out.append((s, bound))
    return out


def _corrected_sigma(table: ZeroTable, M: int, k: int = 1) -> float:
    z = table.zeros[:M]
    w = table.multiplicity[:M]
    return float(np.sum(w * z ** (-2.0 * k))) + tail_model(table, M).power_sum(k)


def richardson_sigma2(table: ZeroTable, M: int | None = None) -> float:
    """Tail-corrected sigma_2 with one Richardson step between M/2 and M zeros.

    After the zeta tail correction the remaining error decays like M^-3,
    which fixes the extrapolation weights.
    """
    M = len(table) if M is None else int(M)
    if M < 16:
        raise ValueError("Richardson extrapolation needs at least 16 zeros")
    fine = _corrected_sigma(table, M)
    coarse = _corrected_sigma(table, M // 2)
    r = (M / (M // 2)) ** RICHARDSON_ORDER
    return (r * fine - coarse) / (r - 1)


def lower_bounds(variant, nu: float) -> list[tuple[str, float]]:
    """First-zero lower bounds from sigma_2 and sigma_4.

    Returns ("z_1", 1/sqrt(sigma_2)) and ("z_1^2", 1/sqrt(sigma_4)): since
    every term of a Rayleigh sum is positive, z_1^-2 < sigma_2 and
    z_1^-4 < sigma_4.
    """
    variant = Variant(variant)
    _struve_range(variant, nu, closed=False)
    s2, s4 = closed_form_sums(variant, nu)
    return [("z_1", 1 / math.sqrt(s2)), ("z_1^2", 1 / math.sqrt(s4))]


@dataclass(frozen=True)
class RayleighReport:
    family_variant: Variant
    nu: float
    n: int
    sigma2: float
    sigma4: float
    higher: tuple = ()
    numeric_sigma2: float = math.nan
    numeric_sigma4: float = math.nan
    sigma2_extrapolated: float = math.nan
    tail_bounds: tuple = ()
    zeros_used: int = 0
    endpoint: bool = False
    notes: tuple = field(default_factory=tuple)


def _kernel_params(variant: Variant, nu: float, n: int | None) -> Params:
    if variant is Variant.JNORM:
        if n is None:
            raise ValueError("the jnorm variant needs the derivative order n")
        return Params.bessel(nu, n)
    return Params.struve(nu, variant.struve_n)


def rayleigh_report(variant, nu: float, n: int | None = None, *, zeros: int = 500, k_max: int = 4) -> RayleighReport:
    """Closed-form (or coefficient-route) sums next to their numeric counterparts."""
    variant = Variant(variant)
    p = _kernel_params(variant, nu, n)
    coeffs = EvenKernel(p).coefficients(k_max + 1)
    exact = sums_from_coefficients(coeffs, k_max)
    if variant is Variant.JNORM:
        s2, s4 = float(exact[0]), float(exact[1])
    else:
        s2, s4 = closed_form_sums(variant, nu)
    table = zero_table(p, zeros)
    num = numeric_sums(table, 2)
    notes = []
    endpoint = variant is not Variant.JNORM and abs(abs(nu) - 0.5) < 1e-12
    if endpoint and not table.all_simple:
        notes.append("double zeros counted with multiplicity 2")
    return RayleighReport(
        variant, float(nu), p.n, s2, s4,
        higher=tuple(float(v) for v in exact[2:]),
        numeric_sigma2=num[0][0],
        numeric_sigma4=num[1][0],
        sigma2_extrapolated=richardson_sigma2(table),
        tail_bounds=(num[0][1], num[1][1]),
        zeros_used=len(table),
        endpoint=endpoint,
        notes=tuple(notes),
    )
