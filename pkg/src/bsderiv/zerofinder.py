"""Positive real zeros of J_nu^(n), H_nu^(n) and of the Laguerre combinations.

All searching happens on the even kernel g (see ``specfun.EvenKernel``), which
has the same positive zeros as the raw derivative but no prefactor zero or
pole at the origin.  The combination functions

    (n - nu) J^(n)(x) + x J^(n+1)(x),   (n - nu - 1) H^(n)(x) + x H^(n+1)(x)

are x^(nu-n) (resp. x^(nu+1-n)) times g'(x) up to a constant, so their
positive zeros are the positive zeros of g'.  ``derivative=1`` selects them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import InsufficientZerosFound, NoSignChange, TableMismatch
from .specfun import EvalOptions, EvenKernel, Params

__all__ = [
    "Bracket",
    "ZeroTable",
    "InterlacingReport",
    "bracket_zeros",
    "refine_zero",
    "zero_table",
    "combo_zero_table",
    "check_interlacing",
    "check_separation",
]

SCAN_STEP = math.pi / 8
TANGENCY_TOL = 1e-8
_WIDTH_TOL = 1e-13
_MAX_ITER = 200


class Bracket(NamedTuple):
    lo: float
    hi: float
    multiplicity: int = 1
    scale: float = 1.0


@dataclass(frozen=True)
class ZeroTable:
    """Sorted positive zeros of one function with refinement metadata.

    ``multiplicity`` is 2 only at tangential (double) zeros, which occur at
    the Struve boundary order nu = 1/2.  ``shift`` records how many leading
    Maclaurin coefficients of the un-normalized kernel vanish; a positive
    shift means the raw derivative has an extra zero at the origin.
    """

    params: Params
    zeros: np.ndarray
    residuals: np.ndarray
    bracket_width: np.ndarray
    scales: np.ndarray
    multiplicity: np.ndarray
    derivative: int = 0
    shift: int = 0
    normalized: bool = True

    def __len__(self):
        return len(self.zeros)

    @property
    def kind(self) -> str:
        return "base" if self.derivative == 0 else "combo"

    @property
    def all_simple(self) -> bool:
        return bool(np.all(self.multiplicity == 1))

    def with_multiplicity(self) -> np.ndarray:
        """Zeros repeated according to multiplicity."""
        return np.repeat(self.zeros, self.multiplicity)

    def head(self, m: int) -> "ZeroTable":
        return ZeroTable(
            self.params,
            self.zeros[:m],
            self.residuals[:m],
            self.bracket_width[:m],
            self.scales[:m],
            self.multiplicity[:m],
            self.derivative,
            self.shift,
            self.normalized,
        )


@dataclass(frozen=True)
class InterlacingReport:
    pairs_checked: int
    violations: list
    max_margin: float
    min_margin: float
    origin_prepended: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations


def _kernel(p: Params, opts: EvalOptions | None, normalized: bool | None = None) -> EvenKernel:
    return EvenKernel(p, normalized=normalized, opts=opts)


def _sign(v):
    return np.sign(v)


def _refine_batch(kernel: EvenKernel, j: int, lo, hi):
    """Safeguarded Newton on g^(j) for many brackets at once.

    Newton iterates that leave the bracket fall back to bisection; once the
    Newton correction drops below the width tolerance the bracket is closed
    by probing on both sides of the iterate.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    flo = kernel.derivs(lo, j)[j]
    fhi = kernel.derivs(hi, j)[j]
    if np.any(_sign(flo) * _sign(fhi) > 0):
        bad = int(np.flatnonzero(_sign(flo) * _sign(fhi) > 0)[0])
        raise NoSignChange(f"no sign change on ({lo[bad]!r}, {hi[bad]!r}) for {kernel.params}")
    exact_lo = flo == 0
    exact_hi = fhi == 0
    hi = np.where(exact_lo, lo, hi)
    lo = np.where(exact_hi, hi, lo)
    tol = _WIDTH_TOL * (1.0 + np.abs(lo))
    x = 0.5 * (lo + hi)
    done = (hi - lo) <= 0.5 * tol

    def update(idx, pts, vals):
        nonlocal lo, hi, flo, fhi
        inside = (pts > lo[idx]) & (pts < hi[idx])
        same = _sign(vals) == _sign(flo[idx])
        zero = vals == 0
        sel = idx[inside & zero]
        lo[sel] = pts[inside & zero]
        hi[sel] = pts[inside & zero]
        m = inside & ~zero & same
        lo[idx[m]] = pts[m]
        flo[idx[m]] = vals[m]
        m = inside & ~zero & ~same
        hi[idx[m]] = pts[m]
        fhi[idx[m]] = vals[m]

    for _ in range(_MAX_ITER):
        idx = np.flatnonzero(~done)
        if idx.size == 0:
            break
        d = kernel.derivs(x[idx], j + 1)
        f, fp = d[j], d[j + 1]
        update(idx, x[idx], f)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = x[idx] - f / fp
        ok = np.isfinite(newton) & (newton > lo[idx]) & (newton < hi[idx])
        step_small = ok & (np.abs(newton - x[idx]) < 0.25 * tol[idx])
        # close the bracket around converged iterates
        sidx = idx[step_small]
        if sidx.size:
            t = 0.25 * tol[sidx]
            for probe in (newton[step_small] - t, newton[step_small] + t):
                update(sidx, probe, kernel.derivs(probe, j)[j])
        nxt = np.where(ok, newton, 0.5 * (lo[idx] + hi[idx]))
        width = hi[idx] - lo[idx]
        nxt = np.where(width <= tol[idx], 0.5 * (lo[idx] + hi[idx]), nxt)
        # a stalled Newton sequence far from closing is replaced by bisection
        nxt = np.where(step_small, 0.5 * (lo[idx] + hi[idx]), nxt)
        x[idx] = nxt
        done[idx] = width <= tol[idx]
    width = hi - lo
    # secant point inside the final bracket
    with np.errstate(divide="ignore", invalid="ignore"):
        sec = lo - flo * (hi - lo) / (fhi - flo)
    z = np.where(np.isfinite(sec) & (sec >= lo) & (sec <= hi), sec, 0.5 * (lo + hi))
    res = np.abs(kernel.derivs(z, j)[j])
    return z, res, width


def _local_scale(grid_x, grid_f, z, half_window=math.pi / 2):
    """Max |f| over scan points within half_window of each zero."""
    out = np.empty(len(z))
    for i, zi in enumerate(z):
        sel = np.abs(grid_x - zi) <= half_window
        out[i] = np.max(np.abs(grid_f[sel])) if np.any(sel) else np.max(np.abs(grid_f))
    return out


def _scan(kernel: EvenKernel, m_max: int, j: int, ceiling: float):
    """Sign-change and tangency brackets of g^(j) on (0, ceiling]."""
    brackets: list[Bracket] = []
    xs_all, fs_all = [], []
    start = 1e-3 * SCAN_STEP
    while start < ceiling and len(brackets) < m_max:
        need = m_max - len(brackets)
        npts = min(int(8 * (need + 2)) + 1, int(math.ceil((ceiling - start) / SCAN_STEP)) + 1)
        npts = max(npts, 2)
        grid = start + SCAN_STEP * np.arange(npts)
        d = kernel.derivs(grid, j + 2)
        f, fp = d[j], d[j + 1]
        xs_all.append(grid)
        fs_all.append(f)
        for i in range(len(grid) - 1):
            a, b = grid[i], grid[i + 1]
            fa, fb = f[i], f[i + 1]
            if _sign(fa) != _sign(fb):
                brackets.append(Bracket(a, b, 1, max(abs(fa), abs(fb))))
            elif _sign(fp[i]) != _sign(fp[i + 1]) and fa * fp[i] < 0:
                # |g| dips inside (a, b): locate the dip, then decide
                xs, _, _ = _refine_batch(kernel, j + 1, [a], [b])
                fs = kernel.derivs(xs, j)[j][0]
                scale = max(abs(fa), abs(fb))
                # a dip within roundoff of zero is one double zero, even when
                # rounding flips its sign
                if abs(fs) <= TANGENCY_TOL * scale:
                    brackets.append(Bracket(xs[0], xs[0], 2, scale))
                elif _sign(fs) != _sign(fa):
                    brackets.append(Bracket(a, xs[0], 1, scale))
                    brackets.append(Bracket(xs[0], b, 1, scale))
            if len(brackets) >= m_max:
                break
        start = grid[-1]
    xs = np.concatenate(xs_all) if xs_all else np.array([])
    fs = np.concatenate(fs_all) if fs_all else np.array([])
    return brackets, xs, fs


def _ceiling(p: Params, m_max: int) -> float:
    return (m_max + 5) * 2 * math.pi + 2 * abs(p.nu)


def bracket_zeros(p: Params, m_max: int, opts: EvalOptions | None = None, *, derivative: int = 0,
                  normalized: bool | None = None) -> list[Bracket]:
    """At least ``m_max`` ordered, disjoint brackets for positive zeros.

    Simple zeros come as sign-change brackets; a tangential zero comes as a
    degenerate bracket (lo == hi) with multiplicity 2.
    """
    kernel = _kernel(p, opts, normalized)
    ceiling = _ceiling(p, m_max)
    brackets, _, _ = _scan(kernel, m_max, derivative, ceiling)
    if len(brackets) < m_max:
        raise InsufficientZerosFound(
            f"found {len(brackets)} of {m_max} zeros for {p} below x = {ceiling:.6g}"
        )
    return brackets[:m_max]


def refine_zero(p: Params, bracket, opts: EvalOptions | None = None, *, derivative: int = 0,
                normalized: bool | None = None):
    """Refine one sign-change bracket; returns (zero, residual)."""
    lo, hi = float(bracket[0]), float(bracket[1])
    kernel = _kernel(p, opts, normalized)
    z, res, _ = _refine_batch(kernel, derivative, [lo], [hi])
    return float(z[0]), float(res[0])


@lru_cache(maxsize=512)
def _table(p: Params, m_max: int, opts: EvalOptions | None, derivative: int, normalized: bool | None):
    kernel = _kernel(p, opts, normalized)
    ceiling = _ceiling(p, m_max)
    brackets, gx, gf = _scan(kernel, m_max, derivative, ceiling)
    if len(brackets) < m_max:
        raise InsufficientZerosFound(
            f"found {len(brackets)} of {m_max} zeros for {p} below x = {ceiling:.6g}"
        )
    brackets = brackets[:m_max]
    mult = np.array([b.multiplicity for b in brackets], dtype=int)
    zeros = np.empty(m_max)
    res = np.empty(m_max)
    width = np.zeros(m_max)
    simple = mult == 1
    if np.any(simple):
        lo = [b.lo for b, s in zip(brackets, simple) if s]
        hi = [b.hi for b, s in zip(brackets, simple) if s]
        z, r, w = _refine_batch(kernel, derivative, lo, hi)
        zeros[simple] = z
        res[simple] = r
        width[simple] = w
    if np.any(~simple):
        z = np.array([b.lo for b, s in zip(brackets, simple) if not s])
        zeros[~simple] = z
        res[~simple] = np.abs(kernel.derivs(z, derivative)[derivative])
    scales = _local_scale(gx, gf, zeros)
    for arr in (zeros, res, width, scales, mult):
        arr.setflags(write=False)
    return ZeroTable(p, zeros, res, width, scales, mult, derivative, kernel.shift, kernel.normalized)


def zero_table(p: Params, m_max: int, opts: EvalOptions | None = None, *, normalized: bool | None = None) -> ZeroTable:
    """First ``m_max`` positive zeros of J_nu^(n) or H_nu^(n)."""
    return _table(p, int(m_max), opts, 0, normalized)


def combo_zero_table(p: Params, m_max: int, opts: EvalOptions | None = None, *, normalized: bool | None = None) -> ZeroTable:
    """Positive zeros of the Laguerre combination attached to ``p``."""
    return _table(p, int(m_max), opts, 1, normalized)


def _interlace(first: np.ndarray, second: np.ndarray, strict: bool = True):
    """Check first[m] < second[m] < first[m+1] for every available m."""
    count = min(len(second), len(first) - 1)
    violations = []
    margins = []
    for m in range(count):
        a, b, c = first[m], second[m], first[m + 1]
        lower, upper = b - a, c - b
        margins.extend((lower, upper))
        bad = (lower <= 0 or upper <= 0) if strict else (lower < 0 or upper < 0)
        if bad:
            violations.append((m + 1, float(a), float(b), float(c)))
    if not margins:
        return 0, violations, float("nan"), float("nan")
    return count, violations, float(max(margins)), float(min(margins))


def check_interlacing(lower_table: ZeroTable, upper_table: ZeroTable) -> InterlacingReport:
    """Interlacing of the zeros of y^(n) (lower) and y^(n+1) (upper).

    Verifies z^(n+1)_m < z^(n)_m < z^(n+1)_{m+1}.  When y^(n+1) vanishes at
    the origin but y^(n) does not (nu = n for Bessel), the origin is counted
    as the first zero of y^(n+1), the usual convention j'_{0,1} = 0.
    """
    lp, up = lower_table.params, upper_table.params
    if lp.family is not up.family or lp.nu != up.nu:
        raise TableMismatch(f"tables disagree: {lp} vs {up}")
    if up.n != lp.n + 1 or lower_table.derivative or upper_table.derivative:
        raise TableMismatch(f"upper table must hold derivative order n+1: {lp} vs {up}")
    upper = upper_table.with_multiplicity()
    lower = lower_table.with_multiplicity()
    prepend = upper_table.shift > lower_table.shift
    if prepend:
        upper = np.concatenate(([0.0], upper))
    count, viol, mx, mn = _interlace(upper, lower)
    return InterlacingReport(count, viol, mx, mn, prepend)


def check_separation(base: ZeroTable, combo: ZeroTable, strict: bool = True) -> InterlacingReport:
    """Laguerre separation: base_m < combo_m < base_{m+1}.

    Multiple zeros are expanded by multiplicity; with ``strict=False`` the
    inequalities are allowed to hold with equality, which is what a double
    zero of the base function forces.
    """
    if base.params != combo.params or base.derivative != 0 or combo.derivative != 1:
        raise TableMismatch(f"need base and combo tables for the same parameters: {base.params} vs {combo.params}")
    count, viol, mx, mn = _interlace(base.with_multiplicity(), combo.with_multiplicity(), strict)
    return InterlacingReport(count, viol, mx, mn)
