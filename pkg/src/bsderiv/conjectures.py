"""Complex-zero counting for the even kernels and the two conjecture scans.

Counting is done with the argument principle on a rectangle: the winding
number (1/2 pi i) of f'/f around the boundary, by composite trapezoid rules
on each side with the node count doubled until the estimate settles near an
integer.  Nonreal zeros are what is left after subtracting the real zeros
(both signs) known from ``zerofinder``; purely imaginary zeros come from the
real function y -> g(iy).
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    BoundaryZeroUnresolvable,
    CountingInconsistency,
    QuadratureNonConvergence,
)
from .specfun import EvenKernel, Params, normalization_pole
from .zerofinder import zero_table

__all__ = [
    "Rect",
    "QuadOptions",
    "ComplexZeroReport",
    "ScanRow",
    "MonotoneScan",
    "count_zeros_rect",
    "complex_zero_report",
    "hurwitz_verify",
    "conjecture1_scan",
    "monotonicity_scan",
]


@dataclass(frozen=True)
class Rect:
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    def __post_init__(self):
        if not (self.re_lo < self.re_hi and self.im_lo < self.im_hi):
            raise ValueError(f"degenerate rectangle {self}")

    @classmethod
    def square(cls, r: float) -> "Rect":
        return cls(-r, r, -r, r)

    def grown(self, d: float) -> "Rect":
        return Rect(self.re_lo - d, self.re_hi + d, self.im_lo - d, self.im_hi + d)

    def corners(self):
        return (
            complex(self.re_lo, self.im_lo),
            complex(self.re_hi, self.im_lo),
            complex(self.re_hi, self.im_hi),
            complex(self.re_lo, self.im_hi),
        )


@dataclass(frozen=True)
class QuadOptions:
    n_start: int = 64
    n_max: int = 2**15
    stable_tol: float = 1e-3
    snap_tol: float = 0.25
    clearance: float = 1e-2
    nudge: float = 1e-3
    max_nudges: int = 10


# -- the function handle ------------------------------------------------------------

def _as_handle(fn):
    """Return (f, df) callables; df is None when only f is available."""
    if hasattr(fn, "derivs"):
        def f(z):
            return fn.derivs(z, 0)[0]

        def df_pair(z):
            d = fn.derivs(z, 1)
            return d[0], d[1]

        return f, df_pair
    if isinstance(fn, tuple) and len(fn) == 2:
        f, df = fn

        def df_pair(z):
            return f(z), df(z)

        return f, df_pair
    return fn, None


_NODE_SPACING = 0.25


def _side_nodes(a: complex, b: complex, n: int) -> np.ndarray:
    return a + (b - a) * np.linspace(0.0, 1.0, n + 1)


def _winding_trapezoid(pair, rect: Rect, n: int) -> float:
    total = 0.0 + 0.0j
    c = rect.corners()
    for i in range(4):
        a, b = c[i], c[(i + 1) % 4]
        z = _side_nodes(a, b, n)
        f, fp = pair(z)
        g = fp / f
        w = np.full(n + 1, 1.0)
        w[0] = w[-1] = 0.5
        total += np.sum(w * g) * (b - a) / n
    return float((total / (2j * math.pi)).real)


def _winding_phase(f, rect: Rect, n: int) -> float:
    c = rect.corners()
    pts = np.concatenate([_side_nodes(c[i], c[(i + 1) % 4], n)[:-1] for i in range(4)] + [np.array([c[0]])])
    vals = f(pts)
    d = np.diff(np.unwrap(np.angle(vals)))
    if np.max(np.abs(d)) > math.pi / 4:
        return math.nan
    return float(np.sum(d) / (2 * math.pi))


def _near_boundary(pair, rect: Rect, opts: QuadOptions) -> bool:
    """Newton estimates of zeros lying within ``clearance`` of a side."""
    c = rect.corners()
    for i in range(4):
        a, b = c[i], c[(i + 1) % 4]
        # node spacing stays well below 1, the size of f/f' far from zeros
        # of a function growing like exp|Im z|
        n = max(512, int(math.ceil(abs(b - a) / _NODE_SPACING)))
        z = _side_nodes(a, b, n)
        f, fp = pair(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            delta = f / fp
        h = abs(b - a) / n
        close = np.isfinite(delta) & (np.abs(delta) < 2 * h)
        if not np.any(close):
            if np.any(f == 0):
                return True
            continue
        zs = z[close] - delta[close]
        u = (b - a) / abs(b - a)
        # perpendicular distance from the estimated zero to the side's line
        dist = np.abs(((zs - a) / u).imag)
        if np.any(dist < opts.clearance):
            return True
    return False


def count_zeros_rect(fn, rect: Rect, quad_opts: QuadOptions | None = None) -> int:
    """Number of zeros of an entire function inside ``rect``.

    ``fn`` may be an object with ``derivs(z, k)`` (such as ``EvenKernel``),
    a pair (f, f'), or a bare callable, for which the change of argument
    along the boundary is accumulated instead of integrating f'/f.
    """
    opts = quad_opts or QuadOptions()
    f, pair = _as_handle(fn)
    work = rect
    if pair is not None:
        for attempt in range(opts.max_nudges + 1):
            if not _near_boundary(pair, work, opts):
                break
            if attempt == opts.max_nudges:
                raise BoundaryZeroUnresolvable(f"a zero stays within {opts.clearance} of {rect}")
            work = work.grown(opts.nudge * (attempt + 1))
    n = opts.n_start
    prev = None
    while n <= opts.n_max:
        est = _winding_trapezoid(pair, work, n) if pair is not None else _winding_phase(f, work, n)
        if prev is not None and math.isfinite(est) and math.isfinite(prev):
            near = abs(est - round(est)) <= opts.snap_tol
            if near and abs(est - prev) <= opts.stable_tol:
                return int(round(est))
        prev = est
        n *= 2
    raise QuadratureNonConvergence(f"winding number did not settle on {work} (last estimate {prev!r})")


# -- reports ------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexZeroReport:
    nu: float
    n: int
    total_nonreal: int
    purely_imaginary: int
    rect_used: Rect
    stabilized: bool
    real_zeros: int = 0
    history: tuple = ()

    def as_dict(self) -> dict:
        return {
            "nu": self.nu,
            "n": self.n,
            "total_nonreal": self.total_nonreal,
            "purely_imaginary": self.purely_imaginary,
            "stabilized": self.stabilized,
            "real_zeros": self.real_zeros,
            "rect": [self.rect_used.re_lo, self.rect_used.re_hi, self.rect_used.im_lo, self.rect_used.im_hi],
        }


def _kernel(p: Params) -> EvenKernel:
    # the gamma normalization is singular on integer strip boundaries, so
    # below n - 1 the un-normalized series is the canonical object
    normalized = p.nu > p.n - 1 and not normalization_pole(p)
    return EvenKernel(p, normalized=normalized)


def _real_half_width(p: Params, r: float) -> tuple[float, int]:
    """A half-width near r placed midway between real zeros, and the zeros inside."""
    m = int(r / math.pi) + 6
    z = zero_table(p, m, normalized=_kernel(p).normalized)
    zeros, mult = z.zeros, z.multiplicity
    k = int(np.searchsorted(zeros, r))
    if k == 0:
        half = min(r, 0.5 * zeros[0])
    else:
        half = 0.5 * (zeros[k - 1] + zeros[k])
    inside = int(np.sum(mult[zeros < half]))
    return float(half), inside


def _imaginary_zeros(kernel: EvenKernel, r: float, step: float = math.pi / 32) -> int:
    """Positive zeros of y -> g(iy) on (0, r), by sign changes of the real restriction."""
    y = np.arange(step, r, step)
    if y.size < 2:
        return 0
    v = np.real(kernel.derivs(1j * y, 0)[0])
    s = np.sign(v)
    return int(np.sum(s[:-1] * s[1:] < 0))


def complex_zero_report(p: Params, r0: float | None = None, quad_opts: QuadOptions | None = None,
                        max_doublings: int = 4) -> ComplexZeroReport:
    """Nonreal and purely imaginary zero counts of the even kernel attached to p.

    The rectangle starts at half-size r0 (default (|nu| + 5) pi) and doubles
    until two consecutive nonreal counts agree.
    """
    kernel = _kernel(p)
    r = float(r0) if r0 else (abs(p.nu) + 5) * math.pi
    history = []
    prev = None
    rect = None
    for _ in range(max_doublings + 1):
        half, real_inside = _real_half_width(p, r)
        rect = Rect(-half, half, -r, r)
        total = count_zeros_rect(kernel, rect, quad_opts)
        nonreal = total - 2 * real_inside
        if nonreal < 0 or nonreal % 2:
            raise CountingInconsistency(
                f"{total} zeros in {rect} but {2 * real_inside} real ones for {p}"
            )
        history.append((r, total, nonreal))
        if prev is not None and nonreal == prev:
            break
        prev = nonreal
        r *= 2
    stabilized = len(history) >= 2 and history[-1][2] == history[-2][2]
    imag = 2 * _imaginary_zeros(kernel, history[-1][0])
    if imag > history[-1][2]:
        raise CountingInconsistency(f"{imag} imaginary zeros exceed {history[-1][2]} nonreal ones for {p}")
    return ComplexZeroReport(float(p.nu), p.n, history[-1][2], imag, rect, stabilized,
                             2 * real_inside, tuple(history))


def hurwitz_verify(nu: float, quad_opts: QuadOptions | None = None) -> ComplexZeroReport:
    """Complex-zero counts of JJ_{nu,0}, to compare with the classical Hurwitz counts."""
    if float(nu).is_integer() and nu < 0:
        raise ValueError(f"integer order {nu} lies on a strip boundary and is excluded")
    return complex_zero_report(Params.bessel(nu, 0), quad_opts=quad_opts)


# -- scans --------------------------------------------------------------------------

@dataclass(frozen=True)
class ScanRow:
    nu: float
    n: int
    s: int
    part: str
    strip: tuple
    conjectured: int
    report: ComplexZeroReport

    @property
    def agrees(self) -> bool:
        return self.report.total_nonreal == self.conjectured


def _strips(n: int, s_max: int):
    """(s, part, strip, conjectured count); part "real" is the strip (n-1, n)
    just above the conjectures, where all zeros are known to be real."""
    yield 0, "real", (n - 1, n), 0
    for s in range(s_max + 1):
        yield s, "a", (n - 2 * s - 2, n - 2 * s - 1), 4 * s + 2
        if s >= 1:
            yield s, "b", (n - 2 * s - 1, n - 2 * s), 4 * s


def _scan_one(args):
    nu, n = args
    return complex_zero_report(Params.bessel(nu, n))


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def conjecture1_scan(n: int, s_max: int, samples_per_strip: int = 3, *, margin: float = 0.05,
                     jobs: int = 1) -> list[ScanRow]:
    """Measured nonreal counts next to 4s+2 (strip a) and 4s (strip b).

    Rows come back in strip order whatever ``jobs`` is.  They are evidence
    for the counts, not a verification of them.
    """
    if samples_per_strip < 1:
        raise ValueError("need at least one sample per strip")
    plan = []
    for s, part, (lo, hi), expected in _strips(n, s_max):
        for nu in np.linspace(lo + margin, hi - margin, samples_per_strip):
            plan.append((s, part, (lo, hi), float(nu), expected))
    reports = _map(_scan_one, [(row[3], n) for row in plan], jobs)
    return [ScanRow(nu, n, s, part, strip, expected, rep) for (s, part, strip, nu, expected), rep in zip(plan, reports)]


@dataclass(frozen=True)
class MonotoneScan:
    n: int
    m: int
    nu: tuple
    zeros: tuple
    monotone: bool


def _mth_zero(args):
    nu, n, m = args
    return float(zero_table(Params.bessel(nu, n), m).zeros[m - 1])


def monotonicity_scan(n: int, m: int, nu_grid, *, jobs: int = 1) -> MonotoneScan:
    """The m-th positive zero of J_nu^(n) along a grid of orders, with a strict-increase flag."""
    grid = [float(v) for v in nu_grid]
    if not grid:
        raise ValueError("empty grid")
    if any(v <= n - 1 for v in grid):
        raise ValueError(f"grid must lie in (n-1, inf) = ({n - 1}, inf)")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing")
    zeros = _map(_mth_zero, [(v, n, m) for v in grid], jobs)
    mono = all(b > a for a, b in zip(zeros, zeros[1:]))
    return MonotoneScan(n, m, tuple(grid), tuple(zeros), mono)
