"""Acceptance criteria 1-8, one PASS/FAIL line each.

Run under pytest (the lines are printed in the terminal summary) or directly:

    python tests/test_acceptance.py
"""
from __future__ import annotations

import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
import protocols  # noqa: E402
from bsderiv.conjectures import conjecture1_scan, hurwitz_verify, monotonicity_scan  # noqa: E402
from bsderiv.expansions import eval_ml_ratio, eval_weierstrass, laguerre_inequality  # noqa: E402
from bsderiv.jensen import CROSSCHECK_TOL, jensen_coeffs_bessel, jensen_coeffs_struve, real_rooted_check  # noqa: E402
from bsderiv.rayleigh import Variant, closed_form_sums, lower_bounds, numeric_sums, richardson_sigma2, sums_from_coefficients  # noqa: E402
from bsderiv.specfun import EvenKernel, Params, eval_f_aux, eval_H_deriv, eval_J_deriv  # noqa: E402
from bsderiv.zerofinder import check_interlacing, check_separation, combo_zero_table, zero_table  # noqa: E402

RESULTS: dict[int, tuple[bool, str]] = {}


def _record(k: int, ok: bool, detail: str):
    RESULTS[k] = (ok, detail)
    return ok


def format_line(k: int) -> str:
    ok, detail = RESULTS[k]
    return f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}"


# -- 1 -------------------------------------------------------------------------------

def criterion_1():
    t0 = time.perf_counter()
    bad = []
    cases = 0
    for n in range(6):
        for nu in (n, n + 0.5, n + 2, n + 10):
            rep = check_interlacing(zero_table(Params.bessel(nu, n), 10), zero_table(Params.bessel(nu, n + 1), 11))
            cases += 1
            if not rep.ok or rep.pairs_checked < 10:
                bad.append((nu, n, rep.violations[:1]))
    dt = time.perf_counter() - t0
    return _record(1, not bad and dt < 30, f"{cases} (nu, n) cases, {len(bad)} with violations, {dt:.1f} s")


# -- 2 -------------------------------------------------------------------------------

def criterion_2():
    worst = math.inf
    ok = True
    for nu, n in ((2.0, 2), (1.0, 1), (0.0, 0)):
        rep = check_interlacing(zero_table(Params.bessel(nu, n), 8), zero_table(Params.bessel(nu, n + 1), 9))
        ok &= rep.ok and rep.pairs_checked >= 8 and rep.min_margin > 1e-6
        worst = min(worst, rep.min_margin)
    return _record(2, ok, f"three chains x 8 links, smallest margin {worst:.3g}")


# -- 3 -------------------------------------------------------------------------------

_GRID3 = {
    Variant.H: (-0.4, -0.2, 0.0, 0.25, 0.5),
    Variant.HPRIME: (-0.4, -0.2, 0.0, 0.25, 0.5),
    Variant.HDOUBLEPRIME: (0.25, 0.5),
}


def criterion_3():
    coef_err = sig4_err = sig2_err = 0.0
    for variant, grid in _GRID3.items():
        for nu in grid:
            p = Params.struve(nu, variant.struve_n)
            want = np.array(closed_form_sums(variant, nu))
            got = sums_from_coefficients(EvenKernel(p).coefficients(3), 2)
            coef_err = max(coef_err, float(np.max(np.abs(got - want) / want)))
            t = zero_table(p, 500)
            sig4_err = max(sig4_err, abs(numeric_sums(t, 2)[1][0] - want[1]))
            sig2_err = max(sig2_err, abs(richardson_sigma2(t) - want[0]))
    anchors = [
        (closed_form_sums("h", -0.5), (oracles.basel(1), oracles.basel(2))),
        (closed_form_sums("h", 0.5), (oracles.basel(1, 2 * math.pi, 2), oracles.basel(2, 2 * math.pi, 2))),
    ]
    anchor_err = max(abs(a - b) for got, want in anchors for a, b in zip(got, want))
    ok = coef_err <= 1e-13 and sig4_err <= 1e-9 and sig2_err <= 1e-8 and anchor_err <= 1e-12
    return _record(
        3, ok,
        f"coefficient route rel err {coef_err:.2g}, sigma4 err {sig4_err:.2g}, "
        f"extrapolated sigma2 err {sig2_err:.2g}, anchor err {anchor_err:.2g}",
    )


# -- 4 -------------------------------------------------------------------------------

def criterion_4():
    margin = math.inf
    where = None
    ok = True
    for nu in (-0.4, -0.2, 0.01, 0.25, 0.49):
        for variant in (Variant.H, Variant.HPRIME, Variant.HDOUBLEPRIME):
            if variant is Variant.HDOUBLEPRIME and nu <= 0:
                continue
            z1 = float(zero_table(Params.struve(nu, variant.struve_n), 1).zeros[0])
            (_, b1), (_, b2) = lower_bounds(variant, nu)
            for bound, actual, label in ((b1, z1, "z_1"), (b2, z1 * z1, "z_1^2")):
                gap = actual - bound
                ok &= gap > 0
                if gap < margin:
                    margin, where = gap, (variant.value, nu, label)
    return _record(4, ok, f"all bounds below the first zeros, smallest margin {margin:.3g} at {where}")


# -- 5 -------------------------------------------------------------------------------

def criterion_5():
    t0 = time.perf_counter()
    count = 0
    failures = []
    worst_cross = 0.0
    for n in range(6):
        for nu in (n - 0.9, n - 0.5, n, n + 2, n + 7):
            for s in range(1, 31):
                poly = jensen_coeffs_bessel(nu, n, s)
                r = real_rooted_check(poly)
                count += 1
                worst_cross = max(worst_cross, poly.crosscheck_err)
                if not (r.all_real and r.all_simple):
                    failures.append(("J", nu, n, s))
    struve = [(nu, n) for n in (0, 1) for nu in (-0.5, -0.25, 0.0, 0.25, 0.5)] + [(nu, 2) for nu in (0.1, 0.25, 0.5)]
    for nu, n in struve:
        for s in range(1, 31):
            poly = jensen_coeffs_struve(nu, n, s)
            r = real_rooted_check(poly)
            count += 1
            worst_cross = max(worst_cross, poly.crosscheck_err)
            if not (r.all_real and r.all_simple):
                failures.append(("H", nu, n, s))
    roots = np.sort(np.array(real_rooted_check(jensen_coeffs_bessel(0, 0, 2)).roots).real)
    root_err = float(np.max(np.abs(roots - [2 - math.sqrt(2), 2 + math.sqrt(2)])))
    dt = time.perf_counter() - t0
    ok = not failures and root_err <= 1e-12 and worst_cross <= CROSSCHECK_TOL and dt < 60
    return _record(
        5, ok,
        f"{count} polynomials, {len(failures)} not real-rooted and simple, quadratic root err {root_err:.2g}, "
        f"cross-check {worst_cross:.2g}, {dt:.1f} s",
    )


# -- 6 -------------------------------------------------------------------------------

def criterion_6():
    t0 = time.perf_counter()
    wrong = []
    for nu, want in sorted(oracles.HURWITZ.items()):
        rep = hurwitz_verify(nu)
        if (rep.total_nonreal, rep.purely_imaginary) != want or not rep.stabilized:
            wrong.append((nu, rep.total_nonreal, rep.purely_imaginary, rep.stabilized))
    dt = time.perf_counter() - t0
    return _record(6, not wrong and dt < 120, f"{len(oracles.HURWITZ)} orders, {len(wrong)} mismatches, {dt:.1f} s")


# -- 7 -------------------------------------------------------------------------------

def criterion_7():
    bad = []
    weak = []
    cases = 0
    for n in range(6):
        for nu in (n - 0.5, n, n + 2, n + 10):
            p = Params.bessel(nu, n)
            rep = check_separation(zero_table(p, 9), combo_zero_table(p, 8))
            cases += 1
            if not rep.ok or rep.pairs_checked < 8:
                bad.append(p)
    for n in (0, 1):
        for nu in (-0.5, -0.25, 0.0, 0.25, 0.45, 0.5):
            p = Params.struve(nu, n)
            base = zero_table(p, 9)
            rep = check_separation(base, combo_zero_table(p, 8), strict=base.all_simple)
            cases += 1
            if not base.all_simple:
                weak.append((nu, n))
            if not rep.ok or rep.pairs_checked < 8:
                bad.append(p)
    next_err = 0.0
    for nu in (-0.5, 0.0, 1.3):
        combo = combo_zero_table(Params.bessel(nu, 0), 8).zeros
        nxt = zero_table(Params.bessel(nu + 1, 0), 8).zeros
        next_err = max(next_err, float(np.max(np.abs(combo - nxt))))
    ok = not bad and next_err <= 1e-10
    note = f", non-strict at the double zeros of {weak}" if weak else ""
    return _record(7, ok, f"{cases} grids separated{note}; n=0 combo vs J_(nu+1) max diff {next_err:.2g}")


# -- 8 -------------------------------------------------------------------------------

def criterion_8():
    prod = 0.0
    for p, x in protocols.product_samples():
        ref = (eval_J_deriv if protocols.is_bessel(p) else eval_H_deriv)(p, x).value
        prod = max(prod, abs(eval_weierstrass(p, x, zero_table(p, 500)).value - ref) / abs(ref))
    ml = 0.0
    for p, x in protocols.ml_samples():
        ref = eval_J_deriv(p.with_n(p.n + 1), x).value / eval_J_deriv(p, x).value
        ml = max(ml, abs(eval_ml_ratio(p, x, zero_table(p, 500)) - ref) / abs(ref))
    lag = min(laguerre_inequality(p, x) for p, x in protocols.laguerre_samples())
    aux = 0.0
    xs = np.linspace(0.2, 10.0, 50)
    for nu, n in ((2.0, 1), (0.5, 0), (3.3, 2), (-0.4, 1), (6.0, 4)):
        p = Params.bessel(nu, n)
        lhs = 2.0**n * xs ** (n / 2) * eval_J_deriv(p, 2 * np.sqrt(xs)).value
        rhs = xs ** (nu / 2) * eval_f_aux(p, -xs).value
        aux = max(aux, float(np.max(np.abs(lhs - rhs) / np.maximum(np.abs(lhs), 1e-300))))
    bridge = 0.0
    xb = np.linspace(0.05, 20.0, 200)
    for m in (0, 1, 2):
        h = eval_H_deriv(Params.struve(-m - 0.5, 0), xb).value
        j = (-1) ** m * eval_J_deriv(Params.bessel(m + 0.5, 0), xb).value
        bridge = max(bridge, float(np.max(np.abs(h - j) / np.abs(j))))
    ok = prod <= 1e-6 and ml <= 1e-5 and lag > 0 and aux <= 1e-12 and bridge <= 1e-12
    return _record(
        8, ok,
        f"product {prod:.2g}, Mittag-Leffler {ml:.2g}, min Laguerre {lag:.3g}, "
        f"auxiliary identity {aux:.2g}, Bessel-Struve bridge {bridge:.2g}",
    )


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8}


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok = CRITERIA[k]()
    print(format_line(k))
    assert ok, format_line(k)


def test_exploration_scans_are_well_formed():
    rows = conjecture1_scan(1, 1, samples_per_strip=2) + conjecture1_scan(2, 0, samples_per_strip=2)
    for r in rows:
        rep = r.report
        assert rep.total_nonreal % 2 == 0 and rep.purely_imaginary % 2 == 0
        assert 0 <= rep.purely_imaginary <= rep.total_nonreal
        assert set(rep.as_dict()) >= {"nu", "n", "total_nonreal", "purely_imaginary", "stabilized"}
    sc = monotonicity_scan(4, 1, [3.5, 4.0, 5.0, 7.0])
    assert len(sc.zeros) == 4 and isinstance(sc.monotone, bool)


if __name__ == "__main__":
    for k, fn in CRITERIA.items():
        fn()
        print(format_line(k), flush=True)
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
