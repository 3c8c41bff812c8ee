"""Command-line front end.

    python -m bsderiv zeros --family besselj --nu 0 --n 0 --m-max 3 --format json

Every command prints (or writes with ``--output``) one report.  JSON reports
are {"meta": ..., "data": [row, ...]}; CSV reports start with ``#`` metadata
lines followed by a header row.  Floats carry 15 significant digits and no
timestamps are written, so identical flags give byte-identical output.

Relative ``--output`` paths are resolved against $BSDERIV_OUTPUT_DIR when it
is set.  Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .conjectures import conjecture1_scan, hurwitz_verify, monotonicity_scan
from .errors import BsDerivError, NumericalFailure
from .jensen import S_CAP, jensen_coeffs_bessel, jensen_coeffs_struve, real_rooted_check
from .rayleigh import Variant, lower_bounds, rayleigh_report
from .specfun import EvalOptions, EvenKernel, Family, Params, eval_H_deriv, eval_J_deriv
from .zerofinder import check_interlacing, check_separation, combo_zero_table, zero_table

OUTPUT_DIR_ENV = "BSDERIV_OUTPUT_DIR"
EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 2, 3


class ValidationError(ValueError):
    pass


# -- serialization ------------------------------------------------------------------

def _num(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return float(f"{v:.15g}") if math.isfinite(v) else None
    if isinstance(v, dict):
        return {k: _num(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_num(x) for x in v]
    return v


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.15g}" if math.isfinite(v) else ""
    if isinstance(v, (list, tuple)):
        return ";".join(_cell(x) for x in v)
    return str(v)


def render(meta: dict, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"meta": _num(meta), "data": _num(rows)}, indent=2) + "\n"
    buf = io.StringIO()
    for key, val in meta.items():
        buf.write(f"# {key}: {json.dumps(_num(val), sort_keys=False)}\n")
    cols = list(rows[0].keys()) if rows else []
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_cell(r[c]) for c in cols])
    return buf.getvalue()


# -- commands -----------------------------------------------------------------------

def _params(args) -> Params:
    return Params(Family(args.family), args.nu, args.n)


def _opts(args) -> EvalOptions:
    return EvalOptions(rel_tol=args.rel_tol) if args.rel_tol else EvalOptions()


def cmd_zeros(args):
    p = _params(args)
    if args.m_max < 1:
        raise ValidationError("--m-max must be at least 1")
    build = combo_zero_table if args.combo else zero_table
    t = build(p, args.m_max, _opts(args))
    rows = [
        {"m": i + 1, "zero": z, "residual": r, "bracket_width": w, "scale": s, "multiplicity": int(k)}
        for i, (z, r, w, s, k) in enumerate(zip(t.zeros, t.residuals, t.bracket_width, t.scales, t.multiplicity))
    ]
    return {"kind": t.kind, "shift": t.shift, "normalized": t.normalized}, rows


def cmd_eval(args):
    p = _params(args)
    xs = np.asarray(args.x, dtype=float)
    if np.any(xs <= 0):
        raise ValidationError("--x values must be positive (the raw derivative has a branch point at 0)")
    fn = eval_J_deriv if p.family is Family.BESSEL_J else eval_H_deriv
    sv = fn(p, xs, _opts(args))
    kern = EvenKernel(p, opts=_opts(args))(xs)
    rows = [{"x": x, "derivative": v, "kernel": k} for x, v, k in zip(xs, np.atleast_1d(sv.value), np.atleast_1d(kern))]
    return {"terms_used": sv.terms_used, "est_rel_err": sv.est_rel_err}, rows


def _validate_interlace(p: Params, combo: bool):
    nu, n = p.nu, p.n
    if p.family is Family.BESSEL_J:
        if combo and not nu > n - 1:
            raise ValidationError("Laguerre separation for Bessel derivatives needs nu > n - 1")
        if not combo and not nu >= n:
            raise ValidationError("interlacing of J^(n) and J^(n+1) zeros needs nu >= n")
    else:
        if combo and not (n in (0, 1) and -0.5 <= nu <= 0.5):
            raise ValidationError("Laguerre separation for Struve needs n in {0, 1} and -1/2 <= nu <= 1/2")
        if not combo and not (n == 1 and 0 < nu <= 0.5):
            raise ValidationError("interlacing of H' and H'' zeros needs n = 1 and 0 < nu <= 1/2")


def cmd_interlace(args):
    p = _params(args)
    _validate_interlace(p, args.combo)
    opts = _opts(args)
    base = zero_table(p, args.m_max + 1, opts)
    if args.combo:
        other = combo_zero_table(p, args.m_max + 1, opts)
        rep = check_separation(base, other, strict=base.all_simple)
        first, second = base.with_multiplicity(), other.with_multiplicity()
    else:
        other = zero_table(p.with_n(p.n + 1), args.m_max + 1, opts)
        rep = check_interlacing(base, other)
        first = other.with_multiplicity()
        if rep.origin_prepended:
            first = np.concatenate(([0.0], first))
        second = base.with_multiplicity()
    bad = {v[0] for v in rep.violations}
    rows = [
        {"m": m + 1, "left": first[m], "middle": second[m], "right": first[m + 1], "ok": (m + 1) not in bad}
        for m in range(rep.pairs_checked)
    ]
    summary = {
        "pairs_checked": rep.pairs_checked,
        "violations": len(rep.violations),
        "min_margin": rep.min_margin,
        "max_margin": rep.max_margin,
        "origin_prepended": rep.origin_prepended,
        "ok": rep.ok,
    }
    return {"summary": summary}, rows


def cmd_rayleigh(args):
    variant = Variant(args.variant)
    if variant is Variant.JNORM and args.n is None:
        raise ValidationError("--variant jnorm needs --n")
    rep = rayleigh_report(variant, args.nu, args.n, zeros=args.zeros, k_max=args.k_max)
    row = {
        "variant": variant.value,
        "nu": rep.nu,
        "n": rep.n,
        "sigma2": rep.sigma2,
        "sigma4": rep.sigma4,
        "numeric_sigma2": rep.numeric_sigma2,
        "numeric_sigma4": rep.numeric_sigma4,
        "sigma2_extrapolated": rep.sigma2_extrapolated,
        "tail_bound2": rep.tail_bounds[0],
        "tail_bound4": rep.tail_bounds[1],
        "higher": list(rep.higher),
        "zeros_used": rep.zeros_used,
        "endpoint": rep.endpoint,
    }
    meta = {"notes": list(rep.notes)}
    if variant is not Variant.JNORM and abs(args.nu) < 0.5 and (variant is not Variant.HDOUBLEPRIME or args.nu > 0):
        meta["lower_bounds"] = {name: val for name, val in lower_bounds(variant, args.nu)}
    return meta, [row]


def cmd_jensen(args):
    s_values = range(1, args.s_max + 1) if args.s_max else [args.s]
    build = jensen_coeffs_bessel if Family(args.family) is Family.BESSEL_J else jensen_coeffs_struve
    rows = []
    for s in s_values:
        poly = build(args.nu, args.n, s)
        rep = real_rooted_check(poly)
        row = {
            "s": s,
            "all_real": rep.all_real,
            "all_simple": rep.all_simple,
            "real_roots": rep.real_root_count,
            "max_imag_ratio": rep.max_imag_ratio,
            "min_root_gap": rep.min_root_gap,
            "crosscheck_err": poly.crosscheck_err,
        }
        if args.roots:
            row["roots"] = [r.real for r in rep.roots] if rep.all_real else [str(r) for r in rep.roots]
        rows.append(row)
    return {"s_cap": S_CAP}, rows


def cmd_hurwitz(args):
    if float(args.nu).is_integer() and args.nu < 0:
        raise ValidationError("negative integer orders sit on strip boundaries and are excluded")
    rep = hurwitz_verify(args.nu)
    return {}, [rep.as_dict()]


def cmd_scan_conjecture1(args):
    rows = []
    for r in conjecture1_scan(args.n, args.s_max, args.samples, jobs=args.jobs):
        d = r.report.as_dict()
        rows.append({
            "nu": r.nu, "n": r.n, "s": r.s, "part": r.part, "strip_lo": r.strip[0], "strip_hi": r.strip[1],
            "conjectured": r.conjectured, "total_nonreal": d["total_nonreal"],
            "purely_imaginary": d["purely_imaginary"], "stabilized": d["stabilized"], "agrees": r.agrees,
        })
    return {"note": "exploration output; agreement is evidence only"}, rows


def _grid(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ValidationError(f"bad grid {text!r}: {exc}") from None


def cmd_scan_monotone(args):
    grid = _grid(args.nu_grid)
    if any(v <= args.n - 1 for v in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValidationError("the order grid must increase strictly inside (n - 1, inf)")
    sc = monotonicity_scan(args.n, args.m, grid, jobs=args.jobs)
    rows = [{"nu": v, "zero": z} for v, z in zip(sc.nu, sc.zeros)]
    return {"monotone": sc.monotone}, rows


COMMANDS = {
    "zeros": cmd_zeros,
    "eval": cmd_eval,
    "interlace": cmd_interlace,
    "rayleigh": cmd_rayleigh,
    "jensen": cmd_jensen,
    "hurwitz": cmd_hurwitz,
    "scan-conjecture1": cmd_scan_conjecture1,
    "scan-monotone": cmd_scan_monotone,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", help=f"write here instead of stdout (relative to ${OUTPUT_DIR_ENV} if set)")
    common.add_argument("--rel-tol", type=float, default=None, help="series truncation tolerance")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for scans")

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", choices=[f.value for f in Family], default=Family.BESSEL_J.value)
    fam.add_argument("--nu", type=float, required=True)
    fam.add_argument("--n", type=int, default=0)

    ap = argparse.ArgumentParser(prog="bsderiv", description="Zeros of derivatives of Bessel and Struve functions")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeros", parents=[common, fam], help="positive zeros of y^(n)")
    p.add_argument("--m-max", type=int, default=10)
    p.add_argument("--combo", action="store_true", help="zeros of the Laguerre combination instead")

    p = sub.add_parser("eval", parents=[common, fam], help="evaluate y^(n) and its even kernel")
    p.add_argument("--x", type=float, nargs="+", required=True)

    p = sub.add_parser("interlace", parents=[common, fam], help="interlacing of y^(n) and y^(n+1) zeros")
    p.add_argument("--m-max", type=int, default=10)
    p.add_argument("--combo", action="store_true", help="check the Laguerre combination against y^(n)")

    p = sub.add_parser("rayleigh", parents=[common], help="Rayleigh sums and first-zero bounds")
    p.add_argument("--variant", choices=[v.value for v in Variant], required=True)
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--n", type=int, default=None, help="derivative order (jnorm only)")
    p.add_argument("--zeros", type=int, default=500)
    p.add_argument("--k-max", type=int, default=4)

    p = sub.add_parser("jensen", parents=[common, fam], help="real-rootedness of Jensen polynomials")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--s", type=int)
    g.add_argument("--s-max", type=int, help="sweep s = 1..s_max")
    p.add_argument("--roots", action="store_true", help="include the roots")

    p = sub.add_parser("hurwitz", parents=[common], help="complex zero counts of J_nu")
    p.add_argument("--nu", type=float, required=True)

    p = sub.add_parser("scan-conjecture1", parents=[common], help="complex zero counts across order strips")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s-max", type=int, default=1)
    p.add_argument("--samples", type=int, default=3)

    p = sub.add_parser("scan-monotone", parents=[common], help="m-th zero of J_nu^(n) along an order grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--nu-grid", required=True, help="comma-separated orders")
    return ap


def _meta(args) -> dict:
    skip = {"format", "output", "jobs", "command"}
    params = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    return {"command": args.command, "params": params, "version": __version__}


def _destination(path: str | None) -> Path | None:
    if not path:
        return None
    out = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not out.is_absolute():
        out = Path(base) / out
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        extra, rows = COMMANDS[args.command](args)
    except (ValidationError, ValueError) as exc:
        print(f"bsderiv {args.command}: invalid input: {exc}", file=stderr)
        return EXIT_INVALID
    except NumericalFailure as exc:
        print(f"bsderiv {args.command}: numerical failure ({type(exc).__name__}): {exc}", file=stderr)
        return EXIT_NUMERICAL
    except BsDerivError as exc:
        print(f"bsderiv {args.command}: invalid input ({type(exc).__name__}): {exc}", file=stderr)
        return EXIT_INVALID
    meta = _meta(args)
    meta.update(extra)
    text = render(meta, rows, args.format)
    dest = _destination(args.output)
    if dest is None:
        stdout.write(text)
    else:
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_text(text)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
