"""Command line front end: ``sobolev-constants <command> ...``.

Every command emits one record ``{command, inputs, results, timing}``.
Rationals are "p/q" strings and enclosures carry exact bounds plus outward
rounded decimals, so output never passes through a float.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from .embedding.analysis import DEFAULT_PRECISION, lambda_constant, rescale_factor, rescale_to_symmetric
from .embedding.extremum import interval_dict
from .embedding.profile import check_nk, profile_eval, profile_from_recurrence
from .embedding.scan import CSV_FIELDS, DEFAULT_GRID, K_MAX, hypothesis_scan, scan_csv_rows
from .ratpoly import format_rational, parse_rational
from .spline import SplineInvariantError, build_extremal_spline, spline_to_dict
from .verify import DEFAULT_N_MAX, run_verify

PRECISION_ENV = "SOBOLEV_PRECISION"


class UsageError(ValueError):
    pass


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r} (use p/q)")


def _precision_arg(text: str) -> Fraction:
    # decimal forms like 1e-30 are read exactly, never through a float
    try:
        q = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if q <= 0:
        raise argparse.ArgumentTypeError(f"precision must be positive, got {text}")
    return q


def default_precision() -> Fraction:
    env = os.environ.get(PRECISION_ENV)
    if not env:
        return DEFAULT_PRECISION
    try:
        return _precision_arg(env)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{PRECISION_ENV}: {exc}")


# -- commands ---------------------------------------------------------------

def cmd_profile(args):
    check_nk(args.n, args.k)
    prof = profile_from_recurrence(args.n, args.k)
    inputs = {"n": args.n, "k": args.k}
    res = prof.to_dict()
    res["t_exponent"] = prof.t_exponent
    if args.a is not None:
        inputs["a"] = format_rational(args.a)
        res["a"] = format_rational(args.a)
        res["value"] = format_rational(profile_eval(prof, args.a))
    return inputs, res


def cmd_spline(args):
    s = build_extremal_spline(args.n, args.k, args.a)
    inputs = {"n": args.n, "k": args.k, "a": format_rational(args.a)}
    return inputs, spline_to_dict(s)


def cmd_lambda(args):
    precision = args.precision if args.precision is not None else default_precision()
    res = lambda_constant(args.n, args.k, precision)
    inputs = {"n": args.n, "k": args.k, "precision": format_rational(precision)}
    rep = res.report
    am, ap = rep.global_max.a_points()
    out = {
        "lambda_sq": interval_dict(res.enclosure, 30),
        "exact": format_rational(res.exact) if res.exact is not None else None,
        "location": res.location,
        "at_half": res.at_half,
        "a_minus": interval_dict(am, 30),
        "a_plus": interval_dict(ap, 30),
        "report": rep.to_dict(),
    }
    return inputs, out


def cmd_verify(args):
    rep = run_verify(args.n_max, args.deep)
    inputs = {"n_max": args.n_max, "deep": args.deep}
    return inputs, rep


def cmd_scan(args):
    if args.n_from > args.n_to:
        raise UsageError(f"need n-from <= n-to, got {args.n_from} > {args.n_to}")
    if args.n_from <= args.k:
        raise UsageError(f"n must exceed k, got n-from={args.n_from}, k={args.k}")
    rep = hypothesis_scan(args.n_to, args.k, args.grid, n_min=args.n_from, k_min=args.k)
    inputs = {"k": args.k, "n_from": args.n_from, "n_to": args.n_to, "grid": args.grid}
    return inputs, rep


def cmd_rescale(args):
    check_nk(args.n, args.k)
    value = profile_eval(profile_from_recurrence(args.n, args.k), args.a)
    point, scaled = rescale_to_symmetric(args.n, args.k, value, args.a)
    inputs = {"n": args.n, "k": args.k, "a": format_rational(args.a)}
    return inputs, {
        "point": format_rational(point),
        "factor": format_rational(Fraction(rescale_factor(args.n, args.k))),
        "value_01": format_rational(value),
        "value_sym": format_rational(scaled),
    }


# -- output -----------------------------------------------------------------

def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for key, val in obj.items():
            yield from _flatten(val, f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(obj, list):
        for i, val in enumerate(obj):
            yield from _flatten(val, f"{prefix}[{i}]")
    else:
        yield prefix, "" if obj is None else obj


def render(command: str, inputs: dict, results, fmt: str, sep: str, seconds=None) -> str:
    if command == "verify":
        payload = results.to_dict(timing=seconds is not None)
    elif command == "scan":
        payload = results.to_dict()
    else:
        payload = results
    if fmt == "table":
        if command == "verify":
            return results.table(timing=seconds is not None) + "\n"
        fmt = "json"
    if fmt == "json":
        record = {"command": command, "inputs": inputs, "results": payload}
        if seconds is not None:
            record["timing"] = {"seconds": round(seconds, 3)}
        return json.dumps(record, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, delimiter=sep, lineterminator="\n")
    if command == "scan":
        w.writerow(CSV_FIELDS)
        w.writerows(scan_csv_rows(results))
    else:
        w.writerow(["field", "value"])
        w.writerow(["command", command])
        for key, val in _flatten({"inputs": inputs, "results": payload}):
            w.writerow([key, val])
        if seconds is not None:
            w.writerow(["timing.seconds", round(seconds, 3)])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default=None,
                        help="output format (default json; table for verify)")
    common.add_argument("--sep", default=",", help="CSV field separator (default ',')")
    common.add_argument("--no-timing", action="store_true", help="omit the timing field")
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")

    p = argparse.ArgumentParser(prog="sobolev-constants",
                                description="Exact embedding constants for the Sobolev space W_2^n on [0, 1].")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("profile", parents=[common], help="B_{n,k} coefficients and scale")
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("--a", type=_rational_arg, default=None, help="also evaluate A^2 at this point")
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("spline", parents=[common], help="export the extremal spline")
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("a", type=_rational_arg)
    sp.set_defaults(func=cmd_spline)

    sp = sub.add_parser("lambda", parents=[common], help="certified enclosure of the sharp constant")
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("--precision", type=_precision_arg, default=None,
                    help=f"target enclosure width (default 1e-30 or ${PRECISION_ENV})")
    sp.set_defaults(func=cmd_lambda)

    sp = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    sp.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    sp.add_argument("--deep", action="store_true", help="n up to 12, k=3/k=5 checks up to n=40")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("scan", parents=[common], help="scan the nearest-maximum hypothesis")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n-from", type=int, required=True)
    sp.add_argument("--n-to", type=int, required=True)
    sp.add_argument("--grid", type=int, default=DEFAULT_GRID, help="referee grid points per unit t")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("rescale", parents=[common], help="map A^2 at a on [0,1] to [-1,1]")
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("a", type=_rational_arg)
    sp.set_defaults(func=cmd_rescale)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "scan" and not 0 <= args.k <= K_MAX:
        print(f"error: k must satisfy 0 <= k <= {K_MAX}, got {args.k}", file=sys.stderr)
        return 2
    if len(args.sep) != 1:
        print("error: --sep must be a single character", file=sys.stderr)
        return 2
    fmt = args.format or ("table" if args.command == "verify" else "json")
    t0 = time.perf_counter()
    try:
        inputs, results = args.func(args)
    except SplineInvariantError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    seconds = None if args.no_timing else time.perf_counter() - t0
    text = render(args.command, inputs, results, fmt, args.sep, seconds)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and not results.ok:
        print("verification failed: " + ", ".join(results.failing), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
