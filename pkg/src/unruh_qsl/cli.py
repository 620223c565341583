"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 tolerance failure, 3 numeric failure.
``UNRUH_QSL_THREADS`` caps the number of worker threads used by ``sweep``.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
from contextlib import nullcontext

import numpy as np

from . import __version__
from .analysis import CriticalSearch, find_critical_pair, sweep_delta_tau
from .errors import (
    AccuracyError,
    ConstructionError,
    CutoffTooLargeError,
    DivergenceError,
    DomainError,
    UnruhQslError,
)
from .oracle import P_GRID, R_GRID, OracleConfig, compare_with_closed_forms
from .qslt import phase_qslt, phase_qslt_within_bound, qslt_closed
from .rindler_state import FockCutoff, build_reduced_state, dump_csv

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TOLERANCE = 2
EXIT_NUMERIC = 3

SWEEP_COLUMNS = ("p", "r", "a_r", "distance", "avg_speed", "tau_qsl", "delta_tau")
TABLE_C0 = 1.5e-3
TABLE_C1 = 1.5e-2
TABLE_FACTOR = 2.0
VERIFY_TOL = 1e-8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(value) -> str:
    return f"{value:.12g}"


def parse_range(text: str) -> np.ndarray:
    """Parse ``min:max:steps`` into an evenly spaced grid."""
    try:
        lo, hi, steps = text.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected min:max:steps, got {text!r}") from None
    if steps < 1 or hi < lo or (steps > 1 and hi == lo) or lo < 0:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}")
    return np.linspace(lo, hi, steps)


def _threads() -> int | None:
    raw = os.environ.get("UNRUH_QSL_THREADS")
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"UNRUH_QSL_THREADS must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("UNRUH_QSL_THREADS must be >= 1")
    return value


def _write_rows(stream, rows):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for rec in rows:
        writer.writerow([fmt(getattr(rec, "p_tau" if col == "p" else col)) for col in SWEEP_COLUMNS])


def cmd_eval(args) -> int:
    if args.channel == "phase":
        if args.q is None:
            raise UsageError("--channel phase needs --q")
        tau = phase_qslt(args.q)
        ok = phase_qslt_within_bound(args.q)
        print(f"channel: phase\nq: {fmt(args.q)}\ntau_qsl: {fmt(tau)}\nwithin_bound: {str(ok).lower()}")
        if not ok:
            print("note: phase-damping tau_qsl exceeds the driving time for q > 1/2")
        print("q,tau_qsl,within_bound")
        print(f"{fmt(args.q)},{fmt(tau)},{str(ok).lower()}")
        return EXIT_OK

    if args.p is None:
        raise UsageError("amplitude channel needs --p")
    rec = qslt_closed(args.p, args.r)
    print("channel: amplitude")
    for col in SWEEP_COLUMNS:
        print(f"{col}: {fmt(getattr(rec, 'p_tau' if col == 'p' else col))}")
    if rec.p_tau == 1.0:
        print("note: p = 1 is noiseless, so the state does not move; tau_qsl is the p -> 1 limit")
    _write_rows(sys.stdout, [rec])
    return EXIT_OK


def cmd_sweep(args) -> int:
    rows = sweep_delta_tau(args.p, args.r, workers=_threads())
    if args.out == "-":
        _write_rows(sys.stdout, rows)
    else:
        with open(args.out, "w", newline="") as fh:
            _write_rows(fh, rows)
    return EXIT_OK


def cmd_critical(args) -> int:
    pair = find_critical_pair(CriticalSearch(lower=args.lower, upper=args.upper, rel_width=args.rel_width))
    ok0 = TABLE_C0 / TABLE_FACTOR <= pair.p_c0 <= TABLE_C0 * TABLE_FACTOR
    ok1 = TABLE_C1 / TABLE_FACTOR <= pair.p_c1 <= TABLE_C1 * TABLE_FACTOR
    print(f"p_c0 = {fmt(pair.p_c0)}  (reference {TABLE_C0:g}, factor {TABLE_FACTOR:g})  {'PASS' if ok0 else 'FAIL'}")
    print(f"p_c1 = {fmt(pair.p_c1)}  (reference {TABLE_C1:g}, factor {TABLE_FACTOR:g})  {'PASS' if ok1 else 'FAIL'}")
    print(f"bisection residual = {pair.residual:.3g}")
    return EXIT_OK if ok0 and ok1 else EXIT_TOLERANCE


def cmd_verify(args) -> int:
    cfg = OracleConfig(trace_tol=args.trace_tol, quad_tol=args.quad_tol, r_cap=args.r_cap,
                       allow_large_r=args.allow_large_r)
    worst = compare_with_closed_forms(P_GRID, R_GRID, cfg)
    print(f"oracle grid: {worst['points']} points (p in {list(P_GRID)}, r <= {cfg.r_cap:g})")
    ok = True
    for key in ("distance", "avg_speed", "tau_qsl"):
        passed = worst[key] <= args.tol
        ok &= passed
        print(f"{key:<10s} max |closed - oracle| = {worst[key]:.3e}  {'PASS' if passed else 'FAIL'}")
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_TOLERANCE


def cmd_dump_state(args) -> int:
    cutoff = FockCutoff(args.n_max) if args.n_max is not None else None
    state = build_reduced_state(args.r, cutoff=cutoff, trace_tol=args.trace_tol)
    ctx = nullcontext(sys.stdout) if args.out == "-" else open(args.out, "w", newline="")
    with ctx as fh:
        dump_csv(state, fh)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unruh-qsl", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate the speed-limit time at one point")
    ev.add_argument("--p", type=float, help="amplitude-damping survival parameter (1 = noiseless)")
    ev.add_argument("--q", type=float, help="phase-damping strength (0 = noiseless)")
    ev.add_argument("--r", type=float, default=0.0, help="rapidity (default 0)")
    ev.add_argument("--channel", choices=("amplitude", "phase"), default="amplitude")
    ev.set_defaults(func=cmd_eval)

    sw = sub.add_parser("sweep", help="write delta_tau along an r grid as CSV")
    sw.add_argument("--p", type=float, required=True, help="amplitude-damping survival parameter")
    sw.add_argument("--r", type=parse_range, default=parse_range("0:5:200"), metavar="MIN:MAX:STEPS")
    sw.add_argument("--out", default="-", help="output path ('-' for stdout)")
    sw.set_defaults(func=cmd_sweep)

    cr = sub.add_parser("critical", help="bisect for the critical damping parameters")
    cr.add_argument("--lower", type=float, default=1e-4)
    cr.add_argument("--upper", type=float, default=0.1)
    cr.add_argument("--rel-width", type=float, default=1e-3)
    cr.set_defaults(func=cmd_critical)

    ve = sub.add_parser("verify", help="check closed forms against the brute-force oracle")
    ve.add_argument("--r-cap", type=float, default=3.0)
    ve.add_argument("--allow-large-r", action="store_true", help="permit --r-cap above 3")
    ve.add_argument("--trace-tol", type=float, default=1e-12)
    ve.add_argument("--quad-tol", type=float, default=1e-11)
    ve.add_argument("--tol", type=float, default=VERIFY_TOL)
    ve.set_defaults(func=cmd_verify)

    ds = sub.add_parser("dump-state", help="write the joint state matrix as row,col,re,im CSV")
    ds.add_argument("--r", type=float, required=True)
    ds.add_argument("--n-max", type=int)
    ds.add_argument("--trace-tol", type=float, default=1e-12)
    ds.add_argument("--out", default="-")
    ds.set_defaults(func=cmd_dump_state)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError, DivergenceError) as exc:
        print(f"unruh-qsl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AccuracyError, CutoffTooLargeError, ConstructionError, UnruhQslError) as exc:
        print(f"unruh-qsl: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"unruh-qsl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
