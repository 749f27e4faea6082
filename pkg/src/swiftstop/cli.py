"""Command-line interface: ``swiftstop {sweep,fig1,diagnose,phase-shifts}``.

Exit codes: 0 success, 2 usage error, 3 regime error (every row failed),
4 I/O error.
"""

import argparse
import sys
from pathlib import Path

from .errors import DomainError
from .special import SumControl
from .sweep import (
    DEFAULT_LMAX,
    FIG1_DEFAULTS,
    METHODS,
    SweepSpec,
    diagnostics_table,
    fig1_tables,
    phase_shift_table,
    run_sweep,
)
from .tables import OverlayError, parse_overlay, render

EXIT_OK, EXIT_USAGE, EXIT_REGIME, EXIT_IO = 0, 2, 3, 4

SOURCES = {
    "numerov": "numerov",
    "born-closed": "born_closed",
    "born-quadrature": "born_quadrature",
    "exact-l0": "exact_hulthen_l0",
}


def _common(p):
    p.add_argument("--rs", type=float, default=2.07, help="density parameter r_s (bohr)")
    p.add_argument("--tol", type=float, default=1e-10, help="absolute tolerance for series tails")
    p.add_argument("--output", type=Path, help="write to this file instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="swiftstop",
        description="Phase-shift stopping power of a degenerate electron gas (atomic units).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="stopping force over a velocity grid")
    _common(sw)
    sw.add_argument("--z1", type=float, action="append", help="projectile charge (repeatable)")
    sw.add_argument("--vmin", type=float, required=True)
    sw.add_argument("--vmax", type=float, required=True)
    sw.add_argument("--steps", type=int, required=True)
    sw.add_argument("--spacing", choices=("linear", "log"), default="linear")
    sw.add_argument("--method", action="append", choices=METHODS, help="method (repeatable)")
    sw.add_argument("--lmax", type=int, default=DEFAULT_LMAX, help="partial waves for numeric/transport")
    sw.add_argument("--n2d", type=float, help="areal density for the 2d method")

    f1 = sub.add_parser("fig1", help="proton and antiproton stopping curves")
    _common(f1)
    f1.set_defaults(rs=FIG1_DEFAULTS["r_s"])
    f1.add_argument("--vmin", type=float, default=FIG1_DEFAULTS["v_min"])
    f1.add_argument("--vmax", type=float, default=FIG1_DEFAULTS["v_max"])
    f1.add_argument("--steps", type=int, default=FIG1_DEFAULTS["steps"])
    f1.add_argument("--overlay", type=Path, help="CSV of reference points (v, stopping)")

    dg = sub.add_parser("diagnose", help="identity, inequality and cross-route checks")
    _common(dg)
    dg.add_argument("--z1", type=float, default=1.0)
    dg.add_argument("--v", type=float, required=True)
    dg.add_argument("--lmax", type=int, default=DEFAULT_LMAX)

    ps = sub.add_parser("phase-shifts", help="dump a phase-shift series")
    _common(ps)
    ps.add_argument("--z1", type=float, default=1.0)
    ps.add_argument("--v", type=float, required=True)
    ps.add_argument("--lmax", type=int, default=DEFAULT_LMAX)
    ps.add_argument("--source", choices=tuple(SOURCES), default="numerov")
    ps.add_argument("--potential", choices=("hulthen", "yukawa"), default="hulthen")
    return parser


def _emit(tables, args):
    text = render(tables, args.format)
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text, encoding="utf-8")


def _run(args):
    ctrl = SumControl(abs_tol=args.tol)
    if args.command == "sweep":
        spec = SweepSpec(
            r_s=args.rs,
            z1_list=tuple(args.z1 or (1.0,)),
            v_min=args.vmin,
            v_max=args.vmax,
            steps=args.steps,
            spacing=args.spacing,
            methods=tuple(dict.fromkeys(args.method or ("asymptotic", "semi-analytic"))),
            l_max=args.lmax,
            tolerances=ctrl,
            n0_2d=args.n2d,
        )
        table = run_sweep(spec)
        _emit([table], args)
        return EXIT_REGIME if all(r["status"] != "ok" for r in table.rows) else EXIT_OK
    if args.command == "fig1":
        overlay = None
        if args.overlay is not None:
            overlay = parse_overlay(args.overlay.read_text(encoding="utf-8"), args.overlay.stem)
        tables = fig1_tables(args.rs, args.vmin, args.vmax, args.steps, overlay)
        _emit(tables, args)
        return EXIT_REGIME if all(r["status"] != "ok" for r in tables[0].rows) else EXIT_OK
    if args.command == "diagnose":
        table = diagnostics_table(args.rs, args.z1, args.v, ctrl, args.lmax)
        _emit([table], args)
        return EXIT_REGIME if all(r["status"] != "ok" for r in table.rows) else EXIT_OK
    table = phase_shift_table(args.rs, args.z1, args.v, args.lmax, SOURCES[args.source], args.potential, ctrl)
    _emit([table], args)
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except DomainError as exc:
        print(f"swiftstop: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OverlayError as exc:
        print(f"swiftstop: overlay: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"swiftstop: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
