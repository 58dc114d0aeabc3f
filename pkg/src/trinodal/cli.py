"""Command-line interface.

Subcommands:
  count         exact nodal count of one mode (recursion, graph, oracle,
                or both exact methods cross-checked)
  verify        run both exact methods over the spectrum and compare
  distribution  window histogram of the normalised count xi = nu/N
  trace         cumulative loop counts, smooth fit, and length spectrum
  render        schematic SVG of the nodal pattern
  graph         export the nodal graph as JSON or graphviz dot

Exit codes: 0 success, 1 usage or runtime error, 2 verification mismatch.
File-writing commands also write a JSON run manifest (path, sha256, and
size of every output) next to the primary output.
"""

import argparse
import json
import math
import os
import sys

from . import __version__
from .counts import nodal_count
from .graph import build_graph, export_graph, graph_nodal_count, render_svg
from .manifest import write_manifest
from .modes import is_nontiling, reduce_mode, validate_mode
from .oracle import stable_count
from .stats import distribution, nodal_sequence, write_histogram_csv, \
    write_sequence_csv
from .trace import cumulative, loglog_slope, match_peaks, orbit_table, \
    power_spectrum, smooth_fit, spectrum_for_kmax, spectrum_for_qmax, \
    write_curve_csv, write_peaks_csv, write_spectrum_csv
from .verify import sweep_modes, write_sweep_csv

__all__ = ["main", "entry"]


def _print_json(doc):
    print(json.dumps(doc, indent=1))


def cmd_count(args):
    m, n = validate_mode(args.m, args.n)
    doc = {"m": m, "n": n, "lambda": m * m + n * n}
    if args.method in ("recursion", "both"):
        s = nodal_count(m, n)
        doc["tiles"] = s.tiles
        doc["recursion"] = {"nu": s.nu, "eta": s.eta, "loops": s.loops}
    if args.method in ("graph", "both"):
        s = graph_nodal_count(m, n)
        doc["tiles"] = s.tiles
        doc["graph"] = {"nu": s.nu, "eta": s.eta, "loops": s.loops}
    if args.method == "oracle":
        doc["oracle"] = {"nu": stable_count(m, n)}
    if args.method == "both":
        doc["agree"] = doc["recursion"] == doc["graph"]
        _print_json(doc)
        return 0 if doc["agree"] else 2
    _print_json(doc)
    return 0


def cmd_verify(args):
    result = sweep_modes(args.max_lambda, workers=args.workers)
    outputs = []
    if args.out:
        write_sweep_csv(result, args.out)
        outputs.append(args.out)
        write_manifest("verify",
                       {"max_lambda": args.max_lambda, "out": args.out},
                       outputs)
    for m, n, field, rec, gr in result.mismatches:
        print("mismatch (%d, %d) %s: recursion %d, graph %d"
              % (m, n, field, rec, gr))
    print("checked %d modes with lambda <= %d: %d mismatches"
          % (len(result), result.max_lambda, len(result.mismatches)))
    return 2 if result.mismatches else 0


def cmd_distribution(args):
    max_lambda = max(5, math.ceil((1.0 + args.growth) * args.lam))
    seq = nodal_sequence(max_lambda, workers=args.workers)
    hist = distribution(seq, args.lam, args.growth, bins=args.bins,
                        xi_max=args.xi_max)
    write_histogram_csv(hist, args.out)
    outputs = [args.out]
    if args.sequence_out:
        write_sequence_csv(seq, args.sequence_out)
        outputs.append(args.sequence_out)
    params = {"lambda": args.lam, "growth": args.growth, "bins": args.bins,
              "xi_max": args.xi_max, "out": args.out,
              "sequence_out": args.sequence_out}
    write_manifest("distribution", params, outputs)
    _print_json({"window": [hist.lam_lo, hist.lam_hi],
                 "modes": hist.window_count, "bins": len(hist.counts),
                 "xi_max": hist.xi_max, "out": outputs})
    return 0


def cmd_trace(args):
    if args.kind == "loopsWeyl":
        spec = spectrum_for_qmax(args.x_max)
    else:
        spec = spectrum_for_kmax(args.x_max)
    curve = cumulative(args.kind, spec, grid_step=args.grid_step,
                       x_max=args.x_max, workers=args.workers)
    window = tuple(args.window) if args.window else None
    fit = smooth_fit(curve, degree=args.degree, window=window)
    ps = power_spectrum(curve, fit, window=window, l_max=args.l_max,
                        l_step=args.l_step)
    table = orbit_table(args.l_max + 0.05)
    peaks = match_peaks(ps, table)
    base, ext = os.path.splitext(args.out)
    ext = ext or ".csv"
    spectrum_path = base + "_spectrum" + ext
    peaks_path = base + "_peaks" + ext
    write_curve_csv(curve, args.out)
    write_spectrum_csv(ps, spectrum_path)
    write_peaks_csv(peaks, peaks_path)
    params = {"kind": args.kind, "x_max": args.x_max,
              "grid_step": args.grid_step, "window": list(fit.window),
              "degree": fit.degree, "l_max": args.l_max,
              "l_step": args.l_step, "out": args.out}
    write_manifest("trace", params, [args.out, spectrum_path, peaks_path])
    try:
        slope = loglog_slope(fit, 0.5 * (fit.window[0] + fit.window[1]),
                             fit.window[1])
    except ValueError:
        slope = None
    _print_json({
        "kind": args.kind,
        "modes": len(spec),
        "window": list(fit.window),
        "fit_cond": fit.cond,
        "loglog_slope": slope,
        "parseval_error": ps.parseval_error,
        "peaks": len(peaks),
        "matched": sum(1 for p in peaks if p.orbit is not None),
        "out": [args.out, spectrum_path, peaks_path],
    })
    return 0


def cmd_render(args):
    m, n = validate_mode(args.m, args.n)
    data = render_svg(m, n)
    with open(args.out, "wb") as fh:
        fh.write(data)
    write_manifest("render", {"m": m, "n": n, "out": args.out}, [args.out])
    return 0


def cmd_graph(args):
    m, n = validate_mode(args.m, args.n)
    if not is_nontiling(m, n):
        red, tiles = reduce_mode(m, n)
        raise ValueError(
            "(%d, %d) is a tiling mode (%d tiles of (%d, %d)); export the "
            "reduced pair instead" % (m, n, tiles, red.m, red.n))
    data = export_graph(build_graph(m, n), format=args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
        write_manifest("graph", {"m": m, "n": n, "format": args.format,
                                 "out": args.out}, [args.out])
    else:
        sys.stdout.write(data.decode())
    return 0


def _add_workers(p):
    p.add_argument("--workers", type=int, default=None,
                   help="process count (default: TRINODAL_WORKERS or 1)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="trinodal",
        description="Exact nodal domain counts for Dirichlet eigenfunctions "
                    "of the right isosceles triangle.")
    parser.add_argument("--version", action="version",
                        version="trinodal %s" % __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count nodal domains of one mode")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--method", default="both",
                   choices=["recursion", "graph", "oracle", "both"])
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify",
                       help="cross-check the exact methods over the spectrum")
    p.add_argument("--max-lambda", type=int, required=True)
    p.add_argument("--out", help="write per-mode counts as CSV")
    _add_workers(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("distribution",
                       help="histogram of xi = nu/N over a spectral window")
    p.add_argument("--lambda", dest="lam", type=float, required=True,
                   help="window start")
    p.add_argument("--growth", type=float, default=1.0,
                   help="window is [lambda, (1+growth)*lambda]")
    p.add_argument("--bins", type=int, default=1000)
    p.add_argument("--xi-max", type=float, default=None,
                   help="histogram range (default: window maximum)")
    p.add_argument("--out", required=True)
    p.add_argument("--sequence-out",
                   help="also write the full nodal sequence as CSV")
    _add_workers(p)
    p.set_defaults(func=cmd_distribution)

    p = sub.add_parser("trace",
                       help="cumulative loop counts and length spectrum")
    p.add_argument("--kind", default="loops",
                   choices=["loops", "boundary", "loopsWeyl"])
    p.add_argument("--x-max", type=float, required=True)
    p.add_argument("--grid-step", type=float, default=0.01)
    p.add_argument("--window", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--l-max", type=float, default=40.0)
    p.add_argument("--l-step", type=float, default=0.005)
    p.add_argument("--out", required=True)
    _add_workers(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("render", help="schematic SVG of the nodal pattern")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("graph", help="export the nodal graph")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--format", default="json", choices=["json", "dot"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_graph)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


def entry():
    raise SystemExit(main())
