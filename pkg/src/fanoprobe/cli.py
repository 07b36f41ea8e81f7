"""Command line front end: ``fanoprobe scan|minima|betas``."""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .approx import beta_coefficients, find_minima, infer_trajectory
from .scan import MODELS, PRESETS, SpecError, load_spec, preset_spec, read_result, run_scan, \
    write_result
from .units import FS_AU


def _cmd_scan(args) -> int:
    if args.spec is None and args.preset is None:
        print("scan: give a spec file or --preset", file=sys.stderr)
        return 2
    spec = load_spec(args.spec, preset=args.preset) if args.spec else preset_spec(args.preset)
    if args.model:
        from dataclasses import replace
        from .scan import _check_compatible
        spec = replace(spec, model=args.model)
        _check_compatible(spec)
    fmt = args.format or spec.output_format
    out = args.out or spec.output_path or f"{spec.preset or 'scan'}.{fmt}"
    result = run_scan(spec, workers=args.workers)
    written = write_result(result, out, fmt)
    t = result.metadata["timing"]
    print(f"wrote {len(result.data)} rows to {written[0]} "
          f"({t['seconds']:.2f} s, {t['workers']} worker(s))", file=sys.stderr)
    return 0


def _select(result, at: list[str]):
    data = result.data
    for item in at:
        name, _, value = item.partition("=")
        if name not in result.columns:
            raise SystemExit(f"minima: no column {name!r} in trace")
        col = data[:, result.columns.index(name)]
        target = col[np.argmin(np.abs(col - float(value)))]
        data = data[col == target]
    return data


def _cmd_minima(args) -> int:
    result = read_result(args.trace)
    if "t_c" not in result.columns:
        raise SystemExit("minima: trace has no t_c column")
    data = _select(result, args.at or [])
    t = data[:, result.columns.index("t_c")]
    y = data[:, result.columns.index(args.column)]
    order = np.argsort(t, kind="stable")
    t, y = t[order], y[order]
    if len(np.unique(t)) != len(t):
        raise SystemExit("minima: trace is not one-dimensional in t_c; use --at name=value")
    minima = find_minima(np.column_stack([t, y]))
    first = args.first_order
    if first is None and "phase" in result.columns and minima:
        phase = data[order, result.columns.index("phase")]
        first = max(1, round(np.interp(minima[0][0], t, phase) / (2 * math.pi)))
    first = first or 1
    minima = [(tm, first + i) for i, (tm, _) in enumerate(minima)]
    points = infer_trajectory(minima, args.pe, args.theta)
    out = sys.stdout
    out.write("t_c,t_c_fs,order,r_n\n")
    for (tm, n), pt in zip(minima, points):
        out.write(f"{tm:.16e},{tm / FS_AU:.16e},{n},{pt.r_n:.16e}\n")
    return 0


def _range(text: str):
    try:
        a, b, n = text.split(":")
        return float(a), float(b), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b:n, got {text!r}") from None


def _cmd_betas(args) -> int:
    a, b, n = args.rn_range
    r_n = np.linspace(a, b, n)
    betas = beta_coefficients(args.pe, r_n, args.form)
    sys.stdout.write("r_n,x,beta0,beta2,beta4\n")
    for row in zip(r_n, args.pe * r_n, *betas):
        sys.stdout.write(",".join(f"{v:.16e}" for v in row) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fanoprobe", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="evaluate a probability grid")
    p.add_argument("spec", nargs="?", type=Path, help="JSON scan spec")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--out", type=Path)
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--model", choices=MODELS)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("minima", help="trajectory from interference minima in a delay trace")
    p.add_argument("trace", type=Path)
    p.add_argument("--pe", type=float, required=True, help="electron momentum (a.u.)")
    p.add_argument("--theta", type=float, default=0.0,
                   help="angle between p_e and p_N (rad)")
    p.add_argument("--column", default="total")
    p.add_argument("--at", action="append", metavar="NAME=VALUE",
                   help="select a 1-D slice of a 2-D scan (nearest grid value)")
    p.add_argument("--first-order", type=int,
                   help="fringe order of the first minimum (default: from the phase column)")
    p.set_defaults(func=_cmd_minima)

    p = sub.add_parser("betas", help="Legendre anisotropy parameters versus R_N")
    p.add_argument("--pe", type=float, required=True)
    p.add_argument("--rn-range", type=_range, required=True, metavar="a:b:n")
    p.add_argument("--form", choices=("exact", "asymptotic", "printed"), default="exact")
    p.set_defaults(func=_cmd_betas)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, ValueError, OSError) as exc:
        print(f"fanoprobe {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
