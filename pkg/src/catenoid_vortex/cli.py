"""Command line interface.

Exit codes: 0 success, 1 failed acceptance checks, 2 integration failure,
3 configuration or input error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .errors import CatenoidError, CoincidentVortices, ConfigError, IntegrationError
from .geodesics import Regime, make_spec, orbit_u_of_v
from .geometry import CatenoidGeometry

EXIT_OK = 0
EXIT_FAILED_CHECKS = 1
EXIT_INTEGRATION = 2
EXIT_CONFIG = 3


def _format_drifts(summary: dict) -> str:
    # Center invariants of a fast dipole are large, so their drift reads better relative.
    key, label = ("max_rel_drift", "max rel drift") if summary["kind"] == "dipoles" else (
        "max_abs_drift", "max drift")
    parts = [f"{k}={v:.3e}" for k, v in summary[key].items()]
    return f"{label} " + " ".join(parts)


def _run_one(path: str, out_dir: str) -> tuple[int, str]:
    from .scenarios import load_config, run_scenario

    try:
        config = load_config(path)
        result = run_scenario(config, out_dir)
    except ConfigError as exc:
        return EXIT_CONFIG, f"{path}: config error: {exc}"
    except (IntegrationError, CoincidentVortices) as exc:
        return EXIT_INTEGRATION, f"{path}: integration failed: {exc}"
    s = result.summary
    line = f"{s['name']}: {s['termination']}, {s['n_samples']} samples, {_format_drifts(s)}"
    if "scattering" in s:
        line += f", {s['scattering']['classification'].value}"
    if "geodesic" in s:
        g = s["geodesic"]
        line += f", {g['regime'].value} lambda={g['lambda']:.6g} deviation={g['deviation']:.3e}"
    if "corotation" in s:
        line += f", centroid drift rate {s['corotation']['drift_rate']:.6g}"
    return EXIT_OK, line


def cmd_run(args: argparse.Namespace) -> int:
    code, line = _run_one(args.config, args.out)
    print(line)
    return code


def cmd_run_all(args: argparse.Namespace) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        print(f"{directory}: not a directory", file=sys.stderr)
        return EXIT_CONFIG
    paths = sorted(str(p) for p in directory.glob("*.json"))
    if not paths:
        print(f"{directory}: no scenario files", file=sys.stderr)
        return EXIT_CONFIG
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, paths, [args.out] * len(paths)))
    else:
        results = [_run_one(p, args.out) for p in paths]
    for _, line in results:
        print(line)
    return max(code for code, _ in results)


def cmd_verify(args: argparse.Namespace) -> int:
    from .acceptance import run_all

    rows = run_all(set(args.criteria) if args.criteria else None)
    for row in rows:
        print(row.line())
    failed = sum(not r.passed for r in rows)
    print(f"{len(rows) - failed}/{len(rows)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_FAILED_CHECKS


def cmd_geodesic_table(args: argparse.Namespace) -> int:
    try:
        geom = CatenoidGeometry(args.a)
        spec = make_spec(geom, args.lam, sign=args.sign)
        if spec.regime in (Regime.MERIDIONAL, Regime.CRITICAL):
            raise ConfigError(f"{spec.regime.value} geodesics are not graphs u(v)")
        if spec.regime is Regime.SUPERCRITICAL:
            lo = spec.v_turn if args.v_min is None else args.v_min
            hi = spec.v_turn + 3.0 * geom.a if args.v_max is None else args.v_max
        else:
            lo = -3.0 * geom.a if args.v_min is None else args.v_min
            hi = 3.0 * geom.a if args.v_max is None else args.v_max
        v = np.linspace(lo, hi, args.n)
        u = orbit_u_of_v(spec, geom, v)
    except CatenoidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    turn = "" if spec.v_turn is None else f" v_turn={spec.v_turn:.17g}"
    print(f"# lambda={spec.lam:.17g} a={geom.a:.17g} regime={spec.regime.value}{turn}")
    print("v,u")
    for vi, ui in zip(v, u):
        print(f"{vi:.17g},{ui:.17g}")
    return EXIT_OK


def cmd_write_scenarios(args: argparse.Namespace) -> int:
    from .scenarios import write_catalogue

    for path in write_catalogue(args.directory):
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catenoid-vortex",
        description="Point vortices, dipoles and geodesics on the catenoid.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one scenario file")
    p.add_argument("config", help="scenario JSON file")
    p.add_argument("--out", default="output", help="directory for output files (default: output)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("run-all", help="run every scenario file in a directory")
    p.add_argument("directory")
    p.add_argument("--out", default="output", help="directory for output files (default: output)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default: 1)")
    p.set_defaults(func=cmd_run_all)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("criteria", nargs="*", type=int, help="criterion numbers (default: all)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("geodesic-table", help="tabulate the closed-form orbit u(v)")
    p.add_argument("lam", type=float, help="orbit class parameter lambda")
    p.add_argument("a", type=float, help="throat radius")
    p.add_argument("--n", type=int, default=21, help="number of rows (default: 21)")
    p.add_argument("--v-min", type=float, default=None)
    p.add_argument("--v-max", type=float, default=None)
    p.add_argument("--sign", type=int, choices=(1, -1), default=1, help="orbit branch")
    p.set_defaults(func=cmd_geodesic_table)

    p = sub.add_parser("write-scenarios", help="write the bundled scenario files")
    p.add_argument("directory")
    p.set_defaults(func=cmd_write_scenarios)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
