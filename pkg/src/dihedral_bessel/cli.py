"""Command-line front end.

Subcommands:
  eval        evaluate one representation at one point
  crosscheck  compare representation pairs over a parameter grid
  identity    run a named identity suite at its documented ranges
  density     tabulate the Laplace density H_p on a grid (CSV/JSON)

Exit codes: 0 success, 2 usage or validation error, 3 convergence or
tolerance failure.  All Monte Carlo work is seeded (Philox); reruns with
the same seed write byte-identical CSV files.
"""

import argparse
import csv
import json
import math
import sys
import time

import numpy as np

from .config import DEFAULT_SEED, EvalConfig
from .identities import IDENTITY_SUITES
from .laplace import EvenDihedralParams, eval_boundary_bessel, eval_laplace, support_probe
from .series import (DihedralParams, PolarPoint, boundary_horn,
                     eval_gegenbauer_series, eval_horn_series)
from .simplex import QuadratureScheme, eval_simplex_integral
from .special import ConvergenceError

USAGE_EXIT = 2
TOLERANCE_EXIT = 3

METHODS = ("gegenbauer", "horn", "simplex", "boundary", "laplace")


def _parse_point(text: str, cartesian: bool) -> PolarPoint:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"a point is 'radius,angle' (or 'x,y' with --cartesian), got {text!r}")
    a, b = (float(p) for p in parts)
    if cartesian:
        return PolarPoint(math.hypot(a, b), math.atan2(b, a))
    return PolarPoint(a, b)


def _self_check(params: DihedralParams) -> None:
    """Normalization guard: D(0, y) must be 1."""
    res = eval_gegenbauer_series(params, PolarPoint(0.0, 0.0), PolarPoint(1.0, 0.1))
    if abs(res.value - 1.0) > 1e-10:
        raise RuntimeError(f"normalization self-check failed: D(0, y) = {res.value!r}")


def _evaluate(method: str, params: DihedralParams, x: PolarPoint, y: PolarPoint,
              cfg: EvalConfig, scheme: QuadratureScheme):
    if method == "gegenbauer":
        return eval_gegenbauer_series(params, x, y, cfg)
    if method == "horn":
        return eval_horn_series(params, x, y, cfg)
    if method == "simplex":
        return eval_simplex_integral(params, x, y, scheme, cfg)
    if params.n % 2 != 0:
        raise ValueError(f"method {method!r} needs an even group (n = 2p)")
    if x.angle != 0.0:
        raise ValueError(f"method {method!r} is a boundary representation; "
                         "x must be given as 'rho,0'")
    even = EvenDihedralParams(params.n // 2, params.k)
    if method == "boundary":
        return eval_boundary_bessel(even, x.radius, y.cartesian(), scheme, cfg)
    if method == "laplace":
        return eval_laplace(even, x.radius, y.cartesian(), scheme)
    raise ValueError(f"unknown method {method!r}")


def _write_json(path: str, doc: dict) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def cmd_eval(args) -> int:
    if (args.n is None) == (args.p is None):
        print("error: exactly one of --n / --p is required", file=sys.stderr)
        return USAGE_EXIT
    n = args.n if args.n is not None else 2 * args.p
    params = DihedralParams(n, args.k)
    x = _parse_point(args.x, args.cartesian)
    y = _parse_point(args.y, args.cartesian)
    cfg = EvalConfig(tol=args.tol, seed=args.seed)
    scheme = QuadratureScheme(args.quad, args.samples, args.seed)
    _self_check(params)
    t0 = time.perf_counter()
    res = _evaluate(args.method, params, x, y, cfg, scheme)
    elapsed = time.perf_counter() - t0
    print(f"method        {args.method}")
    print(f"n, k          {params.n}, {params.k}")
    print(f"value         {res.value!r}")
    print(f"error         {res.error!r}")
    if res.terms_used is not None:
        print(f"terms_used    {res.terms_used}")
    if res.samples_used is not None:
        print(f"samples_used  {res.samples_used}")
    if args.json:
        _write_json(args.json, {
            "schema": 1,
            "command": "eval",
            "params": {"n": params.n, "k": params.k,
                       "x": [x.radius, x.angle], "y": [y.radius, y.angle],
                       "method": args.method, "seed": args.seed,
                       "samples": args.samples, "tol": args.tol},
            "results": [{"method": args.method, "value": res.value, "error": res.error,
                         "terms_used": res.terms_used, "samples_used": res.samples_used}],
            "wall_time_s": elapsed,
        })
    return 0


def _pair_tolerance(method_a: str, method_b: str, res_a, res_b, rtol: float,
                    mc_rtol: float) -> float:
    scale = max(1.0, abs(res_a.value))
    if res_a.samples_used or res_b.samples_used:
        stderr = math.hypot(res_a.error if res_a.samples_used else 0.0,
                            res_b.error if res_b.samples_used else 0.0)
        return max(3.0 * stderr, mc_rtol * scale)
    return rtol * scale


def cmd_crosscheck(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if len(methods) < 2:
        print("error: --methods needs at least two comma-separated methods", file=sys.stderr)
        return USAGE_EXIT
    for m in methods:
        if m not in METHODS:
            print(f"error: unknown method {m!r}", file=sys.stderr)
            return USAGE_EXIT
    nvals = [int(v) for v in args.n_values.split(",")]
    kvals = [float(v) for v in args.k_values.split(",")]
    needs_boundary = any(m in ("boundary", "laplace") for m in methods)
    cfg = EvalConfig(tol=min(args.tol * 1e-2, 1e-12), seed=args.seed)
    scheme = QuadratureScheme("dirichlet-mc", args.samples, args.seed)
    rng = np.random.Generator(np.random.Philox(args.seed))
    rows = []
    worst = 0.0
    all_ok = True
    t0 = time.perf_counter()
    for n in nvals:
        if needs_boundary and n % 2 != 0:
            continue
        for k in kvals:
            params = DihedralParams(n, k)
            for _ in range(args.points):
                rho, r = rng.uniform(0.1, args.rho_max, size=2)
                phi = 0.0 if needs_boundary else float(rng.uniform(0.0, math.pi / n))
                theta = float(rng.uniform(0.0, math.pi / n))
                x = PolarPoint(float(rho), phi)
                y = PolarPoint(float(r), theta)
                results = {m: _evaluate(m, params, x, y, cfg, scheme) for m in methods}
                ref = methods[0]
                for other in methods[1:]:
                    ra, rb = results[ref], results[other]
                    dev = abs(ra.value - rb.value)
                    tol = _pair_tolerance(ref, other, ra, rb, args.tol, args.mc_rtol)
                    ok = dev <= tol
                    all_ok &= ok
                    worst = max(worst, dev / tol if tol > 0 else math.inf)
                    rows.append({
                        "n": n, "k": k, "rho": float(rho), "phi": phi,
                        "r": float(r), "theta": theta,
                        "method_a": ref, "value_a": ra.value, "error_a": ra.error,
                        "method_b": other, "value_b": rb.value, "error_b": rb.error,
                        "deviation": dev, "tolerance": tol, "passed": ok,
                    })
    elapsed = time.perf_counter() - t0
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            for row in rows:
                writer.writerow({k: (repr(v) if isinstance(v, float) else v)
                                 for k, v in row.items()})
    if args.json:
        _write_json(args.json, {
            "schema": 1,
            "command": "crosscheck",
            "params": {"methods": methods, "n_values": nvals, "k_values": kvals,
                       "points": args.points, "rho_max": args.rho_max,
                       "tolerance": args.tol, "mc_rtol": args.mc_rtol,
                       "samples": args.samples, "seed": args.seed},
            "checks": rows,
            "all_passed": all_ok,
            "wall_time_s": elapsed,
        })
    n_fail = sum(1 for row in rows if not row["passed"])
    print(f"crosscheck {' vs '.join(methods)}: {len(rows)} comparisons, "
          f"{n_fail} failures, worst deviation/tolerance = {worst:.3e}")
    return 0 if all_ok else TOLERANCE_EXIT


def cmd_identity(args) -> int:
    names = list(IDENTITY_SUITES) if args.which == "all" else [args.which]
    reports = []
    code = 0
    for name in names:
        t0 = time.perf_counter()
        rep = IDENTITY_SUITES[name]()
        elapsed = time.perf_counter() - t0
        reports.append((rep, elapsed))
        status = "pass" if rep.passed else "FAIL"
        print(f"{rep.name:<14} {status}  max deviation {rep.max_deviation:.3e} "
              f"(tolerance {rep.tolerance:.1e}, {rep.checks} checks, {elapsed:.1f}s)")
        if not rep.passed:
            code = TOLERANCE_EXIT
    if args.json:
        _write_json(args.json, {
            "schema": 1,
            "command": "identity",
            "checks": [{
                "name": rep.name, "max_deviation": rep.max_deviation,
                "tolerance": rep.tolerance, "checks": rep.checks,
                "passed": rep.passed, "details": rep.details,
                "wall_time_s": elapsed,
            } for rep, elapsed in reports],
        })
    return code


def cmd_density(args) -> int:
    params = EvenDihedralParams(args.p, args.k)
    scheme = QuadratureScheme("dirichlet-mc", args.samples, args.seed)
    grid = support_probe(params, args.rho, extent=args.extent,
                         resolution=args.resolution, scheme=scheme, floor=args.floor)
    summary = grid.summary()
    for key, val in summary.items():
        print(f"{key:<20} {val}")
    if args.csv:
        grid.to_csv(args.csv)
    if args.json:
        grid.to_json(args.json)
    return 0 if summary["support_within_disk"] else TOLERANCE_EXIT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dihedral-bessel",
        description="Generalized Bessel functions of dihedral groups: "
                    "evaluate and cross-verify four representations.")
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate one representation at one point")
    group = pe.add_mutually_exclusive_group()
    group.add_argument("--n", type=int, help="dihedral parameter (2n reflections)")
    group.add_argument("--p", type=int, help="even-group parameter, n = 2p")
    pe.add_argument("--k", type=float, required=True, help="multiplicity, k > 0")
    pe.add_argument("--x", required=True, help="first point 'radius,angle'")
    pe.add_argument("--y", required=True, help="second point 'radius,angle'")
    pe.add_argument("--cartesian", action="store_true",
                    help="interpret --x/--y as cartesian 'x,y'")
    pe.add_argument("--method", choices=METHODS, default="gegenbauer")
    pe.add_argument("--tol", type=float, default=1e-12)
    pe.add_argument("--samples", type=int, default=100_000)
    pe.add_argument("--seed", type=int, default=DEFAULT_SEED)
    pe.add_argument("--quad", choices=("dirichlet-mc", "product-rule"),
                    default="dirichlet-mc")
    pe.add_argument("--json", help="write a JSON report to this path")
    pe.set_defaults(func=cmd_eval)

    pc = sub.add_parser("crosscheck", help="compare representations over a grid")
    pc.add_argument("--methods", default="gegenbauer,horn",
                    help="comma-separated list; first is the reference")
    pc.add_argument("--n-values", default="3,4,5")
    pc.add_argument("--k-values", default="0.5,1.0,2.5")
    pc.add_argument("--points", type=int, default=5)
    pc.add_argument("--rho-max", type=float, default=2.0)
    pc.add_argument("--tol", type=float, default=1e-9,
                    help="relative tolerance for deterministic pairs")
    pc.add_argument("--mc-rtol", type=float, default=1e-2,
                    help="relative floor for Monte Carlo pairs")
    pc.add_argument("--samples", type=int, default=200_000)
    pc.add_argument("--seed", type=int, default=DEFAULT_SEED)
    pc.add_argument("--csv", help="write per-comparison rows to this CSV path")
    pc.add_argument("--json", help="write a JSON report to this path")
    pc.set_defaults(func=cmd_crosscheck)

    pi = sub.add_parser("identity", help="run a named identity suite")
    pi.add_argument("--which", required=True,
                    choices=tuple(IDENTITY_SUITES) + ("all",))
    pi.add_argument("--json", help="write a JSON report to this path")
    pi.set_defaults(func=cmd_identity)

    pd = sub.add_parser("density", help="tabulate the Laplace density H_p")
    pd.add_argument("--p", type=int, required=True)
    pd.add_argument("--k", type=float, required=True)
    pd.add_argument("--rho", type=float, required=True)
    pd.add_argument("--extent", type=float, default=None,
                    help="grid half-width (default 1.2 rho)")
    pd.add_argument("--resolution", type=int, default=41)
    pd.add_argument("--samples", type=int, default=100_000)
    pd.add_argument("--seed", type=int, default=DEFAULT_SEED)
    pd.add_argument("--floor", type=float, default=1e-12,
                    help="support threshold on H")
    pd.add_argument("--csv", help="write the grid to this CSV path")
    pd.add_argument("--json", help="write the grid to this JSON path")
    pd.set_defaults(func=cmd_density)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return TOLERANCE_EXIT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
