"""Command line front end.

Exit codes: 0 success, 2 invalid parameters or a failed computation,
3 verification failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .curvature import CurveParams, phi_bounds, validate_params
from .curves import solve_constant_K
from .errors import RotGaussError
from .measures import CONVENTIONS, enclosed_volume, surface_area
from .mesh import revolve_mesh
from .oracle import SUITES, run_suite
from .prescribed import BumpSpec, RiccatiCase, riccati_closed_form, riccati_state, solve_prescribed_K
from .quadrature import QuadratureConfig, period_data
from .serialize import dumps

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_USAGE = 0, 2, 3, 64
TOL_ENV = "ROTGAUSS_TOL"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _config() -> QuadratureConfig:
    raw = os.environ.get(TOL_ENV)
    if not raw:
        return QuadratureConfig()
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV} must be a number, got {raw!r}") from None
    return QuadratureConfig(abs_tol=tol, rel_tol=tol)


def _add_params(p, required_K=True):
    p.add_argument("--n", type=int, required=required_K, help="ambient dimension (>= 3)")
    p.add_argument("--K", type=float, required=required_K, help="constant Gauss-Kronecker curvature")
    p.add_argument("--CK", "--ck", dest="ck", type=float, default=0.0, help="first-integral constant C_K")
    p.add_argument("--t0", type=float, default=0.0, help="anchor time")
    p.add_argument("--orientation", type=int, choices=(1, -1), default=1,
                   help="sign of phi' on the initial branch")


def _params(args) -> CurveParams:
    return validate_params(CurveParams(args.n, args.K, args.ck, args.orientation, args.t0))


def _write(path, text, newline=""):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", newline=newline) as fh:
        fh.write(text)


def _curve(args, cfg):
    return solve_constant_K(_params(args), count=args.count, step=args.step, periods=args.periods,
                            t_min=args.tmin, line=(args.c1, args.c2), cfg=cfg)


def cmd_solve(args, cfg):
    if args.riccati_a is not None:
        case = RiccatiCase(args.riccati_a, c=args.riccati_c, scale=args.scale)
        step = args.step or 1e-2
        curve = solve_prescribed_K(case.K, riccati_state(case, 1.0), step, (1.0, args.tmax), n=3)
        params = {"curvature": "riccati", "a": case.a, "c": case.c, "scale": case.scale}
    elif args.bump is not None:
        if args.n is None:
            raise UsageError("solve: --bump needs --n")
        r0, eps = args.bump
        spec = BumpSpec(args.n, r0, eps)
        from .curvature import CurveState

        curve = solve_prescribed_K(spec.K, CurveState(-1.0, r0, 0.0, 0.0, 1.0, 0.0), args.step or 1e-3,
                                   (-1.0, 0.0), n=args.n)
        params = {"curvature": "bump", "n": args.n, "r0": r0, "epsilon": eps}
    else:
        if args.K is None or args.n is None:
            raise UsageError("solve: --n with one of --K, --riccati-a or --bump is required")
        curve = _curve(args, cfg)
        p = curve.params
        params = {"curvature": "constant", "n": p.n, "K": p.K, "C_K": p.ck,
                  "orientation": p.orientation, "t0": p.t0}
    _write(args.out, curve.to_csv())
    meta = {k: v for k, v in curve.metadata.items() if k != "junctions"}
    sidecar = {"params": params, "metadata": meta,
               "endpoints": [e.value for e in curve.endpoints],
               "branches": [list(b) for b in curve.branches],
               "junctions": [[t, k] for t, k in curve.metadata.get("junctions", [])],
               "samples": len(curve)}
    json_path = args.json or (args.out + ".json" if args.out not in (None, "-") else None)
    if json_path:
        _write(json_path, dumps(sidecar) + "\n")
    return EXIT_OK


def cmd_period(args, cfg):
    pd = period_data(_params(args), cfg)
    _write(args.out, dumps({"half_period": pd.half_period, "full_period": pd.full_period,
                            "branch_gap": pd.branch_gap, "divergent": pd.divergent}) + "\n")
    return EXIT_OK


def cmd_measure(args, cfg):
    curve = _curve(args, cfg)
    conventions = [args.convention] if args.convention else list(CONVENTIONS)
    out = {"area": [], "volume": []}
    for conv in conventions:
        kw = dict(convention=conv, include_tail=not args.no_tail, both_halves=args.both_halves)
        out["area"].append(surface_area(curve, **kw).as_dict())
        out["volume"].append(enclosed_volume(curve, **kw).as_dict())
    _write(args.out, dumps(out) + "\n")
    return EXIT_OK


def cmd_mesh(args, cfg):
    curve = _curve(args, cfg)
    mesh = revolve_mesh(curve, args.resolution, curve_id=f"n={args.n} K={args.K} C_K={args.ck}")
    _write(args.out, mesh.to_obj(), newline="\n")
    return EXIT_OK


def cmd_verify(args, cfg):
    report = run_suite(args.suite, seed=args.seed)
    _write(args.out, dumps(report) + "\n")
    return EXIT_OK if report["pass"] else EXIT_VERIFY


def cmd_riccati(args, cfg):
    case = RiccatiCase(args.a, c=args.c, scale=args.scale, c0=args.c0)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["t", "phi_paper", "phi_corrected", "residual_paper", "residual_corrected"])
    for t in np.geomspace(args.tmin, args.tmax, args.count):
        row = riccati_closed_form(case, float(t))
        w.writerow([f"{float(t):.17g}"] + [f"{v:.17g}" for v in row])
    _write(args.out, buf.getvalue())
    return EXIT_OK


def _sweep_row(item, cfg):
    i, n, K, ck = item
    base = [str(i), str(n), f"{K:.17g}", f"{ck:.17g}"]
    try:
        p = validate_params(CurveParams(n, K, ck))
        if K == 0:
            return base + ["", "", "", "", "", "false", "ok"]
        lo, hi = phi_bounds(p)
        pd = period_data(p, cfg)
        f = lambda v: "" if v is None else f"{v:.17g}"
        return base + [f(lo), f(hi), f(pd.half_period), f(pd.full_period), f(pd.branch_gap),
                       "true" if pd.divergent else "false", "ok"]
    except RotGaussError as exc:
        return base + ["", "", "", "", "", "", str(exc)]


def _floats(items):
    text = ",".join(items)
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of numbers, got {text!r}") from None


def cmd_sweep(args, cfg):
    grid = [(i, args.n, K, ck) for i, (K, ck) in
            enumerate((K, ck) for K in _floats(args.K_list) for ck in _floats(args.CK_list))]
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as ex:
        rows = list(ex.map(lambda item: _sweep_row(item, cfg), grid))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["index", "n", "K", "C_K", "phi_min", "phi_max", "half_period", "full_period",
                "branch_gap", "divergent", "status"])
    w.writerows(rows)
    _write(args.out, buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rotgauss", description="Rotational hypersurfaces of prescribed Gauss-Kronecker "
                     f"curvature. Tolerances can be overridden with the {TOL_ENV} environment variable.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def sampling(p):
        p.add_argument("--count", type=int, default=None, help="number of samples (default 401)")
        p.add_argument("--step", type=float, default=None, help="sample spacing in arclength")
        p.add_argument("--periods", type=int, default=1, help="number of arches to glue")
        p.add_argument("--tmin", type=float, default=None,
                       help="truncation time of an infinite end (default t0 - 25)")
        p.add_argument("--c1", type=float, default=0.0, help="slope of the straight profile when K = 0")
        p.add_argument("--c2", type=float, default=1.0, help="radius at t0 of the straight profile when K = 0")

    p = sub.add_parser("solve", help="sample a generating curve to CSV with a JSON sidecar")
    _add_params(p, required_K=False)
    sampling(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--riccati-a", type=float, default=None, help="solve K(t) = -a/t^2 (n = 3) instead")
    g.add_argument("--bump", type=float, nargs=2, metavar=("R0", "EPS"), default=None,
                   help="solve the curvature ramp from a cylinder of radius R0 instead")
    p.add_argument("--riccati-c", type=float, default=0.0, help="integration constant for --riccati-a")
    p.add_argument("--scale", type=float, default=1.0, help="overall factor for --riccati-a")
    p.add_argument("--tmax", type=float, default=10.0, help="end time for --riccati-a")
    p.add_argument("--out", default="-", help="CSV path (default stdout)")
    p.add_argument("--json", default=None, help="sidecar path (default OUT.json)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("period", help="half period, full period and rim gap as JSON")
    _add_params(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("measure", help="area and enclosed volume as JSON")
    _add_params(p)
    sampling(p)
    p.add_argument("--convention", choices=CONVENTIONS, default=None, help="default: both")
    p.add_argument("--both-halves", action="store_true", help="double the result (mirror image)")
    p.add_argument("--no-tail", action="store_true", help="do not add the part beyond --tmin")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("mesh", help="triangulated surface of revolution as OBJ")
    _add_params(p)
    sampling(p)
    p.add_argument("--resolution", type=int, default=64, help="angular resolution (>= 8)")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_mesh)

    p = sub.add_parser("verify", help="run the finite-difference and comparison checks")
    p.add_argument("--suite", choices=["all"] + sorted(SUITES), default="all")
    p.add_argument("--seed", type=int, default=0, help="seed for the random sample points")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("riccati", help="closed forms and residuals for K(t) = -a/t^2 as CSV")
    p.add_argument("--a", type=float, required=True, help="negative coefficient a")
    p.add_argument("--c", type=float, default=0.0, help="integration constant")
    p.add_argument("--scale", type=float, default=1.0, help="overall factor")
    p.add_argument("--c0", type=float, default=2.0, help="normalisation point of the case 1 printed form")
    p.add_argument("--tmin", type=float, default=1.0)
    p.add_argument("--tmax", type=float, default=100.0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_riccati)

    p = sub.add_parser("sweep", help="bounds and periods over a (K, C_K) grid as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--K", dest="K_list", nargs="+", required=True,
                   help="K values, space or comma separated (use --K=-1,-2 for a list starting with -)")
    p.add_argument("--CK", "--ck", dest="CK_list", nargs="+", required=True, help="C_K values, as for --K")
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_sweep)
    return parser


def run(argv=None) -> int:
    """Run the command line; returns the exit code."""
    try:
        args = build_parser().parse_args(argv)
        cfg = _config()
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RotGaussError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main():
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # output piped into e.g. head; silence the interpreter's flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)
