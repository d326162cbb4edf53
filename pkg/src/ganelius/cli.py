"""Command line: ``ganelius {nodes,approx,sweep,rates,verify,plotdata}``.

Exit status is 0 on success, 1 when a verification check fails and 2 for
bad usage or parameters.  The default precision can be set with the
``GANELIUS_PRECISION`` environment variable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import warnings
from fractions import Fraction

from .approximant import Scheme, build, evaluate
from .corpus import TEST_FUNCTIONS, test_function
from .kernel import SpaceParams
from .numerics import Points, Precision, UnitPoint, format_real, to_float
from .sampling import ganelius_nodes, transform_nodes
from . import verify as V

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_N = [m * m for m in range(2, 13)]


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument parsing helpers


def parse_n_list(text: str | None, default=None) -> list:
    """``"4,9,16"``, ``"4:144:sq"`` (squares in range) or ``""`` (empty)."""
    if text is None:
        return list(default or [])
    text = text.strip()
    if not text:
        return []
    m = re.fullmatch(r"(\d+):(\d+):sq", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        return [k * k for k in range(math.isqrt(lo - 1) + 1, math.isqrt(hi) + 1)]
    try:
        out = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"bad N list {text!r}") from None
    if any(n < 1 for n in out):
        raise UsageError("N must be positive")
    return out


def parse_point(text: str) -> UnitPoint:
    """``0.25``, ``1-1e-12``, ``-(1-3e-9)`` or ``-1+3e-9``."""
    t = text.strip().replace(" ", "")
    m = re.fullmatch(r"(-\()?1-([0-9.eE+-]+)(\))?", t)
    if m and bool(m.group(1)) == bool(m.group(3)):
        return UnitPoint.endpoint(-1 if m.group(1) else 1, Fraction(m.group(2)))
    m = re.fullmatch(r"-1\+([0-9.eE+-]+)", t)
    if m:
        return UnitPoint.endpoint(-1, Fraction(m.group(1)))
    try:
        return UnitPoint.interior(Fraction(t))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad point {text!r}") from None


def parse_grid(text: str | None) -> tuple | None:
    """``paper`` (default), ``uniform:n`` or ``explicit:p1,p2,...``."""
    if text is None or text == "paper":
        return None
    kind, _, rest = text.partition(":")
    if kind == "uniform":
        try:
            return V.uniform_grid(int(rest))
        except ValueError:
            raise UsageError(f"bad grid {text!r}") from None
    if kind == "explicit" and rest:
        return tuple(parse_point(p) for p in rest.split(","))
    raise UsageError(f"unknown grid {text!r}")


def _function(args):
    try:
        return test_function(args.function, eps=getattr(args, "eps", None))
    except KeyError as e:
        raise UsageError(e.args[0]) from None


def _schemes(name: str) -> list:
    return [Scheme.GANELIUS, Scheme.SESINC] if name == "both" else [Scheme(name)]


def _write(args, text: str) -> None:
    if args.output and args.output != "-":
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_nodes(args) -> int:
    prec = Precision.parse(args.precision)
    if args.r is not None:
        if args.mu is not None:
            raise UsageError("give either --r or --d/--mu")
        r, d = args.r, args.d or "pi/2"
    elif args.d is not None and args.mu is not None:
        params = SpaceParams(args.d, args.mu)
        r, d = params.r_in(prec), args.d
    else:
        raise UsageError("need --r, or both --d and --mu")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore" if args.quiet else "default")
        tn = transform_nodes(ganelius_nodes(args.N, r, prec), prec.real(d))
    dig = prec.digits
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "a_k", "b_k", "beta_k", "sigma_sign", "sigma_logmag"])
    a, b, beta = tn.nodes.a, tn.b, tn.beta
    for k in range(1, args.N + 1):
        i = tn.position(k)
        w.writerow([k, format_real(a[k - 1], dig), format_real(b[i], dig),
                    format_real(beta[i], dig), int(tn.sigma_sign[i]),
                    format_real(tn.sigma_logmag[i], dig)])
    _write(args, buf.getvalue())
    return EXIT_OK


def cmd_approx(args) -> int:
    prec = Precision.parse(args.precision)
    f = _function(args)
    grid = parse_grid(args.grid) or V.PaperGrid().unit_points
    pts = Points.from_unit_points(grid, prec)
    A = build(f, args.scheme, args.N, nu=args.nu, precision=prec)
    fx, ax = f(pts), evaluate(A, pts)
    dig = prec.digits
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "f", "approx", "error"])
    for i, p in enumerate(grid):
        w.writerow([p.label(), format_real(fx[i], dig), format_real(ax[i], dig),
                    format_real(abs(fx[i] - ax[i]), dig)])
    _write(args, buf.getvalue())
    return EXIT_OK


def _sweeps(args) -> list:
    prec = Precision.parse(args.precision)
    f = _function(args)
    N_list = parse_n_list(args.N, DEFAULT_N)
    grid = parse_grid(args.grid)
    return [V.error_sweep(f, s, N_list, prec, grid=grid, nu=args.nu, workers=args.workers)
            for s in _schemes(args.scheme)]


def cmd_sweep(args) -> int:
    reports = _sweeps(args)
    text = V.report_json(reports) if args.format == "json" else V.report_csv(reports)
    _write(args, text)
    return EXIT_OK


def cmd_plotdata(args) -> int:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["scheme", "sqrt_N", "log10_error"])
    for rep in _sweeps(args):
        for row in rep.rows:
            err = float(to_float(row.max_error))
            log10 = format_real(math.log10(err), 17) if err > 0 else "-inf"
            w.writerow([rep.scheme.value, format_real(math.sqrt(row.N), 17), log10])
    _write(args, buf.getvalue())
    return EXIT_OK


def cmd_rates(args) -> int:
    fids = [args.function] if args.function else sorted(TEST_FUNCTIONS)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["function", "scheme", "d", "mu", "theoretical_ratio", "slope"])
    for fid in fids:
        args.function = fid
        f = _function(args)
        for s in _schemes(args.scheme):
            rate = V.theoretical_rate(f.params, s)
            w.writerow([fid, s.value, format_real(f.params.d_float, 17),
                        format_real(f.params.mu_float, 17), format_real(rate, 17),
                        format_real(-math.log(rate), 17)])
    _write(args, buf.getvalue())
    return EXIT_OK


CHECKS = ("ganelius-bound", "j-bound", "cardinal", "blaschke-modulus")


def cmd_verify(args) -> int:
    checks = args.check or ["all"]
    if "all" in checks:
        checks = list(CHECKS)
    results = []
    for name in checks:
        if name == "ganelius-bound":
            r_values = [float(x) for x in args.r.split(",")] if args.r else (0.5, 1.0, 1.5, 3.0)
            N_list = parse_n_list(args.N) if args.N else None
            results.append(V.check_ganelius_bound(r_values, N_list))
        elif name == "j-bound":
            results.append(V.check_j_bound())
        elif name == "cardinal":
            fids = [args.function] if args.function else sorted(TEST_FUNCTIONS)
            Ns = parse_n_list(args.N) if args.N else [4, 16, 64]
            for fid in fids:
                args.function = fid
                f = _function(args)
                for N in Ns:
                    results.append(V.check_cardinal(f, N, args.precision))
        elif name == "blaschke-modulus":
            Ns = parse_n_list(args.N) if args.N else [4, 16]
            results.append(V.check_blaschke_modulus(N_values=Ns))
    ok = all(r.passed for r in results)
    report = {"passed": ok, "checks": [r.as_dict() for r in results]}
    _write(args, json.dumps(report, indent=2) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ganelius", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--precision", choices=["binary64", "extended"], default=None,
                        help="working precision (default: $GANELIUS_PRECISION or binary64)")
        sp.add_argument("--output", "-o", default=None, help="output path (default stdout)")

    def func(sp, required=True):
        sp.add_argument("--function", "-f", required=required, help="f1 .. f5")
        sp.add_argument("--eps", default=None, help="strip margin: d = base - eps")

    sp = sub.add_parser("nodes", help="dump sampling points and coefficients")
    common(sp)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--r", default=None)
    sp.add_argument("--d", default=None)
    sp.add_argument("--mu", default=None)
    sp.add_argument("--quiet", action="store_true", help="silence the small-N0 warning")
    sp.set_defaults(run=cmd_nodes)

    sp = sub.add_parser("approx", help="evaluate one approximant on a grid")
    common(sp)
    func(sp)
    sp.add_argument("--scheme", choices=["ganelius", "sesinc"], default="ganelius")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--nu", type=float, default=None)
    sp.add_argument("--grid", default="paper", help="paper | uniform:n | explicit:x1,x2,...")
    sp.set_defaults(run=cmd_approx)

    for name, run, helptext in (("sweep", cmd_sweep, "max-error table over N"),
                                ("plotdata", cmd_plotdata, "semilog plot data")):
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        func(sp)
        sp.add_argument("--scheme", choices=["ganelius", "sesinc", "both"],
                        default="both" if name == "plotdata" else "ganelius")
        sp.add_argument("--N", default=None, help="e.g. 4,9,16 or 4:144:sq (default squares 4..144)")
        sp.add_argument("--nu", type=float, default=None)
        sp.add_argument("--grid", default="paper")
        sp.add_argument("--workers", type=int, default=None)
        if name == "sweep":
            sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.set_defaults(run=run)

    sp = sub.add_parser("rates", help="theoretical error ratios")
    common(sp)
    func(sp, required=False)
    sp.add_argument("--scheme", choices=["ganelius", "sesinc", "both"], default="both")
    sp.set_defaults(run=cmd_rates)

    sp = sub.add_parser("verify", help="run numerical checks")
    common(sp)
    func(sp, required=False)
    sp.add_argument("--check", action="append", choices=CHECKS + ("all",))
    sp.add_argument("--r", default=None, help="comma list of r for ganelius-bound")
    sp.add_argument("--N", default=None)
    sp.set_defaults(run=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (UsageError, ValueError, KeyError) as e:
        msg = e.args[0] if e.args else str(e)
        print(f"ganelius {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
