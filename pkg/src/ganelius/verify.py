"""Numerical checks of the decay inequalities and the error-sweep harness.

The maximizations below all work in log space.  ``F`` has a zero at every
node, so local maxima interleave the nodes; seeding one candidate between
each pair of consecutive nodes and refining with a vectorized golden-section
search catches every basin.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate

from .approximant import Scheme, build, evaluate
from .corpus import TEST_FUNCTIONS, TestFunction, eval_test_function
from .kernel import BlaschkeForm, BlaschkeProduct, SpaceParams, basis_matrix, blaschke_eval
from .numerics import Points, Precision, UnitPoint, format_real, to_float
from .sampling import ganelius_nodes, transform_nodes

SEED_POINTS = 10_000
S_FLOOR = 1e-12
GOLDEN_RTOL = 1e-8

_INVPHI = (math.sqrt(5) - 1) / 2


# ---------------------------------------------------------------------------
# evaluation grid


@dataclass(frozen=True)
class PaperGrid:
    """``X = {i/1000}`` for ``|i| < 1000`` followed by ``Y = {+-(1 - k 10^-l)}``.

    ``Y`` is endpoint-coded with exact decimal ``delta``; ``l = 4..16``,
    ``k = 1..9``.
    """

    unit_points: tuple = field(default_factory=lambda: _paper_points())

    def __len__(self):
        return len(self.unit_points)

    @property
    def X(self) -> tuple:
        return tuple(p for p in self.unit_points if p.delta is None)

    @property
    def Y(self) -> tuple:
        return tuple(p for p in self.unit_points if p.delta is not None)

    def points(self, precision=None) -> Points:
        return _grid_points(self.unit_points, Precision.parse(precision))


def _paper_points() -> tuple:
    pts = [UnitPoint.interior(Fraction(i, 1000)) for i in range(-999, 1000)]
    for ell in range(4, 17):
        for k in range(1, 10):
            pts.append(UnitPoint.decimal(1, k, ell))
            pts.append(UnitPoint.decimal(-1, k, ell))
    return tuple(pts)


@lru_cache(maxsize=16)
def _grid_points(unit_points: tuple, prec: Precision) -> Points:
    return Points.from_unit_points(unit_points, prec)


def uniform_grid(n: int) -> tuple:
    """``n`` equispaced interior points ``-1 + 2i/(n+1)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(UnitPoint.interior(Fraction(2 * i, n + 1) - 1) for i in range(1, n + 1))


# ---------------------------------------------------------------------------
# maximization helpers


def _golden_max(fun, lo: np.ndarray, hi: np.ndarray, tol: float):
    """Vectorized golden-section maximization of ``fun`` on ``[lo, hi]``."""
    lo, hi = lo.astype(float), hi.astype(float)
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = fun(x1), fun(x2)
    while np.max(hi - lo) > tol:
        left = f1 >= f2
        hi = np.where(left, x2, hi)
        lo = np.where(left, lo, x1)
        nx1 = np.where(left, hi - _INVPHI * (hi - lo), x2)
        nx2 = np.where(left, x1, lo + _INVPHI * (hi - lo))
        nf = fun(np.where(left, nx1, nx2))
        f1, f2 = np.where(left, nf, f2), np.where(left, f1, nf)
        x1, x2 = nx1, nx2
    mid = (lo + hi) / 2
    return mid, fun(mid)


def _seeded_max(fun, seeds: np.ndarray, tol: float):
    """Max of ``fun`` over sorted ``seeds``, refining every local max."""
    seeds = np.unique(seeds)
    vals = fun(seeds)
    n = len(seeds)
    left = np.concatenate([[-np.inf], vals[:-1]])
    right = np.concatenate([vals[1:], [-np.inf]])
    peaks = np.nonzero((vals >= left) & (vals >= right) & np.isfinite(vals))[0]
    lo = seeds[np.maximum(peaks - 1, 0)]
    hi = seeds[np.minimum(peaks + 1, n - 1)]
    arg, best = _golden_max(fun, lo, hi, tol)
    i = int(np.argmax(best))
    j = int(np.argmax(vals))
    if vals[j] > best[i]:
        return seeds[j], vals[j]
    return arg[i], best[i]


def _log_nodes(N: int, r) -> np.ndarray:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return to_float(ganelius_nodes(N, r, Precision.BINARY64).log_a)


def _s_seeds(log_a: np.ndarray) -> np.ndarray:
    floor = min(math.log(S_FLOOR), float(np.min(log_a)) - math.log(1e4))
    grid = np.linspace(floor, 0.0, SEED_POINTS)
    la = np.sort(log_a)
    mids = (la[1:] + la[:-1]) / 2  # geometric midpoints in s
    return np.concatenate([grid, mids, [0.0]])


def log_ganelius_product(log_s, log_a: np.ndarray, r: float) -> np.ndarray:
    """``r log s + sum log|s - a_k| - sum log(s + a_k)`` for ``s = exp(log_s)``."""
    log_s = np.atleast_1d(np.asarray(log_s, dtype=float))
    s = np.exp(log_s)[:, None]
    a = np.exp(log_a)[None, :]
    with np.errstate(divide="ignore"):
        terms = np.log(np.abs(s - a)) - np.log(s + a)
    return r * log_s + terms.sum(axis=1)


def ganelius_lhs(N: int, r, *, argmax: bool = False):
    """``max_{0 <= s <= 1} s^r prod |(s - a_k)/(s + a_k)|``.

    Seeds: ``10^4`` points log-spaced from ``min(1e-12, a_1/1e4)`` to 1,
    the geometric midpoints of consecutive nodes, and ``s = 1``.  Each local
    max is refined by golden section in ``log s`` (relative ``1e-8`` in s).
    """
    r_f = to_float(Precision.BINARY64.real(r))
    log_a = _log_nodes(N, r)
    fun = lambda v: log_ganelius_product(v, log_a, r_f)  # noqa: E731
    v, val = _seeded_max(fun, _s_seeds(log_a), GOLDEN_RTOL)
    out = math.exp(val)
    return (out, math.exp(v)) if argmax else out


def log_blaschke_weight(v, u: np.ndarray, r: float) -> np.ndarray:
    """``log[(1 - t^2)^r prod' |(t - b_k)/(1 - b_k t)|]`` at ``t = tanh v``.

    ``b_k = tanh u_k``, so each factor is ``|tanh(v -+ u_k)|``.
    """
    v = np.atleast_1d(np.asarray(v, dtype=float))
    av = np.abs(v)
    log_cosh = av + np.log1p(np.exp(-2 * av)) - math.log(2)
    w = np.concatenate([u, -u])[None, :]
    with np.errstate(divide="ignore"):
        terms = np.log(np.abs(np.tanh(v[:, None] - w)))
    return -2 * r * log_cosh + terms.sum(axis=1)


def blaschke_bound_lhs(N: int, r, *, argmax: bool = False):
    """``max_{-1 <= t <= 1} (1 - t^2)^r prod' |(t - b_k)/(1 - b_k t)|``.

    The function is even; the search runs over ``v = arctanh t >= 0`` with
    seeds mapped from the ``s`` seeds by ``s = sech(2v)``.
    """
    r_f = to_float(Precision.BINARY64.real(r))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        u = to_float(ganelius_nodes(N, r, Precision.BINARY64).u)
    log_s = _s_seeds(np.log(1 / np.cosh(2 * u)))
    s = np.exp(log_s)
    seeds = (np.log1p(np.sqrt(1 - s * s)) - log_s) / 2
    seeds = np.concatenate([seeds, [0.0]])
    fun = lambda v: log_blaschke_weight(v, u, r_f)  # noqa: E731
    v, val = _seeded_max(fun, seeds, GOLDEN_RTOL)
    out = math.exp(val)
    return (out, math.tanh(v)) if argmax else out


def weighted_ganelius_lhs(N: int, r) -> float:
    """``max_s F(s) (2/(1+s))^r``: the t-form rewritten in ``s = (1-t^2)/(1+t^2)``.

    Uses the ``a_k`` products, so it is an independent route to
    :func:`blaschke_bound_lhs`.
    """
    r_f = to_float(Precision.BINARY64.real(r))
    log_a = _log_nodes(N, r)

    def fun(v):
        return (log_ganelius_product(v, log_a, r_f)
                + r_f * (math.log(2) - np.log1p(np.exp(v))))

    _, val = _seeded_max(fun, _s_seeds(log_a), GOLDEN_RTOL)
    return math.exp(val)


def decay_fit(N_list, values) -> float:
    """Least-squares slope of ``ln(values)`` against ``sqrt(N)``."""
    x = np.sqrt(np.asarray(N_list, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    if len(x) < 2:
        return math.nan
    return float(np.polyfit(x, y, 1)[0])


# ---------------------------------------------------------------------------
# the integral J and its bound


def _log_cosh(x):
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2 * ax)) - math.log(2)


def j_integral(alpha: float, beta: float, t: float) -> float:
    """``int ds / (cosh^alpha(s - t) cosh^beta(s))`` over the real line.

    Adaptive quadrature (split at 0 and t), truncated where the integrand
    drops below ``1e-18`` of its peak; absolute tolerance ``1e-10``.

    Raises
    ------
    ValueError
        If ``alpha + beta <= 0`` (divergent).
    """
    alpha, beta, t = float(alpha), float(beta), float(t)
    if not alpha + beta > 0:
        raise ValueError("alpha + beta must be positive")

    def logg(s):
        return -alpha * _log_cosh(s - t) - beta * _log_cosh(s)

    lo_c, hi_c = min(0.0, t), max(0.0, t)
    probe = np.linspace(lo_c - 40, hi_c + 40, 4001)
    peak = float(np.max(logg(probe)))
    cut = peak - 18 * math.log(10)

    def edge(start, step):
        s = start
        while logg(s) >= cut or abs(s - start) < 1:
            s += step
        return s

    left, right = edge(lo_c, -1.0), edge(hi_c, 1.0)
    scale = math.exp(peak)
    g = lambda s: math.exp(logg(s) - peak)  # noqa: E731
    breaks = sorted({left, lo_c, hi_c, right})
    total = 0.0
    for a, b in zip(breaks[:-1], breaks[1:]):
        val, _ = integrate.quad(g, a, b, epsabs=1e-10 / scale / 4, epsrel=1e-12, limit=200)
        total += val
    return total * scale


def j_bound(alpha: float, beta: float, t: float) -> float:
    """``max{2^(a+1), 2^(a+b+1)} / (a^2 - b^2) * (a e^{-b|t|} - b e^{-a|t|})``.

    ``a = max(alpha, beta)``, ``b = min(alpha, beta)``.

    Raises
    ------
    ValueError
        If ``alpha == beta`` or ``alpha + beta <= 0``.
    """
    if alpha == beta:
        raise ValueError("alpha and beta must be distinct")
    if not alpha + beta > 0:
        raise ValueError("alpha + beta must be positive")
    a, b = max(alpha, beta), min(alpha, beta)
    at = abs(t)
    const = max(2 ** (a + 1), 2 ** (a + b + 1)) / (a * a - b * b)
    return const * (a * math.exp(-b * at) - b * math.exp(-a * at))


def j_instantiation(f: TestFunction) -> tuple:
    """``(1/2, (mu - 2 nu + 1)/2)`` for a test function."""
    return 0.5, (f.params.mu_float - 2 * float(f.nu_default) + 1) / 2


def j_suite(n: int = 50, seed: int = 20240517) -> list:
    """Deterministic ``(alpha, beta, t)`` samples for the domination check.

    The first 25 use the five test-function instantiations with
    ``t in {-5, -1.5, 0, 2, 5}``; the rest are drawn with a fixed seed.
    """
    out = []
    for fid in sorted(TEST_FUNCTIONS):
        a, b = j_instantiation(TEST_FUNCTIONS[fid])
        for t in (-5.0, -1.5, 0.0, 2.0, 5.0):
            out.append((a, b, t))
    rng = np.random.default_rng(seed)
    while len(out) < n:
        a, b = rng.uniform(-1.0, 3.0, size=2)
        if a + b > 0.05 and abs(a - b) > 0.05:
            out.append((float(a), float(b), float(rng.uniform(-5, 5))))
    return out[:n]


# ---------------------------------------------------------------------------
# error sweeps


@dataclass(frozen=True)
class ReportRow:
    N: int
    max_error: np.ndarray
    argmax: UnitPoint
    ratio: float | None


@dataclass(frozen=True)
class ErrorReport:
    function_id: str
    scheme: Scheme
    params: SpaceParams
    nu: float | None
    precision: Precision
    rows: tuple
    theoretical_ratio: float
    fitted_slope: float
    skipped: tuple = ()

    def errors(self) -> np.ndarray:
        return np.array([to_float(r.max_error) for r in self.rows])

    def to_csv(self) -> str:
        return report_csv([self])

    def to_json(self) -> str:
        return report_json([self])


def theoretical_rate(params: SpaceParams, scheme) -> float:
    """``exp(sqrt(pi d mu))`` (Ganelius) or ``exp(sqrt(pi d mu / 2))`` (SE-Sinc)."""
    x = math.pi * params.d_float * params.mu_float
    return math.exp(math.sqrt(x if Scheme(scheme) is Scheme.GANELIUS else x / 2))


def _underflow(grid: tuple, pts: Points) -> np.ndarray:
    exact_pos = np.array([p.exact_delta > 0 for p in grid])
    return exact_pos & (pts.delta == 0)


def error_sweep(f: TestFunction, scheme, N_list, precision=None, grid=None,
                nu=None, workers: int | None = None) -> ErrorReport:
    """Max error of an approximation scheme over a grid for each ``N``.

    Parameters
    ----------
    f : TestFunction
    scheme : Scheme or str
    N_list : sequence of int
    precision : Precision or str, optional
    grid : tuple of UnitPoint, optional
        Defaults to the X u Y grid of :class:`PaperGrid`.
    nu : float, optional
        Ganelius weight exponent; the function's default otherwise.
    workers : int, optional
        Thread count; results do not depend on it.

    Returns
    -------
    ErrorReport
        ``ratio`` is filled when the previous entry is the preceding square.
    """
    scheme = Scheme(scheme)
    prec = Precision.parse(precision)
    N_list = [int(n) for n in N_list]
    grid = PaperGrid().unit_points if grid is None else tuple(grid)
    pts = _grid_points(grid, prec)
    bad = _underflow(grid, pts)
    keep = np.nonzero(~bad)[0]
    pts_k = pts.take(keep) if bad.any() else pts
    exact = eval_test_function(f, pts_k)

    def one(N):
        A = build(f, scheme, N, nu=nu, precision=prec)
        err = np.abs(exact - evaluate(A, pts_k))
        i = int(np.argmax(err))
        return err[i], grid[int(keep[i])]

    if workers and workers > 1 and len(N_list) > 1:
        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(one, N_list))
    else:
        results = [one(N) for N in N_list]

    rows = []
    for i, (N, (err, arg)) in enumerate(zip(N_list, results)):
        ratio = None
        if i > 0 and math.isqrt(N) ** 2 == N and N_list[i - 1] == (math.isqrt(N) - 1) ** 2:
            ratio = float(to_float(results[i - 1][0]) / to_float(err))
        rows.append(ReportRow(N, err, arg, ratio))
    slope = decay_fit(N_list, [to_float(e) for e, _ in results]) if N_list else math.nan
    nu_used = None
    if scheme is Scheme.GANELIUS:
        nu_used = float(f.nu_default if nu is None else nu)
    return ErrorReport(f.id, scheme, f.params, nu_used, prec, tuple(rows),
                       theoretical_rate(f.params, scheme), slope,
                       tuple(grid[i].label() for i in np.nonzero(bad)[0]))


def report_csv(reports) -> str:
    """``N,max_error,argmax,ratio`` rows; a ``scheme`` column leads when several reports are given."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    many = len(reports) > 1
    w.writerow((["scheme"] if many else []) + ["N", "max_error", "argmax", "ratio"])
    for rep in reports:
        digits = rep.precision.digits
        for row in rep.rows:
            ratio = "" if row.ratio is None else format_real(row.ratio, 17)
            cells = [row.N, format_real(row.max_error, digits), row.argmax.label(), ratio]
            w.writerow(([rep.scheme.value] if many else []) + cells)
    return buf.getvalue()


def _report_dict(rep: ErrorReport) -> dict:
    digits = rep.precision.digits
    return {
        "function": rep.function_id,
        "scheme": rep.scheme.value,
        "d": rep.params.d_float,
        "mu": rep.params.mu_float,
        "nu": rep.nu,
        "precision": rep.precision.value,
        "rows": [{"N": row.N,
                  "max_error": float(to_float(row.max_error)),
                  "max_error_text": format_real(row.max_error, digits),
                  "argmax": row.argmax.label(),
                  "ratio": row.ratio} for row in rep.rows],
        "theoretical_ratio": rep.theoretical_ratio,
        "fitted_slope": None if math.isnan(rep.fitted_slope) else rep.fitted_slope,
        "skipped": list(rep.skipped),
    }


def report_json(reports) -> str:
    data = [_report_dict(r) for r in reports]
    return json.dumps(data[0] if len(data) == 1 else data, indent=2) + "\n"


# ---------------------------------------------------------------------------
# checks used by the command line


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict

    def as_dict(self) -> dict:
        return {"check": self.name, "passed": self.passed, **self.details}


def check_ganelius_bound(r_values=(0.5, 1.0, 1.5, 3.0), N_list=None,
                         slope_rtol: float = 0.20, scale_max: float = 100.0) -> CheckResult:
    """Decay slope of :func:`ganelius_lhs` against ``-pi sqrt(r)`` and boundedness
    of ``lhs * exp(pi sqrt(N r))``."""
    N_list = list(N_list or [m * m for m in range(2, 11)])
    items, ok = [], True
    for r in r_values:
        vals = [ganelius_lhs(N, r) for N in N_list]
        slope = decay_fit(N_list, vals)
        target = -math.pi * math.sqrt(r)
        scaled = max(v * math.exp(math.pi * math.sqrt(N * r)) for N, v in zip(N_list, vals))
        good = abs(slope - target) <= slope_rtol * abs(target) and scaled <= scale_max
        ok &= good
        items.append({"r": r, "slope": slope, "target": target,
                      "max_scaled": scaled, "passed": bool(good)})
    return CheckResult("ganelius-bound", bool(ok), {"N": N_list, "items": items})


def check_j_bound(samples=None, slack: float = 1e-8) -> CheckResult:
    samples = j_suite() if samples is None else samples
    items, ok = [], True
    for a, b, t in samples:
        J, bound = j_integral(a, b, t), j_bound(a, b, t)
        good = J <= bound + slack
        ok &= good
        items.append({"alpha": a, "beta": b, "t": t, "J": J, "bound": bound,
                      "passed": bool(good)})
    return CheckResult("j-bound", bool(ok), {"samples": len(samples), "items": items})


def check_cardinal(f: TestFunction, N: int, precision=None, tol: float = 1e-10,
                   factor: float = 1e3) -> CheckResult:
    """``basis_j(beta_k) = delta_jk`` and interpolation at the nodes."""
    prec = Precision.parse(precision)
    A = build(f, Scheme.GANELIUS, N, precision=prec)
    nodes_pts = A.nodes.beta_points()
    M = basis_matrix(A.nodes, A.nu, nodes_pts)
    dev = float(np.max(np.abs(to_float(M) - np.eye(2 * N))))
    resid = float(np.max(np.abs(to_float(A.samples - evaluate(A, nodes_pts)))))
    limit = factor * prec.eps * float(np.max(np.abs(to_float(A.samples))))
    ok = dev <= tol and resid <= limit
    return CheckResult("cardinal", bool(ok), {
        "function": f.id, "N": N, "precision": prec.value,
        "max_basis_deviation": dev, "interpolation_residual": resid,
        "residual_limit": limit})


def region_points(d: float, n_xi: int = 40, n_eta: int = 25, xi_max: float = 8.0) -> np.ndarray:
    """``n_xi * n_eta`` points ``tanh(zeta/2)`` with ``|Im zeta| < d``."""
    xi = np.linspace(-xi_max, xi_max, n_xi)
    k = np.arange(n_eta)
    eta = d * (2 * (k + 0.5) / n_eta - 1)
    zeta = xi[:, None] + 1j * eta[None, :]
    return np.tanh(zeta.ravel() / 2)


def check_blaschke_modulus(d_values=None, N_values=(4, 16), r: float = 1.0,
                           slack: float = 1e-10, rtol: float = 1e-12) -> CheckResult:
    d_values = d_values or (math.pi / 3, math.pi / 2, 2 * math.pi / 3)
    items, ok = [], True
    for d in d_values:
        z = region_points(d)
        for N in N_values:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                nodes = transform_nodes(ganelius_nodes(N, r), d)
            val = blaschke_eval(BlaschkeProduct(nodes), z)
            peak = float(np.max(np.abs(val)))
            item = {"d": d, "N": N, "max_modulus": peak}
            good = peak < 1 + slack
            if abs(d - math.pi / 2) < 1e-15:
                rat = blaschke_eval(BlaschkeProduct(nodes, BlaschkeForm.RATIONAL), z)
                rel = float(np.max(np.abs(val - rat) / np.abs(rat)))
                item["rational_rel_diff"] = rel
                good &= rel <= rtol
            item["passed"] = bool(good)
            ok &= good
            items.append(item)
    return CheckResult("blaschke-modulus", bool(ok), {"points": 1000, "items": items})
