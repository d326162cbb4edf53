"""The Ganelius-point approximant and the SE-Sinc baseline."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .corpus import TestFunction, eval_test_function
from .kernel import SpaceParams, _sinc, basis_matrix
from .numerics import Points, Precision, UnitPoint, as_points, atanh_stable, compensated_sum
from .sampling import TransformedNodes, ganelius_nodes, transform_nodes


class Scheme(enum.Enum):
    GANELIUS = "ganelius"
    SESINC = "sesinc"


@dataclass(frozen=True, eq=False)
class Approximant:
    """A built approximation formula.

    For ``Scheme.GANELIUS`` the samples are ``f(beta_k)`` in node order
    ``k = -N..-1, 1..N`` and ``nu`` is set; for ``Scheme.SESINC`` they are
    ``f(psi(jh))`` for ``j = -N..N`` and ``h`` is set.
    """

    scheme: Scheme
    params: SpaceParams
    N: int
    samples: np.ndarray
    precision: Precision
    nu: float | None = None
    h: np.ndarray | None = None
    nodes: TransformedNodes | None = None
    function_id: str | None = None

    def __call__(self, p):
        return evaluate(self, p)


def default_nu(mu: float) -> float:
    """``ceil(mu/2)``, or the midpoint ``mu/2 + 1/2`` when ``mu`` is an even integer."""
    if not mu > 0:
        raise ValueError("mu must be positive")
    half = mu / 2
    if float(half).is_integer():
        return half + 0.5
    return float(math.ceil(half))


def check_nu(nu: float, mu: float) -> None:
    if not mu / 2 < nu < mu / 2 + 1:
        raise ValueError(f"nu = {nu} must satisfy {mu / 2} < nu < {mu / 2 + 1}")


def build_ganelius(f: TestFunction, params: SpaceParams | None = None, nu: float | None = None,
                   N: int = 4, precision: Precision | str | None = None) -> Approximant:
    """Sample ``f`` at the transformed Ganelius points with ``r = d mu / pi``.

    Raises
    ------
    ValueError
        If ``nu`` is outside ``(mu/2, mu/2 + 1)`` or the nodes cannot be built.
    """
    prec = Precision.parse(precision)
    params = params or f.params
    if nu is None:
        nu = f.nu_default if params == f.params else default_nu(params.mu_float)
    check_nu(float(nu), params.mu_float)
    nodes = transform_nodes(ganelius_nodes(N, params.r_in(prec), prec), params.d_in(prec))
    samples = eval_test_function(f, nodes.beta_points())
    return Approximant(Scheme.GANELIUS, params, N, samples, prec, nu=nu, nodes=nodes,
                       function_id=f.id)


def eval_ganelius(A: Approximant, p):
    """``sum' f(beta_k) basis_k(x)``, compensated; 0 at ``x = +-1``."""
    if A.scheme is not Scheme.GANELIUS:
        raise ValueError("not a Ganelius approximant")
    pts = as_points(p, A.precision)
    out = np.empty(len(pts), dtype=A.precision.dtype)
    for sl in _chunks(len(pts)):
        terms = basis_matrix(A.nodes, A.nu, pts.take(np.arange(sl.start, sl.stop)))
        out[sl] = compensated_sum(terms * A.samples[None, :], axis=1)
    return _scalar_like(p, out)


def sesinc_step(params: SpaceParams, N: int, precision: Precision) -> np.ndarray:
    """``h = sqrt(2 pi d / (mu N))``."""
    return np.sqrt(2 * precision.pi * params.d_in(precision) / (params.mu_in(precision) * N))


def build_sesinc(f: TestFunction, params: SpaceParams | None = None, N: int = 4,
                 precision: Precision | str | None = None) -> Approximant:
    """Sample ``f`` at ``psi(jh) = tanh(jh/2)``, ``j = -N..N``."""
    prec = Precision.parse(precision)
    if N < 1:
        raise ValueError("N must be at least 1")
    params = params or f.params
    h = sesinc_step(params, N, prec)
    j = prec.asarray(np.arange(-N, N + 1))
    samples = eval_test_function(f, Points.from_theta(j * h / 2, prec))
    return Approximant(Scheme.SESINC, params, N, samples, prec, h=h, function_id=f.id)


def eval_sesinc(A: Approximant, p):
    """``sum_j f(psi(jh)) S(j, h)(psi^{-1}(x))``; 0 at ``x = +-1``."""
    if A.scheme is not Scheme.SESINC:
        raise ValueError("not an SE-Sinc approximant")
    prec = A.precision
    pts = as_points(p, prec)
    end = pts.delta == 0
    safe = Points(pts.x, np.where(end, 0.5, pts.delta), prec, pts.theta)
    t = 2 * atanh_stable(safe)
    j = prec.asarray(np.arange(-A.N, A.N + 1))
    out = np.empty(len(pts), dtype=prec.dtype)
    for sl in _chunks(len(pts)):
        s = t[sl, None] / A.h - j[None, :]
        out[sl] = compensated_sum(_sinc(s, prec.pi) * A.samples[None, :], axis=1)
    out = np.where(end, 0, out)
    return _scalar_like(p, out)


def evaluate(A: Approximant, p):
    """Evaluate either scheme."""
    return eval_ganelius(A, p) if A.scheme is Scheme.GANELIUS else eval_sesinc(A, p)


def build(f: TestFunction, scheme: Scheme | str, N: int, nu: float | None = None,
          precision: Precision | str | None = None) -> Approximant:
    scheme = Scheme(scheme)
    if scheme is Scheme.GANELIUS:
        return build_ganelius(f, nu=nu, N=N, precision=precision)
    return build_sesinc(f, N=N, precision=precision)


def _chunks(n: int, size: int = 512):
    for start in range(0, n, size):
        yield slice(start, min(n, start + size))


def _scalar_like(p, out):
    if isinstance(p, UnitPoint):
        return float(out[0]) if out.dtype == np.float64 else out[0]
    return out
