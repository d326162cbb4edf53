"""Test functions with endpoint singularities and their space parameters."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping

import numpy as np

from .kernel import SpaceParams
from .numerics import Points, UnitPoint, as_points, atanh_stable, one_minus_x_sq

Evaluator = Callable[[Points], np.ndarray]


@dataclass(frozen=True)
class TestFunction:
    """A function on ``[-1, 1]`` together with ``(d, mu)`` and a default ``nu``.

    ``evaluator`` receives :class:`Points` and must use ``delta`` (not ``x``)
    wherever ``1 - x**2`` appears; it is expected to vanish at ``x = +-1``.
    """

    __test__ = False  # not a pytest class

    id: str
    evaluator: Evaluator
    params: SpaceParams
    nu_default: float
    singularities: tuple = field(default=(), compare=False)
    formula: str = ""

    def __call__(self, p, precision=None):
        return eval_test_function(self, p, precision)


def eval_test_function(f: TestFunction, p, precision=None):
    """Evaluate ``f`` at a point or batch; exactly 0 at ``delta = 0``."""
    pts = as_points(p, precision)
    end = pts.delta == 0
    if np.any(end):
        inner = Points(pts.x, np.where(end, 0.5, pts.delta), pts.precision, pts.theta)
        vals = np.where(end, 0, f.evaluator(inner))
    else:
        vals = f.evaluator(pts)
    if isinstance(p, UnitPoint):
        return float(vals[0]) if vals.dtype == np.float64 else vals[0]
    return vals


def _f1(p: Points):
    w = one_minus_x_sq(p)
    return np.sqrt(w / (2 - w))


def _f2(p: Points):
    w = one_minus_x_sq(p)
    return np.sqrt(3 * w / (4 - 3 * w))


def _f3(p: Points):
    w = one_minus_x_sq(p)
    return np.sqrt(w / (4 - w))


def _f4(p: Points):
    prec = p.precision
    w = one_minus_x_sq(p)
    expo = 1 / np.sqrt(prec.real(2))
    return np.exp(expo * np.log(w)) * np.sqrt(np.cos(4 * atanh_stable(p)) + np.cosh(prec.pi))


def _f5(p: Points):
    w = one_minus_x_sq(p)
    q = w / (2 - w)
    return q * np.sqrt(q)


# base strip widths; the table uses d = base - eps
_BASE_D = {"f1": "pi/2", "f2": "pi/3", "f3": "2*pi/3", "f5": "pi/2"}
_DEFAULT_D = {"f1": "1.57", "f2": "1.047", "f3": "2.094", "f4": "pi/2", "f5": "1.57"}


def _builtin(fid: str, d) -> TestFunction:
    table = {
        "f1": (_f1, "1", 1, ("i", "-i"), "sqrt((1-x^2)/(1+x^2))"),
        "f2": (_f2, "1", 1, ("i/sqrt(3)", "-i/sqrt(3)"), "sqrt((3-3x^2)/(1+3x^2))"),
        "f3": (_f3, "1", 1, ("i*sqrt(3)", "-i*sqrt(3)"), "sqrt((1-x^2)/(3+x^2))"),
        "f4": (_f4, "sqrt(2)", 1, ("tanh[(m + (1+-i) pi/2)/2], m integer",),
               "(1-x^2)^(1/sqrt(2)) sqrt(cos(4 arctanh x) + cosh(pi))"),
        "f5": (_f5, "3", 2, ("i", "-i"), "((1-x^2)/(1+x^2))^(3/2)"),
    }[fid]
    ev, mu, nu, sing, formula = table
    return TestFunction(fid, ev, SpaceParams(d, mu), nu, sing, formula)


TEST_FUNCTIONS: Mapping[str, TestFunction] = MappingProxyType(
    {fid: _builtin(fid, _DEFAULT_D[fid]) for fid in ("f1", "f2", "f3", "f4", "f5")})


def test_function(fid: str, eps: float | str | None = None,
                  registry: Mapping[str, TestFunction] | None = None) -> TestFunction:
    """Look up a test function.

    Parameters
    ----------
    fid : str
        ``"f1"`` .. ``"f5"`` or the id of a custom function in ``registry``.
    eps : float or str, optional
        Override of the strip margin: ``d = base - eps`` (``f1, f2, f3, f5``
        only).  By default the widths 1.57, 1.047, 2.094, pi/2, 1.57 are used.
    registry : mapping, optional
        Extra functions, e.g. built with :func:`custom_function`.

    Raises
    ------
    KeyError
        Unknown id.
    """
    if registry is not None and fid in registry:
        return registry[fid]
    if fid not in TEST_FUNCTIONS:
        raise KeyError(f"unknown test function {fid!r}; "
                       f"known: {', '.join(sorted(TEST_FUNCTIONS))}")
    if eps is None:
        return TEST_FUNCTIONS[fid]
    if fid not in _BASE_D:
        raise ValueError(f"{fid} has a fixed d = pi/2")
    return _builtin(fid, f"{_BASE_D[fid]} - ({eps})")


test_function.__test__ = False  # keep pytest from collecting it


def custom_function(fid: str, evaluator: Evaluator, d, mu, nu: float,
                    formula: str = "") -> TestFunction:
    """Wrap a user function; ``(d, mu, nu)`` are taken on trust."""
    params = SpaceParams(d, mu)
    mu_f = params.mu_float
    if not mu_f / 2 < float(nu) < mu_f / 2 + 1:
        raise ValueError(f"nu = {nu} outside ({mu_f / 2}, {mu_f / 2 + 1})")
    return TestFunction(fid, evaluator, params, nu, (), formula)


def make_registry(*functions: TestFunction) -> Mapping[str, TestFunction]:
    """Read-only registry of the built-in functions plus ``functions``."""
    table = dict(TEST_FUNCTIONS)
    for f in functions:
        table[f.id] = f
    return MappingProxyType(table)


__all__ = ["TestFunction", "TEST_FUNCTIONS", "test_function", "eval_test_function",
           "custom_function", "make_registry"]

