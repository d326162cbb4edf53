"""Modified Ganelius sampling points and their images on ``(-1, 1)``.

Nodes are kept in logarithmic form.  With ``a = sech(2u)`` one has
``b = tanh(u)`` and ``arctanh(beta) = (2d/pi) u``, so everything the
approximant needs is a function of ``u = arctanh(b)``, which stays well
conditioned even when ``a_1`` is ``1e-23`` and ``b_1`` rounds to 1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .numerics import Points, Precision, signed_log_product, tanh, to_float


class NodeCollisionError(ValueError):
    """Two sampling points coincide (to within a few ulp)."""


@dataclass(frozen=True, eq=False)
class GaneliusNodes:
    """Raw nodes ``a_1..a_N`` on ``(0, 1)``.

    ``log_a`` and ``one_minus_a`` are the working-precision quantities used
    downstream; ``a`` itself is only for display.
    """

    N: int
    r: float
    N0: int
    log_a: np.ndarray
    one_minus_a: np.ndarray
    precision: Precision

    @property
    def a(self) -> np.ndarray:
        return np.exp(self.log_a)

    @property
    def u(self) -> np.ndarray:
        """``arctanh(b_k) = arccosh(1/a_k) / 2`` for ``k = 1..N``."""
        a = self.a
        root = np.sqrt(self.one_minus_a * (1 + a))
        return (np.log(1 + root) - self.log_a) / 2


def split_index(N: int, r: float) -> int:
    """``N0 = N - ceil((pi/4) sqrt(N r))``."""
    return N - math.ceil(math.pi / 4 * math.sqrt(N * float(r)))


def ganelius_nodes(N: int, r, precision: Precision | str | None = None) -> GaneliusNodes:
    """Modified Ganelius sampling points.

    Parameters
    ----------
    N : int
        Number of points.
    r : float or str
        Decay exponent ``r > 0``; a string such as ``"1.57/pi"`` is evaluated
        exactly at working precision.
    precision : Precision or str, optional

    Returns
    -------
    GaneliusNodes

    Raises
    ------
    ValueError
        If ``r <= 0`` or the split index ``N0`` is below 1 (this covers ``N = 1``).
    NodeCollisionError
        If two nodes coincide to within 4 ulp.
    """
    prec = Precision.parse(precision)
    r_w = prec.real(r)
    r_f = to_float(r_w)
    if not r_f > 0:
        raise ValueError(f"r must be positive, got {r_f}")
    if not N >= 1:
        raise ValueError(f"N must be positive, got {N}")
    N0 = split_index(N, r_f)
    if N0 < 1:
        raise ValueError(f"N0 = {N0} < 1 for N = {N}, r = {r_f}; increase N")
    if N0 <= 3:
        warnings.warn(f"N0 = {N0} <= 3: below the range covered by the decay bound",
                      stacklevel=2)

    pi = prec.pi
    sr = np.sqrt(r_w)
    sqN0 = np.sqrt(prec.asarray(N0))
    log_a = np.empty(N, dtype=prec.dtype)
    one_minus_a = np.empty(N, dtype=prec.dtype)
    # log(phi(x)/phi(N0)) = -pi (N0 - x) / ((sqrt x + sqrt N0) sqrt r)
    gaps = [Fraction(N0 - k + 1) for k in range(1, N0 + 1)]
    gaps.append(Fraction(1, 2))  # k = N0 + 1 samples phi(k - 3/2) = phi(N0 - 1/2)
    for i, gap in enumerate(gaps):
        g = prec.fraction(gap)
        log_a[i] = -pi * g / ((np.sqrt(N0 - g) + sqN0) * sr)
        one_minus_a[i] = -np.expm1(log_a[i])
    M = N - N0 - 1
    for m in range(1, M + 1):
        one_minus_a[N0 + m] = prec.fraction(Fraction(m, 5 * M))
        log_a[N0 + m] = np.log(1 - one_minus_a[N0 + m])
    nodes = GaneliusNodes(N, r_f, N0, log_a, one_minus_a, prec)
    _check_distinct(nodes.log_a, prec, "a")
    return nodes


def _check_distinct(values: np.ndarray, prec: Precision, name: str) -> None:
    v = np.sort(to_float(values)) if prec is Precision.BINARY64 else np.sort(values)
    gaps = np.abs(np.diff(v))
    scale = np.maximum(np.abs(v[1:]), np.abs(v[:-1]))
    tol = 4 * prec.eps * np.maximum(scale, 1e-300)
    bad = np.nonzero(gaps <= tol)[0]
    if bad.size:
        i = int(bad[0])
        raise NodeCollisionError(
            f"nodes collide: log {name} values {to_float(v[i])!r} and {to_float(v[i + 1])!r}")


@dataclass(frozen=True, eq=False)
class TransformedNodes:
    """Symmetric nodes on ``(-1, 1)`` and the formula coefficients.

    Arrays are ordered by signed index ``k = -N..-1, 1..N`` (see ``index``).

    Attributes
    ----------
    u : ndarray
        ``arctanh(b_k)``.
    theta : ndarray
        ``arctanh(beta_k) = (2d/pi) u_k``.
    sigma_sign, sigma_logmag : ndarray
        ``sigma_k`` as sign and ``log|sigma_k|``.
    """

    d: np.ndarray
    nodes: GaneliusNodes
    index: np.ndarray
    u: np.ndarray
    theta: np.ndarray
    sigma_sign: np.ndarray
    sigma_logmag: np.ndarray

    @property
    def precision(self) -> Precision:
        return self.nodes.precision

    @property
    def N(self) -> int:
        return self.nodes.N

    @property
    def b(self) -> np.ndarray:
        """``b_k = sqrt((1 - a_k) / (1 + a_k))``, antisymmetric in ``k``."""
        bk = np.sqrt(self.nodes.one_minus_a / (1 + self.nodes.a))
        return np.concatenate([-bk[::-1], bk])

    @property
    def beta(self) -> np.ndarray:
        return tanh(self.theta)

    def beta_points(self) -> Points:
        """The nodes ``beta_k`` as :class:`Points` carrying exact ``arctanh``."""
        return Points.from_theta(self.theta, self.precision)

    def position(self, k: int) -> int:
        """Array position of signed index ``k``."""
        if k == 0 or abs(k) > self.N:
            raise IndexError(f"signed index must be in +-1..+-{self.N}, got {k}")
        return k + self.N if k < 0 else k + self.N - 1


def transform_nodes(nodes: GaneliusNodes, d) -> TransformedNodes:
    """Map ``a_k`` to ``b_{+-k}``, ``beta_{+-k}`` and compute ``sigma_{+-k}``.

    ``sigma_k = prod'_{l != k} (1 - b_l b_k) / (b_k - b_l)``; each factor
    equals ``coth(u_k - u_l)`` and is accumulated in sign/log form.
    """
    prec = nodes.precision
    d_w = prec.real(d)
    d_f = to_float(d_w)
    if not 0 < d_f < math.pi:
        raise ValueError(f"d must lie in (0, pi), got {d_f}")
    uk = nodes.u
    u = np.concatenate([-uk[::-1], uk])
    index = np.concatenate([-np.arange(nodes.N, 0, -1), np.arange(1, nodes.N + 1)])
    _check_distinct(u, prec, "b")
    diff = u[:, None] - u[None, :]
    n = len(u)
    off = ~np.eye(n, dtype=bool)
    # coth(x) = 1/tanh(x): log|coth| = -log|tanh|
    t = tanh(diff[off].reshape(n, n - 1))
    sign, logmag = signed_log_product(t, axis=1)
    theta = 2 * d_w / prec.pi * u
    return TransformedNodes(d_w, nodes, index, u, theta, sign.astype(np.int8), -logmag)
