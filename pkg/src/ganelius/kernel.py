"""Geometry of the eye-shaped region, the generalized Blaschke product and
the cardinal basis functions.

All real-axis evaluation is done in the variable ``theta = arctanh(x)``.
With ``c = pi/(2d)`` the ``k``-th factor of the Blaschke product is
``tanh(c (theta - theta_k))`` and the quotient needed by the basis function
has the closed form::

    tanh(c D) / (x - beta_k) = tanh(c D) / sinh(D) * cosh(theta) cosh(theta_k),
    D = theta - theta_k,

which is smooth in ``D``; only ``D = 0`` itself needs the series
``c (1 - (2c**2 + 1) D**2 / 6)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .numerics import (Points, Precision, Real, UnitPoint, as_points, atanh_stable,
                       log_cosh, tanh, to_float)
from .sampling import TransformedNodes


@dataclass(frozen=True)
class SpaceParams:
    """Parameters ``(d, mu)`` of the weighted Hardy space on the region.

    Values may be numbers or exact expressions such as ``"pi/2"`` or
    ``"sqrt(2)"``; they are resolved per precision with :meth:`d_in` and
    :meth:`mu_in`.
    """

    d: Real
    mu: Real

    def __post_init__(self):
        d, mu = self.d_float, self.mu_float
        if not 0 < d < math.pi:
            raise ValueError(f"d must lie in (0, pi), got {d}")
        if not mu > 0:
            raise ValueError(f"mu must be positive, got {mu}")

    def d_in(self, precision: Precision) -> np.ndarray:
        return precision.real(self.d)

    def mu_in(self, precision: Precision) -> np.ndarray:
        return precision.real(self.mu)

    @property
    def d_float(self) -> float:
        return to_float(Precision.BINARY64.real(self.d))

    @property
    def mu_float(self) -> float:
        return to_float(Precision.BINARY64.real(self.mu))

    def r_in(self, precision: Precision) -> np.ndarray:
        """Node decay exponent ``r = d mu / pi``."""
        return self.d_in(precision) * self.mu_in(precision) / precision.pi


def in_region(z, d) -> bool | np.ndarray:
    """Whether ``z`` lies in the region ``|arg((1+z)/(1-z))| < d``.

    Raises
    ------
    ValueError
        At ``z = +-1``.
    """
    z = np.asarray(z, dtype=complex)
    if np.any((z == 1) | (z == -1)):
        raise ValueError("z = +-1 is on the boundary of every region")
    inside = np.abs(np.angle((1 + z) / (1 - z))) < float(d)
    return bool(inside) if inside.ndim == 0 else inside


# ---------------------------------------------------------------------------
# single-exponential map and sinc


def se_map(t: float) -> UnitPoint:
    """``psi(t) = tanh(t/2)``, endpoint-coded when ``|t| > 1``.

    Past ``|t| = 1`` the point is kept as ``delta = 2e/(1+e)``, ``e = exp(-|t|)``,
    so that the round trip through :func:`se_map_inv` stays relative-accurate.
    """
    if abs(t) > 1:
        e = math.exp(-abs(t))
        return UnitPoint.endpoint(1 if t > 0 else -1, 2 * e / (1 + e))
    return UnitPoint.interior(math.tanh(t / 2))


def se_map_inv(p) -> float | np.ndarray:
    """``psi^{-1}(x) = 2 arctanh(x)``."""
    return 2 * atanh_stable(p)


def sinc_kernel(j: int, h: float, t):
    """``S(j, h)(t) = sin(pi (t/h - j)) / (pi (t/h - j))`` with value 1 at ``t = jh``."""
    if not h > 0:
        raise ValueError("h must be positive")
    s = np.asarray(t) / h - j
    return _sinc(s, np.pi)


def _sinc(s: np.ndarray, pi) -> np.ndarray:
    # sin(pi s) = (-1)^n sin(pi (s - n)), n = round(s); the reduction is exact
    s = np.asarray(s)
    n = np.floor(s + 0.5)
    odd = np.asarray(n).astype(np.float64) % 2 == 1
    num = np.sin(pi * (s - n))
    num = np.where(odd, -num, num)
    zero = s == 0
    out = np.where(zero, 1, num / (pi * np.where(zero, 1, s)))
    return out if out.ndim else out[()]


# ---------------------------------------------------------------------------
# generalized Blaschke product


class BlaschkeForm(enum.Enum):
    TANH = "tanh"
    RATIONAL = "rational"


@dataclass(frozen=True, eq=False)
class BlaschkeProduct:
    """``B_N(z) = prod' tanh[(pi/2d)(arctanh z - arctanh beta_k)]``.

    The rational form ``prod' (z - b_k)/(1 - b_k z)`` is only available for
    ``d = pi/2`` (there ``beta_k = b_k``).
    """

    nodes: TransformedNodes
    form: BlaschkeForm = BlaschkeForm.TANH

    def __post_init__(self):
        if self.form is BlaschkeForm.RATIONAL and abs(to_float(self.nodes.d) - math.pi / 2) > 1e-15:
            raise ValueError("the rational form needs d = pi/2")

    @property
    def c(self) -> np.ndarray:
        return self.nodes.precision.pi / (2 * self.nodes.d)


def _log_blaschke_real(B: BlaschkeProduct, pts: Points):
    """Per-factor pieces of ``B_N`` on the real axis.

    Returns ``(diff, factors, sign, logmag)`` where ``diff[i, k]`` is
    ``theta(x_i) - theta_k`` and ``factors`` the tanh values; endpoints
    (``delta == 0``) are mapped to ``|theta| = 40``, where every factor is
    exactly ``+-1``.
    """
    nodes = B.nodes
    prec = nodes.precision
    if pts.precision is not prec:
        raise ValueError("points and nodes use different precisions")
    end = pts.delta == 0
    if np.any(end):
        safe = Points(pts.x, np.where(end, 1, pts.delta), prec, pts.theta)
        theta = atanh_stable(safe)
        theta = np.where(end, np.sign(pts.x) * 1e3, theta)
    else:
        theta = atanh_stable(pts)
    diff = theta[:, None] - nodes.theta[None, :]
    factors = tanh(B.c * diff)
    absf = np.abs(factors)
    zero = factors == 0
    logs = np.log(np.where(zero, 1, absf))
    return diff, factors, zero, logs


def blaschke_eval(B: BlaschkeProduct, p, precision: Precision | str | None = None):
    """Evaluate ``B_N``.

    For real points (``UnitPoint``, ``Points`` or numbers) returns
    ``(sign, logmag, value)`` arrays; ``logmag`` is ``-inf`` at a node.  For
    complex ``z`` (binary64 only, tanh form) returns the complex value.

    Raises
    ------
    ValueError
        For complex ``z`` outside the region.
    """
    if np.iscomplexobj(p):
        return _blaschke_complex(B, np.asarray(p, dtype=complex))
    prec = B.nodes.precision
    pts = as_points(p, prec)
    if B.form is BlaschkeForm.RATIONAL:
        f = _rational_factors(B.nodes, to_float(pts.x)[:, None])
        sign, logmag = _sign_log(f)
        return sign, logmag, np.prod(f, axis=1)
    _, factors, zero, logs = _log_blaschke_real(B, pts)
    anyzero = np.any(zero, axis=1)
    neg = np.count_nonzero(factors < 0, axis=1)
    sign = np.where(anyzero, 0, np.where(neg % 2 == 1, -1, 1))
    logmag = np.sum(logs, axis=1)
    value = sign * np.exp(logmag)
    logmag = np.where(anyzero, -np.inf, to_float(logmag)) if prec is Precision.BINARY64 \
        else logmag
    return sign, logmag, value


def _rational_factors(nodes: TransformedNodes, z: np.ndarray) -> np.ndarray:
    """``(z - b_k)/(1 - b_k z)`` with ``b_k = s (1 - e_k)`` kept as ``(s, e_k)``.

    Rounding ``b_k`` itself would lose the digits of ``1 - |b_k|`` that
    matter for ``z`` near ``+-1``.
    """
    u = to_float(nodes.u)
    s = np.sign(u)[None, :]
    e = (2 / (1 + np.exp(2 * np.abs(u))))[None, :]  # 1 - tanh|u|
    return ((z - s) + s * e) / ((1 - s * z) + s * e * z)


def _sign_log(f: np.ndarray):
    zero = np.any(f == 0, axis=1)
    neg = np.count_nonzero(f < 0, axis=1)
    with np.errstate(divide="ignore"):
        logmag = np.sum(np.log(np.abs(f)), axis=1)
    return np.where(zero, 0, np.where(neg % 2, -1, 1)), logmag


def _blaschke_complex(B: BlaschkeProduct, z: np.ndarray) -> np.ndarray:
    nodes = B.nodes
    d = to_float(nodes.d)
    if not np.all(in_region(z, d)):
        raise ValueError("z outside the region")
    zz = np.atleast_1d(z)[:, None]
    if B.form is BlaschkeForm.RATIONAL:
        out = np.prod(_rational_factors(nodes, zz), axis=1)
        return out if np.ndim(z) else out[0]
    theta_k = to_float(nodes.theta)
    c = math.pi / (2 * d)
    # 1 -+ z is exact near z = +-1, unlike numpy's complex arctanh
    w = (np.log(1 + zz) - np.log(1 - zz)) / 2
    out = np.prod(np.tanh(c * (w - theta_k[None, :])), axis=1)
    return out if np.ndim(z) else out[0]


# ---------------------------------------------------------------------------
# cardinal basis


def _quotient(diff: np.ndarray, c, tau: float) -> np.ndarray:
    """``tanh(c D) / sinh(D)`` with the series at ``|D| < tau``."""
    small = np.abs(diff) < tau
    d_safe = np.where(small, 1, np.minimum(np.maximum(diff, -600.0), 600.0))
    direct = tanh(c * d_safe) / np.sinh(d_safe)
    d2 = np.where(small, diff, 0) ** 2
    series = c * (1 - (2 * c * c + 1) * d2 / 6)
    return np.where(small, series, direct)


def quotient_paths(diff, c, precision: Precision = Precision.BINARY64):
    """Direct and series values of ``tanh(c D)/sinh(D)`` (for consistency checks)."""
    diff = precision.real(diff) if not isinstance(diff, np.ndarray) else diff
    direct = tanh(c * diff) / np.sinh(diff)
    series = c * (1 - (2 * c * c + 1) * diff ** 2 / 6)
    return direct, series


def basis_matrix(nodes: TransformedNodes, nu, pts: Points) -> np.ndarray:
    """Values of all ``2N`` basis functions at every point, shape ``(P, 2N)``.

    ``basis_k(x) = (2d sigma_k/pi) (1-x^2)^nu / (1-beta_k^2)^(nu-1) B_N(x)/(x-beta_k)``,
    assembled as ``exp(log)`` of its magnitude: the shared ``log|B_N|`` is
    computed once per point and factor ``k`` is removed by subtraction.
    """
    prec = nodes.precision
    nu = prec.real(nu)
    B = BlaschkeProduct(nodes)
    c = B.c
    diff, factors, zero, logs = _log_blaschke_real(B, pts)

    total = np.sum(logs, axis=1, keepdims=True)
    nzero = np.count_nonzero(zero, axis=1)[:, None]
    nneg = np.count_nonzero(factors < 0, axis=1)[:, None]
    excl_zero = (nzero - zero) > 0
    excl_neg = nneg - (factors < 0)
    sign = np.where(excl_neg % 2 == 1, -1, 1) * nodes.sigma_sign[None, :]

    end = pts.delta == 0
    omx = np.where(end, 1, pts.delta * (2 - pts.delta))
    log_w = (nu - 0.5) * np.log(omx)
    # log(1 - beta^2) = -2 log cosh(theta_k)
    log_coef = (np.log(2 * nodes.d / prec.pi) + nodes.sigma_logmag
                + (2 * nu - 1) * log_cosh(nodes.theta, prec))
    log_mag = log_coef[None, :] + log_w[:, None] + (total - logs)
    q = _quotient(diff, c, prec.tau)
    vals = sign * np.exp(np.minimum(log_mag, 700.0)) * q
    return np.where(excl_zero | end[:, None], 0, vals)


def basis_function(k: int, p, nodes: TransformedNodes, nu) -> np.ndarray | float:
    """Basis function for signed node index ``k`` (``+-1..+-N``) at ``p``."""
    pts = as_points(p, nodes.precision)
    col = basis_matrix(nodes, nu, pts)[:, nodes.position(k)]
    if isinstance(p, UnitPoint):
        return float(col[0]) if col.dtype == np.float64 else col[0]
    return col
