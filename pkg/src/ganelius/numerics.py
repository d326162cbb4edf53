"""Precision backend and stable scalar kernels.

Every routine in the package works on numpy arrays whose dtype is either
``float64`` (binary64) or the double-double ``ddouble`` type supplied by
:mod:`xprec` (106-bit significand).  Points of ``(-1, 1)`` are carried
together with their exact distance ``delta = 1 - |x|`` to the nearest
endpoint, so that ``1 - x**2`` and ``arctanh(x)`` never suffer from
cancellation, even at ``x = 1 - 1e-16``.
"""

from __future__ import annotations

import ast
import enum
import math
import operator
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np
import numpy.ma  # noqa: F401  must load before xprec registers ddouble (finfo fails on it)
import xprec

PRECISION_ENV = "GANELIUS_PRECISION"

# |y| beyond which tanh(y) equals +-1 in both precisions (1 - tanh(40) ~ 4e-35)
_TANH_CLIP = 40.0

Real = Union[int, float, str, Fraction]


class Precision(enum.Enum):
    """Working precision, selected at run time."""

    BINARY64 = "binary64"
    EXTENDED = "extended"

    @classmethod
    def parse(cls, value: "Precision | str | None" = None) -> "Precision":
        """Resolve a precision from a name, falling back to ``$GANELIUS_PRECISION``."""
        if isinstance(value, Precision):
            return value
        if value is None:
            value = os.environ.get(PRECISION_ENV, cls.BINARY64.value)
        value = value.strip().lower()
        aliases = {"double": "binary64", "float64": "binary64",
                   "dd": "extended", "ddouble": "extended", "quad": "extended"}
        try:
            return cls(aliases.get(value, value))
        except ValueError:
            raise ValueError(f"unknown precision {value!r}; "
                             "expected 'binary64' or 'extended'") from None

    @property
    def dtype(self):
        return np.dtype(np.float64) if self is Precision.BINARY64 else xprec.ddouble

    @property
    def eps(self) -> float:
        """Unit roundoff spacing at 1."""
        return 2.0 ** -52 if self is Precision.BINARY64 else 2.0 ** -104

    @property
    def tau(self) -> float:
        """Crossover for the removable-singularity series in the basis quotient."""
        return 2.0 ** -26 if self is Precision.BINARY64 else 2.0 ** -55

    @property
    def digits(self) -> int:
        """Significant digits used when serialising numbers."""
        return 17 if self is Precision.BINARY64 else 36

    def asarray(self, values) -> np.ndarray:
        """Convert floats/ints (or arrays of them) to the working dtype."""
        return np.asarray(values, dtype=np.float64).astype(self.dtype)

    def fraction(self, q) -> np.ndarray:
        """Correctly rounded (to working precision) value of a rational number."""
        q = Fraction(q)
        if self is Precision.BINARY64:
            return np.asarray(float(q))
        return _int_dd(q.numerator) / _int_dd(q.denominator)

    def real(self, value: Real) -> np.ndarray:
        """Working-precision value of a number or a small expression.

        Strings are parsed exactly: decimal literals become rationals, and
        ``pi`` and ``sqrt(...)`` are evaluated at working precision, so
        ``"1.57"``, ``"pi/2"`` and ``"sqrt(2)"`` are all faithful in the
        extended mode.
        """
        if isinstance(value, np.ndarray) and value.dtype == self.dtype:
            return value
        if isinstance(value, str):
            return _eval_expr(value, self)
        if isinstance(value, (int, Fraction)):
            return self.fraction(value)
        return self.asarray(value)

    @property
    def pi(self) -> np.ndarray:
        if self is Precision.BINARY64:
            return np.asarray(math.pi)
        return self.asarray(math.pi) + self.asarray(1.2246467991473532e-16)

    @property
    def ln2(self) -> np.ndarray:
        if self is Precision.BINARY64:
            return np.asarray(math.log(2.0))
        return self.asarray(0.6931471805599453) + self.asarray(2.3190468138462996e-17)


def _int_dd(n: int) -> np.ndarray:
    hi = float(n)
    lo = float(n - int(hi)) if math.isfinite(hi) else 0.0
    return np.asarray(hi).astype(xprec.ddouble) + np.asarray(lo).astype(xprec.ddouble)


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub,
           ast.Mult: operator.mul, ast.Div: operator.truediv}


def _eval_expr(text: str, prec: Precision) -> np.ndarray:
    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            # re-read the literal from the source text so decimals stay exact
            return prec.fraction(Fraction(ast.get_source_segment(text, node)))
        if isinstance(node, ast.Name) and node.id == "pi":
            return prec.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](walk(node.left), walk(node.right))
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id == "sqrt" and len(node.args) == 1):
            return np.sqrt(walk(node.args[0]))
        raise ValueError(f"unsupported expression {text!r}")

    return np.asarray(walk(ast.parse(text.strip(), mode="eval")))


def to_float(v) -> float | np.ndarray:
    """Round a working-precision value to binary64."""
    out = np.asarray(v).astype(np.float64)
    return float(out) if out.ndim == 0 else out


def to_fraction(v) -> Fraction:
    """Exact rational value of a binary64 or double-double scalar."""
    v = np.asarray(v)
    hi = float(v.astype(np.float64))
    if v.dtype == np.float64 or not math.isfinite(hi):
        return Fraction(hi) if math.isfinite(hi) else hi
    lo = float((v - np.asarray(hi).astype(v.dtype)).astype(np.float64))
    return Fraction(hi) + Fraction(lo)


def format_real(v, digits: int) -> str:
    """Scientific notation with ``digits`` significant digits, exact for both dtypes."""
    q = to_fraction(v)
    if not isinstance(q, Fraction):
        return repr(float(q))
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    q = abs(q)
    e = math.floor(math.log10(q.numerator) - math.log10(q.denominator))
    if Fraction(10) ** e > q:
        e -= 1
    elif Fraction(10) ** (e + 1) <= q:
        e += 1
    m = round(q / Fraction(10) ** (e - digits + 1))
    if m >= 10 ** digits:
        m //= 10
        e += 1
    s = str(m)
    mant = s[0] + ("." + s[1:].rstrip("0") if s[1:].rstrip("0") else "")
    return f"{sign}{mant}e{e:+03d}"


# ---------------------------------------------------------------------------
# points of [-1, 1]


@dataclass(frozen=True)
class UnitPoint:
    """A single point of ``[-1, 1]``.

    Either an interior value ``x``, or an endpoint-coded pair
    ``(sign, delta)`` meaning ``x = sign * (1 - delta)``.  Both are kept as
    exact rationals and only rounded when converted to :class:`Points`.
    """

    x: Fraction | None = None
    sign: int = 1
    delta: Fraction | None = None

    def __post_init__(self):
        if (self.x is None) == (self.delta is None):
            raise ValueError("give exactly one of x or delta")
        if self.x is not None:
            object.__setattr__(self, "x", Fraction(self.x))
            if abs(self.x) > 1:
                raise ValueError(f"x = {float(self.x)} outside [-1, 1]")
        else:
            object.__setattr__(self, "delta", Fraction(self.delta))
            if self.sign not in (-1, 1):
                raise ValueError("sign must be +1 or -1")
            if not 0 <= self.delta <= 1:
                raise ValueError("delta must lie in [0, 1]")

    @classmethod
    def interior(cls, x) -> "UnitPoint":
        return cls(x=Fraction(x) if not isinstance(x, str) else Fraction(x))

    @classmethod
    def endpoint(cls, sign: int, delta) -> "UnitPoint":
        """``sign * (1 - delta)``; ``delta`` may be a decimal string like ``"9e-16"``."""
        return cls(sign=sign, delta=Fraction(delta))

    @classmethod
    def decimal(cls, sign: int, k: int, ell: int) -> "UnitPoint":
        """``sign * (1 - k * 10**-ell)``."""
        return cls(sign=sign, delta=Fraction(k, 10 ** ell))

    @property
    def exact_x(self) -> Fraction:
        return self.x if self.x is not None else self.sign * (1 - self.delta)

    @property
    def exact_delta(self) -> Fraction:
        return self.delta if self.delta is not None else 1 - abs(self.x)

    def label(self) -> str:
        if self.delta is None:
            return _short_decimal(self.x)
        body = f"1-{_short_decimal(self.delta)}"
        return body if self.sign > 0 else f"-({body})"

    def points(self, precision: Precision | str | None = None) -> "Points":
        return Points.from_unit_points([self], precision)


def _short_decimal(q: Fraction) -> str:
    if q == 0:
        return "0"
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return repr(float(q))
    n = max(twos, fives)
    digits = abs(q.numerator) * 10 ** n // q.denominator
    sign = "-" if q < 0 else ""
    if n == 0:
        return f"{sign}{digits}"
    s = str(digits).rjust(n + 1, "0")
    lead = s.lstrip("0")
    if n > 4 and len(lead) <= 3:
        return f"{sign}{lead[0]}{'.' + lead[1:] if len(lead) > 1 else ''}e-{n - len(lead) + 1}"
    return f"{sign}{s[:-n]}.{s[-n:]}"


@dataclass(frozen=True, eq=False)
class Points:
    """A batch of points of ``[-1, 1]`` in working precision.

    Attributes
    ----------
    x : ndarray
        Point values.
    delta : ndarray
        ``1 - |x|``, exact to working precision (not recomputed from ``x``).
    theta : ndarray or None
        ``arctanh(x)`` when the points were generated from it; used verbatim
        so that nodes produced as ``tanh(theta)`` are hit exactly.
    """

    x: np.ndarray
    delta: np.ndarray
    precision: Precision
    theta: np.ndarray | None = None
    labels: tuple | None = None

    def __len__(self) -> int:
        return len(self.x)

    @classmethod
    def from_unit_points(cls, pts: Iterable[UnitPoint],
                         precision: Precision | str | None = None) -> "Points":
        prec = Precision.parse(precision)
        pts = list(pts)
        x = np.empty(len(pts), dtype=prec.dtype)
        delta = np.empty(len(pts), dtype=prec.dtype)
        for i, p in enumerate(pts):
            delta[i] = prec.fraction(p.exact_delta)
            if p.x is not None:
                x[i] = prec.fraction(p.x)
            else:
                x[i] = p.sign * (1 - delta[i])
        return cls(x, delta, prec, labels=tuple(p.label() for p in pts))

    @classmethod
    def interior(cls, xs, precision: Precision | str | None = None) -> "Points":
        prec = Precision.parse(precision)
        x = prec.asarray(np.atleast_1d(xs)) if not _is_dtype(xs, prec) else np.atleast_1d(xs)
        if np.any(np.abs(x) > 1):
            raise ValueError("points must lie in [-1, 1]")
        return cls(x, 1 - np.abs(x), prec)

    @classmethod
    def endpoint(cls, signs, deltas, precision: Precision | str | None = None) -> "Points":
        prec = Precision.parse(precision)
        delta = np.atleast_1d(deltas)
        if not _is_dtype(delta, prec):
            delta = prec.asarray(delta)
        s = np.broadcast_to(np.asarray(signs, dtype=np.float64), delta.shape)
        x = prec.asarray(s) * (1 - delta)
        return cls(x, delta, prec)

    @classmethod
    def from_theta(cls, theta, precision: Precision | str | None = None) -> "Points":
        """Points ``tanh(theta)``, with ``delta = 2 / (1 + exp(2|theta|))``."""
        prec = Precision.parse(precision)
        theta = np.atleast_1d(theta)
        if not _is_dtype(theta, prec):
            theta = prec.asarray(theta)
        e = np.exp(-2 * np.minimum(np.abs(theta), 400.0))
        delta = 2 * e / (1 + e)
        x = np.sign(theta) * ((1 - e) / (1 + e))
        return cls(x, delta, prec, theta=theta)

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return format_real(self.x[i], self.precision.digits)

    def take(self, idx) -> "Points":
        idx = np.atleast_1d(idx)
        labels = tuple(self.labels[i] for i in idx) if self.labels else None
        theta = self.theta[idx] if self.theta is not None else None
        return Points(self.x[idx], self.delta[idx], self.precision, theta, labels)

    def negate(self) -> "Points":
        theta = -self.theta if self.theta is not None else None
        labels = None
        if self.labels is not None:
            labels = tuple(_negate_label(l) for l in self.labels)
        return Points(-self.x, self.delta, self.precision, theta, labels)

    @staticmethod
    def concat(parts: Sequence["Points"]) -> "Points":
        prec = parts[0].precision
        if any(p.precision is not prec for p in parts):
            raise ValueError("cannot mix precisions")
        labels = None
        if all(p.labels is not None for p in parts):
            labels = sum((p.labels for p in parts), ())
        theta = None
        if all(p.theta is not None for p in parts):
            theta = np.concatenate([p.theta for p in parts])
        return Points(np.concatenate([p.x for p in parts]),
                      np.concatenate([p.delta for p in parts]), prec, theta, labels)


def _negate_label(label: str) -> str:
    if label.startswith("-("):
        return label[2:-1]
    if label.startswith("-"):
        return label[1:]
    if label == "0":
        return label
    return f"-({label})" if "-" in label else "-" + label


def _is_dtype(a, prec: Precision) -> bool:
    return isinstance(a, np.ndarray) and a.dtype == prec.dtype


def as_points(p, precision: Precision | str | None = None) -> Points:
    """Coerce a :class:`UnitPoint`, :class:`Points` or plain numbers to :class:`Points`."""
    if isinstance(p, Points):
        return p
    if isinstance(p, UnitPoint):
        return p.points(precision)
    if isinstance(p, (list, tuple)) and p and isinstance(p[0], UnitPoint):
        return Points.from_unit_points(p, precision)
    return Points.interior(p, precision)


# ---------------------------------------------------------------------------
# kernels


def one_minus_x_sq(p) -> np.ndarray | float:
    """``1 - x**2`` evaluated as ``delta * (2 - delta)``."""
    pts = as_points(p)
    out = pts.delta * (2 - pts.delta)
    return _scalar_like(p, out)


def atanh_stable(p) -> np.ndarray | float:
    """``arctanh(x)`` with small relative error on all of ``(-1, 1)``.

    Near the endpoints the value is taken from ``delta``:
    ``(log(2 - delta) - log(delta)) / 2``; near the origin a series (extended)
    or ``numpy.arctanh`` (binary64) is used.

    Raises
    ------
    ValueError
        If any point is an endpoint (``delta == 0``).
    """
    pts = as_points(p)
    if pts.theta is not None:
        return _scalar_like(p, pts.theta)
    if np.any(pts.delta <= 0):
        raise ValueError("arctanh is singular at x = +-1")
    out = _atanh_points(pts)
    return _scalar_like(p, out)


def _atanh_points(pts: Points) -> np.ndarray:
    x, delta = pts.x, pts.delta
    ax = np.abs(x)
    far = ax >= 0.5
    d = np.where(far, delta, 0.5)
    out = np.sign(x) * ((np.log(2 - d) - np.log(d)) / 2)
    near = ~far
    if np.any(near):
        xn = x[near]
        if pts.precision is Precision.BINARY64:
            out[near] = np.arctanh(xn)
        else:
            out[near] = _atanh_dd(xn)
    return out


def _atanh_dd(x: np.ndarray) -> np.ndarray:
    small = np.abs(x) < 0.125
    out = np.log((1 + x) / (1 - x)) / 2
    if np.any(small):
        xs = x[small]
        x2 = xs * xs
        # odd series; 0.125**54 < 1e-48
        acc = np.zeros_like(xs)
        one = np.ones((), dtype=xs.dtype)
        for n in range(27, -1, -1):
            acc = acc * x2 + one / (2 * n + 1)
        out[small] = xs * acc
    return out


def _scalar_like(p, out):
    if isinstance(p, UnitPoint):
        return out[0] if out.dtype != np.float64 else float(out[0])
    return out


def tanh(y: np.ndarray) -> np.ndarray:
    """``tanh`` that stays finite for the double-double dtype at large ``|y|``."""
    return np.tanh(np.minimum(np.maximum(y, -_TANH_CLIP), _TANH_CLIP))


def log_cosh(y: np.ndarray, prec: Precision) -> np.ndarray:
    """``log(cosh(y))`` without overflow."""
    a = np.abs(y)
    return a + np.log(1 + np.exp(-2 * a)) - prec.ln2


def signed_log_product(factors, axis: int = -1):
    """Sign and log-magnitude of a product.

    Parameters
    ----------
    factors : array_like
        Factors; the product is taken along ``axis``.  A plain Python
        sequence yields scalars, an ndarray yields arrays.

    Returns
    -------
    sign : int or ndarray
        Product of the factor signs, ``0`` if any factor vanishes.
    logmag : float or ndarray
        Sum of ``log|factor|``; ``-inf`` when the product vanishes.
    """
    scalar = not isinstance(factors, np.ndarray)
    f = np.asarray(factors) if not scalar else np.asarray(factors, dtype=np.float64)
    if scalar and f.ndim == 1:
        if f.size == 0:
            return 1, 0.0
        if np.any(f == 0):
            return 0, -math.inf
        neg = int(np.count_nonzero(f < 0))
        # fsum is correctly rounded, hence order independent
        return (-1 if neg % 2 else 1), math.fsum(np.log(np.abs(f)).tolist())
    zero = np.any(f == 0, axis=axis)
    neg = np.count_nonzero(f < 0, axis=axis)
    logs = np.log(np.where(f == 0, 1, np.abs(f)))
    logmag = np.sum(logs, axis=axis)
    sign = np.where(zero, 0, np.where(neg % 2 == 1, -1, 1))
    if np.any(zero):
        logmag = np.where(zero, -np.inf, logmag) if f.dtype == np.float64 else logmag
    return sign, logmag


def compensated_sum(terms: np.ndarray, axis: int = -1) -> np.ndarray:
    """Neumaier-compensated sum along ``axis``, vectorised over the other axes."""
    t = np.moveaxis(np.asarray(terms), axis, -1)
    s = np.zeros(t.shape[:-1], dtype=t.dtype)
    c = np.zeros_like(s)
    for j in range(t.shape[-1]):
        v = t[..., j]
        u = s + v
        big = np.abs(s) >= np.abs(v)
        c = c + np.where(big, (s - u) + v, (v - u) + s)
        s = u
    return s + c


def decimal_fraction(k: int, ell: int) -> Fraction:
    """``k * 10**-ell`` as an exact rational."""
    return Fraction(k, 10 ** ell)
