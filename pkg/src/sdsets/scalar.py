"""Exact scalars: rationals, one real quadratic extension Q(sqrt d), and a
tolerance-carrying float fallback.

Rationals are plain :class:`fractions.Fraction` (ints are accepted wherever a
rational is).  :class:`QuadExt` holds ``a + b*sqrt(d)`` with rational ``a, b``
and a square-free ``d >= 2``.  :class:`FloatScalar` is the escape hatch for
configurations whose coordinates need nested radicals.

Mixing rationals with a ``QuadExt`` promotes the rational.  Mixing two
different ``d`` raises :class:`IncompatibleExtension`.  Anything mixed with a
``FloatScalar`` becomes a ``FloatScalar``.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

from .errors import IncompatibleExtension, Inexpressible, NegativeRadicand, ParseError

DEFAULT_TOL = 1e-12

Scalar = Union[int, Fraction, "QuadExt", "FloatScalar"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


class QuadExt:
    """``a + b*sqrt(d)``, canonical because ``a`` and ``b`` are reduced fractions."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if not isinstance(d, int) or d < 2:
            raise ValueError(f"extension discriminant must be an integer >= 2, got {d!r}")
        self.a = _frac(a)
        self.b = _frac(b)
        self.d = d

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise IncompatibleExtension(
                    f"cannot combine elements of Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, FloatScalar):
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, FloatScalar):
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, FloatScalar):
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a * o.a + self.b * o.b * self.d,
                       self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a^2 - d b^2``; zero only for the zero element."""
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def inverse(self) -> "QuadExt":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt %d)" % self.d)
        return QuadExt(self.a / nrm, -self.b / nrm, self.d)

    def __truediv__(self, other):
        if isinstance(other, FloatScalar):
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadExt(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def sign(self) -> int:
        sa, sb = _sgn(self.a), _sgn(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger magnitude wins; a^2 == b^2 d is impossible
        return sa if self.a * self.a > self.b * self.b * self.d else sb

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if other.d == self.d:
                return self.a == other.a and self.b == other.b
            return self.b == 0 and other.b == 0 and self.a == other.a
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        if isinstance(other, QuadExt) and other.d != self.d and self.b == 0 and other.b == 0:
            return _sgn(self.a - other.a)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        return f"QuadExt({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


class FloatScalar:
    """A double with an equality tolerance; tolerances propagate as a max."""

    __slots__ = ("value", "tol")

    def __init__(self, value, tol: float = DEFAULT_TOL):
        self.value = float(value)
        self.tol = float(tol)

    def _lift(self, other):
        if isinstance(other, FloatScalar):
            return other.value, max(self.tol, other.tol)
        if isinstance(other, (int, Fraction, QuadExt)):
            return float(other), self.tol
        return None, None

    def __add__(self, other):
        v, t = self._lift(other)
        if v is None:
            return NotImplemented
        return FloatScalar(self.value + v, t)

    __radd__ = __add__

    def __sub__(self, other):
        v, t = self._lift(other)
        if v is None:
            return NotImplemented
        return FloatScalar(self.value - v, t)

    def __rsub__(self, other):
        v, t = self._lift(other)
        if v is None:
            return NotImplemented
        return FloatScalar(v - self.value, t)

    def __mul__(self, other):
        v, t = self._lift(other)
        if v is None:
            return NotImplemented
        return FloatScalar(self.value * v, t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v, t = self._lift(other)
        if v is None:
            return NotImplemented
        if v == 0.0:
            raise ZeroDivisionError("float division by zero")
        return FloatScalar(self.value / v, t)

    def __rtruediv__(self, other):
        v, t = self._lift(other)
        if v is None:
            return NotImplemented
        if self.value == 0.0:
            raise ZeroDivisionError("float division by zero")
        return FloatScalar(v / self.value, t)

    def __neg__(self):
        return FloatScalar(-self.value, self.tol)

    def __pos__(self):
        return self

    def __pow__(self, k):
        return FloatScalar(self.value ** k, self.tol)

    def __abs__(self):
        return FloatScalar(abs(self.value), self.tol)

    def sign(self) -> int:
        if abs(self.value) <= self.tol:
            return 0
        return 1 if self.value > 0 else -1

    def __bool__(self):
        return abs(self.value) > self.tol

    def __eq__(self, other):
        v, t = self._lift(other)
        if v is None:
            return NotImplemented
        return abs(self.value - v) <= t

    __hash__ = None

    def __lt__(self, other):
        v, t = self._lift(other)
        if v is None:
            return NotImplemented
        return self.value < v - t

    def __le__(self, other):
        v, t = self._lift(other)
        if v is None:
            return NotImplemented
        return self.value <= v + t

    def __gt__(self, other):
        v, t = self._lift(other)
        if v is None:
            return NotImplemented
        return self.value > v + t

    def __ge__(self, other):
        v, t = self._lift(other)
        if v is None:
            return NotImplemented
        return self.value >= v - t

    def __float__(self):
        return self.value

    def __repr__(self):
        return f"FloatScalar({self.value!r}, tol={self.tol!r})"

    def __str__(self):
        return format_scalar(self)


# -- functional surface ---------------------------------------------------

def as_scalar(x):
    """Normalize ints (and other exact rationals) to Fraction; pass others through."""
    if isinstance(x, (QuadExt, FloatScalar, Fraction)):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, float):
        return FloatScalar(x)
    raise TypeError(f"not a scalar: {x!r}")


def simplify(x):
    """Demote a rational-valued QuadExt to a Fraction; other values unchanged."""
    if isinstance(x, QuadExt) and x.b == 0:
        return x.a
    return as_scalar(x)


def kind_of(x) -> str:
    if isinstance(x, FloatScalar):
        return "float"
    if isinstance(x, QuadExt):
        return "quadratic"
    return "rational"


def extension_of(x):
    """The ``d`` of a QuadExt, else None."""
    return x.d if isinstance(x, QuadExt) else None


def sign(x) -> int:
    if isinstance(x, (QuadExt, FloatScalar)):
        return x.sign()
    return _sgn(x)


def cmp(x, y) -> int:
    return sign(x - y)


def is_zero(x) -> bool:
    return sign(x) == 0


def to_float_scalar(x, tol: float = DEFAULT_TOL) -> FloatScalar:
    if isinstance(x, FloatScalar):
        return x
    return FloatScalar(float(x), tol)


# -- square roots ---------------------------------------------------------

def _rational_sqrt(x: Fraction):
    """Exact sqrt of a non-negative rational, or None."""
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


_TRIAL_LIMIT = 1_000_000


def squarefree_decompose(m: int) -> tuple[int, int]:
    """Write ``m = k^2 * d`` with ``d`` square-free; returns ``(k, d)``."""
    if m <= 0:
        raise ValueError("expected a positive integer")
    k, d = 1, 1
    p = 2
    while p * p <= m and p <= _TRIAL_LIMIT:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            k *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    if m > 1:
        r = math.isqrt(m)
        if r * r == m:
            k *= r
        elif m > _TRIAL_LIMIT * _TRIAL_LIMIT:
            raise Inexpressible(f"cannot certify square-free part of {m}")
        else:
            d *= m
    return k, d


def _sqrt_quadext(x: QuadExt):
    """sqrt of ``a + b sqrt d`` inside Q(sqrt d), or None."""
    a, b, d = x.a, x.b, x.d
    if b == 0:
        r = _rational_sqrt(a) if a >= 0 else None
        if r is not None:
            return QuadExt(r, 0, d)
        r = _rational_sqrt(a / d) if a >= 0 else None
        return QuadExt(0, r, d) if r is not None else None
    # (p + q sqrt d)^2 = a + b sqrt d  <=>  p^2 + d q^2 = a, 2pq = b
    disc = _rational_sqrt(a * a - d * b * b) if a * a - d * b * b >= 0 else None
    if disc is None:
        return None
    for p2 in ((a + disc) / 2, (a - disc) / 2):
        if p2 <= 0:
            continue
        p = _rational_sqrt(p2)
        if p is None:
            continue
        root = QuadExt(p, b / (2 * p), d)
        return -root if root.sign() < 0 else root
    return None


def sqrt_extend(x, d: int | None = None):
    """Exact square root of ``x`` within a single quadratic extension.

    For a rational ``x``: a perfect square gives a Fraction; otherwise the
    result is ``q*sqrt(d)`` where ``d`` is the context discriminant (or, when
    ``d`` is None, the square-free part of ``x``).  For a QuadExt the root must
    lie in the same field.  Float input returns a FloatScalar.

    Raises NegativeRadicand for ``x < 0`` and Inexpressible when the root is
    outside the allowed extension.
    """
    if isinstance(x, FloatScalar):
        if x.value < -x.tol:
            raise NegativeRadicand(f"sqrt of negative value {x.value}")
        return FloatScalar(math.sqrt(max(x.value, 0.0)), x.tol)
    if sign(x) < 0:
        raise NegativeRadicand(f"sqrt of negative value {x}")
    if isinstance(x, QuadExt):
        if d is not None and d != x.d:
            raise IncompatibleExtension(f"context d={d} but radicand lives in Q(sqrt {x.d})")
        root = _sqrt_quadext(x)
        if root is None:
            raise Inexpressible(f"sqrt({x}) is not in Q(sqrt {x.d})")
        return root
    x = _frac(x)
    r = _rational_sqrt(x)
    if r is not None:
        return r
    if d is None:
        k, d = squarefree_decompose(x.numerator * x.denominator)
        return QuadExt(0, Fraction(k, x.denominator), d)
    r = _rational_sqrt(x / d)
    if r is None:
        raise Inexpressible(f"sqrt({x}) is not in Q(sqrt {d})")
    return QuadExt(0, r, d)


# -- text form ------------------------------------------------------------

def _fmt_frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    """``p/q`` for rationals, ``a+b*sqrt(d)`` for QuadExt, ``~1.25`` for floats."""
    if isinstance(x, FloatScalar):
        return "~" + repr(x.value)
    if isinstance(x, QuadExt):
        return f"{_fmt_frac(x.a)}+{_fmt_frac(x.b)}*sqrt({x.d})"
    return _fmt_frac(_frac(x))


_RAT = r"[+-]?\d+(?:/\d+)?"
_QUAD_RE = re.compile(rf"^({_RAT})\+({_RAT})\*sqrt\((\d+)\)$")
_RAT_RE = re.compile(rf"^{_RAT}$")


def parse_scalar(text: str, tol: float = DEFAULT_TOL):
    s = text.strip()
    try:
        if s.startswith("~"):
            return FloatScalar(float(s[1:]), tol)
        if _RAT_RE.match(s):
            return Fraction(s)
        m = _QUAD_RE.match(s)
        if m:
            return QuadExt(Fraction(m.group(1)), Fraction(m.group(2)), int(m.group(3)))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar {text!r}: {exc}") from None
    raise ParseError(f"bad scalar {text!r}")
