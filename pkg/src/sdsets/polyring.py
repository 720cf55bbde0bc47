"""Sparse multivariate polynomials over the scalar types, plus the sphere
reduction and the annihilator polynomials of the polynomial method."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, ParseError
from .monomials import ExponentVector, graded_lex_key
from .scalar import FloatScalar, QuadExt, as_scalar, format_scalar, parse_scalar


def _structural_zero(c) -> bool:
    # floats keep tiny residues so that callers can inspect them
    if isinstance(c, FloatScalar):
        return c.value == 0.0
    return not c


class Polynomial:
    """Immutable sparse polynomial: ``{exponent tuple: nonzero coefficient}``."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[ExponentVector, object] | Iterable = ()):
        if n < 1:
            raise DimensionMismatch(f"ambient dimension must be >= 1, got {n}")
        self.n = n
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[ExponentVector, object] = {}
        for alpha, c in items:
            alpha = tuple(alpha)
            if len(alpha) != n:
                raise DimensionMismatch(f"exponent {alpha} has length {len(alpha)} != {n}")
            c = as_scalar(c)
            acc[alpha] = acc[alpha] + c if alpha in acc else c
        self._terms = {a: c for a, c in acc.items() if not _structural_zero(c)}

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.n = n
        p._terms = {a: c for a, c in terms.items() if not _structural_zero(c)}
        return p

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        return cls._raw(n, {(0,) * n: as_scalar(c)})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        """The coordinate ``x_{i+1}`` (0-based index)."""
        alpha = [0] * n
        alpha[i] = 1
        return cls._raw(n, {tuple(alpha): Fraction(1)})

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> "Polynomial":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            alpha = [0] * n
            alpha[i] = 1
            terms[tuple(alpha)] = as_scalar(c)
        return cls._raw(n, terms)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> list[ExponentVector]:
        return sorted(self._terms, key=graded_lex_key)

    def coefficient(self, alpha) -> object:
        return self._terms.get(tuple(alpha), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> float:
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self._terms:
            return float("-inf")
        return max(sum(a) for a in self._terms)

    def degree_in(self, i: int) -> float:
        if not self._terms:
            return float("-inf")
        return max(a[i] for a in self._terms)

    def __len__(self):
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.n != self.n:
            raise DimensionMismatch(f"ambient dimensions differ: {self.n} vs {other.n}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.n, other)

    def __add__(self, other):
        other = self._lift(other)
        acc = dict(self._terms)
        for a, c in other._terms.items():
            acc[a] = acc[a] + c if a in acc else c
        return Polynomial._raw(self.n, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.n, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "Polynomial":
        c = as_scalar(c)
        return Polynomial._raw(self.n, {a: c * v for a, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        acc: dict = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                prod = ca * cb
                acc[key] = acc[key] + prod if key in acc else prod
        return Polynomial._raw(self.n, acc)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            if other.n != self.n:
                return False
            keys = set(self._terms) | set(other._terms)
            return all(self.coefficient(a) == other.coefficient(a) for a in keys)
        return NotImplemented

    __hash__ = None

    # -- evaluation -------------------------------------------------------
    def __call__(self, point: Sequence):
        return evaluate(self, point)

    def __repr__(self):
        return f"Polynomial(n={self.n}, {format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


def _monomial_value(alpha, point, powers):
    val = None
    for i, e in enumerate(alpha):
        if e == 0:
            continue
        key = (i, e)
        pw = powers.get(key)
        if pw is None:
            pw = point[i] ** e
            powers[key] = pw
        val = pw if val is None else val * pw
    return val


def evaluate(p: Polynomial, point: Sequence):
    """Value of ``p`` at ``point``; exact when the inputs are exact."""
    if len(point) != p.n:
        raise DimensionMismatch(f"point has {len(point)} coordinates, polynomial has {p.n}")
    point = [as_scalar(x) for x in point]
    powers: dict = {}
    total = Fraction(0)
    for alpha, c in p.items():
        mv = _monomial_value(alpha, point, powers)
        total = total + (c if mv is None else c * mv)
    return total


def sphere_polynomial(n: int, form=None) -> Polynomial:
    """``x^T F x - 1``; with the default identity form this is ``sum x_m^2 - 1``."""
    if form is None:
        return Polynomial(n, [(_unit(n, i, 2), 1) for i in range(n)]) - 1
    x = [Polynomial.variable(n, i) for i in range(n)]
    acc = Polynomial.zero(n)
    for i in range(n):
        for j in range(n):
            if form[i][j]:
                acc = acc + (x[i] * x[j]).scale(form[i][j])
    return acc - 1


def _unit(n, i, e):
    alpha = [0] * n
    alpha[i] = e
    return tuple(alpha)


def _x1_square_replacement(n: int, form) -> dict:
    """Terms of the polynomial equal to ``x_1^2`` on the sphere.

    Identity form: ``1 - sum_{j>=2} x_j^2``.  General form ``F`` with
    ``F[0][0] != 0``: ``(1 - sum_{(j,k) != (0,0)} F_jk x_j x_k) / F_00``.
    """
    zero = (0,) * n
    if form is None:
        rep = {zero: Fraction(1)}
        for j in range(1, n):
            rep[_unit(n, j, 2)] = Fraction(-1)
        return rep
    lead = as_scalar(form[0][0])
    if not lead:
        raise ValueError("form[0][0] must be nonzero to eliminate x_1^2")
    rep: dict = {zero: 1 / lead}
    for j in range(n):
        for k in range(n):
            if (j, k) == (0, 0) or not form[j][k]:
                continue
            alpha = [0] * n
            alpha[j] += 1
            alpha[k] += 1
            alpha = tuple(alpha)
            c = -as_scalar(form[j][k]) / lead
            rep[alpha] = rep[alpha] + c if alpha in rep else c
    return {a: c for a, c in rep.items() if not _structural_zero(c)}


def sphere_reduce(p: Polynomial, form=None) -> Polynomial:
    """Rewrite ``p`` so that ``x_1`` appears with degree at most 1.

    Uses ``x_1^2 = 1 - sum_{j>=2} x_j^2`` (valid on the unit sphere), or the
    analogous relation for the quadric ``x^T F x = 1`` when ``form`` is given.
    The result agrees with ``p`` on that quadric and its total degree does not
    exceed that of ``p``.
    """
    n = p.n
    rep = _x1_square_replacement(n, form)
    out: dict = {}
    work: dict = dict(p._terms)
    while work:
        nxt: dict = {}
        for alpha, c in work.items():
            if alpha[0] <= 1:
                out[alpha] = out[alpha] + c if alpha in out else c
                continue
            rest = (alpha[0] - 2,) + alpha[1:]
            for beta, rc in rep.items():
                key = tuple(x + y for x, y in zip(rest, beta))
                v = c * rc
                nxt[key] = nxt[key] + v if key in nxt else v
        work = {a: c for a, c in nxt.items() if not _structural_zero(c)}
    return Polynomial._raw(n, out)


def build_annihilator(v: Sequence, a_list: Sequence) -> Polynomial:
    """``prod_m (<x, v>^2 - a_m^2)``: vanishes wherever ``<x, v> = +-a_m``."""
    if not a_list:
        raise ValueError("a_list must be nonempty")
    lin = Polynomial.linear_form(v)
    sq = lin * lin
    result = Polynomial.constant(len(v), 1)
    for a in a_list:
        a = as_scalar(a)
        result = result * (sq - a * a)
    return result


# -- text form --------------------------------------------------------------

def _fmt_coef(c) -> str:
    text = format_scalar(c)
    if isinstance(c, (QuadExt, FloatScalar)):
        return f"({text})"
    return text


def _fmt_mono(alpha) -> str:
    parts = []
    for i, e in enumerate(alpha):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Terms in graded-lex order joined by `` + ``; ``0`` for the zero polynomial.

    Each term is ``coef`` or ``coef*x1^2*x3``; rational coefficients print as
    ``p/q``, others in parentheses.
    """
    if p.is_zero():
        return "0"
    out = []
    for alpha in p.support():
        c = _fmt_coef(p._terms[alpha])
        mono = _fmt_mono(alpha)
        out.append(f"{c}*{mono}" if mono else c)
    return " + ".join(out)


_VAR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur, i = [], 0, [], 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and text.startswith(sep, i):
            parts.append("".join(cur))
            cur = []
            i += len(sep)
            continue
        cur.append(ch)
        i += 1
    parts.append("".join(cur))
    return parts


def parse_polynomial(text: str, n: int) -> Polynomial:
    """Inverse of :func:`format_polynomial`."""
    text = text.strip()
    if text == "0":
        return Polynomial.zero(n)
    terms = []
    for term in _split_top(text, " + "):
        factors = _split_top(term.strip(), "*")
        coef_txt = factors[0].strip()
        if coef_txt.startswith("(") and coef_txt.endswith(")"):
            coef_txt = coef_txt[1:-1]
        coef = parse_scalar(coef_txt)
        alpha = [0] * n
        for f in factors[1:]:
            m = _VAR_RE.match(f.strip())
            if not m:
                raise ParseError(f"bad factor {f!r} in {term!r}")
            idx = int(m.group(1)) - 1
            if not 0 <= idx < n:
                raise ParseError(f"variable x{idx + 1} out of range for n={n}")
            alpha[idx] += int(m.group(2) or 1)
        terms.append((tuple(alpha), coef))
    return Polynomial(n, terms)
