"""Exponent-vector sets used by the polynomial method.

* ``N(n, s)``: all alpha in N^n with total degree <= s
* ``E(n, s)``: members of N(n, s) with even total degree
* ``M(n, s)``: members of E(n, s) with alpha_1 <= 1

Everything is enumerated in one fixed graded-lex order: ascending total
degree, ties in descending lexicographic order of the exponent tuple, so
``N(2, 2)`` comes out as ``(0,0), (1,0), (0,1), (2,0), (1,1), (0,2)``.
Coefficient matrices elsewhere index their columns by this order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import comb
from typing import Iterator

from .errors import InvalidDimension, NotAMember, ParseError

ExponentVector = tuple[int, ...]


class Kind(str, Enum):
    N = "N"
    E = "E"
    M = "M"


@dataclass(frozen=True)
class MonomialSet:
    kind: Kind
    n: int
    s: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.n < 1:
            raise InvalidDimension(f"ambient dimension must be >= 1, got {self.n}")
        if self.s < 0:
            raise ValueError(f"degree bound must be >= 0, got {self.s}")

    def __contains__(self, alpha) -> bool:
        return is_member(alpha, self.kind, self.n, self.s)


def binom(a: int, b: int) -> int:
    """C(a, b) with the convention C(a, b) = 0 for b < 0 or b > a >= 0."""
    if b < 0:
        return 0
    if a >= 0:
        return 0 if b > a else comb(a, b)
    # negative upper index: generalized binomial, (-1)^b C(b - a - 1, b)
    return (-1) ** b * comb(b - a - 1, b)


def degree(alpha: ExponentVector) -> int:
    return sum(alpha)


def graded_lex_key(alpha: ExponentVector):
    """Sort key realizing the package-wide monomial order."""
    return (sum(alpha), tuple(-a for a in alpha))


def _compositions(total: int, parts: int) -> Iterator[ExponentVector]:
    # descending lex: the first coordinate takes its largest value first
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def is_member(alpha, kind, n: int, s: int) -> bool:
    kind = Kind(kind)
    if len(alpha) != n or any(a < 0 for a in alpha):
        return False
    deg = sum(alpha)
    if deg > s:
        return False
    if kind is Kind.N:
        return True
    if deg % 2:
        return False
    return kind is Kind.E or alpha[0] <= 1


@lru_cache(maxsize=256)
def _enumerate_cached(kind: Kind, n: int, s: int) -> tuple[ExponentVector, ...]:
    out = []
    for deg in range(s + 1):
        if kind is not Kind.N and deg % 2:
            continue
        if kind is Kind.M:
            # alpha_1 in {1, 0}, descending
            for a1 in (1, 0):
                if a1 > deg:
                    continue
                if n == 1:
                    if deg == a1:
                        out.append((a1,))
                    continue
                out.extend((a1,) + rest for rest in _compositions(deg - a1, n - 1))
        else:
            out.extend(_compositions(deg, n))
    return tuple(out)


def enumerate_set(kind, n: int, s: int) -> list[ExponentVector]:
    """All members of N/E/M(n, s) in graded-lex order."""
    ms = MonomialSet(kind, n, s)
    return list(_enumerate_cached(ms.kind, ms.n, ms.s))


def count(kind, n: int, s: int) -> int:
    """Closed-form size of N/E/M(n, s).

    The M formula ``C(n+s-1, s)`` is only known for even ``s``; odd ``s`` is
    counted by enumeration.  E has no closed form here and is enumerated.
    """
    ms = MonomialSet(kind, n, s)
    if ms.kind is Kind.N:
        return binom(n + s, s)
    if ms.kind is Kind.M and s % 2 == 0:
        return binom(n + s - 1, s)
    return len(_enumerate_cached(ms.kind, n, s))


def bijection_f(alpha: ExponentVector, s: int) -> ExponentVector:
    """Drop the first coordinate: M(n, s) -> N(n-1, s) for even s."""
    n = len(alpha)
    if s % 2:
        raise ValueError("the projection is a bijection only for even s")
    if n < 2 or not is_member(alpha, Kind.M, n, s):
        raise NotAMember(f"{format_exponent(alpha)} is not in M({n},{s})")
    return tuple(alpha[1:])


def bijection_f_inverse(beta: ExponentVector, s: int) -> ExponentVector:
    """Prepend the parity bit, landing back in M(len(beta)+1, s)."""
    if s % 2:
        raise ValueError("the projection is a bijection only for even s")
    if not is_member(beta, Kind.N, len(beta), s):
        raise NotAMember(f"{format_exponent(beta)} is not in N({len(beta)},{s})")
    return (sum(beta) % 2,) + tuple(beta)


def format_exponent(alpha: ExponentVector) -> str:
    return "(" + ",".join(str(a) for a in alpha) + ")"


_EXP_RE = re.compile(r"^\(\s*\d+(\s*,\s*\d+)*\s*\)$")


def parse_exponent(text: str) -> ExponentVector:
    t = text.strip()
    if not _EXP_RE.match(t):
        raise ParseError(f"bad exponent vector {text!r}")
    return tuple(int(p) for p in t[1:-1].split(","))
