"""Upper and lower bounds on spherical s-distance sets.

All values are exact integers.  ``applicable_bounds`` picks the bounds whose
hypotheses a :class:`~sdsets.config.DistanceProfile` satisfies.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .errors import HypothesisViolated
from .monomials import binom

__all__ = [
    "BoundReport", "binom", "dgs_value", "bound_dgs", "bound_main", "bound_gerzon",
    "bound_musin", "bound_two_distance", "bound_barg_musin", "bound_conjecture",
    "lower_de_caen", "applicable_bounds", "bounds_for",
]

THEOREM_ORDER = ["main", "gerzon", "musin", "two_distance", "dgs", "barg_musin", "conjecture"]


@dataclass
class BoundReport:
    theorem_id: str
    value: int
    hypotheses_used: list = field(default_factory=list)
    status: str = "proved"

    def to_json(self) -> dict:
        return {"theorem_id": self.theorem_id, "value": self.value,
                "hypotheses_used": list(self.hypotheses_used), "status": self.status}


def _require_n(n: int):
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


def _require_even(s: int):
    if s < 2 or s % 2:
        raise HypothesisViolated(f"s must be even and >= 2, got {s}")


def dgs_value(n: int, s: int) -> int:
    """C(n+s-1, s) + C(n+s-2, s-1); defined with binomial conventions for s >= 0."""
    return binom(n + s - 1, s) + binom(n + s - 2, s - 1)


def bound_dgs(n: int, s: int) -> int:
    _require_n(n)
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    return dgs_value(n, s)


def bound_main(n: int, s: int) -> int:
    """C(n+s-1, s) for sets with inner products {+-a_1, ..., +-a_t}, 0 < a_m < 1."""
    _require_n(n)
    _require_even(s)
    return binom(n + s - 1, s)


def bound_gerzon(n: int) -> int:
    _require_n(n)
    return n * (n + 1) // 2


def bound_musin(n: int) -> int:
    _require_n(n)
    return n * (n + 1) // 2


def bound_two_distance(n: int) -> int:
    _require_n(n)
    return n * (n + 3) // 2


def barg_musin_exact(n: int, s: int) -> Fraction:
    _require_n(n)
    _require_even(s)
    return dgs_value(n, s - 2) + Fraction(n + 2 * s - 2, s) * binom(n + s - 1, s - 1)


def bound_barg_musin(n: int, s: int) -> int:
    """Floor of the exact rational Barg-Musin expression."""
    return floor(barg_musin_exact(n, s))


def bound_conjecture(n: int, s: int) -> int:
    """Conjectured value C(n+s-1, s); never a proved bound."""
    _require_n(n)
    _require_even(s)
    return binom(n + s - 1, s)


def lower_de_caen(t: int) -> tuple[int, int]:
    """``(n, count)`` with n = 3*2^(2t-1) - 1 and count = 2(n+1)^2/9."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    n = 3 * 2 ** (2 * t - 1) - 1
    num = 2 * (n + 1) ** 2
    assert num % 9 == 0
    return n, num // 9


def _sorted(reports):
    return sorted(reports, key=lambda b: (b.value, THEOREM_ORDER.index(b.theorem_id)))


def applicable_bounds(profile, n: int) -> list[BoundReport]:
    """Every bound whose hypotheses ``profile`` satisfies, ascending by value."""
    s = profile.s
    even = s >= 2 and s % 2 == 0
    out = [BoundReport("dgs", dgs_value(n, max(s, 1)), ["spherical", f"|s(F)| <= {max(s, 1)}"])]
    if profile.antipodal_type is not None and even:
        out.append(BoundReport("main", bound_main(n, s),
                               ["spherical", "s even",
                                "inner products = {+-a_m}", "0 < a_m < 1"]))
    if s == 2 and profile.sum_nonneg:
        out.append(BoundReport("musin", bound_musin(n),
                               ["spherical", "two inner products a, b", "a + b >= 0"]))
    if even and profile.sum_nonneg:
        hyp = ["spherical", "s even", "sum of inner products >= 0"]
        out.append(BoundReport("barg_musin", bound_barg_musin(n, s), hyp))
        out.append(BoundReport("conjecture", bound_conjecture(n, s), hyp, "conjectured"))
    return _sorted(out)


def bounds_for(n: int, s: int) -> list[BoundReport]:
    """All formula values at (n, s), with their hypotheses assumed rather than checked."""
    out = [BoundReport("dgs", bound_dgs(n, s), ["spherical", f"|s(F)| <= {s}"])]
    if s == 2:
        out.append(BoundReport("two_distance", bound_two_distance(n),
                               ["spherical", "|s(F)| <= 2"]))
        out.append(BoundReport("gerzon", bound_gerzon(n),
                               ["spherical", "inner products {alpha, -alpha}"]))
        out.append(BoundReport("musin", bound_musin(n),
                               ["spherical", "two inner products a, b", "a + b >= 0"]))
    if s >= 2 and s % 2 == 0:
        out.append(BoundReport("main", bound_main(n, s),
                               ["spherical", "s even", "inner products = {+-a_m}", "0 < a_m < 1"]))
        hyp = ["spherical", "s even", "sum of inner products >= 0"]
        out.append(BoundReport("barg_musin", bound_barg_musin(n, s), hyp))
        out.append(BoundReport("conjecture", bound_conjecture(n, s), hyp, "conjectured"))
    return _sorted(out)
