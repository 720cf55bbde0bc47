"""Large s-distance subsets of candidate families via maximum clique search.

For an allowed inner-product set ``A``, the compatibility graph joins two
family vectors iff their inner product lies in ``A``; a clique is then a
spherical set whose inner products all lie in ``A``, so ``|A| <= s`` makes it
an s-distance set.
"""
from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import bounds
from .clique import DEFAULT_BUDGET, max_clique
from .config import (FLOAT_DISTINCT_TOL, GramMatrix, distinct_values, gram_of, load_gram,
                     profile)
from .errors import AllowedOutOfRange, FamilyTooRich, UnknownFamily
from .scalar import as_scalar, cmp, format_scalar, sign, sqrt_extend

FAMILY_CAP = 4096
MAX_DISTINCT = 64


@dataclass
class CandidateFamily:
    """Unit vectors (or just their Gram matrix) spanning an ``n``-dimensional space.

    ``vectors`` may live in a larger host space (``edge_midpoints_simplex``
    uses the hyperplane ``sum x = 0`` in R^{n+1}); only inner products are
    used by the search.
    """

    gram: GramMatrix
    n: int
    source: str
    vectors: list | None = None

    @property
    def size(self) -> int:
        return self.gram.r


def _signed_basis(n: int):
    vecs = []
    for i in range(n):
        for sg in (1, -1):
            v = [Fraction(0)] * n
            v[i] = Fraction(sg)
            vecs.append(v)
    return vecs, n


def _normalized_pm1(n: int):
    c = sqrt_extend(Fraction(1, n))
    vecs = [[c * sg for sg in signs] for signs in itertools.product((1, -1), repeat=n)]
    return vecs, n


def _edge_midpoints_simplex(n: int):
    # simplex vertices e_i - (1/(n+1)) 1 in R^{n+1}; normalized edge midpoints
    if n < 2:
        raise UnknownFamily("edge_midpoints_simplex needs n >= 2")
    m = n + 1
    scale = sqrt_extend(Fraction(m, 2 * (n - 1)))  # 1 / |e_i + e_j - (2/m) 1|
    shift = Fraction(2, m)
    vecs = []
    for i, j in itertools.combinations(range(m), 2):
        v = [-shift] * m
        v[i] += 1
        v[j] += 1
        vecs.append([x * scale for x in v])
    return vecs, n


_GENERATORS = {
    "signed_basis": _signed_basis,
    "normalized_pm1": _normalized_pm1,
    "edge_midpoints_simplex": _edge_midpoints_simplex,
}

_FAMILY_RE = re.compile(r"^([a-z_0-9]+)\((\d+)\)$")


def generate_family(descriptor: str, cap: int = FAMILY_CAP) -> CandidateFamily:
    """``signed_basis(n)``, ``normalized_pm1(n)``, ``edge_midpoints_simplex(n)``
    or ``file:PATH`` (a Gram JSON file)."""
    descriptor = descriptor.strip()
    if descriptor.startswith("file:"):
        g = load_gram(descriptor[len("file:"):])
        fam = CandidateFamily(g, g.n, descriptor)
    else:
        m = _FAMILY_RE.match(descriptor)
        if not m or m.group(1) not in _GENERATORS:
            raise UnknownFamily(f"unknown family {descriptor!r}; known: "
                                f"{[k + '(n)' for k in _GENERATORS]} or file:PATH")
        n = int(m.group(2))
        if n < 1:
            raise UnknownFamily("dimension must be >= 1")
        if m.group(1) == "normalized_pm1" and 2 ** n > cap:
            raise ValueError(f"family size 2^{n} exceeds cap {cap}")
        vecs, dim = _GENERATORS[m.group(1)](n)
        fam = CandidateFamily(gram_of(vecs, dim), dim, descriptor, vecs)
    if fam.size > cap:
        raise ValueError(f"family size {fam.size} exceeds cap {cap}")
    return fam


@dataclass
class CompatibilityGraph:
    adjacency: list
    allowed: list

    @property
    def order(self) -> int:
        return len(self.adjacency)

    def edges(self):
        for i, nb in enumerate(self.adjacency):
            for j in sorted(nb):
                if i < j:
                    yield i, j


def _in_allowed(x, allowed, float_mode):
    if float_mode:
        return any(abs(float(x) - float(a)) <= FLOAT_DISTINCT_TOL for a in allowed)
    return x in allowed


def build_graph(family: CandidateFamily, allowed, allow_antipodal: bool = False
                ) -> CompatibilityGraph:
    """Edges exactly where the pairwise inner product lies in ``allowed``.

    ``allowed`` must sit inside (-1, 1); with ``allow_antipodal`` the value
    -1 is accepted as well.
    """
    allowed = [as_scalar(a) for a in allowed]
    if not allowed:
        raise AllowedOutOfRange("allowed set must be nonempty")
    for a in allowed:
        low_ok = sign(a + 1) > 0 or (allow_antipodal and sign(a + 1) == 0)
        if not (low_ok and sign(a - 1) < 0):
            raise AllowedOutOfRange(f"allowed value {format_scalar(a)} outside (-1, 1)")
    g = family.gram
    float_mode = g.is_float
    lookup = allowed if float_mode else set(allowed)
    adj = [set() for _ in range(g.r)]
    for i in range(g.r):
        for j in range(i + 1, g.r):
            if _in_allowed(g[i, j], lookup, float_mode):
                adj[i].add(j)
                adj[j].add(i)
    return CompatibilityGraph(adj, allowed)


@dataclass
class SearchResult:
    size: int
    witness: list
    optimal: bool
    allowed: list
    n: int
    s: int
    profile: object = None
    bounds: list = field(default_factory=list)
    dgs_bound: int | None = None
    subsets_tried: int = 0
    expansions: int = 0

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "witness": list(self.witness),
            "optimal": self.optimal,
            "allowed": [format_scalar(a) for a in self.allowed],
            "n": self.n,
            "s": self.s,
            "dgs_bound": self.dgs_bound,
            "within_dgs": self.dgs_bound is None or self.size <= self.dgs_bound,
            "profile": None if self.profile is None else self.profile.to_json(),
            "bounds": [b.to_json() for b in self.bounds],
            "subsets_tried": self.subsets_tried,
        }


def occurring_values(family: CandidateFamily, allow_antipodal: bool = False) -> list:
    """Distinct off-diagonal inner products usable in an allowed set, ascending."""
    g = family.gram
    vals = [v for v in g.off_diagonal()
            if sign(v - 1) < 0 and (sign(v + 1) > 0 or (allow_antipodal and sign(v + 1) == 0))]
    if g.is_float:
        return distinct_values(vals, True)
    return sorted(set(vals), key=functools.cmp_to_key(cmp))


def search_s_distance(family: CandidateFamily, s: int, budget: int = DEFAULT_BUDGET,
                      allow_antipodal: bool = False, backend: str | None = None
                      ) -> SearchResult:
    """Largest s-distance subset of ``family`` over all allowed sets ``A``.

    Only sets of size ``min(s, #values)`` are tried: enlarging ``A`` only adds
    edges, so smaller sets cannot give larger cliques.  Ties keep the first
    ``A`` in lexicographic order of the sorted values.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    values = occurring_values(family, allow_antipodal)
    if len(values) > MAX_DISTINCT:
        raise FamilyTooRich(f"{len(values)} distinct inner products (limit {MAX_DISTINCT})")
    n = family.n
    best_size, best_witness, best_allowed = min(1, family.size), list(range(min(1, family.size))), []
    optimal = True
    tried = 0
    spent = 0
    k = min(s, len(values))
    for subset in (itertools.combinations(values, k) if k else []):
        tried += 1
        graph = build_graph(family, subset, allow_antipodal)
        res = max_clique(graph.adjacency, budget, backend)
        spent += res.expansions
        optimal = optimal and res.optimal
        if res.size > best_size:
            best_size, best_witness, best_allowed = res.size, res.witness, list(subset)
    sub = family.gram.submatrix(best_witness) if best_witness else None
    prof = profile(sub) if sub is not None else None
    return SearchResult(
        size=best_size,
        witness=best_witness,
        optimal=optimal,
        allowed=best_allowed,
        n=n,
        s=s,
        profile=prof,
        bounds=bounds.applicable_bounds(prof, n) if prof is not None else [],
        dgs_bound=bounds.bound_dgs(n, s),
        subsets_tried=tried,
        expansions=spent,
    )
