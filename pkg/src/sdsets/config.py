"""Spherical configurations, described first by their Gram matrix.

Coordinates are derived on demand by :func:`realize`.  All hypotheses the
bounds care about (distinct inner products, antipodal structure, sign of
their sum) are read off the Gram matrix directly.
"""
from __future__ import annotations

import functools
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (AmbiguousProfile, FallbackToFloat, Inexpressible, NotSymmetric,
                     ParseError, UnknownCatalogEntry)
from .linalg import ldl
from .scalar import (DEFAULT_TOL, FloatScalar, QuadExt, as_scalar, cmp, extension_of,
                     format_scalar, parse_scalar, sign, simplify, sqrt_extend,
                     to_float_scalar)

FLOAT_DISTINCT_TOL = 1e-9
FLOAT_REALIZE_TOL = 1e-12


class GramMatrix:
    """Symmetric matrix of pairwise inner products, claimed to live in R^n."""

    __slots__ = ("entries", "n")

    def __init__(self, entries: Sequence[Sequence], n: int):
        rows = tuple(tuple(simplify(x) for x in row) for row in entries)
        r = len(rows)
        if any(len(row) != r for row in rows):
            raise ValueError("Gram matrix must be square")
        for i in range(r):
            for j in range(i + 1, r):
                if rows[i][j] != rows[j][i]:
                    raise NotSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")
        if n < 1:
            raise ValueError("ambient dimension must be >= 1")
        self.entries = rows
        self.n = n

    @property
    def r(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def kind(self) -> str:
        kinds = {("float" if isinstance(x, FloatScalar) else
                  "quadratic" if isinstance(x, QuadExt) else "rational")
                 for row in self.entries for x in row}
        for k in ("float", "quadratic"):
            if k in kinds:
                return k
        return "rational"

    @property
    def d(self):
        """Discriminant of the quadratic extension holding the entries, if any."""
        ds = {extension_of(x) for row in self.entries for x in row} - {None}
        if len(ds) > 1:
            raise ValueError(f"entries mix extensions {sorted(ds)}")
        return ds.pop() if ds else None

    @property
    def is_float(self) -> bool:
        return self.kind == "float"

    def submatrix(self, idx: Sequence[int]) -> "GramMatrix":
        return GramMatrix([[self.entries[i][j] for j in idx] for i in idx], self.n)

    def to_float(self, tol: float = DEFAULT_TOL) -> "GramMatrix":
        return GramMatrix([[to_float_scalar(x, tol) for x in row] for row in self.entries], self.n)

    def off_diagonal(self):
        r = self.r
        for i in range(r):
            for j in range(i + 1, r):
                yield self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, GramMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        return f"GramMatrix(r={self.r}, n={self.n}, kind={self.kind})"

    # -- file format --------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "scalar_kind": self.kind,
            "entries": [format_scalar(x) for row in self.entries for x in row],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GramMatrix":
        try:
            n, r, flat = int(data["n"]), int(data["r"]), data["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"Gram file missing or malformed field: {exc}") from None
        if len(flat) != r * r:
            raise ParseError(f"expected {r * r} entries, got {len(flat)}")
        vals = [parse_scalar(x) if isinstance(x, str) else as_scalar(x) for x in flat]
        g = cls([vals[i * r:(i + 1) * r] for i in range(r)], n)
        declared = data.get("scalar_kind")
        if declared is not None and declared != g.kind and not (declared == "quadratic" and g.kind == "rational"):
            raise ParseError(f"scalar_kind {declared!r} does not match entries ({g.kind})")
        return g


def load_gram(path: str) -> GramMatrix:
    with open(path) as fh:
        return GramMatrix.from_json(json.load(fh))


def save_gram(g: GramMatrix, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(g.to_json(), fh, indent=2)
        fh.write("\n")


@dataclass
class Configuration:
    """Explicit points; each should have squared norm 1."""

    points: list
    n: int

    def gram(self) -> GramMatrix:
        return gram_of(self.points, self.n)

    def is_unit(self, tol: float = FLOAT_DISTINCT_TOL) -> bool:
        for p in self.points:
            nrm = sum(x * x for x in p)
            if isinstance(nrm, FloatScalar):
                if abs(nrm.value - 1.0) > tol:
                    return False
            elif nrm != 1:
                return False
        return True


def inner(u, v):
    total = Fraction(0)
    for a, b in zip(u, v):
        total = total + a * b
    return total


def gram_of(points, n: int) -> GramMatrix:
    pts = [[as_scalar(x) for x in p] for p in points]
    return GramMatrix([[inner(p, q) for q in pts] for p in pts], n)


# -- validation ---------------------------------------------------------------

@dataclass
class ValidationReport:
    unit_diagonal: bool
    psd: bool
    rank: int
    rank_ok: bool
    pivots: list = field(default_factory=list)
    witness: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.unit_diagonal and self.psd and self.rank_ok

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "unit_diagonal": self.unit_diagonal,
            "psd": self.psd,
            "rank": self.rank,
            "rank_ok": self.rank_ok,
            "pivots": [format_scalar(p) for p in self.pivots],
            "witness": self.witness,
        }


def validate(g: GramMatrix) -> ValidationReport:
    """Unit diagonal, positive semidefinite, and rank <= ambient dimension."""
    witness = []
    unit = True
    for i in range(g.r):
        if g[i, i] != 1:
            unit = False
            witness.append(f"diagonal entry {i} is {format_scalar(g[i, i])}, not 1")
    f = ldl(g.entries)
    if not f.psd:
        witness.append(f.witness)
    rk = f.rank
    rank_ok = rk <= g.n
    if not rank_ok:
        witness.append(f"rank {rk} exceeds ambient dimension {g.n}")
    return ValidationReport(unit, f.psd, rk, rank_ok, list(f.pivots), witness)


# -- profile ------------------------------------------------------------------

@dataclass
class DistanceProfile:
    inner_products: list
    antipodal_type: list | None
    sum_nonneg: bool

    @property
    def s(self) -> int:
        return len(self.inner_products)

    @property
    def t(self) -> int | None:
        return None if self.antipodal_type is None else len(self.antipodal_type)

    def squared_distances(self) -> list:
        """``2 - 2t`` per inner product; ascending in the inner product order."""
        return [2 - 2 * t for t in self.inner_products]

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "inner_products": [format_scalar(x) for x in self.inner_products],
            "squared_distances": [format_scalar(x) for x in self.squared_distances()],
            "antipodal_type": (None if self.antipodal_type is None
                               else [format_scalar(a) for a in self.antipodal_type]),
            "sum_nonneg": self.sum_nonneg,
        }


def _distinct_exact(values) -> list:
    return sorted(set(values), key=functools.cmp_to_key(cmp))


def _distinct_float(values, tol: float) -> list:
    vals = sorted(float(v) for v in values)
    clusters: list[list[float]] = []
    for v in vals:
        if clusters and v - clusters[-1][-1] <= tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    reps = [sum(c) / len(c) for c in clusters]
    for a, b in zip(reps, reps[1:]):
        if b - a <= 10 * tol:
            raise AmbiguousProfile(
                f"inner products {a!r} and {b!r} are within 10x tolerance {tol:g}")
    return [FloatScalar(v, tol) for v in reps]


def distinct_values(values, float_mode: bool, tol: float = FLOAT_DISTINCT_TOL) -> list:
    return _distinct_float(values, tol) if float_mode else _distinct_exact(values)


def detect_antipodal(vals: list, float_mode: bool = False) -> list | None:
    """Return ``(a_1 < ... < a_t)`` if ``vals == {+-a_m}`` with ``0 < a_m < 1``."""
    if not vals or len(vals) % 2:
        return None
    pos = [v for v in vals if sign(v) > 0]
    neg = [v for v in vals if sign(v) < 0]
    if len(pos) != len(neg) or len(pos) + len(neg) != len(vals):
        return None
    for a in pos:
        if not any(-a == b for b in neg):
            return None
        if not a < 1:
            return None
    if float_mode and any(abs(float(a) - 1.0) <= FLOAT_DISTINCT_TOL for a in pos):
        return None
    return pos


def profile(g: GramMatrix, tol: float = FLOAT_DISTINCT_TOL) -> DistanceProfile:
    """Distinct off-diagonal inner products and the hypotheses they satisfy."""
    float_mode = g.is_float
    vals = distinct_values(list(g.off_diagonal()), float_mode, tol)
    total = sum(vals, Fraction(0))
    return DistanceProfile(vals, detect_antipodal(vals, float_mode), sign(total) >= 0)


# -- realization --------------------------------------------------------------

def realize(g: GramMatrix) -> Configuration:
    """Points in R^n whose Gram matrix is ``g``.

    Exact Gram matrices are factored by pivoted LDL^T and the pivots' square
    roots taken inside one quadratic extension; if that is impossible,
    :class:`FallbackToFloat` is raised and the caller may use
    :func:`realize_float`.  Float Gram matrices are realized numerically.
    """
    if g.is_float:
        return realize_float(g)
    f = ldl(g.entries)
    if not f.psd:
        raise ValueError(f"Gram matrix is not PSD: {f.witness}")
    d = g.d
    roots = []
    for p in f.pivots:
        if sign(p) == 0:
            roots.append(None)
            continue
        try:
            root = sqrt_extend(p, d)
        except Inexpressible as exc:
            raise FallbackToFloat(str(exc)) from None
        if d is None and isinstance(root, QuadExt):
            d = root.d
        roots.append(root)
    cols = [k for k, rt in enumerate(roots) if rt is not None]
    if len(cols) > g.n:
        raise ValueError(f"rank {len(cols)} exceeds ambient dimension {g.n}")
    zero = Fraction(0)
    points = []
    for i in range(g.r):
        coords = [f.L[i][k] * roots[k] for k in cols]
        coords += [zero] * (g.n - len(cols))
        points.append(coords)
    return Configuration(points, g.n)


def realize_float(g: GramMatrix, tol: float = FLOAT_REALIZE_TOL) -> Configuration:
    """Numerical realization via a symmetric eigendecomposition."""
    a = np.array([[float(x) for x in row] for row in g.entries])
    w, v = np.linalg.eigh(a)
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    keep = [k for k in range(len(w)) if w[k] > 1e-10]
    if len(keep) > g.n:
        raise ValueError(f"numerical rank {len(keep)} exceeds ambient dimension {g.n}")
    coords = v[:, keep] * np.sqrt(w[keep])
    points = []
    for i in range(g.r):
        row = [FloatScalar(x, tol) for x in coords[i]]
        row += [FloatScalar(0.0, tol)] * (g.n - len(keep))
        points.append(row)
    return Configuration(points, g.n)


# -- catalog ------------------------------------------------------------------

def _simplex(n: int) -> GramMatrix:
    off = Fraction(-1, n)
    return GramMatrix([[1 if i == j else off for j in range(n + 1)] for i in range(n + 1)], n)


def _cross_polytope(n: int) -> GramMatrix:
    pts = []
    for i in range(n):
        for sgn in (1, -1):
            p = [0] * n
            p[i] = sgn
            pts.append(p)
    return gram_of(pts, n)


def _orthonormal(n: int) -> GramMatrix:
    return GramMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)


def _hexagon_3lines() -> GramMatrix:
    # directions at 0, 60 and 120 degrees: (1,0), (1/2, r3/2), (-1/2, r3/2)
    h = Fraction(1, 2)
    return GramMatrix([[1, h, -h], [h, 1, h], [-h, h, 1]], 2)


def _icosahedron_6lines() -> GramMatrix:
    # one unit vector per diagonal of the icosahedron: (0, +-1, phi) and cyclic
    # shifts, normalized; |w|^2 = 1 + phi^2 = (5 + sqrt5)/2
    phi = QuadExt(Fraction(1, 2), Fraction(1, 2), 5)
    one, zero = QuadExt(1, 0, 5), QuadExt(0, 0, 5)
    raw = [(zero, one, phi), (zero, one, -phi), (one, phi, zero),
           (one, -phi, zero), (phi, zero, one), (-phi, zero, one)]
    norm2 = 1 + phi * phi
    return GramMatrix([[inner(u, v) / norm2 for v in raw] for u in raw], 3)


_CATALOG = {
    "simplex": (_simplex, True),
    "cross_polytope": (_cross_polytope, True),
    "orthonormal": (_orthonormal, True),
    "hexagon_3lines": (_hexagon_3lines, False),
    "icosahedron_6lines": (_icosahedron_6lines, False),
}

CATALOG_EXAMPLES = ["orthonormal(4)", "simplex(3)", "cross_polytope(3)",
                    "hexagon_3lines", "icosahedron_6lines"]

_NAME_RE = re.compile(r"^([a-z0-9_]+?)(?:\((\d+)\))?$")


def catalog_names() -> list[str]:
    return [f"{k}(n)" if takes_n else k for k, (_, takes_n) in _CATALOG.items()]


def builtin(name: str) -> GramMatrix:
    """Catalog Gram matrix, e.g. ``"simplex(3)"`` or ``"hexagon_3lines"``."""
    m = _NAME_RE.match(name.strip())
    if not m or m.group(1) not in _CATALOG:
        raise UnknownCatalogEntry(f"unknown catalog entry {name!r}; known: {catalog_names()}")
    fn, takes_n = _CATALOG[m.group(1)]
    if takes_n:
        if m.group(2) is None:
            raise UnknownCatalogEntry(f"{m.group(1)} needs a dimension, e.g. {m.group(1)}(3)")
        n = int(m.group(2))
        if n < 1:
            raise UnknownCatalogEntry("dimension must be >= 1")
        return fn(n)
    if m.group(2) is not None:
        raise UnknownCatalogEntry(f"{m.group(1)} takes no dimension")
    return fn()


def resolve_gram(ref: str) -> GramMatrix:
    """``catalog:NAME`` or a path to a Gram JSON file."""
    if ref.startswith("catalog:"):
        return builtin(ref[len("catalog:"):])
    return load_gram(ref)
