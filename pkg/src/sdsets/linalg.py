"""Dense linear algebra over the scalar types.

Exact matrices (rational or one quadratic extension) go through
fraction-free (Bareiss) elimination, so determinants and ranks are exact.
Float matrices go through partially pivoted LU with a conditioning guard.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionMismatch, NumericInconclusive
from .scalar import FloatScalar, as_scalar, is_zero, sign

FLOAT_DET_GUARD = 1e-9


def is_float_matrix(m) -> bool:
    return any(isinstance(x, FloatScalar) for row in m for x in row)


def _copy(m):
    return [[as_scalar(x) for x in row] for row in m]


def _square(m):
    r = len(m)
    if any(len(row) != r for row in m):
        raise DimensionMismatch("matrix is not square")
    return r


def bareiss_det(m):
    """Exact determinant by Bareiss elimination with row swaps."""
    n = _square(m)
    if n == 0:
        return Fraction(1)
    a = _copy(m)
    swaps = 0
    prev = Fraction(1)
    for k in range(n - 1):
        if is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    swaps += 1
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if swaps % 2 else det


def lu_det(m, guard: float = FLOAT_DET_GUARD) -> FloatScalar:
    """Float determinant by partial-pivot LU.

    Raises NumericInconclusive if ``|det|`` is below ``guard`` times the
    Hadamard bound (product of row norms): the zero/nonzero call is then not
    trustworthy.
    """
    n = _square(m)
    tol = max((x.tol for row in m for x in row if isinstance(x, FloatScalar)), default=0.0)
    a = [[float(x) for x in row] for row in m]
    scale = 1.0
    for row in a:
        scale *= sum(v * v for v in row) ** 0.5
    det = 1.0
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(a[i][k]))
        if a[p][k] == 0.0:
            det = 0.0
            break
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    if scale == 0.0 or abs(det) < guard * scale:
        raise NumericInconclusive(
            f"float determinant {det:.3e} below guard {guard:g} x scale {scale:.3e}")
    return FloatScalar(det, tol)


def determinant(m):
    return lu_det(m) if is_float_matrix(m) else bareiss_det(m)


def rank(m) -> int:
    """Exact rank by fraction-free row reduction (rectangular input allowed)."""
    if not m:
        return 0
    if is_float_matrix(m):
        import numpy as np
        return int(np.linalg.matrix_rank(np.array([[float(x) for x in row] for row in m])))
    a = _copy(m)
    rows, cols = len(a), len(a[0])
    r = 0
    prev = Fraction(1)
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not is_zero(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev
            a[i][c] = Fraction(0)
        prev = a[r][c]
        r += 1
        if r == rows:
            break
    return r


def solve(m, b):
    """Solve ``m x = b`` for square non-singular ``m`` (exact Gauss-Jordan)."""
    n = _square(m)
    if len(b) != n:
        raise DimensionMismatch("right-hand side has wrong length")
    a = [row[:] + [as_scalar(v)] for row, v in zip(_copy(m), b)]
    for k in range(n):
        piv = next((i for i in range(k, n) if not is_zero(a[i][k])), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and not is_zero(a[i][k]):
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [row[n] for row in a]


@dataclass
class LDLResult:
    """Symmetric pivoted LDL^T of a Gram-like matrix.

    ``order[k]`` is the original index used as the k-th pivot; ``pivots`` are
    the diagonal of D; ``L[i][k]`` (original row ``i``) is the multiplier of
    pivot ``k``.  Pivoting skips zero diagonals, so a PSD input factors as
    ``sum_k pivots[k] * L[:, k] L[:, k]^T``.
    """

    order: list[int] = field(default_factory=list)
    pivots: list = field(default_factory=list)
    L: list = field(default_factory=list)
    psd: bool = True
    witness: str | None = None

    @property
    def rank(self) -> int:
        return sum(1 for p in self.pivots if sign(p) != 0)


def ldl(m) -> LDLResult:
    """Pivoted LDL^T; reports the first PSD violation it meets."""
    n = _square(m)
    a = _copy(m)
    L = [[Fraction(0)] * n for _ in range(n)]
    res = LDLResult(L=L)
    remaining = list(range(n))
    while remaining:
        neg = next((i for i in remaining if sign(a[i][i]) < 0), None)
        if neg is not None:
            res.psd = False
            res.pivots.append(a[neg][neg])
            res.order.append(neg)
            res.witness = f"negative pivot {a[neg][neg]} at index {neg}"
            return res
        k = next((i for i in remaining if sign(a[i][i]) > 0), None)
        if k is None:
            # all remaining diagonals vanish: PSD forces the block to vanish
            for i in remaining:
                for j in remaining:
                    if sign(a[i][j]) != 0:
                        res.psd = False
                        res.witness = (f"zero diagonal at {i} with nonzero "
                                       f"off-diagonal {a[i][j]} at ({i},{j})")
                        return res
            for i in remaining:
                res.order.append(i)
                res.pivots.append(a[i][i] * 0)
            return res
        piv = a[k][k]
        res.order.append(k)
        res.pivots.append(piv)
        remaining.remove(k)
        L[k][len(res.order) - 1] = Fraction(1)
        col = len(res.order) - 1
        for i in remaining:
            L[i][col] = a[i][k] / piv
        for i in remaining:
            for j in remaining:
                a[i][j] = a[i][j] - L[i][col] * a[k][j]
    return res
