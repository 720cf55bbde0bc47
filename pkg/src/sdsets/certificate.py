"""Run the polynomial-method argument on a concrete configuration.

Given a spherical set whose inner products are ``{+-a_1, ..., +-a_t}`` with
``0 < a_m < 1``, the certificate checks, in exact arithmetic where possible:

1. the evaluation matrix ``B_ij = prod_m (g_ij^2 - a_m^2)`` is non-singular
   (computed from the Gram matrix alone);
2. each annihilator ``P_i = prod_m (<x, v_i>^2 - a_m^2)``, reduced on the
   sphere to ``Q_i``, is supported on M(n, s);
3. the coefficient matrix of the ``Q_i`` over that basis has rank ``r``;
4. ``Q_i(v_j) = P_i(v_j) = B_ij`` for every pair.

Coordinates come from :func:`~sdsets.config.realize` when the Gram matrix
has an orthonormal realization inside one quadratic extension.  Otherwise
exact mode switches to *Gram-frame* coordinates: points are written in the
basis of ``k = rank`` configuration points, the sphere becomes the quadric
``x^T F x = 1`` with ``F`` the basis Gram block (``F_11 = 1``), and the
reduction eliminates ``x_1^2`` using that quadric.  Everything then stays in
the field of the Gram entries.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import bound_main
from .config import (FLOAT_DISTINCT_TOL, GramMatrix, profile, realize, realize_float,
                     validate)
from .errors import AmbiguousProfile, FallbackToFloat, NumericInconclusive
from .linalg import bareiss_det, ldl, lu_det, is_float_matrix, rank, solve
from .monomials import Kind, count, enumerate_set, is_member
from .polyring import Polynomial, build_annihilator, evaluate, format_polynomial, sphere_reduce
from .scalar import as_scalar, format_scalar, is_zero, sign, simplify

SUPPORT_THRESHOLD = 1e-9
DISCARD_LIMIT = 1e-12

CERTIFIED = "certified"
HYPOTHESIS_FAILED = "hypothesis_failed"
NUMERIC_INCONCLUSIVE = "numeric_inconclusive"


@dataclass
class CertificateReport:
    r: int
    n: int
    s: int | None = None
    t: int | None = None
    a_list: list = field(default_factory=list)
    eval_matrix_ok: bool = False
    determinant: object = None
    eval_matrix: list | None = None
    eval_diagonal: bool = False
    support_ok: bool = False
    rank: int | None = None
    bound: int | None = None
    eval_consistent: bool = False
    frame: str | None = None
    mode: str = "exact"
    q_polynomials: list = field(default_factory=list)
    verdict: str = HYPOTHESIS_FAILED
    failure_witness: str | None = None

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def to_json(self) -> dict:
        def fmt(x):
            return format_scalar(simplify(x))

        return {
            "verdict": self.verdict,
            "r": self.r,
            "n": self.n,
            "s": self.s,
            "t": self.t,
            "a_list": [fmt(a) for a in self.a_list],
            "bound": self.bound,
            "eval_matrix_ok": self.eval_matrix_ok,
            "determinant": None if self.determinant is None else fmt(self.determinant),
            "eval_diagonal": self.eval_diagonal,
            "eval_matrix": (None if self.eval_matrix is None
                            else [[fmt(x) for x in row] for row in self.eval_matrix]),
            "support_ok": self.support_ok,
            "rank": self.rank,
            "eval_consistent": self.eval_consistent,
            "frame": self.frame,
            "mode": self.mode,
            "q_polynomials": list(self.q_polynomials),
            "failure_witness": self.failure_witness,
        }


def eval_matrix(g: GramMatrix, a_list) -> list:
    """``B_ij = prod_m (g_ij^2 - a_m^2)`` from Gram entries only."""
    if not a_list:
        raise ValueError("a_list must be nonempty")
    sq = [as_scalar(a) * as_scalar(a) for a in a_list]
    out = []
    for i in range(g.r):
        row = []
        for j in range(g.r):
            gij = g[i, j]
            gij2 = gij * gij
            val = Fraction(1)
            for a2 in sq:
                val = val * (gij2 - a2)
            row.append(val)
        out.append(row)
    return out


def check_nonsingular(m) -> tuple[bool, object]:
    """``(det != 0, det)``; exact by Bareiss, float by guarded LU.

    Float matrices whose determinant is too small relative to their scale
    raise NumericInconclusive instead of answering.
    """
    if is_float_matrix(m):
        det = lu_det(m)
        return True, det
    det = bareiss_det(m)
    return not is_zero(det), det


@dataclass
class _Frame:
    name: str
    linear_forms: list  # u_i with P_i = prod (u_i . x)^2 - a^2
    points: list        # coordinates of v_j in the same frame
    form: list | None   # quadric matrix; None means the unit sphere


def _orthonormal_frame(g: GramMatrix) -> _Frame:
    conf = realize(g)
    return _Frame("orthonormal", conf.points, conf.points, None)


def _float_frame(g: GramMatrix) -> _Frame:
    conf = realize_float(g)
    return _Frame("float", conf.points, conf.points, None)


def gram_frame(g: GramMatrix) -> _Frame:
    """Coordinates relative to a basis of configuration points.

    With basis indices ``B`` (``k`` of them) and ``F = G[B, B]``, point ``j``
    has frame coordinates ``F^{-1} G[B, j]`` and ``<v_i, x> = G[B, i] . x``.
    Remaining ``n - k`` coordinates are an orthonormal complement.
    """
    f = ldl(g.entries)
    basis = [f.order[k] for k, p in enumerate(f.pivots) if sign(p) != 0]
    k, n = len(basis), g.n
    zero, one = Fraction(0), Fraction(1)
    F = [[g[i, j] for j in basis] for i in basis]
    form = [[F[i][j] if i < k and j < k else (one if i == j else zero)
             for j in range(n)] for i in range(n)]
    linear_forms, points = [], []
    for j in range(g.r):
        col = [g[b, j] for b in basis]
        linear_forms.append(col + [zero] * (n - k))
        points.append(solve(F, col) + [zero] * (n - k))
    return _Frame("gram_frame", linear_forms, points, form)


def _hypothesis_failure(report: CertificateReport, prof) -> CertificateReport:
    vals = prof.inner_products
    if prof.s == 0:
        msg = "fewer than two points: no inner products"
    elif prof.s % 2:
        msg = f"odd number of distinct inner products (s={prof.s})"
    elif any(sign(v + 1) == 0 or sign(v - 1) == 0 for v in vals):
        msg = "inner product +-1 present: 0 < a_m < 1 violated"
    elif any(is_zero(v) for v in vals):
        msg = "inner product 0 present: 0 < a_m violated"
    else:
        msg = "inner products are not of the form {+-a_1, ..., +-a_t}"
    report.verdict = HYPOTHESIS_FAILED
    report.failure_witness = msg + "; observed " + ", ".join(format_scalar(v) for v in vals)
    return report


def _support_check(qs, n, s, float_mode):
    """Returns (ok, inconclusive, witness, cleaned polynomials)."""
    cleaned = []
    inconclusive = False
    for i, q in enumerate(qs):
        keep = {}
        for alpha, c in q.items():
            if is_member(alpha, Kind.M, n, s):
                keep[alpha] = c
                continue
            if float_mode and abs(float(c)) <= SUPPORT_THRESHOLD:
                if abs(float(c)) > DISCARD_LIMIT:
                    inconclusive = True
                continue
            return False, False, f"Q_{i + 1} has monomial {alpha} outside M({n},{s})", qs
        cleaned.append(Polynomial(n, keep))
    return True, inconclusive, None, cleaned


def full_certificate(g: GramMatrix, mode: str = "exact") -> CertificateReport:
    """Check the polynomial-method bound end to end on the configuration ``g``."""
    if mode not in ("exact", "float"):
        raise ValueError(f"mode must be 'exact' or 'float', got {mode!r}")
    if mode == "float" and not g.is_float:
        g = g.to_float()
    float_mode = g.is_float
    report = CertificateReport(r=g.r, n=g.n, mode="float" if float_mode else "exact")

    v = validate(g)
    if not v.valid:
        report.verdict = HYPOTHESIS_FAILED
        report.failure_witness = "not a spherical configuration: " + "; ".join(v.witness)
        return report
    try:
        prof = profile(g)
    except AmbiguousProfile as exc:
        report.verdict = NUMERIC_INCONCLUSIVE
        report.failure_witness = str(exc)
        return report
    if prof.antipodal_type is None:
        return _hypothesis_failure(report, prof)

    a_list = prof.antipodal_type
    t = len(a_list)
    s = 2 * t
    n = g.n
    report.a_list, report.t, report.s = a_list, t, s
    report.bound = bound_main(n, s)

    # Gram level: determinant criterion
    B = eval_matrix(g, a_list)
    report.eval_matrix = B
    try:
        ok, det = check_nonsingular(B)
    except NumericInconclusive as exc:
        report.verdict = NUMERIC_INCONCLUSIVE
        report.failure_witness = str(exc)
        return report
    report.eval_matrix_ok, report.determinant = ok, det
    report.eval_diagonal = all(is_zero(B[i][j]) for i in range(g.r) for j in range(g.r) if i != j)

    # polynomial level
    if float_mode:
        frame = _float_frame(g)
    else:
        try:
            frame = _orthonormal_frame(g)
        except FallbackToFloat:
            frame = gram_frame(g)
    report.frame = frame.name

    ps = [build_annihilator(u, a_list) for u in frame.linear_forms]
    qs = [sphere_reduce(p, frame.form) for p in ps]
    report.q_polynomials = [format_polynomial(q) for q in qs]

    support_ok, inconclusive, witness, qs_clean = _support_check(qs, n, s, float_mode)
    report.support_ok = support_ok
    if not support_ok:
        report.verdict = NUMERIC_INCONCLUSIVE if float_mode else HYPOTHESIS_FAILED
        report.failure_witness = witness
        return report

    basis = enumerate_set(Kind.M, n, s)
    coeffs = [[q.coefficient(alpha) for alpha in basis] for q in qs_clean]
    report.rank = rank(coeffs)
    assert report.rank <= count(Kind.M, n, s)

    consistent = True
    for i, (p, q) in enumerate(zip(ps, qs)):
        for j, pt in enumerate(frame.points):
            pv, qv = evaluate(p, pt), evaluate(q, pt)
            if float_mode:
                good = (abs(float(pv) - float(qv)) <= FLOAT_DISTINCT_TOL
                        and abs(float(pv) - float(B[i][j])) <= FLOAT_DISTINCT_TOL)
            else:
                good = pv == qv and pv == B[i][j]
            if not good:
                consistent = False
                witness = witness or f"Q_{i + 1}(v_{j + 1}) = {qv} but P_{i + 1}(v_{j + 1}) = {pv}"
    report.eval_consistent = consistent

    checks = [
        (report.eval_matrix_ok, "evaluation matrix is singular"),
        (report.eval_diagonal, "evaluation matrix is not diagonal"),
        (consistent, witness or "reduction changed values on the sphere"),
        (report.rank == g.r, f"coefficient rank {report.rank} != r = {g.r}"),
        (g.r <= report.bound, f"r = {g.r} exceeds bound {report.bound}"),
    ]
    failed = [msg for good, msg in checks if not good]
    if failed:
        report.verdict = NUMERIC_INCONCLUSIVE if float_mode else HYPOTHESIS_FAILED
        report.failure_witness = "; ".join(failed)
    elif inconclusive:
        report.verdict = NUMERIC_INCONCLUSIVE
        report.failure_witness = (f"discarded off-support coefficient above {DISCARD_LIMIT:g}")
    else:
        report.verdict = CERTIFIED
    return report
