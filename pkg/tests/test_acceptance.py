"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are repeated in the terminal summary of every pytest run.
"""
import itertools
import random
import time
from fractions import Fraction
from math import comb

from sdsets.bounds import bound_dgs, bound_gerzon, bound_main, lower_de_caen
from sdsets.certificate import (CERTIFIED, _orthonormal_frame, check_nonsingular,
                                full_certificate, gram_frame)
from sdsets.clique import available_backends, brute_force_max_clique, max_clique
from sdsets.config import builtin, profile
from sdsets.errors import FallbackToFloat
from sdsets.monomials import Kind, bijection_f, bijection_f_inverse, enumerate_set, is_member
from sdsets.polyring import build_annihilator, evaluate, sphere_reduce
from sdsets.search import generate_family, search_s_distance

from conftest import ACCEPTANCE_LINES, cofactor_det, random_polynomial, rational_unit_vector


def report(number, ok, detail):
    line = f"[acceptance {number}] {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, detail


def test_criterion_1_counting_identities():
    start = time.perf_counter()
    bad = []
    for n in range(1, 9):
        for s in range(0, 9):
            if len(enumerate_set(Kind.N, n, s)) != comb(n + s, s):
                bad.append(("N", n, s))
            if s % 2:
                continue
            members = enumerate_set(Kind.M, n, s)
            if len(members) != comb(n + s - 1, s):
                bad.append(("M", n, s))
            if n >= 2:
                for a in members:
                    b = bijection_f(a, s)
                    if bijection_f_inverse(b, s) != a:
                        bad.append(("f", n, s, a))
    elapsed = time.perf_counter() - start
    report(1, not bad and elapsed < 5,
           f"|N|, |M| and bijection round-trip for n<=8, s<=8 in {elapsed:.2f}s; "
           f"mismatches={bad[:3]}")


def test_criterion_2_two_distance_specialization():
    bad = [n for n in range(1, 51)
           if bound_dgs(n, 2) != n * (n + 3) // 2 or bound_main(n, 2) != n * (n + 1) // 2]
    report(2, not bad, f"dgs(n,2)=n(n+3)/2 and main(n,2)=n(n+1)/2 for n<=50; bad n={bad}")


def test_criterion_3_improvement():
    bad = [(n, s) for n in range(1, 21) for s in range(2, 11, 2)
           if not bound_main(n, s) < bound_dgs(n, s)]
    report(3, not bad, f"main(n,s) < dgs(n,s) for n<=20, even 2<=s<=10; violations={bad}")


def test_criterion_4_tight_certificates():
    lines = []
    ok = True
    for name, n, r in [("hexagon_3lines", 2, 3), ("icosahedron_6lines", 3, 6)]:
        start = time.perf_counter()
        rep = full_certificate(builtin(name), mode="exact")
        elapsed = time.perf_counter() - start
        good = (rep.verdict == CERTIFIED and rep.mode == "exact" and rep.r == r
                and rep.rank == r and rep.bound == bound_main(n, 2) == r and elapsed < 1)
        ok = ok and good
        lines.append(f"{name}: {rep.verdict}, r={rep.r}, bound={rep.bound}, "
                     f"frame={rep.frame}, {elapsed:.3f}s")
    report(4, ok, "; ".join(lines))


def test_criterion_5_reduction_soundness():
    rng = random.Random(5)
    failures = 0
    checks = 0
    for _ in range(200):
        n = rng.randint(1, 4)
        p = random_polynomial(rng, n, 6, rng.randint(1, 10))
        q = sphere_reduce(p)
        for _ in range(20):
            u = rational_unit_vector(rng, n)
            checks += 1
            if evaluate(q, u) - evaluate(p, u) != 0:
                failures += 1
    report(5, failures == 0,
           f"{checks} exact evaluations of reduced vs original; nonzero errors={failures}")


def _catalog_instances():
    for name in ["hexagon_3lines", "icosahedron_6lines"]:
        yield name
    for fam in ["simplex", "cross_polytope", "orthonormal"]:
        for n in range(1, 7):
            yield f"{fam}({n})"


def test_criterion_6_support_theorem():
    checked = []
    bad = []
    for name in _catalog_instances():
        g = builtin(name)
        prof = profile(g)
        if prof.antipodal_type is None:
            continue
        rep = full_certificate(g)
        a_list, s = prof.antipodal_type, 2 * prof.t
        # coordinates as used by the certificate; reduce each annihilator again here
        try:
            frame = _orthonormal_frame(g)
        except FallbackToFloat:
            frame = gram_frame(g)
        for i, u in enumerate(frame.linear_forms):
            q = sphere_reduce(build_annihilator(u, a_list), frame.form)
            if not all(is_member(a, Kind.M, g.n, s) for a in q.support()):
                bad.append((name, i))
        checked.append(f"{name}({frame.name}, support_ok={rep.support_ok})")
    report(6, bool(checked) and not bad,
           f"supports within M(n,s) for {', '.join(checked)}; violations={bad}")


def test_criterion_7_determinant_oracle():
    rng = random.Random(7)
    bad = 0
    for _ in range(100):
        k = rng.randint(1, 6)
        m = [[Fraction(0) if rng.random() < 0.25 else Fraction(rng.randint(-7, 7), rng.randint(1, 5))
              for _ in range(k)] for _ in range(k)]
        if rng.random() < 0.2 and k > 1:
            m[-1] = [2 * x for x in m[0]]  # force some singular cases
        ok, det = check_nonsingular(m)
        oracle = cofactor_det(m)
        if det != oracle or ok != (oracle != 0):
            bad += 1
    report(7, bad == 0, f"100 random matrices up to 6x6 against cofactor expansion; mismatches={bad}")


def test_criterion_8_de_caen():
    got = [lower_de_caen(1), lower_de_caen(2)]
    ok = got == [(5, 8), (23, 128)] and all(c <= bound_gerzon(n) for n, c in got)
    report(8, ok, f"lower_de_caen(1), (2) = {got}; gerzon = "
                  f"{[bound_gerzon(n) for n, _ in got]}")


def test_criterion_9_search_vs_bounds():
    start = time.perf_counter()
    lines = []
    ok = True
    for n in (3, 4, 5):
        fam = generate_family(f"edge_midpoints_simplex({n})")
        # for n = 3 the midpoints form an octahedron, whose pairs include antipodes
        res = search_s_distance(fam, 2, allow_antipodal=(n == 3))
        good = res.size == n * (n + 1) // 2 and res.size <= bound_dgs(n, 2) and res.optimal
        ok = ok and good
        lines.append(f"n={n}: size {res.size} <= dgs {bound_dgs(n, 2)}")

    rng = random.Random(9)
    graphs = []
    for nv in range(0, 6):
        pairs = list(itertools.combinations(range(nv), 2))
        for mask in range(1 << len(pairs)):
            adj = [set() for _ in range(nv)]
            for k, (i, j) in enumerate(pairs):
                if mask >> k & 1:
                    adj[i].add(j)
                    adj[j].add(i)
            graphs.append(adj)
    exhaustive = len(graphs)
    for _ in range(300):
        nv = rng.randint(6, 20)
        p = rng.choice((0.1, 0.3, 0.5, 0.7, 0.9))
        adj = [set() for _ in range(nv)]
        for i, j in itertools.combinations(range(nv), 2):
            if rng.random() < p:
                adj[i].add(j)
                adj[j].add(i)
        graphs.append(adj)
    mismatches = 0
    for adj in graphs:
        size, witness = brute_force_max_clique(adj)
        for backend in available_backends():
            res = max_clique(adj, backend=backend)
            if (res.size, res.witness) != (size, witness) or not res.optimal:
                mismatches += 1
    elapsed = time.perf_counter() - start
    ok = ok and mismatches == 0 and elapsed < 30
    report(9, ok, f"{'; '.join(lines)}; max_clique vs exhaustive on {len(graphs)} graphs "
                  f"(all {exhaustive} labelled graphs on <=5 vertices plus random ones up to 20), "
                  f"backends={available_backends()}, mismatches={mismatches}, {elapsed:.1f}s")
