import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sdsets.bounds import bound_dgs
from sdsets.clique import available_backends, brute_force_max_clique, max_clique
from sdsets.config import builtin, profile
from sdsets.errors import AllowedOutOfRange, FamilyTooRich, UnknownFamily
from sdsets.scalar import QuadExt
from sdsets.search import (CandidateFamily, build_graph, generate_family, search_s_distance)

BACKENDS = available_backends()


def random_graph(rng, nv, p):
    adj = [set() for _ in range(nv)]
    for i in range(nv):
        for j in range(i + 1, nv):
            if rng.random() < p:
                adj[i].add(j)
                adj[j].add(i)
    return adj


def test_family_sizes():
    assert generate_family("signed_basis(3)").size == 6
    fam = generate_family("normalized_pm1(2)")
    assert fam.size == 4 and fam.gram[0, 0] == 1
    fam = generate_family("edge_midpoints_simplex(4)")
    assert fam.size == 10 and fam.n == 4
    assert all(fam.gram[i, i] == 1 for i in range(10))


def test_unknown_family():
    with pytest.raises(UnknownFamily):
        generate_family("hypercube(3)")


def test_signed_basis_orthogonal_graph():
    fam = generate_family("signed_basis(3)")
    g = build_graph(fam, [Fraction(0)])
    # +-e_i is adjacent to the four vectors on other axes, not to -e_i
    assert all(len(nb) == 4 for nb in g.adjacency)
    assert max_clique(g.adjacency).size == 3


def test_allowed_minus_one_rejected():
    fam = generate_family("signed_basis(3)")
    with pytest.raises(AllowedOutOfRange):
        build_graph(fam, [Fraction(0), Fraction(-1)])
    g = build_graph(fam, [Fraction(0), Fraction(-1)], allow_antipodal=True)
    assert max_clique(g.adjacency).size == 6


def test_normalized_pm1_matching():
    fam = generate_family("normalized_pm1(2)")
    g = build_graph(fam, [Fraction(0)])
    assert sum(len(nb) for nb in g.adjacency) == 8
    assert max_clique(g.adjacency).size == 2


@pytest.mark.parametrize("backend", BACKENDS)
def test_trivial_graphs(backend):
    res = max_clique([set() for _ in range(5)], backend=backend)
    assert (res.size, res.witness, res.optimal) == (1, [0], True)
    full = [set(range(6)) - {v} for v in range(6)]
    res = max_clique(full, backend=backend)
    assert (res.size, res.witness, res.optimal) == (6, list(range(6)), True)
    assert max_clique([], backend=backend).size == 0


def test_icosahedron_family_clique():
    g = builtin("icosahedron_6lines")
    fam = CandidateFamily(g, 3, "icosahedron_6lines")
    a = QuadExt(0, Fraction(1, 5), 5)
    graph = build_graph(fam, [a, -a])
    res = max_clique(graph.adjacency)
    assert (res.size, res.witness, res.optimal) == (6, list(range(6)), True)


@pytest.mark.parametrize("backend", BACKENDS)
def test_matches_brute_force(backend):
    rng = random.Random(11)
    for _ in range(120):
        nv = rng.randint(1, 16)
        adj = random_graph(rng, nv, rng.choice((0.2, 0.5, 0.8)))
        res = max_clique(adj, backend=backend)
        size, witness = brute_force_max_clique(adj)
        assert res.optimal and res.canonical
        assert (res.size, res.witness) == (size, witness)


def test_backends_agree():
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernel not built")
    rng = random.Random(3)
    for _ in range(40):
        adj = random_graph(rng, rng.randint(10, 60), 0.6)
        a, b = (max_clique(adj, backend=be) for be in ("python", "cython"))
        assert (a.size, a.witness, a.expansions) == (b.size, b.witness, b.expansions)


def test_budget_exhaustion_reported():
    rng = random.Random(5)
    adj = random_graph(rng, 60, 0.7)
    res = max_clique(adj, budget=3)
    assert not res.optimal
    assert all(u in adj[v] for v in res.witness for u in res.witness if u != v)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 14), st.floats(0.0, 1.0), st.integers(0, 2 ** 31))
def test_witness_is_clique(nv, p, seed):
    adj = random_graph(random.Random(seed), nv, p)
    res = max_clique(adj)
    w = res.witness
    assert w == sorted(w) and len(w) == res.size
    assert all(u in adj[v] for v in w for u in w if u != v)


@pytest.mark.parametrize("n, size", [(4, 10), (5, 15)])
def test_edge_midpoints_search(n, size):
    res = search_s_distance(generate_family(f"edge_midpoints_simplex({n})"), 2)
    assert res.size == size and res.optimal
    assert res.size <= bound_dgs(n, 2) == res.dgs_bound
    assert res.profile.s <= 2


def test_edge_midpoints_three_needs_antipodes():
    fam = generate_family("edge_midpoints_simplex(3)")
    assert search_s_distance(fam, 2).size == 3
    res = search_s_distance(fam, 2, allow_antipodal=True)
    assert res.size == 6 <= bound_dgs(3, 2)


def test_search_simple_families():
    assert search_s_distance(generate_family("signed_basis(3)"), 2).size == 3
    assert search_s_distance(generate_family("normalized_pm1(2)"), 2).size == 2


def test_large_s_takes_everything():
    fam = generate_family("edge_midpoints_simplex(4)")
    res = search_s_distance(fam, 10)
    assert res.size == fam.size


def test_witness_profile_within_s():
    for name in ["normalized_pm1(3)", "signed_basis(4)", "edge_midpoints_simplex(5)"]:
        fam = generate_family(name)
        for s in (1, 2, 3):
            res = search_s_distance(fam, s)
            sub = fam.gram.submatrix(res.witness)
            assert profile(sub).s <= s
            assert res.size <= res.dgs_bound


def test_family_too_rich(monkeypatch):
    import sdsets.search as search
    monkeypatch.setattr(search, "MAX_DISTINCT", 1)
    with pytest.raises(FamilyTooRich):
        search_s_distance(generate_family("edge_midpoints_simplex(4)"), 2)


def test_file_family(tmp_path):
    from sdsets.config import save_gram
    path = tmp_path / "ico.json"
    save_gram(builtin("icosahedron_6lines"), str(path))
    res = search_s_distance(generate_family(f"file:{path}"), 2)
    assert res.size == 6
