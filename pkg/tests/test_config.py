import json
from fractions import Fraction

import numpy as np
import pytest

from sdsets.config import (GramMatrix, builtin, catalog_names, gram_of, load_gram, profile,
                           realize, realize_float, resolve_gram, save_gram, validate)
from sdsets.errors import (AmbiguousProfile, FallbackToFloat, NotSymmetric,
                           UnknownCatalogEntry)
from sdsets.scalar import FloatScalar, QuadExt, format_scalar

h = Fraction(1, 2)
HEX_ALL_NEG = GramMatrix([[1, -h, -h], [-h, 1, -h], [-h, -h, 1]], 2)


def test_identity_valid():
    rep = validate(builtin("orthonormal(3)"))
    assert rep.valid and rep.rank == 3


def test_impossible_cosine():
    rep = validate(GramMatrix([[1, 2], [2, 1]], 2))
    assert not rep.valid and not rep.psd
    assert rep.pivots[-1] == -3


def test_hexagon_pivots():
    rep = validate(HEX_ALL_NEG)
    assert rep.valid and rep.rank == 2
    assert rep.pivots == [1, Fraction(3, 4), 0]


def test_rank_exceeds_dimension():
    rep = validate(GramMatrix([[1, 0], [0, 1]], 1))
    assert not rep.valid and not rep.rank_ok


def test_non_unit_diagonal():
    rep = validate(GramMatrix([[2, 0], [0, 1]], 2))
    assert not rep.unit_diagonal and not rep.valid


def test_not_symmetric():
    with pytest.raises(NotSymmetric):
        GramMatrix([[1, h], [0, 1]], 2)


def test_profile_hexagon_signs():
    p = profile(HEX_ALL_NEG)
    assert p.inner_products == [-h] and p.s == 1 and p.antipodal_type is None
    # flipping the third vector turns two entries positive
    p = profile(builtin("hexagon_3lines"))
    assert p.inner_products == [-h, h] and p.antipodal_type == [h]


def test_profile_cross_polytope():
    p = profile(builtin("cross_polytope(3)"))
    assert p.inner_products == [-1, 0]
    assert p.antipodal_type is None and not p.sum_nonneg


def test_profile_simplex():
    p = profile(builtin("simplex(3)"))
    assert p.inner_products == [Fraction(-1, 3)] and p.s == 1


def test_profile_icosahedron():
    p = profile(builtin("icosahedron_6lines"))
    a = QuadExt(0, Fraction(1, 5), 5)
    assert p.inner_products == [-a, a] and p.antipodal_type == [a] and p.sum_nonneg


def test_squared_distances():
    p = profile(builtin("hexagon_3lines"))
    assert p.squared_distances() == [3, 1]


def test_realize_identity():
    conf = realize(builtin("orthonormal(2)"))
    assert conf.points == [[1, 0], [0, 1]]


def test_realize_hexagon():
    conf = realize(HEX_ALL_NEG)
    assert conf.gram().entries == HEX_ALL_NEG.entries
    assert conf.points[0] == [1, 0]
    assert any(isinstance(x, QuadExt) and x.d == 3 for p in conf.points for x in p)


def test_realize_repeated_point():
    g = GramMatrix([[1] * 3] * 3, 2)
    conf = realize(g)
    assert conf.points[0] == conf.points[1] == conf.points[2] == [1, 0]


@pytest.mark.parametrize("name", ["orthonormal(4)", "simplex(3)", "simplex(2)",
                                  "cross_polytope(3)", "hexagon_3lines",
                                  "icosahedron_6lines"])
def test_catalog_entries_realize(name):
    g = builtin(name)
    assert validate(g).valid
    try:
        conf = realize(g)
    except FallbackToFloat:
        conf = realize_float(g)
        got = np.array([[float(x) for x in row] for row in conf.gram().entries])
        want = np.array([[float(x) for x in row] for row in g.entries])
        assert np.max(np.abs(got - want)) <= 1e-9
    else:
        assert conf.gram().entries == g.entries
    assert all(len(p) == g.n for p in conf.points)


def test_icosahedron_needs_fallback():
    with pytest.raises(FallbackToFloat):
        realize(builtin("icosahedron_6lines"))


def test_simplex_gram():
    g = builtin("simplex(3)")
    assert g.r == 4
    assert all(g[i, j] == Fraction(-1, 3) for i in range(4) for j in range(4) if i != j)


def test_s_counts_distinct_values():
    for name in ["orthonormal(4)", "simplex(5)", "cross_polytope(4)", "hexagon_3lines",
                 "icosahedron_6lines"]:
        g = builtin(name)
        seen = {format_scalar(x) for x in g.off_diagonal()}
        assert profile(g).s == len(seen)


def test_unknown_catalog():
    with pytest.raises(UnknownCatalogEntry):
        builtin("dodecahedron")
    with pytest.raises(UnknownCatalogEntry):
        builtin("simplex")
    assert "simplex(n)" in catalog_names()


def test_json_round_trip(tmp_path):
    for name in ["hexagon_3lines", "icosahedron_6lines", "simplex(4)"]:
        g = builtin(name)
        path = tmp_path / "g.json"
        save_gram(g, str(path))
        back = load_gram(str(path))
        assert back.entries == g.entries and back.n == g.n
        assert resolve_gram(str(path)).entries == g.entries
        assert json.loads(path.read_text())["scalar_kind"] == g.kind


def test_float_profile_clusters():
    e = 1e-13
    g = GramMatrix([[FloatScalar(1.0), FloatScalar(0.5), FloatScalar(-0.5 + e)],
                    [FloatScalar(0.5), FloatScalar(1.0), FloatScalar(0.5 - e)],
                    [FloatScalar(-0.5 + e), FloatScalar(0.5 - e), FloatScalar(1.0)]], 2)
    p = profile(g)
    assert p.s == 2 and p.antipodal_type is not None


def test_float_profile_ambiguous():
    g = GramMatrix([[FloatScalar(1.0), FloatScalar(0.3), FloatScalar(0.3 + 5e-9)],
                    [FloatScalar(0.3), FloatScalar(1.0), FloatScalar(0.1)],
                    [FloatScalar(0.3 + 5e-9), FloatScalar(0.1), FloatScalar(1.0)]], 3)
    with pytest.raises(AmbiguousProfile):
        profile(g)


def test_gram_of_points():
    g = gram_of([[Fraction(3, 5), Fraction(4, 5)], [Fraction(1), Fraction(0)]], 2)
    assert g[0, 1] == Fraction(3, 5)
