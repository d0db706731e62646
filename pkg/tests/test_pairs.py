"""Homogeneous pairs: construction, validation, and the h = a ⊕ [h,h] ⊕ b split."""

from fractions import Fraction

import numpy as np

from liecoh import catalog
from liecoh.pairs import (HomogeneousPair, decompose, generator_order,
                          validate_pair)
from liecoh.linalg import feye, fmat, fzeros

F = Fraction


def _no_h(algebra):
    return fzeros(algebra.n, 0)


def test_decompose_sphere_3():
    pair = catalog.build("sphere", 3)
    assert decompose(pair).dims() == {
        "dim_h": 3, "dim_zh": 0, "dim_hh": 3, "dim_h_cap_gg": 3,
        "dim_a": 0, "dim_b": 0, "dim_a_fixed": 0, "dim_a_moved": 0, "r0": 0}


def test_decompose_example_4_7():
    pair = catalog.build("example_4_7")
    assert decompose(pair).dims() == {
        "dim_h": 1, "dim_zh": 1, "dim_hh": 0, "dim_h_cap_gg": 1,
        "dim_a": 1, "dim_b": 0, "dim_a_fixed": 0, "dim_a_moved": 1, "r0": 2}


def test_decompose_example_4_7_without_generator():
    base = catalog.build("example_4_7")
    bare = HomogeneousPair(base.algebra, base.h_basis)
    d = decompose(bare).dims()
    assert d["dim_a"] == 1 and d["dim_a_fixed"] == 1 and d["dim_a_moved"] == 0
    assert d["r0"] == 2


def test_decompose_h_equals_g():
    g = catalog.pair_from_name("torus:2+su:2").algebra
    pair = HomogeneousPair(g, feye(g.n))
    assert decompose(pair).dims() == {
        "dim_h": 5, "dim_zh": 2, "dim_hh": 3, "dim_h_cap_gg": 3,
        "dim_a": 0, "dim_b": 2, "dim_a_fixed": 0, "dim_a_moved": 0, "r0": 0}


def test_decompose_trivial_h():
    g = catalog.build("su", 2)
    d = decompose(HomogeneousPair(g, _no_h(g))).dims()
    assert d["dim_h"] == 0 and d["r0"] == 0


def test_validate_catalog_pairs():
    for name in ("sphere:2", "sphere:4", "example_4_7", "flag_su3",
                 "stiefel:5:2"):
        rep = validate_pair(catalog.pair_from_name(name))
        assert rep.ok, "%s: %s" % (name, rep.describe())


def test_generator_must_preserve_each_factor():
    g = catalog.pair_from_name("su:2+su:2").algebra
    swap = fzeros(6, 6)
    for i in range(3):
        swap[i + 3, i] = F(1)
        swap[i, i + 3] = F(1)
    rep = validate_pair(HomogeneousPair(g, _no_h(g), [swap]))
    failed = {c["name"]: c["witness"] for c in rep.failures()}
    assert failed == {"generator_preserves_each_factor": (0, "su(2)")}


def test_generator_must_fix_center_pointwise():
    g = catalog.pair_from_name("torus:1+su:2").algebra
    gamma = feye(4)
    gamma[0, 0] = F(-1)
    rep = validate_pair(HomogeneousPair(g, _no_h(g), [gamma]))
    failed = {c["name"]: c["witness"] for c in rep.failures()}
    assert failed == {"generator_fixes_center_pointwise": (0, 0)}


def test_generator_must_be_automorphism():
    g = catalog.build("su", 2)
    bad = feye(3)
    bad[0, 0] = F(2)   # scaling one axis breaks the bracket
    rep = validate_pair(HomogeneousPair(g, _no_h(g), [bad]))
    assert not rep.ok
    assert any(c["name"] == "generator_is_automorphism" for c in rep.failures())


def test_generator_must_preserve_subalgebra():
    g = catalog.build("su", 2)
    # 180-degree rotation about the e0 axis: an automorphism moving e2
    gamma = fmat([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    h = fmat([[0], [0], [1]])   # h = span(e2), sent to -e2: preserved
    ok_rep = validate_pair(HomogeneousPair(g, h, [gamma]))
    assert ok_rep.ok
    h2 = fmat([[1], [1], [0]])  # span(e0+e1) maps to span(e0-e1)
    rep = validate_pair(HomogeneousPair(g, h2, [gamma]))
    assert any(c["name"] == "generator_preserves_subalgebra"
               for c in rep.failures())


def test_non_closed_subspace_fails_validation():
    g = catalog.build("su", 2)
    rep = validate_pair(HomogeneousPair(g, fmat([[1, 0], [0, 1], [0, 0]])))
    assert any(c["name"] == "h_bracket_closed" for c in rep.failures())


def test_generator_order():
    assert generator_order(feye(4)) == 1
    flip = feye(3)
    flip[1, 1] = F(-1)
    flip[2, 2] = F(-1)
    assert generator_order(flip) == 2
    rot = fmat([[0, -1], [1, 0]])
    assert generator_order(rot) == 4
    irrational_angle = fmat([[F(3, 5), F(-4, 5), 0],
                             [F(4, 5), F(3, 5), 0],
                             [0, 0, 1]])
    assert generator_order(irrational_angle) is None


def test_infinite_order_generator_warns_but_validates():
    g = catalog.build("su", 2)
    rot = fmat([[F(3, 5), F(-4, 5), 0],
                [F(4, 5), F(3, 5), 0],
                [0, 0, 1]])
    rep = validate_pair(HomogeneousPair(g, _no_h(g), [rot]))
    assert rep.ok
    assert len(rep.warnings) == 1 and "order" in rep.warnings[0]


def test_round_trip_with_generator():
    pair = catalog.build("example_4_7")
    back = HomogeneousPair.from_dict(pair.to_dict())
    assert back.algebra.table == pair.algebra.table
    assert back.h == pair.h
    assert len(back.generators) == 1
    assert (back.generators[0] == pair.generators[0]).all()
    assert validate_pair(back).ok


def test_example_4_7_generator_matrix():
    pair = catalog.build("example_4_7")
    gen = pair.generators[0]
    want = feye(5)
    want[3, 3] = F(-1)
    want[4, 4] = F(-1)
    assert (gen == want).all()


def test_constructor_rejects_bad_shapes():
    g = catalog.build("su", 2)
    try:
        HomogeneousPair(g, fmat([[1, 0], [0, 1]]))   # 2 rows, need 3
    except ValueError as e:
        assert "rows" in str(e)
    else:
        raise AssertionError("wrong row count accepted")
    try:
        HomogeneousPair(g, fmat([[1, 2], [0, 0], [0, 0]]))  # dependent columns
    except ValueError:
        pass
    else:
        raise AssertionError("dependent columns accepted")
    try:
        HomogeneousPair(g, _no_h(g), [fmat([[1, 0], [0, 1]])])
    except ValueError as e:
        assert "generator" in str(e)
    else:
        raise AssertionError("bad generator shape accepted")


def test_from_vectors_matches_matrix_constructor():
    g = catalog.build("su", 3)
    vecs = [[1, 0, 0, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0]]
    a = HomogeneousPair.from_vectors(g, vecs)
    b = HomogeneousPair(g, np.array(vecs, dtype=object).T)
    assert a.h == b.h
