import json
import os
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hochlie.algebra import (beilinson_pair, center, dual_numbers, ground_field, kronecker_quiver,
                             loop_quiver, path_algebra)
from hochlie.exactlin import QQ, Matrix
from hochlie.hochschild import (FULL, REDUCED, Cochain, NotACocycle, bracket, class_of,
                                cochain_space, cup, differential, differential_matrix, dot_i,
                                gerstenhaber_product, hh_dims, hh_space, induced_bracket,
                                induced_cup)

from oracles import derivation_dims, naive_gerstenhaber, table_of

FIXTURES = json.load(open(os.path.join(os.path.dirname(__file__), "fixtures", "hh_oracle.json")))

D = dual_numbers()
K = path_algebra(kronecker_quiver())


def euler(A=D):
    return Cochain(A, 1, {(1,): {1: 1}})


def mult_by_x():
    return Cochain(D, 1, {(0,): {1: 1}})


def test_differential_degree_zero_examples():
    assert differential(Cochain.from_element(D, {0: 1})).is_zero()
    assert differential(Cochain.from_element(D, {1: 1})).is_zero()
    assert differential(Cochain.from_element(K, K.unit)).is_zero()
    assert not differential(Cochain.from_element(K, {K.idempotents[0]: 1})).is_zero()


def test_euler_derivation_is_cocycle():
    assert differential(euler()).is_zero()


def test_differential_by_hand():
    # c = mult-by-x: (dc)(a, b) = a c(b) - c(ab) + c(a) b
    dc = differential(mult_by_x())
    assert dc.values == {(0, 0): {1: 1}}


def test_dot_examples():
    f, g = mult_by_x(), euler()
    # x * Euler(a) vanishes on both basis elements
    assert dot_i(f, g, 0).is_zero()
    assert dot_i(g, f, 0).values == {(0,): {1: 1}}
    ident = Cochain.identity(D)
    m = Cochain.multiplication(D)
    for i in range(2):
        assert dot_i(m, ident, i) == m
    with pytest.raises(IndexError):
        dot_i(m, ident, 2)


def test_gerstenhaber_degree_one_is_composition():
    rng = random.Random(1)
    f = cochain_space(K, 1).random(rng)
    g = cochain_space(K, 1).random(rng)
    assert gerstenhaber_product(f, g) == dot_i(f, g, 0)
    comp = {}
    for (b,), v in g.values.items():
        for k, c in v.items():
            for j, w in f.values.get((k,), {}).items():
                comp[(b,)] = comp.get((b,), {})
                comp[(b,)][j] = comp[(b,)].get(j, 0) + c * w
    assert gerstenhaber_product(f, g) == Cochain(K, 1, comp)
    assert bracket(f, g) == gerstenhaber_product(f, g) - gerstenhaber_product(g, f)


@pytest.mark.parametrize("p,q", [(2, 2), (1, 2), (2, 1), (3, 2), (2, 0), (0, 2)])
def test_gerstenhaber_matches_naive_evaluator(p, q):
    rng = random.Random(p * 10 + q)
    mult, _ = table_of(D)
    c1 = cochain_space(D, p).random(rng)
    c2 = cochain_space(D, q).random(rng)
    got = gerstenhaber_product(c1, c2)
    want = naive_gerstenhaber(mult, c1.values, p, c2.values, q)
    assert {t: {k: Fraction(v) for k, v in vec.items()} for t, vec in got.values.items()} == want


def test_bracket_self_vanishes_for_odd_degree():
    rng = random.Random(2)
    for p in (1, 3):
        c = cochain_space(D, p).random(rng)
        assert bracket(c, c).is_zero()


def test_cup_examples():
    rng = random.Random(3)
    one = Cochain.from_element(D, D.unit)
    c = cochain_space(D, 2).random(rng)
    assert cup(c, one) == c and cup(one, c) == c
    x = Cochain.from_element(D, {1: 1})
    assert cup(x, x).is_zero()
    a, b, e = (cochain_space(D, p).random(rng) for p in (1, 2, 1))
    assert cup(cup(a, b), e) == cup(a, cup(b, e))


def test_hh_matches_oracle_fixtures():
    cases = {"ground": ground_field(), "dual_numbers": D, "kronecker": K}
    for name, A in cases.items():
        want = FIXTURES[name]["hh"]
        assert hh_dims(A, len(want) - 1) == want


def test_hh1_against_derivation_oracle():
    for name, A in (("dual_numbers", D), ("kronecker", K)):
        der, inn = derivation_dims(table_of(A)[0])
        assert FIXTURES[name]["der"] == der
        assert hh_dims(A, 1)[1] == der - inn


def test_hh0_is_center():
    for A in (D, K, beilinson_pair(1)[0]):
        assert hh_dims(A, 0)[0] == center(A).dim


def test_d_squared_as_matrices():
    for A, top in ((D, 6), (ground_field(), 6), (K, 3)):
        for p in range(top):
            prod = differential_matrix(A, p + 1) @ differential_matrix(A, p)
            assert prod.is_zero()


def test_d_squared_on_random_cochains_up_to_degree_six():
    rng = random.Random(4)
    for p in range(0, 6):
        c = cochain_space(K, p).random(rng, density=0.05)
        assert differential(differential(c)).is_zero()


def test_full_and_reduced_agree():
    for A in (path_algebra(loop_quiver()), K):
        assert hh_dims(A, 4, FULL) == hh_dims(A, 4, REDUCED)


def test_reduced_mode_needs_vertices():
    with pytest.raises(Exception):
        cochain_space(D, 1, REDUCED)


def test_class_of_coboundary_is_zero_and_noncocycle_raises():
    rng = random.Random(5)
    sp = hh_space(D, 2)
    g = cochain_space(D, 1).random(rng)
    assert class_of(differential(g), sp).is_zero()
    with pytest.raises(NotACocycle):
        class_of(Cochain(D, 2, {(0, 0): {0: 1}}), sp)


def test_representatives_are_cocycles_with_independent_classes():
    for A in (D, K):
        for p in range(3):
            sp = hh_space(A, p)
            for i, r in enumerate(sp.representatives):
                assert differential(r).is_zero()
                assert class_of(r, sp).coords == sp.basis_class(i).coords


def test_induced_cup_unit_and_graded_commutativity():
    for A in (D, K):
        one = class_of(Cochain.from_element(A, A.unit), hh_space(A, 0))
        for p in range(3):
            sp = hh_space(A, p)
            for i in range(sp.dim):
                x = sp.basis_class(i)
                assert induced_cup(one, x).coords == x.coords
                for q in range(3 - p):
                    sq = hh_space(A, q)
                    for j in range(sq.dim):
                        y = sq.basis_class(j)
                        s = -1 if (p * q) % 2 else 1
                        assert induced_cup(x, y).coords == [s * c for c in induced_cup(y, x).coords]


def test_kronecker_hh1_is_perfect_lie_algebra():
    sp = hh_space(K, 1)
    assert sp.dim == 3
    vecs = []
    for i in range(3):
        for j in range(3):
            vecs.append(induced_bracket(sp.basis_class(i), sp.basis_class(j)).coords)
    assert Matrix.from_rows(QQ, vecs).rank() == 3


def test_induced_bracket_representative_independent():
    rng = random.Random(6)
    sp = hh_space(K, 1)
    base = {(i, j): induced_bracket(sp.basis_class(i), sp.basis_class(j)).coords
            for i in range(3) for j in range(3)}
    for _ in range(20):
        i, j = rng.randrange(3), rng.randrange(3)
        a = sp.representatives[i] + differential(cochain_space(K, 0).random(rng))
        b = sp.representatives[j] + differential(cochain_space(K, 0).random(rng))
        assert induced_bracket(class_of(a, sp), class_of(b, sp)).coords == base[(i, j)]


def test_bracket_descends():
    rng = random.Random(7)
    for p, q in ((1, 2), (2, 2), (1, 1)):
        z1 = hh_space(D, p).representatives[0]
        z2 = hh_space(D, q).representatives[0]
        br = bracket(z1, z2)
        assert differential(br).is_zero()
        b = differential(cochain_space(D, q - 1).random(rng))
        tgt = hh_space(D, p + q - 1)
        assert class_of(bracket(z1, b), tgt).is_zero()


def test_to_json_shape():
    js = Cochain.multiplication(D).to_json()
    assert js["degree"] == 2
    assert len(js["matrix"]) == 2 and len(js["matrix"][0]) == 4


def test_beilinson_hh_reduced():
    A, B = beilinson_pair(2)
    assert hh_dims(A, 4, REDUCED) == hh_dims(B, 4, REDUCED) == [1, 8, 10, 0, 0]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 10 ** 6))
def test_graded_antisymmetry_property(p, q, seed):
    rng = random.Random(seed)
    c1 = cochain_space(K, p).random(rng, density=0.3)
    c2 = cochain_space(K, q).random(rng, density=0.3)
    s = -1 if ((p - 1) * (q - 1)) % 2 else 1
    assert bracket(c1, c2) == bracket(c2, c1).scale(-s)
