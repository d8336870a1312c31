import random

import pytest

from hochlie.algebra import dual_numbers, kronecker_quiver, path_algebra
from hochlie.barcoalg import (BarCoalgebra, DegreeMismatch, NilpotentRing, TruncationTooSmall,
                              automorphism_from_coderivation, coder_from_cochains)
from hochlie.complexes import quasi_iso_check
from hochlie.defpic import (BRACKET_SIGN, ROUTE_SIGN, BarModel, InvalidAutomorphism,
                            augmentation_barmap, barmap_from_cocycle, check_isomorphism,
                            coboundary_isomorphism, coderivation_automorphism, cocycle_from_barmap,
                            compare_bracket, group_hom_map, liedpic_bracket, phi_extract,
                            psi_build, reduce_map, route_sign, trivial_deformation,
                            x_of_automorphism)
from hochlie.hochschild import NotACocycle, cochain_space, differential, hh_space

D = dual_numbers()
K = path_algebra(kronecker_quiver())


@pytest.mark.parametrize("A", [D, K], ids=["dual", "kronecker"])
def test_roundtrip_on_basis_classes(A):
    for p in range(4):
        sp = hh_space(A, p)
        for i in range(sp.dim):
            assert phi_extract(psi_build(sp.representatives[i])).coords == sp.basis_class(i).coords


@pytest.mark.parametrize("A", [D, K], ids=["dual", "kronecker"])
def test_coboundary_shift_and_explicit_isomorphism(A):
    rng = random.Random(1)
    for p in range(1, 4):
        sp = hh_space(A, p)
        for i in range(sp.dim):
            f = sp.representatives[i]
            g = cochain_space(A, p - 1).random(rng, density=0.5)
            defo = psi_build(f)
            assert phi_extract(psi_build(f + differential(g))).coords == sp.basis_class(i).coords
            H, F = coboundary_isomorphism(defo.model, g)
            assert check_isomorphism(defo.model, H, F, 1 - p)


def test_coboundary_deformation_is_trivial_class():
    rng = random.Random(2)
    g = cochain_space(K, 1).random(rng)
    assert phi_extract(psi_build(differential(g))).is_zero()
    model = BarModel(K, 3)
    triv = trivial_deformation(model, NilpotentRing.dual_numbers(K.field, 0))
    assert triv.d_squared_witness() is None


def test_psi_build_errors():
    with pytest.raises(NotACocycle):
        psi_build(cochain_space(D, 1).basis_cochain(0))
    f = hh_space(D, 2).representatives[0]
    with pytest.raises(TruncationTooSmall):
        psi_build(f, L=3)
    with pytest.raises(DegreeMismatch):
        psi_build(f, eps_degree=0)


def test_deformation_is_a_complex():
    f = hh_space(K, 1).representatives[0]
    defo = psi_build(f, L=4)
    assert defo.d_squared_witness() is None
    C = defo.to_complex()
    assert C.d_squared_witness() is None


def test_barmap_roundtrip():
    for A in (D, K):
        for p in range(3):
            for f in hh_space(A, p).representatives:
                g = barmap_from_cocycle(f)
                assert g.is_chain_map(BarModel(A, p + 2))
                assert cocycle_from_barmap(g) == f
        assert augmentation_barmap(A).is_chain_map(BarModel(A, 2))


@pytest.mark.parametrize("A", [D, K], ids=["dual", "kronecker"])
def test_route_sign_is_global(A):
    for p in range(4):
        for f in hh_space(A, p).representatives:
            assert route_sign(f) == ROUTE_SIGN


def test_x_rejects_non_dg_automorphism():
    coalg = BarCoalgebra(D, 3)
    ring = NilpotentRing.dual_numbers(D.field, 0)
    c = cochain_space(D, 1).basis_cochain(0)   # not a cocycle
    phi = automorphism_from_coderivation(coder_from_cochains(coalg, c), ring)
    with pytest.raises(InvalidAutomorphism):
        x_of_automorphism(phi)


def test_bracket_comparison_kronecker_all_pairs():
    sp = hh_space(K, 1)
    for i in range(3):
        for j in range(3):
            r = compare_bracket(sp.representatives[i], sp.representatives[j])
            assert r.ok and r.sign == BRACKET_SIGN


def test_bracket_comparison_mixed_degrees_both_orders():
    f = hh_space(D, 1).representatives[0]
    g = hh_space(D, 2).representatives[0]
    for x, y in ((f, g), (g, f)):
        r = compare_bracket(x, y)
        assert r.ok
        assert not r.right.is_zero()


def test_bracket_of_class_with_itself_vanishes():
    f = hh_space(K, 1).representatives[1]
    cls, side = liedpic_bracket(f, f)
    assert cls.is_zero() and side


def test_bracket_bilinear():
    sp = hh_space(K, 1)
    f, g, h = sp.representatives
    a, _ = liedpic_bracket(f + g.scale(2), h)
    b, _ = liedpic_bracket(f, h)
    c, _ = liedpic_bracket(g, h)
    assert a.coords == [x + 2 * y for x, y in zip(b.coords, c.coords)]


def test_bracket_antisymmetric_in_degree_one():
    sp = hh_space(K, 1)
    a, _ = liedpic_bracket(sp.representatives[0], sp.representatives[1])
    b, _ = liedpic_bracket(sp.representatives[1], sp.representatives[0])
    assert a.coords == [-x for x in b.coords]


def test_sign_override_is_detected():
    sp = hh_space(K, 1)
    r = compare_bracket(sp.representatives[0], sp.representatives[1], sign_override=-1)
    assert not r.ok


def test_group_hom_map_is_quasi_iso():
    ring = NilpotentRing.two_parameter(D.field, 0, -1)
    coalg = BarCoalgebra(D, 4)
    phi = coderivation_automorphism(coalg, hh_space(D, 1).representatives[0], ring, 0)
    psi = coderivation_automorphism(coalg, hh_space(D, 2).representatives[0], ring, 1)
    F = group_hom_map(phi, psi)
    assert quasi_iso_check(reduce_map(F), [0, -1, -2]).ok
    assert quasi_iso_check(F, [0, -1, -2]).ok
