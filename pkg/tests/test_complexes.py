import json
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hochlie.algebra import dual_numbers, kronecker_quiver, path_algebra
from hochlie.barcoalg import BarCoalgebra
from hochlie.complexes import (LITERAL, NO_KOSZUL, BoundedComplex, ChainMap, ComplexError,
                               algebra_complex, bar_resolution, bar_resolution_right_free,
                               check_twisting_equation, complex_from_matrices, functor_B,
                               functor_Omega, homology, homology_dims, module_complex_from_algebra,
                               omega_counit, quasi_iso_check, shift, split_exact_sequence,
                               tensor_over_A, twisted_tensor_left)
from hochlie.exactlin import QQ, Matrix

D = dual_numbers()
K = path_algebra(kronecker_quiver())


def two_term(lo):
    """``D --x.--> D`` in degrees lo, lo + 1, with the right regular action."""
    bases = {lo: [("u", i) for i in range(2)], lo + 1: [("v", i) for i in range(2)]}

    def dfun(p, k):
        if k[0] == "u":
            return {("v", j): c for j, c in D.mult[1][k[1]].items()}
        return {}

    def right(p, k, a):
        return {(k[0], j): c for j, c in D.mult[k[1]][a].items()}

    M = BoundedComplex(D.field, bases, dfun, right_action=right)
    M.algebra = D
    return M


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(0, 10 ** 6))
def test_homology_matches_rank_oracle(a, b, c, seed):
    rng = random.Random(seed)
    # build d1: b x a of rank r, then d2: c x b with d2 d1 = 0 via a kernel projection
    r = rng.randint(0, min(a, b))
    d1 = sympy.zeros(b, a)
    for i in range(r):
        for j in range(a):
            d1[i, j] = rng.randint(-2, 2)
    left = d1.T.nullspace()   # vectors y with y^T d1 = 0
    d2 = sympy.zeros(c, b)
    for i in range(c):
        if left:
            v = left[rng.randrange(len(left))] * rng.randint(-2, 2)
            for j in range(b):
                d2[i, j] = v[j]
    assert (d2 * d1).is_zero_matrix
    conv = lambda m: Matrix.from_rows(QQ, [[int(x) if x.is_integer else x for x in m.row(i)] for i in range(m.rows)])
    Kc = complex_from_matrices(QQ, {0: a, 1: b, 2: c}, {0: conv(d1), 1: conv(d2)})
    r1, r2 = d1.rank(), d2.rank()
    assert homology_dims(Kc) == {0: a - r1, 1: b - r1 - r2, 2: c - r2}


def test_d_squared_is_checked():
    m = Matrix.from_rows(QQ, [[1]])
    with pytest.raises(ComplexError):
        complex_from_matrices(QQ, {0: 1, 1: 1, 2: 1}, {0: m, 1: m})


def test_shift_moves_homology():
    M = two_term(0)
    assert homology_dims(M) == {0: 1, 1: 1}
    assert homology_dims(shift(M, 2)) == {-2: 1, -1: 1}


def test_identity_is_quasi_iso_and_zero_is_not():
    M = two_term(0)
    ident = ChainMap(M, M, lambda p, k: {k: 1})
    assert quasi_iso_check(ident).ok
    zero = ChainMap(M, M, lambda p, k: {})
    assert not quasi_iso_check(zero).ok


def test_twisting_equation():
    for A in (D, K):
        assert check_twisting_equation(BarCoalgebra(A, 4))


@pytest.mark.parametrize("A", [D, K], ids=["dual", "kronecker"])
def test_bar_resolution_homology(A):
    P, aug = bar_resolution(A, 4)
    assert homology(P, 0).dim == A.dim
    for p in (-1, -2, -3):
        assert homology(P, p).dim == 0
    assert quasi_iso_check(aug, [0]).ok
    assert P.module_map_witness(A) is None


@pytest.mark.parametrize("conv", [LITERAL, NO_KOSZUL])
def test_other_sign_conventions_fail(conv):
    with pytest.raises(ComplexError):
        bar_resolution(D, 3, conv)


def test_no_koszul_fails_for_nontrivial_module_differential():
    for lo in (-1, 0, 1):
        with pytest.raises(ComplexError):
            functor_B(two_term(lo), 3, NO_KOSZUL)


def test_B_of_A_is_acyclic_below_the_top():
    M = module_complex_from_algebra(D)
    BM = functor_B(M, 4)
    dims = homology_dims(BM, list(range(-3, 1)))
    assert all(v == 0 for v in dims.values())


@pytest.mark.parametrize("lo", [-1, 0, 1])
def test_omega_counit_is_quasi_iso(lo):
    M = two_term(lo)
    OB = functor_Omega(functor_B(M, 4), M, 4)
    assert quasi_iso_check(omega_counit(OB, M), list(range(lo - 1, lo + 2))).ok


def test_split_exact_sequence():
    res = split_exact_sequence(two_term(0), 3)
    assert res["exact"]


def test_tensor_over_A_with_the_bar_resolution():
    P = bar_resolution_right_free(D, 4)
    T = tensor_over_A(P, algebra_complex(D))
    assert homology(T, 0).dim == 2
    assert homology(T, -1).dim == homology(T, -2).dim == 0


def test_left_twisted_tensor_is_a_complex():
    M = algebra_complex(K)
    C = twisted_tensor_left(BarCoalgebra(K, 3), M)
    assert C.d_squared_witness() is None


def test_json_serialization():
    js = json.loads(json.dumps(two_term(0).to_json()))
    assert js["window"] == [0, 1]
    assert js["components"] == [2, 2]
