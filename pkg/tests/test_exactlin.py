from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hochlie.exactlin import (GF, QQ, Matrix, Subspace, coset_reduce, field_from_descriptor,
                              image_basis, kernel_basis, rref, solve, solve_sparse)

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_and_rref_match_sympy(data):
    m = Matrix.from_rows(QQ, data)
    R, rk, piv = rref(m)
    S, spiv = sympy.Matrix(data).rref()
    assert rk == len(spiv) == m.rank()
    assert piv == list(spiv)
    assert R.to_lists() == [[Fraction(int(x.p), int(x.q)) for x in S.row(i)] for i in range(S.rows)]


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_kernel_is_annihilated_and_complete(data):
    m = Matrix.from_rows(QQ, data)
    K = kernel_basis(m)
    assert K.dim == m.ncols - m.rank()
    for v in K.sparse_vectors():
        assert m.apply_sparse(v) == {}


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(small, min_size=6, max_size=6))
def test_solve_consistent_systems(data, x):
    m = Matrix.from_rows(QQ, data)
    x = x[:m.ncols]
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b
    ys = solve_sparse(m, {i: v for i, v in enumerate(b) if v != 0})
    assert ys is not None


def test_solve_inconsistent_returns_none():
    m = Matrix.from_rows(QQ, [[1, 1], [2, 2]])
    assert solve(m, [1, 3]) is None


def test_coset_reduce_is_canonical():
    W = Subspace(QQ, 3, [{0: 1, 1: 1}])
    a = coset_reduce([1, 0, 5], W)
    b = coset_reduce([0, -1, 5], W)
    assert a == b


def test_image_dimension():
    m = Matrix.from_rows(QQ, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert image_basis(m).dim == 2


def test_prime_field_arithmetic():
    F = GF(7)
    assert F(3) * F(5) == F(1)
    assert F(3).inverse() * 3 == F.one
    assert F(Fraction(1, 2)) * 2 == F.one
    m = Matrix.from_rows(F, [[1, 1], [1, 1]])
    assert m.rank() == 1
    m2 = Matrix.from_rows(GF(2), [[1, 1], [1, -1]])
    assert m2.rank() == 1
    assert Matrix.from_rows(QQ, [[1, 1], [1, -1]]).rank() == 2


def test_field_descriptors():
    assert field_from_descriptor("Q") is QQ
    assert field_from_descriptor({"Fp": 5}) == GF(5)
    assert field_from_descriptor("Fp:5") == GF(5)
    with pytest.raises(ValueError):
        field_from_descriptor({"Fp": 6})


def test_rationals_keep_ints():
    assert type(QQ(3)) is int
    assert QQ(Fraction(4, 2)) == 2 and type(QQ(Fraction(4, 2))) is int
    assert QQ("1/3") == Fraction(1, 3)
