import json

import pytest

from hochlie.algebra import (AlgebraError, AssociativityViolation, InfiniteDimensional,
                             QuiverPresentation, UnitViolation, algebra_from_json, algebra_to_json,
                             beilinson_pair, center, dual_numbers, enveloping, from_structure_constants,
                             kronecker_quiver, loop_quiver, opposite, path_algebra, tensor)
from hochlie.exactlin import GF, QQ


def test_dual_numbers_structure():
    d = dual_numbers()
    assert d.dim == 2 and d.is_commutative()
    assert d.mul({1: 1}, {1: 1}) == {}
    assert center(d).dim == 2


def test_kronecker_paths():
    K = path_algebra(kronecker_quiver())
    assert K.dim == 4 and K.n_vertices == 2
    assert len(K.radical) == 2
    assert center(K).dim == 1


def test_loop_quiver_matches_dual_numbers():
    L = path_algebra(loop_quiver())
    assert L.dim == 2 and L.is_commutative()


@pytest.mark.parametrize("n,dim_a,dim_b", [(0, 1, 1), (1, 4, 4), (2, 15, 12), (3, 56, 32)])
def test_beilinson_dimensions(n, dim_a, dim_b):
    A, B = beilinson_pair(n)
    assert (A.dim, B.dim) == (dim_a, dim_b)
    assert A.n_vertices == B.n_vertices == n + 1


def test_beilinson_n1_are_kronecker_like():
    A, B = beilinson_pair(1)
    assert center(A).dim == center(B).dim == 1


def test_non_associative_table_rejected():
    # b1 b1 = b1, b1 b2 = b2, b2 b1 = 0, b2 b2 = b1 is not associative
    table = [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
             [[0, 1, 0], [0, 1, 0], [0, 0, 1]],
             [[0, 0, 1], [0, 0, 0], [0, 1, 0]]]
    with pytest.raises(AssociativityViolation):
        from_structure_constants(QQ, ["1", "a", "b"], [1, 0, 0], table)


def test_bad_unit_rejected():
    with pytest.raises(UnitViolation):
        from_structure_constants(QQ, ["1", "x"], [0, 1], [[[1, 0], [0, 1]], [[0, 1], [0, 0]]])


def test_loop_without_relation_is_infinite():
    q = QuiverPresentation(1, [("x", 0, 0)], [], QQ)
    with pytest.raises(InfiniteDimensional):
        path_algebra(q, cap=8)


def test_opposite_tensor_enveloping():
    K = path_algebra(kronecker_quiver())
    Kop = opposite(K)
    assert Kop.dim == 4
    assert opposite(Kop) == K
    E = enveloping(dual_numbers())
    assert E.dim == 4 and E.is_commutative()
    T = tensor(dual_numbers(), dual_numbers())
    assert center(T).dim == 4


def test_json_roundtrip_and_quiver_schema():
    d = dual_numbers(GF(5))
    data = json.loads(json.dumps(algebra_to_json(d)))
    d2 = algebra_from_json(data)
    assert d2 == d and d2.field == GF(5)
    q = {"vertices": 2, "arrows": [{"name": "a", "src": 0, "tgt": 1}, {"name": "b", "src": 0, "tgt": 1}],
         "relations": []}
    assert algebra_from_json(q).dim == 4
    with pytest.raises(AlgebraError):
        algebra_from_json({"basis": ["1"], "unit": [1], "table": [[[1, 0]]]})


def test_quiver_relations():
    # a: 0 -> 1, b: 1 -> 2 with ab = 0
    q = QuiverPresentation(3, [("a", 0, 1), ("b", 1, 2)], [[(1, ["a", "b"])]], QQ)
    assert path_algebra(q).dim == 5
