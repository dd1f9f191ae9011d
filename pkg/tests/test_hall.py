import pytest

from grouporbits import hall
from grouporbits.freealg import TruncatedFreeAlgebra
from grouporbits.linalg import rank


def names(r, c):
    basis = hall.enumerate_basis(r, c)
    return [hall.commutator_name(basis, i) for i in range(len(basis))]


def test_rank2_class3_sequence():
    assert names(2, 3) == ["x1", "x2", "[x2,x1]", "[x2,x1,x1]", "[x2,x1,x2]"]


def test_rank2_class4_central_layer():
    basis = hall.enumerate_basis(2, 4)
    top = [
        hall.commutator_name(basis, i)
        for i, b in enumerate(basis)
        if b.weight == 4
    ]
    assert top == ["[x2,x1,x1,x1]", "[x2,x1,x1,x2]", "[x2,x1,x2,x2]"]


def test_rank3_class3_central_layer():
    basis = hall.enumerate_basis(3, 3)
    top = [
        hall.commutator_name(basis, i)
        for i, b in enumerate(basis)
        if b.weight == 3
    ]
    assert top == [
        "[x2,x1,x1]",
        "[x2,x1,x2]",
        "[x2,x1,x3]",
        "[x3,x1,x1]",
        "[x3,x1,x2]",
        "[x3,x1,x3]",
        "[x3,x2,x2]",
        "[x3,x2,x3]",
    ]


def test_rank1_collapses():
    assert names(1, 5) == ["x1"]


def test_domain_errors():
    with pytest.raises(ValueError):
        hall.enumerate_basis(0, 3)
    with pytest.raises(ValueError):
        hall.enumerate_basis(2, 0)
    with pytest.raises(ValueError):
        hall.witt_dimension(2, 0)


def test_witt_values():
    assert hall.witt_dimension(2, 3) == 2
    assert hall.witt_dimension(3, 3) == 8
    assert hall.witt_dimension(2, 1) == 2
    assert hall.witt_dimension(1, 2) == 0


@pytest.mark.parametrize("r", [1, 2, 3, 4])
@pytest.mark.parametrize("c", [1, 2, 3, 4, 5])
def test_layer_counts_match_witt_oracle(r, c):
    basis = hall.enumerate_basis(r, c)
    for w in range(1, c + 1):
        count = sum(1 for b in basis if b.weight == w)
        assert count == hall.witt_dimension(r, w)


@pytest.mark.parametrize("r,c", [(2, 5), (3, 4), (4, 3)])
def test_structural_conditions(r, c):
    basis = hall.enumerate_basis(r, c)
    assert all(hall.is_basic(basis, k) for k in range(len(basis)))
    # ordering: weights never decrease, and lexicographic inside a layer
    for a, b in zip(basis, basis[1:]):
        assert a.weight <= b.weight
        if a.weight == b.weight and not a.is_generator:
            assert (a.left, a.right) < (b.left, b.right)


def test_expand_generator_and_bracket():
    basis = hall.enumerate_basis(2, 3)
    alg = TruncatedFreeAlgebra(2, 3)
    x1 = hall.expand(basis, 0, alg)
    assert x1[alg.index[(1,)]] == 1 and sum(1 for v in x1 if v) == 1
    u3 = hall.expand(basis, 2, alg)
    assert u3[alg.index[(2, 1)]] == 1
    assert u3[alg.index[(1, 2)]] == -1
    assert sum(1 for v in u3 if v) == 2


def test_expand_left_normed_weight3():
    basis = hall.enumerate_basis(2, 3)
    alg = TruncatedFreeAlgebra(2, 3)
    u4 = hall.expand(basis, 3, alg)  # [x2,x1,x1]
    got = {alg.words[i]: v for i, v in enumerate(u4) if v}
    assert got == {(2, 1, 1): 1, (1, 2, 1): -2, (1, 1, 2): 1}


def test_expand_homogeneous_and_truncation_guard():
    basis = hall.enumerate_basis(2, 4)
    alg = TruncatedFreeAlgebra(2, 4)
    for i, b in enumerate(basis):
        vec = hall.expand(basis, i, alg)
        assert alg.min_degree(vec) == b.weight
        lo, hi = alg.deg_slice[b.weight]
        assert all(v == 0 for j, v in enumerate(vec) if v and not lo <= j < hi)
    small = TruncatedFreeAlgebra(2, 2)
    with pytest.raises(ValueError):
        hall.expand(basis, 3, small)


@pytest.mark.parametrize("r,c", [(2, 4), (3, 3), (4, 2)])
def test_layer_expansions_independent(r, c):
    basis = hall.enumerate_basis(r, c)
    alg = TruncatedFreeAlgebra(r, c)
    for w in range(1, c + 1):
        layer = [i for i, b in enumerate(basis) if b.weight == w]
        lo, hi = alg.deg_slice[w]
        mat = [hall.expand(basis, i, alg)[lo:hi] for i in layer]
        assert rank(mat) == len(layer)


def test_hirsch_length():
    assert hall.hirsch_length(2, 3) == 5
    assert hall.hirsch_length(3, 3) == 14
    assert hall.hirsch_length(2, 4) == 8
