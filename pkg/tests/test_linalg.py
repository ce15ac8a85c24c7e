from sympy import QQ

from cokahler_toolkit.algebra import linalg


def test_rank_of_dense_and_sparse_rows():
    """Dense lists and sparse dicts describe the same matrix"""
    dense = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    sparse = [{0: 1, 1: 2, 2: 3}, {0: 2, 1: 4, 2: 6}, {1: 1, 2: 1}]
    assert linalg.rank(dense, 3) == 2
    assert linalg.rank(sparse, 3) == 2
    assert linalg.rank([], 3) == 0


def test_nullspace_is_annihilated():
    rows = [[1, 1, 0, 0], [0, 0, 1, 1]]
    kernel = linalg.nullspace(rows, 4)
    assert len(kernel) == 2
    for vec in kernel:
        assert linalg.mat_vec(rows, vec) == [0, 0]


def test_nullspace_of_zero_matrix_is_everything():
    assert linalg.nullspace([[0, 0]], 2) == linalg.identity(2)


def test_solve_exact_rationals():
    """x * (2, 0) + y * (0, 3) = (1, 1) has the unique solution (1/2, 1/3)"""
    solution = linalg.solve([[2, 0], [0, 3]], [1, 1])
    assert solution == [QQ(1, 2), QQ(1, 3)]


def test_solve_inconsistent_returns_none():
    assert linalg.solve([[1, 1]], [1, 0]) is None


def test_rref_pivots():
    echelon, pivots = linalg.rref([[0, 2, 4], [0, 1, 2], [1, 0, 0]], 3)
    assert pivots == (0, 1)
    assert echelon == [[1, 0, 0], [0, 1, 2]]


def test_independent_extension_skips_dependent_candidates():
    base = [[1, 0, 0]]
    candidates = [[2, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]]
    assert linalg.independent_extension(candidates, base, 3) == [1, 3]


def test_to_scalar_accepts_pairs():
    assert linalg.to_scalar((3, 6)) == QQ(1, 2)
    assert linalg.to_scalar(-4) == QQ(-4)
