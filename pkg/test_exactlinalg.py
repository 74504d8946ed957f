import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qmds.constructions.lemmas import lemma9_system
from qmds.exactlinalg import (
    DimensionError,
    Matrix,
    NoSolution,
    Underdetermined,
    determinant,
    kernel_vector_nonzero_coords,
    rank,
    solve,
)
from qmds.gf import ZERO, make_field


def square_matrices(order2: int, size: int):
    entry = st.integers(min_value=-1, max_value=order2 - 2)
    return st.lists(st.lists(entry, min_size=size, max_size=size), min_size=size, max_size=size)


def test_identity_determinant(f25):
    assert determinant(Matrix.identity(f25, 4)) == f25.one


def test_vandermonde_2x2(f25):
    xi = 3
    M = Matrix.from_rows(f25, [[0, 0], [0, xi]])
    assert determinant(M) == f25.sub(xi, f25.one)
    assert determinant(M) != ZERO


def test_repeated_rows_determinant(f25):
    M = Matrix.from_rows(f25, [[1, 2, 3], [4, 5, 6], [1, 2, 3]])
    assert determinant(M) == ZERO


def test_determinant_rejects_non_square(f25):
    with pytest.raises(DimensionError):
        determinant(Matrix.zeros(f25, 2, 3))


def test_identity_system(f25):
    b = [3, ZERO, 17]
    assert solve(Matrix.identity(f25, 3), b) == b


def test_single_normalization_row(f25):
    assert solve(Matrix.from_rows(f25, [[f25.one]]), [f25.one]) == [f25.one]


def test_inconsistent_system(f25):
    M = Matrix.from_rows(f25, [[f25.one], [f25.one]])
    assert isinstance(solve(M, [f25.one, ZERO]), NoSolution)


def test_underdetermined_sets_free_variables_to_one(f25):
    M = Matrix.from_rows(f25, [[f25.one, f25.one, ZERO]])
    outcome = solve(M, [f25.one])
    assert isinstance(outcome, Underdetermined)
    assert outcome.free_columns == (1, 2)
    assert outcome.witness[1:] == (f25.one, f25.one)
    assert M.matvec(list(outcome.witness)) == [f25.one]


def test_solve_dimension_mismatch(f25):
    with pytest.raises(DimensionError):
        solve(Matrix.identity(f25, 2), [f25.one])


def test_rank_examples(f25):
    assert rank(Matrix.zeros(f25, 3, 4)) == 0
    points = [ZERO, 0, 1, 2, 7]
    vandermonde = Matrix.from_rows(f25, [[f25.pow(x, i) for x in points] for i in range(3)])
    assert rank(vandermonde) == 3
    assert lemma9_system(f25, 3, 2).rows == 0
    assert rank(lemma9_system(f25, 3, 2)) == 0


def test_kernel_h2_empty_constraints(f25):
    u = kernel_vector_nonzero_coords(Matrix.zeros(f25, 0, 2))
    assert u is not None
    assert all(x != ZERO for x in u)
    assert u == [f25.neg(f25.one), f25.one]


def test_kernel_lemma9_q13():
    ctx = make_field(13, 1)
    A = lemma9_system(ctx, 7, 4)
    u = kernel_vector_nonzero_coords(A)
    assert u is not None
    assert all(x != ZERO and ctx.in_base_field(x) for x in u)
    assert all(x == ZERO for x in A.matvec(u))


def test_kernel_full_column_rank_is_none(f25):
    assert kernel_vector_nonzero_coords(Matrix.identity(f25, 3)) is None


def test_matrix_rejects_bad_entries(f25):
    with pytest.raises(DimensionError):
        Matrix(f25, 1, 2, (0,))
    with pytest.raises(DimensionError):
        Matrix(f25, 1, 1, (24,))


@pytest.mark.parametrize("p,size", [(5, 3), (5, 4), (7, 5)])
def test_cramer_consistency(p, size):
    ctx = make_field(p, 1)

    @settings(max_examples=40, deadline=None)
    @given(square_matrices(ctx.order2, size), st.lists(st.integers(-1, ctx.mult_order - 1), min_size=size, max_size=size))
    def check(rows, b):
        M = Matrix.from_rows(ctx, rows)
        det = determinant(M)
        outcome = solve(M, b)
        if det == ZERO:
            assert not isinstance(outcome, list) or M.matvec(outcome) == b
            return
        assert isinstance(outcome, list)
        assert M.matvec(outcome) == b
        for i in range(size):
            assert ctx.mul(outcome[i], det) == determinant(M.replace_column(i, b))

    check()


def test_rank_matches_determinant_on_all_2x2_over_f4(f4):
    values = [ZERO, 0, 1, 2]
    for a, b, c, d in itertools.product(values, repeat=4):
        M = Matrix.from_rows(f4, [[a, b], [c, d]])
        assert (rank(M) == 2) == (determinant(M) != ZERO)
