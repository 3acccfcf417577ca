"""Rank/kernel arithmetic and the snake-lemma checker."""

import pytest
from hypothesis import given, settings, strategies as st

from twistforms.exactalg import ExactMatrix, snake_check
from twistforms.forms import contraction_matrix


def gf(rows, q=101):
    return ExactMatrix.from_rows(rows, q=q)


def qq(rows):
    return ExactMatrix.from_rows(rows, q=None)


def test_rank_identity_and_zero():
    assert ExactMatrix.identity(2, q=101).rank() == 2
    assert ExactMatrix.zeros(3, 5, q=101).rank() == 0
    assert ExactMatrix.zeros(3, 5, q=None).rank() == 0


def test_rank_euler_contraction_112():
    m = contraction_matrix(1, 1, 2, q=None)
    assert m.shape == (3, 4)
    assert m.rank() == 3


def test_kernel_of_identity_is_empty():
    k = ExactMatrix.identity(4, q=101).kernel_basis()
    assert k.shape == (4, 0)


def test_kernel_of_zero_map_is_everything():
    k = ExactMatrix.zeros(2, 3, q=None).kernel_basis()
    assert k.shape == (3, 3)
    assert k.rank() == 3


def test_kernel_of_contraction_112_is_the_invariant_form():
    # Basis order: x0 dx0, x1 dx0, x0 dx1, x1 dx1; kernel is x1 dx0 - x0 dx1
    # up to scale.
    m = contraction_matrix(1, 1, 2, q=None)
    k = m.kernel_basis()
    assert k.shape == (4, 1)
    col = [k.entry(i, 0) for i in range(4)]
    assert col[0] == col[3] == 0
    assert col[1] == -col[2] != 0
    assert (m @ k).is_zero()


def test_rational_kernel_columns_are_canonical_integers():
    m = qq([[2, 4, 6], [1, 2, 3]])
    k = m.kernel_basis()
    assert k.shape == (3, 2)
    assert (m @ k).is_zero()
    for j in range(2):
        col = [k.entry(i, j) for i in range(3)]
        assert all(isinstance(c, int) for c in col)
        lead = next(c for c in col if c != 0)
        assert lead > 0


def test_solve_consistent_and_inconsistent():
    a = qq([[1, 0], [0, 1], [1, 1]])
    rhs = qq([[1], [2], [3]])
    x = a.solve(rhs)
    assert x is not None and a @ x == rhs
    bad = qq([[1], [2], [4]])
    assert a.solve(bad) is None


def test_nonprime_modulus_rejected():
    with pytest.raises(ValueError):
        ExactMatrix.from_rows([[1]], q=100)


small_int = st.integers(min_value=-9, max_value=9)


@st.composite
def matrices(draw, q):
    rows = draw(st.integers(min_value=1, max_value=5))
    cols = draw(st.integers(min_value=1, max_value=5))
    data = draw(
        st.lists(
            st.lists(small_int, min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    return ExactMatrix.from_rows(data, q=q)


@settings(max_examples=60, deadline=None)
@given(matrices(q=101))
def test_rank_equals_transpose_rank_gf(m):
    assert m.rank() == m.transpose().rank()


@settings(max_examples=60, deadline=None)
@given(matrices(q=None))
def test_rank_equals_transpose_rank_rational(m):
    assert m.rank() == m.transpose().rank()


@settings(max_examples=60, deadline=None)
@given(matrices(q=None))
def test_kernel_annihilated_and_independent(m):
    k = m.kernel_basis()
    assert k.cols == m.cols - m.rank()
    assert (m @ k).is_zero()
    assert k.rank() == k.cols


@settings(max_examples=40, deadline=None)
@given(matrices(q=None))
def test_rational_rank_bounds_modular_rank(m):
    r = m.rank()
    for q in (101, 1009, 65537):
        mq = ExactMatrix.from_rows(m.row_list(), q=q)
        assert mq.rank() <= r


def test_bareiss_updates_rows_with_zero_pivot_entry():
    # Row 2 has a zero in the first pivot column; skipping its update
    # desynchronizes the exact division and once underreported this rank.
    m = qq([[3, 3, -2], [0, -2, -1], [-2, 0, 2]])
    assert m.rank() == 3
    assert m.kernel_basis().shape == (3, 0)


def test_elimination_deterministic():
    data = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
    a = gf(data)
    b = gf(data)
    assert a.kernel_basis() == b.kernel_basis()
    assert a.rank() == b.rank()


# -- snake lemma ------------------------------------------------------------


def rows_k_k2_k(q=None):
    i = ExactMatrix.from_rows([[1], [0]], q=q)
    p = ExactMatrix.from_rows([[0, 1]], q=q)
    return i, p


def test_snake_isomorphism_case():
    i, p = rows_k_k2_k()
    one = ExactMatrix.identity(1)
    two = ExactMatrix.identity(2)
    ledger = snake_check(i, p, i, p, one, two, one)
    assert ledger.exact
    assert (
        ledger.ker1,
        ledger.ker2,
        ledger.ker3,
        ledger.coker1,
        ledger.coker2,
        ledger.coker3,
    ) == (0, 0, 0, 0, 0, 0)


def test_snake_worked_example():
    i, p = rows_k_k2_k()
    f1 = ExactMatrix.zeros(1, 1)
    f2 = ExactMatrix.from_rows([[0, 0], [0, 1]])
    f3 = ExactMatrix.identity(1)
    ledger = snake_check(i, p, i, p, f1, f2, f3)
    assert ledger.exact
    assert (
        ledger.ker1,
        ledger.ker2,
        ledger.ker3,
        ledger.coker1,
        ledger.coker2,
        ledger.coker3,
    ) == (1, 1, 0, 1, 1, 0)
    assert ledger.alternating_sum() == 0


def test_snake_rejects_noncommuting_square():
    i, p = rows_k_k2_k()
    f1 = ExactMatrix.zeros(1, 1)
    f2 = ExactMatrix.identity(2)
    f3 = ExactMatrix.identity(1)
    with pytest.raises(ValueError, match="left square"):
        snake_check(i, p, i, p, f1, f2, f3)


def test_snake_rejects_non_exact_row():
    i = ExactMatrix.from_rows([[1], [0]])
    not_surjective = ExactMatrix.zeros(1, 2)
    one = ExactMatrix.identity(1)
    two = ExactMatrix.identity(2)
    with pytest.raises(ValueError, match="quotient not surjective"):
        snake_check(i, not_surjective, i, not_surjective, one, two, one)
