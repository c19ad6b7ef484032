"""Unit tests for exact p-local linear algebra."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedext.plocal import (PLocalMatrix, image_basis, is_p_regular,
                              kernel_basis, rank, reduce_mod_pk, snf,
                              solve_preimage, vp)


def test_vp_basics():
    assert vp(0, 2) is None
    assert vp(1, 2) == 0
    assert vp(12, 2) == 2
    assert vp(Fraction(3, 4), 2) == -2
    assert vp(Fraction(9, 5), 3) == 2


def test_p_regularity():
    assert is_p_regular(Fraction(1, 3), 2)
    assert not is_p_regular(Fraction(1, 2), 2)
    assert is_p_regular(0, 5)


def test_reduce_mod_pk():
    # 1/3 = 3 mod 8 because 3*3 = 9 = 1 mod 8
    assert reduce_mod_pk(Fraction(1, 3), 2, 3) == 3
    assert reduce_mod_pk(5, 2, 2) == 1
    assert reduce_mod_pk(Fraction(7, 5), 3, 2) == (7 * 2) % 9  # 1/5 = 2 mod 9
    with pytest.raises(ValueError):
        reduce_mod_pk(Fraction(1, 2), 2, 3)


def test_snf_small():
    A = PLocalMatrix([[2, 4], [6, 8]])
    res = snf(A, 2)
    assert res.rank == 2
    assert res.exponents == (1, 2)


def _check_snf(A, p):
    res = snf(A, p)
    D = res.diagonal(p)
    assert res.left @ A @ res.right == D
    n, m = A.rows, A.cols
    assert res.left @ res.left_inv == PLocalMatrix.identity(n)
    assert res.right @ res.right_inv == PLocalMatrix.identity(m)
    for entry in (res.left.entries + res.left_inv.entries
                  + res.right.entries + res.right_inv.entries):
        for x in entry:
            assert is_p_regular(x, p)
    assert tuple(sorted(res.exponents)) == res.exponents


small_int = st.integers(min_value=-40, max_value=40)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4),
       st.sampled_from([2, 3, 5]), st.data())
def test_snf_properties(rows, cols, p, data):
    entries = [[data.draw(small_int) for _ in range(cols)]
               for _ in range(rows)]
    _check_snf(PLocalMatrix(entries), p)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4),
       st.sampled_from([2, 3]), st.data())
def test_kernel_and_image(rows, cols, p, data):
    entries = [[data.draw(small_int) for _ in range(cols)]
               for _ in range(rows)]
    A = PLocalMatrix(entries)
    K = kernel_basis(A, p)
    assert K.cols == cols - rank(A, p)
    if K.cols:
        assert (A @ K).is_zero()
    # every image basis column has a preimage
    I = image_basis(A, p)
    for j in range(I.cols):
        x = solve_preimage(A, I.column(j), p)
        assert x is not None
        assert A.apply(x) == I.column(j)


def test_solve_preimage_none():
    A = PLocalMatrix([[2]])
    assert solve_preimage(A, (1,), 2) is None      # 1 not in 2*Z_(2)
    assert solve_preimage(A, (6,), 2) == (3,)
    assert solve_preimage(A, (1,), 3) == (Fraction(1, 2),)


def test_zero_row_matrix_keeps_cols():
    A = PLocalMatrix([], cols=3)
    assert A.rows == 0 and A.cols == 3
    K = kernel_basis(A, 2)
    assert K.cols == 3


def test_matmul_and_apply():
    A = PLocalMatrix([[1, 2], [3, 4]])
    B = PLocalMatrix([[0, 1], [1, 0]])
    assert A @ B == PLocalMatrix([[2, 1], [4, 3]])
    assert A.apply((1, 1)) == (3, 7)
    assert A.transpose() == PLocalMatrix([[1, 3], [2, 4]])
