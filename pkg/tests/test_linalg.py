from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgkunneth.field import Field
from dgkunneth.linalg import (
    Matrix,
    hstack,
    kernel_basis,
    left_inverse,
    quotient,
    rank,
    rref,
    solve,
    vstack,
)

Q = Field.rationals()
F5 = Field.prime(5)
F101 = Field.prime(101)


def mat(field, rows):
    return Matrix.from_int_rows(field, rows, cols=len(rows[0]) if rows else 0)


def test_rref_identity():
    m = Matrix.identity(Q, 2)
    red, pivots, r = rref(m)
    assert red == m
    assert pivots == [0, 1]
    assert r == 2


def test_rref_zero():
    m = Matrix.zeros(F101, 3, 3)
    red, pivots, r = rref(m)
    assert red == m
    assert pivots == []
    assert r == 0


def test_rref_rank_one():
    # hand Gaussian elimination: [[1,2],[2,4]] -> [[1,2],[0,0]]
    m = mat(Q, [[1, 2], [2, 4]])
    red, pivots, r = rref(m)
    assert red == mat(Q, [[1, 2], [0, 0]])
    assert pivots == [0]
    assert r == 1


def test_rref_fraction_entries():
    m = Matrix(Q, 2, 2, [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 6)]])
    red, pivots, r = rref(m)
    assert r == 1
    assert red.data[0] == [Fraction(1), Fraction(2, 3)]


def test_kernel_identity_empty():
    k = kernel_basis(Matrix.identity(F5, 3))
    assert k.rows == 0
    assert k.cols == 3


def test_kernel_zero_map():
    k = kernel_basis(Matrix.zeros(Q, 2, 3))
    assert k.rows == 3


def test_kernel_f5_line():
    # x + y = 0 mod 5: kernel is the line through (1, 4)
    k = kernel_basis(mat(F5, [[1, 1]]))
    assert k.rows == 1
    x, y = k.data[0]
    assert (x + y) % 5 == 0
    assert (x, y) != (0, 0)
    # spans (1, 4): some scalar multiple matches
    assert any((c * 1 % 5, c * 4 % 5) == (x, y) for c in range(1, 5))


def test_solve_and_left_inverse():
    m = mat(Q, [[1, 2], [3, 4], [5, 6]])
    rhs = mat(Q, [[1], [1], [1]])
    x = solve(m, rhs)
    assert x is not None
    assert m @ x == rhs
    li = left_inverse(m)
    assert li @ m == Matrix.identity(Q, 2)
    bad = solve(mat(Q, [[1, 0], [0, 0]]), mat(Q, [[0], [1]]))
    assert bad is None


def test_quotient_no_relations():
    qs = quotient(Q, 3, Matrix.zeros(Q, 0, 3))
    assert qs.quotient_dim == 3
    assert qs.projection == Matrix.identity(Q, 3)


def test_quotient_everything():
    qs = quotient(F5, 2, Matrix.identity(F5, 2))
    assert qs.quotient_dim == 0


def test_quotient_diagonal_line():
    # ambient 2, relation (1, -1): images of e1 and e2 agree
    qs = quotient(Q, 2, mat(Q, [[1, -1]]))
    assert qs.quotient_dim == 1
    assert qs.project([Q.one, Q.zero]) == qs.project([Q.zero, Q.one])
    assert (qs.projection @ qs.section) == Matrix.identity(Q, 1)


def test_matmul_kron_consistency():
    a = mat(F101, [[1, 2], [3, 4]])
    b = mat(F101, [[0, 1], [1, 0]])
    assert (a @ b).data == [[2, 1], [4, 3]]
    k = a.kron(b)
    assert k.rows == 4 and k.cols == 4
    # (a kron b)(x kron y) = ax kron by
    x, y = [1, 5], [2, 7]
    xy = [x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]]
    ax = a.apply([v % 101 for v in x])
    by = b.apply([v % 101 for v in y])
    axby = [ax[0] * by[0] % 101, ax[0] * by[1] % 101, ax[1] * by[0] % 101, ax[1] * by[1] % 101]
    assert k.apply([v % 101 for v in xy]) == axby


def test_stack_helpers():
    a = mat(Q, [[1], [2]])
    b = mat(Q, [[3], [4]])
    assert hstack([a, b]).data == [[1, 3], [2, 4]]
    assert vstack([a, b]).data == [[1], [2], [3], [4]]


@st.composite
def small_matrix(draw, field):
    rows = draw(st.integers(0, 5))
    cols = draw(st.integers(0, 5))
    if field.is_prime_field:
        elems = st.integers(0, field.p - 1)
    else:
        elems = st.integers(-4, 4).map(field.of_int)
    data = draw(st.lists(st.lists(elems, min_size=cols, max_size=cols),
                         min_size=rows, max_size=rows))
    return Matrix(field, rows, cols, data)


@settings(max_examples=60, deadline=None)
@given(small_matrix(F101))
def test_rref_idempotent_fp(m):
    red, pivots, r = rref(m)
    red2, pivots2, r2 = rref(red)
    assert red2 == red and pivots2 == pivots and r2 == r


@settings(max_examples=60, deadline=None)
@given(small_matrix(Q))
def test_rank_nullity_q(m):
    r = rank(m)
    k = kernel_basis(m)
    assert k.rows + r == m.cols
    for row in k.data:
        assert all(v == Q.zero for v in m.apply(row))
    if k.rows:
        assert rank(k) == k.rows


@settings(max_examples=60, deadline=None)
@given(small_matrix(F101))
def test_quotient_invariants_fp(m):
    qs = quotient(F101, m.cols, m)
    assert qs.quotient_dim == m.cols - rank(m)
    assert qs.projection @ qs.section == Matrix.identity(F101, qs.quotient_dim)
    for row in m.data:
        assert all(v == 0 for v in qs.project(row))


@settings(max_examples=40, deadline=None)
@given(small_matrix(Q))
def test_rref_matches_generic_row_space_q(m):
    red, pivots, r = rref(m)
    # the reduced rows and the original rows span the same space
    both = vstack([m, red]) if m.rows else red
    assert rank(both) == r


def test_solve_multiple_rhs():
    m = mat(F101, [[2, 0], [0, 3]])
    rhs = mat(F101, [[4, 2], [9, 6]])
    x = solve(m, rhs)
    assert m @ x == rhs


def test_field_parse_roundtrip():
    assert Q.parse("3/4") == Fraction(3, 4)
    assert Q.to_str(Fraction(-3, 4)) == "-3/4"
    assert Q.to_str(Fraction(5)) == "5/1"
    assert F101.parse("42") == 42
    with pytest.raises(ValueError):
        F101.parse("101")
    with pytest.raises(ValueError):
        Field.prime(10)
