from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from repdim.exactlin import (
    QMatrix,
    QuotientSpace,
    Subspace,
    block_diag,
    hstack,
    kernel_basis,
    rank,
    rref_rank,
    solve_linear,
    solve_matrix,
    to_fmpq,
    to_fraction,
    vstack,
)


def small_matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.integers(-4, 4), min_size=r * c, max_size=r * c).map(lambda e: QMatrix(r, c, e))
        )
    )


def test_rref_identity():
    r, k = rref_rank(QMatrix.identity(2))
    assert r == QMatrix.identity(2)
    assert k == 2


def test_rref_zero():
    r, k = rref_rank(QMatrix.zeros(3, 4))
    assert r.is_zero()
    assert k == 0


def test_rank_proportional_rows():
    assert rank(QMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_kernel_identity_is_zero():
    assert kernel_basis(QMatrix.identity(4)).dim == 0


def test_kernel_of_zero_matrix():
    assert kernel_basis(QMatrix.zeros(2, 3)).dim == 3


def test_kernel_forced_up_to_scale():
    k = kernel_basis(QMatrix.from_rows([[1, 1]]))
    assert k.dim == 1
    (v,) = k.vectors()
    assert v[0] == -v[1] != 0


def test_solve_identity():
    assert solve_linear(QMatrix.identity(3), [1, 2, 3]) == [1, 2, 3]


def test_solve_inconsistent():
    assert solve_linear(QMatrix.zeros(2, 2), [1, 0]) is None


def test_solve_exact_division():
    (x,) = solve_linear(QMatrix.from_rows([[2]]), [1])
    assert to_fraction(x) == Fraction(1, 2)


def test_conversions():
    assert to_fraction(to_fmpq("3/4")) == Fraction(3, 4)
    assert to_fraction(to_fmpq(Fraction(-5, 6))) == Fraction(-5, 6)
    assert to_fraction(to_fmpq(7)) == 7


def test_stacking_shapes():
    a = QMatrix.identity(2)
    b = QMatrix.zeros(2, 3)
    assert hstack([a, b]).shape == (2, 5)
    assert vstack([a, QMatrix.zeros(1, 2)]).shape == (3, 2)
    assert block_diag([a, b]).shape == (4, 5)


def test_quotient_space_representatives():
    sub = Subspace.spanned_by(QMatrix.from_rows([[1, 1, 0]]))
    quo = QuotientSpace(sub)
    assert quo.dim == 2
    for i in range(2):
        e = [0, 0]
        e[i] = 1
        assert quo.coords(quo.representative(e)) == e
    assert quo.coords([1, 1, 0]) == [0, 0]


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy.Matrix(m.tolist()).rank()


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_transpose(m):
    assert rank(m) == rank(m.T)


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert k.dim + rank(m) == m.cols
    for v in k.vectors():
        assert all(e == 0 for e in m.apply(v))


@settings(max_examples=60, deadline=None)
@given(small_matrices(), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solve_linear_is_exact(m, seed_vec):
    # consistent right-hand side built from a known solution
    x0 = seed_vec[: m.cols]
    b = m.apply(x0)
    x = solve_linear(m, b)
    assert x is not None
    assert m.apply(x) == b


@settings(max_examples=40, deadline=None)
@given(small_matrices(4, 4))
def test_inverse_when_invertible(m):
    if m.rows == m.cols and rank(m) == m.rows:
        assert m @ m.inverse() == QMatrix.identity(m.rows)


@settings(max_examples=40, deadline=None)
@given(small_matrices(4, 4), small_matrices(4, 4))
def test_solve_matrix(a, x):
    if a.cols != x.rows:
        return
    b = a @ x
    y = solve_matrix(a, b)
    assert y is not None
    assert a @ y == b
