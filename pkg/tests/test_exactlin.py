from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leibniz import exactlin as xl

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return xl.matrix(draw(st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r)))


@st.composite
def subspace_pairs(draw):
    n = draw(st.integers(1, 8))
    vec = st.lists(st.sampled_from([Fraction(0)] * 3 + [Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 3)]), min_size=n, max_size=n)
    a = draw(st.lists(vec, max_size=n + 1))
    b = draw(st.lists(vec, max_size=n + 1))
    return xl.span(a, n), xl.span(b, n)


def test_rref_examples():
    assert xl.rref(xl.identity(2)) == (xl.identity(2), 2)
    assert xl.rref(xl.matrix([[1, 2], [2, 4]])) == (xl.matrix([[1, 2], [0, 0]]), 1)
    assert xl.rref(xl.matrix([[0, 1], [1, 0]])) == (xl.identity(2), 2)


def test_kernel_examples():
    assert xl.kernel_basis(xl.identity(3)).dim == 0
    assert xl.kernel_basis(xl.zeros(2, 3)) == xl.full_space(3)
    k = xl.kernel_basis(xl.matrix([[1, 1, 0]]))
    assert k.dim == 2
    for v in k.basis:
        assert xl.matvec(xl.matrix([[1, 1, 0]]), v) == (0,)
    assert (1, -1, 0) in k and (0, 0, 1) in k


def test_kernel_of_empty_system_needs_width():
    assert xl.kernel_basis((), 3) == xl.full_space(3)
    with pytest.raises(xl.DimensionError):
        xl.kernel_basis(())


def test_solve_examples():
    r = xl.vector([3, Fraction(1, 2), -1])
    assert xl.solve(xl.identity(3), r) == r
    m = xl.matrix([[1, 1]])
    v = xl.solve(m, [2])
    assert v is not None and xl.matvec(m, v) == (2,)
    assert xl.solve(xl.matrix([[1], [1]]), [1, 2]) is None


def test_subspace_examples():
    x_axis = xl.span([(1, 0)], 2)
    y_axis = xl.span([(0, 1)], 2)
    assert xl.subspace_sum(x_axis, x_axis) == x_axis
    assert xl.subspace_intersection(x_axis, y_axis).dim == 0
    assert not xl.contains(x_axis, (0, 1))
    assert xl.contains(x_axis, (5, 0))


def test_dimension_mismatch_is_reported():
    with pytest.raises(xl.DimensionError):
        xl.subspace_sum(xl.full_space(2), xl.full_space(3))
    with pytest.raises(xl.DimensionError):
        xl.contains(xl.full_space(2), (1, 2, 3))


def test_inverse_and_singular():
    m = xl.matrix([[2, 1], [1, 1]])
    assert xl.matmul(m, xl.inverse(m)) == xl.identity(2)
    with pytest.raises(ZeroDivisionError):
        xl.inverse(xl.matrix([[1, 2], [2, 4]]))


def test_floats_rejected():
    with pytest.raises(TypeError):
        xl.vector([0.5])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_idempotent(m):
    r, k = xl.rref(m)
    assert xl.rref(r) == (r, k)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_vectors_annihilated(m):
    ker = xl.kernel_basis(m)
    assert ker.dim == len(m[0]) - xl.rank(m)
    for v in ker.basis:
        assert xl.is_zero(xl.matvec(m, v))


@settings(max_examples=250, deadline=None)
@given(subspace_pairs())
def test_grassmann_identity(pair):
    a, b = pair
    assert a.dim + b.dim == xl.subspace_sum(a, b).dim + xl.subspace_intersection(a, b).dim
    inter = xl.subspace_intersection(a, b)
    assert inter <= a and inter <= b


@settings(max_examples=150, deadline=None)
@given(subspace_pairs(), st.lists(rationals, min_size=3, max_size=3))
def test_canonical_form_independent_of_spanning_set(pair, coeffs):
    a, _ = pair
    # a different spanning set: add combinations of the basis and shuffle
    extra = []
    for c, v in zip(coeffs, a.basis):
        extra.append(xl.vscale(c, v))
    if len(a.basis) >= 2:
        extra.append(xl.vadd(a.basis[0], a.basis[1]))
    other = xl.span(list(reversed(a.basis)) + extra, a.ambient_dim)
    assert other == a


@settings(max_examples=100, deadline=None)
@given(matrices(), st.data())
def test_solve_substitutes_back(m, data):
    x = data.draw(st.lists(rationals, min_size=len(m[0]), max_size=len(m[0])))
    rhs = xl.matvec(m, x)
    v = xl.solve(m, rhs)
    assert v is not None and xl.matvec(m, v) == rhs
