"""Exact linear algebra over the rationals.

Matrices are tuples of row tuples of :class:`fractions.Fraction`; vectors are
tuples of Fractions.  Everything here is pure: inputs are never mutated and
outputs are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    """Operands live in spaces of different dimension."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals: %r" % (x,))
    return Fraction(x)


def vector(entries: Iterable) -> Vector:
    return tuple(as_rational(x) for x in entries)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(vector(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionError("ragged matrix")
    return m


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((ZERO,) * cols for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def columns(m: Matrix) -> list[Vector]:
    return list(transpose(m))


def from_columns(cols: Sequence[Sequence], n_rows: Optional[int] = None) -> Matrix:
    if not cols:
        return tuple(() for _ in range(n_rows or 0))
    return transpose(tuple(vector(c) for c in cols))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise DimensionError("cannot multiply %dx%d by %dx%d" % (ra, ca, rb, cb))
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a)


def matvec(m: Matrix, v: Sequence) -> Vector:
    if m and len(m[0]) != len(v):
        raise DimensionError("matrix has %d columns, vector has length %d" % (len(m[0]), len(v)))
    return tuple(sum((x * y for x, y in zip(row, v)), ZERO) for row in m)


def add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise DimensionError("shape mismatch")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise DimensionError("shape mismatch")
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(c, m: Matrix) -> Matrix:
    c = as_rational(c)
    return tuple(tuple(c * x for x in row) for row in m)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return sub(matmul(a, b), matmul(b, a))


def vadd(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionError("vector lengths differ")
    return tuple(x + y for x, y in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionError("vector lengths differ")
    return tuple(x - y for x, y in zip(u, v))


def vscale(c, v: Sequence) -> Vector:
    c = as_rational(c)
    return tuple(c * x for x in v)


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def _rref_rows(rows: list[list[Fraction]], n_cols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place Gauss-Jordan elimination on a private copy; returns rows and pivots."""
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        if inv != 1:
            rows[r] = [x * inv for x in rows[r]]
        pivot_row = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [x - f * y for x, y in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form of ``m`` and its rank.

    The returned matrix has the same shape as ``m``; zero rows are kept at the
    bottom.
    """
    n_rows, n_cols = shape(m)
    rows, pivots = _rref_rows([list(vector(r)) for r in m], n_cols)
    return tuple(tuple(r) for r in rows), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[1]


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^ambient_dim stored by its canonical RREF basis.

    Two instances compare equal exactly when they are the same subspace.
    Build them with :func:`span` rather than calling the constructor directly.
    """

    ambient_dim: int
    basis: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def __iter__(self):
        return iter(self.basis)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __le__(self, other: "Subspace") -> bool:
        return is_subspace_of(self, other)

    def __repr__(self) -> str:
        rows = ", ".join("(" + ", ".join(str(x) for x in r) + ")" for r in self.basis)
        return "Subspace(%d, [%s])" % (self.ambient_dim, rows)


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    rows = [list(vector(v)) for v in vectors]
    for r in rows:
        if len(r) != ambient_dim:
            raise DimensionError("vector of length %d in %d-space" % (len(r), ambient_dim))
    rows, pivots = _rref_rows(rows, ambient_dim)
    return Subspace(ambient_dim, tuple(tuple(r) for r in rows[: len(pivots)]))


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, ())


def full_space(n: int) -> Subspace:
    return Subspace(n, identity(n))


def pivot_columns(s: Subspace) -> list[int]:
    return [next(j for j, x in enumerate(row) if x != 0) for row in s.basis]


def kernel_basis(m: Matrix, n_cols: Optional[int] = None) -> Subspace:
    """Canonical basis of ``{v : m v = 0}``.

    ``n_cols`` is needed only when ``m`` has no rows.
    """
    if n_cols is None:
        if not m:
            raise DimensionError("n_cols required for a matrix with no rows")
        n_cols = len(m[0])
    rows, pivots = _rref_rows([list(vector(r)) for r in m], n_cols)
    pivot_set = set(pivots)
    vecs = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        v = [ZERO] * n_cols
        v[free] = ONE
        for r, p in enumerate(pivots):
            v[p] = -rows[r][free]
        vecs.append(v)
    return span(vecs, n_cols)


def solve(m: Matrix, rhs: Sequence, n_cols: Optional[int] = None) -> Optional[Vector]:
    """One exact solution of ``m v = rhs`` (free variables set to 0), or None."""
    if len(rhs) != len(m):
        raise DimensionError("rhs has length %d, matrix has %d rows" % (len(rhs), len(m)))
    if n_cols is None:
        if not m:
            raise DimensionError("n_cols required for a matrix with no rows")
        n_cols = len(m[0])
    aug = [list(vector(row)) + [as_rational(b)] for row, b in zip(m, rhs)]
    rows, pivots = _rref_rows(aug, n_cols + 1)
    if pivots and pivots[-1] == n_cols:
        return None
    v = [ZERO] * n_cols
    for r, p in enumerate(pivots):
        v[p] = rows[r][n_cols]
    return tuple(v)


def inverse(m: Matrix) -> Matrix:
    n, c = shape(m)
    if n != c:
        raise DimensionError("inverse of a non-square matrix")
    aug = [list(vector(row)) + list(e) for row, e in zip(m, identity(n))]
    rows, pivots = _rref_rows(aug, n)
    if len(pivots) != n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(r[n:]) for r in rows)


def is_invertible(m: Matrix) -> bool:
    n, c = shape(m)
    return n == c and rank(m) == n


def _check_same(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError("subspaces of %d-space and %d-space" % (a.ambient_dim, b.ambient_dim))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    return span(a.basis + b.basis, a.ambient_dim)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return zero_subspace(n)
    # x = sum s_i a_i = sum t_j b_j  <=>  [A^T | -B^T] (s, t) = 0
    cols = list(a.basis) + [vscale(-1, w) for w in b.basis]
    sys_m = from_columns(cols)
    ker = kernel_basis(sys_m, len(cols))
    vecs = []
    for coeffs in ker.basis:
        x = [ZERO] * n
        for c, row in zip(coeffs[: a.dim], a.basis):
            if c:
                x = [xi + c * ri for xi, ri in zip(x, row)]
        vecs.append(x)
    return span(vecs, n)


def contains(a: Subspace, v: Sequence) -> bool:
    if len(v) != a.ambient_dim:
        raise DimensionError("vector of length %d tested against %d-space" % (len(v), a.ambient_dim))
    v = list(vector(v))
    for row, p in zip(a.basis, pivot_columns(a)):
        f = v[p]
        if f:
            v = [x - f * y for x, y in zip(v, row)]
    return all(x == 0 for x in v)


def is_subspace_of(a: Subspace, b: Subspace) -> bool:
    _check_same(a, b)
    return all(contains(b, v) for v in a.basis)


def complement_basis(s: Subspace) -> list[Vector]:
    """Standard unit vectors on the non-pivot columns; together with ``s`` they span the space."""
    pivots = set(pivot_columns(s))
    return [unit_vector(s.ambient_dim, j) for j in range(s.ambient_dim) if j not in pivots]


def coordinates(vectors: Sequence[Sequence], v: Sequence) -> Optional[Vector]:
    """Coefficients expressing ``v`` in the (independent) list ``vectors``; None if outside their span."""
    if not vectors:
        return () if is_zero(v) else None
    return solve(from_columns(vectors), v, len(vectors))
