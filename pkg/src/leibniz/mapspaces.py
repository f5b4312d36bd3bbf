"""Derivations, anti-derivations and biderivations as exact solution spaces.

A linear map ``d`` is an ``n x n`` matrix acting on column coordinates
(``d[k][i]`` is the ``e_k`` coefficient of ``d(e_i)``).  Solution spaces are
subspaces of ``Q^(n*n)`` (``Q^(2*n*n)`` for pairs) with row-major flattening;
:func:`unflatten` and :func:`unflatten_pair` recover matrices.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

from . import exactlin as xl
from .algebra import LeibnizAlgebra, bracket, left_center, left_mult, right_mult
from .exactlin import ZERO, Matrix, Subspace


class BiderivationPair(NamedTuple):
    d: Matrix
    D: Matrix


def flatten(m: Matrix) -> tuple:
    return tuple(x for row in m for x in row)


def unflatten(v: Sequence, n: int) -> Matrix:
    return tuple(tuple(v[r * n : (r + 1) * n]) for r in range(n))


def unflatten_pair(v: Sequence, n: int) -> BiderivationPair:
    return BiderivationPair(unflatten(v[: n * n], n), unflatten(v[n * n :], n))


def _var(n, k, i, offset=0):
    # flat index of d[k][i]
    return offset + k * n + i


def _derivation_rows(L: LeibnizAlgebra, n_unknowns: int, offset: int = 0) -> list:
    """Rows of d([e_i,e_j]) - [d e_i, e_j] - [e_i, d e_j] = 0, one per (i, j, k)."""
    n, c = L.dim, L.table
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [ZERO] * n_unknowns
                for m in range(n):
                    if c[i][j][m]:
                        row[_var(n, k, m, offset)] += c[i][j][m]
                    if c[m][j][k]:
                        row[_var(n, m, i, offset)] -= c[m][j][k]
                    if c[i][m][k]:
                        row[_var(n, m, j, offset)] -= c[i][m][k]
                if any(row):
                    rows.append(tuple(row))
    return rows


def _antiderivation_rows(L: LeibnizAlgebra, n_unknowns: int, offset: int = 0) -> list:
    """Rows of D([e_i,e_j]) - [e_i, D e_j] + [e_j, D e_i] = 0."""
    n, c = L.dim, L.table
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [ZERO] * n_unknowns
                for m in range(n):
                    if c[i][j][m]:
                        row[_var(n, k, m, offset)] += c[i][j][m]
                    if c[i][m][k]:
                        row[_var(n, m, j, offset)] -= c[i][m][k]
                    if c[j][m][k]:
                        row[_var(n, m, i, offset)] += c[j][m][k]
                if any(row):
                    rows.append(tuple(row))
    return rows


def _coupling_rows(L: LeibnizAlgebra) -> list:
    """(d + D)(e_i) lies in the left center, written against a basis of its annihilator."""
    n = L.dim
    N = 2 * n * n
    Zl = left_center(L)
    # v in Z_l  <=>  A v = 0 for A spanning the orthogonal complement of Z_l
    annihilator = xl.kernel_basis(Zl.basis, n) if Zl.dim else xl.full_space(n)
    rows = []
    for i in range(n):
        for a in annihilator.basis:
            row = [ZERO] * N
            for m in range(n):
                if a[m]:
                    row[_var(n, m, i)] += a[m]
                    row[_var(n, m, i, n * n)] += a[m]
            rows.append(tuple(row))
    return rows


def derivation_space(L: LeibnizAlgebra) -> Subspace:
    N = L.dim**2
    return xl.kernel_basis(_derivation_rows(L, N), N)


def antiderivation_space(L: LeibnizAlgebra) -> Subspace:
    N = L.dim**2
    return xl.kernel_basis(_antiderivation_rows(L, N), N)


def biderivation_space(L: LeibnizAlgebra) -> Subspace:
    """Pairs ``(d, D)`` flattened as ``d`` then ``D``."""
    n = L.dim
    N = 2 * n * n
    rows = _derivation_rows(L, N) + _antiderivation_rows(L, N, n * n) + _coupling_rows(L)
    return xl.kernel_basis(rows, N)


def derivation_basis(L: LeibnizAlgebra) -> list[Matrix]:
    return [unflatten(v, L.dim) for v in derivation_space(L).basis]


def antiderivation_basis(L: LeibnizAlgebra) -> list[Matrix]:
    return [unflatten(v, L.dim) for v in antiderivation_space(L).basis]


def biderivation_basis(L: LeibnizAlgebra) -> list[BiderivationPair]:
    return [unflatten_pair(v, L.dim) for v in biderivation_space(L).basis]


# -- direct membership checks (used as independent oracles) ---------------


def is_derivation(L: LeibnizAlgebra, d: Matrix) -> bool:
    n = L.dim
    E = [L.basis_vector(i) for i in range(n)]
    for x in E:
        for y in E:
            lhs = xl.matvec(d, bracket(L, x, y))
            rhs = xl.vadd(bracket(L, xl.matvec(d, x), y), bracket(L, x, xl.matvec(d, y)))
            if lhs != rhs:
                return False
    return True


def is_antiderivation(L: LeibnizAlgebra, D: Matrix) -> bool:
    n = L.dim
    E = [L.basis_vector(i) for i in range(n)]
    for x in E:
        for y in E:
            lhs = xl.matvec(D, bracket(L, x, y))
            rhs = xl.vsub(bracket(L, x, xl.matvec(D, y)), bracket(L, y, xl.matvec(D, x)))
            if lhs != rhs:
                return False
    return True


def is_biderivation(L: LeibnizAlgebra, pair: BiderivationPair) -> bool:
    d, D = pair
    if not (is_derivation(L, d) and is_antiderivation(L, D)):
        return False
    n = L.dim
    E = [L.basis_vector(i) for i in range(n)]
    for x in E:
        s = xl.vadd(xl.matvec(d, x), xl.matvec(D, x))
        if any(not xl.is_zero(bracket(L, s, y)) for y in E):
            return False
    return True


# -- inner maps and brackets ----------------------------------------------


def inner_derivation(L: LeibnizAlgebra, x: Sequence) -> Matrix:
    """``ad_x = [x, -]``."""
    return left_mult(L, xl.vector(x))


def inner_biderivation(L: LeibnizAlgebra, x: Sequence) -> BiderivationPair:
    """``(ad_x, Ad_x)``."""
    x = xl.vector(x)
    return BiderivationPair(left_mult(L, x), right_mult(L, x))


def inner_derivation_space(L: LeibnizAlgebra) -> Subspace:
    n = L.dim
    return xl.span([flatten(inner_derivation(L, L.basis_vector(i))) for i in range(n)], n * n)


def der_bracket(d: Matrix, d2: Matrix) -> Matrix:
    return xl.commutator(d, d2)


def der_action(d: Matrix, D: Matrix) -> Matrix:
    """``d . D = d D - D d``, the Der-module structure on anti-derivations."""
    return xl.commutator(d, D)


def bider_bracket(p: BiderivationPair, q: BiderivationPair) -> BiderivationPair:
    """``[(d, D), (d', D')] = ([d, d'], d . D')``."""
    return BiderivationPair(der_bracket(p.d, q.d), der_action(p.d, q.D))


def flatten_pair(p: BiderivationPair) -> tuple:
    return flatten(p.d) + flatten(p.D)


# -- automorphisms --------------------------------------------------------


def automorphism_violation(L: LeibnizAlgebra, P: Sequence[Sequence]):
    """None if ``P`` is an automorphism; otherwise ``"singular"`` or the first
    basis pair ``(i, j)`` with ``P[e_i, e_j] != [P e_i, P e_j]``."""
    P = xl.matrix(P)
    n = L.dim
    if xl.shape(P) != (n, n):
        raise xl.DimensionError("automorphism candidate must be %dx%d" % (n, n))
    if not xl.is_invertible(P):
        return "singular"
    cols = xl.columns(P) if n else []
    for i in range(n):
        for j in range(n):
            if xl.matvec(P, L.table[i][j]) != bracket(L, cols[i], cols[j]):
                return (i, j)
    return None


def is_automorphism(L: LeibnizAlgebra, P: Sequence[Sequence]) -> bool:
    return automorphism_violation(L, P) is None


# -- block shapes for L_n --------------------------------------------------


def ln_derivation_mask(n: int) -> list[list[bool]]:
    """True where a derivation of L_n may be nonzero (0-based row, col)."""
    mask = [[False] * n for _ in range(n)]
    mask[0][0] = True
    for r in range(2, n):
        for c in range(1, n):
            mask[r][c] = True
    return mask


def ln_antiderivation_mask_in_bider(n: int) -> list[list[bool]]:
    """True where the anti-derivation half of a biderivation of L_n may be nonzero."""
    mask = [[False] * n for _ in range(n)]
    mask[0][1] = True
    for r in range(2, n):
        for c in range(1, n):
            mask[r][c] = True
    return mask


def ln_automorphism(beta, b: Sequence, B: Sequence[Sequence]) -> Matrix:
    """Automorphism of L_n: ``e1 -> beta e1``, ``e2 -> e2 + sum b_i f_i``, f-block ``B``."""
    b = xl.vector(b)
    B = xl.matrix(B)
    m = len(b)
    n = m + 2
    rows = [[Fraction(0)] * n for _ in range(n)]
    rows[0][0] = xl.as_rational(beta)
    rows[1][1] = Fraction(1)
    for r in range(m):
        rows[r + 2][1] = b[r]
        for c in range(m):
            rows[r + 2][c + 2] = B[r][c]
    return xl.matrix(rows)

