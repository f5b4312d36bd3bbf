"""Leibniz algebras given by structure constants, and their basis-level invariants.

An algebra of dimension ``n`` stores ``table[i][j]``, the coordinate vector of
``[e_i, e_j]``; equivalently ``table[i][j][k]`` is the structure constant
``c_ij^k``.  All identities are checked on basis triples only, which suffices
because every identity involved is multilinear.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, NamedTuple, Optional, Sequence

from . import exactlin as xl
from .exactlin import ZERO, Matrix, Subspace, Vector

LEFT, RIGHT, BILATERAL = "left", "right", "bilateral"


class HypothesisError(ValueError):
    """The algebra is outside the class an operation is defined for."""


class NotAnIdealError(ValueError):
    pass


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple("e%d" % (i + 1) for i in range(n))


@dataclass(frozen=True)
class LeibnizAlgebra:
    table: tuple  # table[i][j] -> Vector
    labels: tuple = field(default=())

    def __post_init__(self):
        n = len(self.table)
        for row in self.table:
            if len(row) != n or any(len(v) != n for v in row):
                raise xl.DimensionError("structure tensor is not n x n x n")
        if not self.labels:
            object.__setattr__(self, "labels", _default_labels(n))
        elif len(self.labels) != n:
            raise xl.DimensionError("%d labels for a %d-dimensional algebra" % (len(self.labels), n))

    @property
    def dim(self) -> int:
        return len(self.table)

    def c(self, i: int, j: int, k: int) -> Fraction:
        return self.table[i][j][k]

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        return bracket(self, x, y)

    def basis_vector(self, i: int) -> Vector:
        return xl.unit_vector(self.dim, i)

    def nonzero_brackets(self):
        """Yield ``(i, j, vector)`` for every nonzero ``[e_i, e_j]`` in row-major order."""
        for i, row in enumerate(self.table):
            for j, v in enumerate(row):
                if not xl.is_zero(v):
                    yield i, j, v

    def with_labels(self, labels: Sequence[str]) -> "LeibnizAlgebra":
        return LeibnizAlgebra(self.table, tuple(labels))

    def __repr__(self) -> str:
        parts = []
        for i, j, v in self.nonzero_brackets():
            rhs = " + ".join("%s*%s" % (c, self.labels[k]) for k, c in enumerate(v) if c)
            parts.append("[%s,%s]=%s" % (self.labels[i], self.labels[j], rhs))
        return "LeibnizAlgebra(dim=%d; %s)" % (self.dim, "; ".join(parts) or "abelian")


def from_brackets(
    dim: int,
    brackets: Mapping[tuple[int, int], Mapping[int, object]],
    labels: Optional[Sequence[str]] = None,
) -> LeibnizAlgebra:
    """Build an algebra from ``{(i, j): {k: coeff}}`` (0-based); omitted pairs are zero."""
    table = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), res in brackets.items():
        for k, coeff in res.items():
            table[i][j][k] = xl.as_rational(coeff)
    return LeibnizAlgebra(
        tuple(tuple(tuple(v) for v in row) for row in table),
        tuple(labels) if labels is not None else (),
    )


def from_constants(c, labels: Optional[Sequence[str]] = None) -> LeibnizAlgebra:
    """Build an algebra from a nested ``c[i][j][k]`` array of rationals."""
    table = tuple(tuple(xl.vector(v) for v in row) for row in c)
    return LeibnizAlgebra(table, tuple(labels) if labels is not None else ())


def bracket(L: LeibnizAlgebra, x: Sequence, y: Sequence) -> Vector:
    n = L.dim
    if len(x) != n or len(y) != n:
        raise xl.DimensionError("bracket of vectors of length %d, %d in a %d-dim algebra" % (len(x), len(y), n))
    out = [ZERO] * n
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = L.table[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            w = xi * yj
            for k, ck in enumerate(row[j]):
                if ck:
                    out[k] += w * ck
    return tuple(out)


def left_mult(L: LeibnizAlgebra, x: Sequence) -> Matrix:
    """Matrix of ``ad_x = [x, -]`` (columns are images of basis vectors)."""
    return xl.from_columns([bracket(L, x, L.basis_vector(j)) for j in range(L.dim)], L.dim)


def right_mult(L: LeibnizAlgebra, x: Sequence) -> Matrix:
    """Matrix of ``Ad_x = [-, x]``."""
    return xl.from_columns([bracket(L, L.basis_vector(j), x) for j in range(L.dim)], L.dim)


# -- identities -----------------------------------------------------------


def _basis_bracket(L, x, j):
    # [x, e_j] for a coordinate vector x
    n = L.dim
    out = [ZERO] * n
    for i, xi in enumerate(x):
        if xi:
            for k, ck in enumerate(L.table[i][j]):
                if ck:
                    out[k] += xi * ck
    return tuple(out)


def _basis_bracket_r(L, i, y):
    # [e_i, y]
    n = L.dim
    out = [ZERO] * n
    row = L.table[i]
    for j, yj in enumerate(y):
        if yj:
            for k, ck in enumerate(row[j]):
                if ck:
                    out[k] += yj * ck
    return tuple(out)


def check_left_leibniz(L: LeibnizAlgebra) -> Optional[tuple[int, int, int]]:
    """First basis triple violating ``[x,[y,z]] = [[x,y],z] + [y,[x,z]]``, or None."""
    T = L.table
    for i, j, k in product(range(L.dim), repeat=3):
        lhs = _basis_bracket_r(L, i, T[j][k])
        rhs = xl.vadd(_basis_bracket(L, T[i][j], k), _basis_bracket_r(L, j, T[i][k]))
        if lhs != rhs:
            return (i, j, k)
    return None


def check_right_leibniz(L: LeibnizAlgebra) -> Optional[tuple[int, int, int]]:
    """First basis triple violating ``[[x,y],z] = [[x,z],y] + [x,[y,z]]``, or None."""
    T = L.table
    for i, j, k in product(range(L.dim), repeat=3):
        lhs = _basis_bracket(L, T[i][j], k)
        rhs = xl.vadd(_basis_bracket(L, T[i][k], j), _basis_bracket_r(L, i, T[j][k]))
        if lhs != rhs:
            return (i, j, k)
    return None


def is_left_leibniz(L: LeibnizAlgebra) -> bool:
    return check_left_leibniz(L) is None


def is_symmetric(L: LeibnizAlgebra) -> bool:
    return check_left_leibniz(L) is None and check_right_leibniz(L) is None


def is_antisymmetric(L: LeibnizAlgebra) -> bool:
    T = L.table
    return all(T[i][j] == xl.vscale(-1, T[j][i]) for i in range(L.dim) for j in range(i, L.dim))


def is_lie(L: LeibnizAlgebra) -> bool:
    # over Q antisymmetry on basis pairs is equivalent to [x,x] = 0 for all x
    return is_antisymmetric(L) and check_left_leibniz(L) is None


# -- subspaces ------------------------------------------------------------


def product_subspace(L: LeibnizAlgebra, U: Subspace, V: Subspace) -> Subspace:
    """``[U, V]``: span of brackets of basis vectors of U and V."""
    return xl.span([bracket(L, u, v) for u in U.basis for v in V.basis], L.dim)


def full(L: LeibnizAlgebra) -> Subspace:
    return xl.full_space(L.dim)


def derived_subalgebra(L: LeibnizAlgebra) -> Subspace:
    return xl.span([v for _, _, v in L.nonzero_brackets()], L.dim)


def leibniz_kernel(L: LeibnizAlgebra) -> Subspace:
    """Smallest bilateral ideal containing every square ``[x, x]``.

    Squares of arbitrary vectors span the same space as ``[e_i,e_i]`` together
    with ``[e_i,e_j] + [e_j,e_i]``; the seed is then closed under bracketing
    with the basis on both sides.
    """
    n = L.dim
    T = L.table
    seed = [T[i][i] for i in range(n)]
    seed += [xl.vadd(T[i][j], T[j][i]) for i in range(n) for j in range(i + 1, n)]
    return ideal_closure(L, xl.span(seed, n))


def ideal_closure(L: LeibnizAlgebra, S: Subspace) -> Subspace:
    n = L.dim
    for _ in range(n + 1):
        grown = xl.span(
            list(S.basis)
            + [bracket(L, L.basis_vector(i), s) for i in range(n) for s in S.basis]
            + [bracket(L, s, L.basis_vector(i)) for i in range(n) for s in S.basis],
            n,
        )
        if grown.dim == S.dim:
            return S
        S = grown
    raise AssertionError("ideal closure did not stabilise")  # pragma: no cover


def left_center(L: LeibnizAlgebra) -> Subspace:
    """``{x : [x, L] = 0}`` as the kernel of ``x -> ([x, e_1], ..., [x, e_n])``."""
    n = L.dim
    rows = []
    for j in range(n):
        # k-th coordinate of [x, e_j] is sum_i x_i c_ij^k
        rows += [tuple(L.table[i][j][k] for i in range(n)) for k in range(n)]
    return xl.kernel_basis(rows, n)


def right_center(L: LeibnizAlgebra) -> Subspace:
    n = L.dim
    rows = []
    for i in range(n):
        rows += [tuple(L.table[i][j][k] for j in range(n)) for k in range(n)]
    return xl.kernel_basis(rows, n)


def center(L: LeibnizAlgebra) -> Subspace:
    return xl.subspace_intersection(left_center(L), right_center(L))


def derived_series(L: LeibnizAlgebra) -> list[Subspace]:
    """``L^0 = L, L^{k+1} = [L^k, L^k]`` up to and including the first repeated term."""
    series = [full(L)]
    while series[-1].dim:
        nxt = product_subspace(L, series[-1], series[-1])
        series.append(nxt)
        if nxt.dim == series[-2].dim:
            return series[:-1] if nxt.dim else series
    return series


def lower_central_series(L: LeibnizAlgebra) -> list[Subspace]:
    """``L^(0) = L, L^(k+1) = [L, L^(k)]`` until it reaches 0 or stops shrinking."""
    whole = full(L)
    series = [whole]
    while series[-1].dim:
        nxt = product_subspace(L, whole, series[-1])
        series.append(nxt)
        if nxt.dim == series[-2].dim:
            return series[:-1] if nxt.dim else series
    return series


def _steps(series: list[Subspace]) -> Optional[int]:
    if series[-1].dim != 0:
        return None
    return len(series) - 1


def is_nilpotent(L: LeibnizAlgebra) -> Optional[int]:
    """Nilpotency step ``s`` (``L^(s-1) != 0``, ``L^(s) = 0``), or None."""
    return _steps(lower_central_series(L))


def is_solvable(L: LeibnizAlgebra) -> Optional[int]:
    return _steps(derived_series(L))


def is_ideal(L: LeibnizAlgebra, S: Subspace, side: str = BILATERAL) -> bool:
    """Left ideal: ``[L, S] ⊆ S``; right ideal: ``[S, L] ⊆ S``; bilateral: both."""
    if S.ambient_dim != L.dim:
        raise xl.DimensionError("subspace of %d-space in a %d-dim algebra" % (S.ambient_dim, L.dim))
    if side not in (LEFT, RIGHT, BILATERAL):
        raise ValueError("side must be left, right or bilateral")
    basis = [L.basis_vector(i) for i in range(L.dim)]
    if side in (LEFT, BILATERAL):
        if not all(xl.contains(S, bracket(L, e, s)) for e in basis for s in S.basis):
            return False
    if side in (RIGHT, BILATERAL):
        if not all(xl.contains(S, bracket(L, s, e)) for e in basis for s in S.basis):
            return False
    return True


def is_subalgebra(L: LeibnizAlgebra, S: Subspace) -> bool:
    return all(xl.contains(S, bracket(L, u, v)) for u in S.basis for v in S.basis)


def restrict(L: LeibnizAlgebra, vectors: Sequence[Sequence], labels=None) -> LeibnizAlgebra:
    """Structure constants of the subalgebra spanned by the independent ``vectors``, in that basis."""
    m = len(vectors)
    table = []
    for u in vectors:
        row = []
        for v in vectors:
            coords = xl.coordinates(vectors, bracket(L, u, v))
            if coords is None:
                raise ValueError("vectors do not span a subalgebra")
            row.append(coords)
        table.append(tuple(row))
    return LeibnizAlgebra(tuple(table), tuple(labels) if labels else ())


# -- constructions -------------------------------------------------------


class Quotient(NamedTuple):
    algebra: LeibnizAlgebra
    projection: Matrix


def quotient(L: LeibnizAlgebra, ideal: Subspace) -> Quotient:
    """``L / ideal`` on the standard-vector complement of the ideal's pivots.

    ``projection`` is the (n - k) x n matrix sending old coordinates to
    quotient coordinates.
    """
    if not is_ideal(L, ideal, BILATERAL):
        raise NotAnIdealError("quotient by a subspace that is not a bilateral ideal")
    n = L.dim
    comp = xl.complement_basis(ideal)
    full_basis = list(comp) + list(ideal.basis)
    inv = xl.inverse(xl.from_columns(full_basis))
    m = len(comp)
    projection = inv[:m]
    table = tuple(
        tuple(xl.matvec(projection, bracket(L, u, v)) for v in comp) for u in comp
    )
    labels = [L.labels[next(k for k, x in enumerate(u) if x)] for u in comp]
    return Quotient(LeibnizAlgebra(table, tuple(labels)), projection)


def direct_sum(A: LeibnizAlgebra, B: LeibnizAlgebra, labels=None) -> LeibnizAlgebra:
    n, m = A.dim, B.dim
    N = n + m
    table = []
    for i in range(N):
        row = []
        for j in range(N):
            if i < n and j < n:
                row.append(A.table[i][j] + (ZERO,) * m)
            elif i >= n and j >= n:
                row.append((ZERO,) * n + B.table[i - n][j - n])
            else:
                row.append((ZERO,) * N)
        table.append(tuple(row))
    if labels is None:
        labels = A.labels + B.labels
        if len(set(labels)) != len(labels):
            labels = _default_labels(N)
    return LeibnizAlgebra(tuple(table), tuple(labels))


def transport(L: LeibnizAlgebra, P: Matrix) -> LeibnizAlgebra:
    """Rewrite ``L`` in the basis given by the columns of ``P`` (old coordinates).

    The new constants satisfy ``[e'_i, e'_j] = P^{-1} [P e_i, P e_j]``.  Labels
    are kept, so transporting a presentation onto its normal form compares
    equal to the normal form itself.
    """
    n = L.dim
    P = xl.matrix(P)
    if xl.shape(P) != (n, n):
        raise xl.DimensionError("transport matrix must be %dx%d" % (n, n))
    try:
        Pinv = xl.inverse(P)
    except ZeroDivisionError:
        raise ValueError("transport matrix is singular") from None
    cols = xl.columns(P) if n else []
    table = tuple(tuple(xl.matvec(Pinv, bracket(L, u, v)) for v in cols) for u in cols)
    return LeibnizAlgebra(table, L.labels)


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Columns ``e_{perm[0]}, e_{perm[1]}, ...``: new basis vector i is old basis vector perm[i]."""
    n = len(perm)
    return xl.from_columns([xl.unit_vector(n, p) for p in perm], n)


# -- the non-nilpotent ideal ----------------------------------------------

S1, S2 = "S1", "S2"


@dataclass(frozen=True)
class IdealWitness:
    subspace: Subspace
    side: str


class NonNilpotentIdeal(NamedTuple):
    witness: IdealWitness
    kind: str
    iso: Matrix  # 2x2, columns are the standard basis (e1, e2) in (z, x) coordinates
    basis: tuple  # (z, x): spanning vectors of S in ambient coordinates


def find_nonnilpotent_ideal(L: LeibnizAlgebra) -> NonNilpotentIdeal:
    """Two-dimensional non-nilpotent bilateral ideal ``S = <x, z>`` with ``[L, L] = <z>``.

    ``x`` is the first basis vector with ``[x, z] != 0``; then ``[x, z] = g z``
    with ``g != 0``.  ``S`` is the Lie algebra S1 when its restricted bracket is
    antisymmetric and the non-Lie algebra S2 otherwise.  ``iso`` has as columns
    the standard basis ``e1, e2`` of S1 (``[e2,e1] = -[e1,e2] = e1``) or S2
    (``[e2,e1] = [e2,e2] = e1``), written in the ``(z, x)`` coordinates of S.
    """
    D = derived_subalgebra(L)
    if D.dim != 1:
        raise HypothesisError("hypotheses not met: dim [L,L] = %d, expected 1" % D.dim)
    if is_nilpotent(L) is not None:
        raise HypothesisError("hypotheses not met: L is nilpotent")
    z = D.basis[0]
    for i in range(L.dim):
        x = L.basis_vector(i)
        if xl.contains(D, x):
            continue
        xz = bracket(L, x, z)
        if not xl.is_zero(xz):
            break
    else:  # pragma: no cover - ruled out by non-nilpotency
        raise HypothesisError("hypotheses not met: no x with [x, z] != 0")
    S = xl.span([z, x], L.dim)
    restricted = restrict(L, [z, x])
    # restricted: [x,z] = g z, [x,x] = a z; the Leibniz identity forces [z,z] = 0
    # and [z,x] in {0, -g z}
    g = restricted.table[1][0][0]
    a = restricted.table[1][1][0]
    if is_lie(restricted):
        kind = S1
        iso = xl.matrix([[1, 0], [0, 1 / g]])
        target = _s1_table()
    else:
        kind = S2
        iso = xl.matrix([[1, 1 - a / g**2], [0, 1 / g]])
        target = _s2_table()
    if transport(restricted, iso).table != target:  # pragma: no cover - guarded by the classification
        raise AssertionError("two-dimensional classification failed for %r" % (restricted,))
    if not is_ideal(L, S, BILATERAL):  # pragma: no cover
        raise AssertionError("S is not an ideal")
    return NonNilpotentIdeal(IdealWitness(S, BILATERAL), kind, iso, (z, x))


def _s1_table():
    return from_brackets(2, {(1, 0): {0: 1}, (0, 1): {0: -1}}).table


def _s2_table():
    return from_brackets(2, {(1, 0): {0: 1}, (1, 1): {0: 1}}).table
