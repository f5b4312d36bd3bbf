"""Constructors for the named algebras: the nilpotent families with
one-dimensional derived subalgebra, the two-dimensional algebras S1 and S2,
L_n, and the parameterised presentation that normalises to L_n.

Basis labels follow the usual notation (``e1``, ``f3``, ``z``) so printed
tables can be read against the literature directly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import exactlin as xl
from .algebra import LeibnizAlgebra, direct_sum, from_brackets, transport

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolynomialQ:
    """Monic polynomial with rational coefficients, lowest degree first."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = xl.vector(self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) < 2:
            raise ValueError("polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __mul__(self, other: "PolynomialQ") -> "PolynomialQ":
        a, b = self.coefficients, other.coefficients
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return PolynomialQ(tuple(out))

    def __pow__(self, k: int) -> "PolynomialQ":
        if k < 1:
            raise ValueError("power must be >= 1")
        result = self
        for _ in range(k - 1):
            result = result * self
        return result


def companion_matrix(p: PolynomialQ) -> xl.Matrix:
    """Ones on the subdiagonal, last column ``-c_0, ..., -c_{d-1}``."""
    d = p.degree
    rows = [[Fraction(0)] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = Fraction(1)
    for i in range(d):
        rows[i][d - 1] = -p.coefficients[i]
    return xl.matrix(rows)


def companion_of_power(f: PolynomialQ, k: int) -> xl.Matrix:
    """Companion matrix of ``f(x)**k``.

    Irreducibility of ``f`` is what makes the resulting Heisenberg algebras a
    classification parameter; it is not needed to build them and is not checked.
    """
    return companion_matrix(f**k)


def heisenberg(A: Sequence[Sequence]) -> LeibnizAlgebra:
    """Heisenberg algebra of dimension ``2n + 1`` for an ``n x n`` matrix ``A``.

    Basis ``e1..en, f1..fn, z`` with ``[e_i, f_j] = (delta_ij + a_ij) z`` and
    ``[f_j, e_i] = (-delta_ij + a_ij) z``.  ``A = 0`` gives the Heisenberg Lie
    algebra.
    """
    A = xl.matrix(A)
    n = len(A)
    if xl.shape(A) != (n, n):
        raise xl.DimensionError("A must be square")
    z = 2 * n
    br = {}
    for i in range(n):
        for j in range(n):
            d = 1 if i == j else 0
            if d + A[i][j]:
                br[(i, n + j)] = {z: d + A[i][j]}
            if -d + A[i][j]:
                br[(n + j, i)] = {z: -d + A[i][j]}
    labels = ["e%d" % (i + 1) for i in range(n)] + ["f%d" % (i + 1) for i in range(n)] + ["z"]
    return from_brackets(2 * n + 1, br, labels)


def heisenberg_lie(n: int) -> LeibnizAlgebra:
    return heisenberg(xl.zeros(n, n))


def kronecker(n: int) -> LeibnizAlgebra:
    """Kronecker algebra of dimension ``2n + 1``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    z = 2 * n
    e = lambda i: i - 1  # noqa: E731
    f = lambda i: n + i - 1  # noqa: E731
    br = {}
    for i in range(1, n + 1):
        br[(e(i), f(i))] = {z: 1}
        br[(f(i), e(i))] = {z: 1}
    for i in range(2, n + 1):
        br[(e(i), f(i - 1))] = {z: 1}
        br[(f(i - 1), e(i))] = {z: -1}
    labels = ["e%d" % i for i in range(1, n + 1)] + ["f%d" % i for i in range(1, n + 1)] + ["z"]
    return from_brackets(2 * n + 1, br, labels)


@dataclass(frozen=True)
class DieudonneReport:
    algebra: LeibnizAlgebra
    collisions: tuple  # ((i, j), old, new) with 1-based indices


def dieudonne_with_report(n: int) -> DieudonneReport:
    """Dieudonné algebra of dimension ``2n + 2`` plus any index collisions.

    The bracket groups are emitted in order; empty index ranges contribute
    nothing.  If a pair is assigned twice the later value wins and the clash is
    recorded.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    entries = [(1, n + 2, 1)]
    for i in range(2, n + 1):
        entries += [(i, n + i, 1), (i, n + i + 1, 1)]
    entries.append((n + 1, 2 * n + 1, 1))
    for i in range(n + 2, 2 * n + 2):
        entries += [(i, i - n, 1), (i, i - n - 1, -1)]
    z = 2 * n + 1
    assigned = {}
    collisions = []
    for i, j, c in entries:
        if (i, j) in assigned and assigned[(i, j)] != c:
            collisions.append(((i, j), assigned[(i, j)], c))
            log.warning("Dieudonne n=%d: bracket [e%d,e%d] assigned twice", n, i, j)
        assigned[(i, j)] = c
    br = {(i - 1, j - 1): {z: c} for (i, j), c in assigned.items()}
    labels = ["e%d" % i for i in range(1, 2 * n + 2)] + ["z"]
    return DieudonneReport(from_brackets(2 * n + 2, br, labels), tuple(collisions))


def dieudonne(n: int) -> LeibnizAlgebra:
    return dieudonne_with_report(n).algebra


def abelian(m: int, labels: Optional[Sequence[str]] = None) -> LeibnizAlgebra:
    if m < 0:
        raise ValueError("dimension must be >= 0")
    return from_brackets(m, {}, labels)


def s1() -> LeibnizAlgebra:
    """``[e2, e1] = -[e1, e2] = e1`` (the non-abelian two-dimensional Lie algebra)."""
    return from_brackets(2, {(1, 0): {0: 1}, (0, 1): {0: -1}}, ["e1", "e2"])


def s2() -> LeibnizAlgebra:
    """``[e2, e1] = [e2, e2] = e1``."""
    return from_brackets(2, {(1, 0): {0: 1}, (1, 1): {0: 1}}, ["e1", "e2"])


# e2 -> e2 - e1
S2_NORMALIZING = xl.matrix([[1, -1], [0, 1]])


def s2_normalized() -> LeibnizAlgebra:
    """S2 in the basis where the only nonzero bracket is ``[e2, e1] = e1``."""
    return from_brackets(2, {(1, 0): {0: 1}}, ["e1", "e2"])


def ln_labels(n: int) -> list[str]:
    return ["e1", "e2"] + ["f%d" % i for i in range(3, n + 1)]


def l_n(n: int) -> LeibnizAlgebra:
    """``S2 (+) Q^{n-2}`` on the basis ``e1, e2, f3, ..., fn``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return direct_sum(s2_normalized(), abelian(n - 2), labels=ln_labels(n))


def s1_plus_abelian(m: int) -> LeibnizAlgebra:
    return direct_sum(s1(), abelian(m), labels=ln_labels(m + 2))


def paper_presentation(n: int, alpha: Sequence, beta: Sequence) -> LeibnizAlgebra:
    """The general non-nilpotent non-Lie algebra with one-dimensional derived
    subalgebra before normalisation.

    Basis ``e1, e2, f3..fn``; nonzero brackets ``[e2,e1] = e1``,
    ``[e2,f_i] = beta_i e1``, ``[f_i,e1] = alpha_i e1`` and
    ``[f_i,f_j] = alpha_i beta_j e1``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    alpha, beta = xl.vector(alpha), xl.vector(beta)
    if len(alpha) != n - 2 or len(beta) != n - 2:
        raise ValueError("alpha and beta must have length n - 2 = %d" % (n - 2))
    br = {(1, 0): {0: 1}}
    for i in range(n - 2):
        if beta[i]:
            br[(1, i + 2)] = {0: beta[i]}
        if alpha[i]:
            br[(i + 2, 0)] = {0: alpha[i]}
        for j in range(n - 2):
            if alpha[i] * beta[j]:
                br[(i + 2, j + 2)] = {0: alpha[i] * beta[j]}
    return from_brackets(n, br, ln_labels(n))


def s2_via_transport() -> LeibnizAlgebra:
    return transport(s2(), S2_NORMALIZING)
