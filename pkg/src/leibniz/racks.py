"""Smooth pointed racks on R^n and their tangent Leibniz algebras (float64).

Three closed-form racks are provided:

``paper``      (x, y) -> (y1, y2 + exp(x1) y2, y3, ..., yn)
``corrected``  (x, y) -> (y1, exp(x1) y2, y3, ..., yn)
``conj``       x |> y = x y x^-1 on k x k matrices, flattened row-major

The tangent bracket at the unit is the mixed second derivative of
``F(s, t) = (1 + s u) |> (1 + t v)``, estimated with the central stencil
``(F(h,h) - F(h,-h) - F(-h,h) + F(-h,-h)) / (4 h^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .algebra import LeibnizAlgebra, from_brackets

PAPER, CORRECTED, CONJ = "paper", "corrected", "conj"
VARIANTS = (PAPER, CORRECTED, CONJ)

DEFAULT_H = 1e-4
DEFAULT_TOL = 1e-6
SAMPLE_BOX = 2.0


class SingularPointError(ValueError):
    pass


@dataclass(frozen=True)
class SmoothRack:
    variant: str
    dim: int

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError("unknown rack variant %r" % (self.variant,))
        if self.variant == CONJ:
            k = math.isqrt(self.dim)
            if k * k != self.dim or k < 1:
                raise ValueError("conj rack needs dim = k^2, got %d" % self.dim)
        elif self.dim < 2:
            raise ValueError("L_n racks need dim >= 2")

    @property
    def k(self) -> int:
        return math.isqrt(self.dim)

    @property
    def unit(self) -> np.ndarray:
        if self.variant == CONJ:
            return np.eye(self.k).ravel()
        return np.zeros(self.dim)

    def op(self, x, y) -> np.ndarray:
        return rack_op(self, x, y)

    def op_inv(self, x, y) -> np.ndarray:
        """The inverse of the left translation ``y -> x |> y``."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if self.variant == CONJ:
            X = _as_matrix(x, self.k)
            return (np.linalg.solve(X, _as_matrix(y, self.k)) @ X).ravel()
        out = y.copy()
        if self.variant == PAPER:
            out[1] = y[1] / (1.0 + math.exp(x[0]))
        else:
            out[1] = math.exp(-x[0]) * y[1]
        return out


def paper_ln(n: int) -> SmoothRack:
    return SmoothRack(PAPER, n)


def corrected_ln(n: int) -> SmoothRack:
    return SmoothRack(CORRECTED, n)


def conj_matrix(k: int) -> SmoothRack:
    return SmoothRack(CONJ, k * k)


def _as_matrix(x, k):
    X = np.asarray(x, dtype=float).reshape(k, k)
    return X


def rack_op(R: SmoothRack, x, y) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (R.dim,) or y.shape != (R.dim,):
        raise ValueError("points must have length %d" % R.dim)
    if R.variant == CONJ:
        X = _as_matrix(x, R.k)
        Y = _as_matrix(y, R.k)
        try:
            # x y x^-1 via a solve against x^T
            return np.linalg.solve(X.T, (X @ Y).T).T.ravel()
        except np.linalg.LinAlgError:
            raise SingularPointError("conjugation by a singular matrix") from None
    out = y.copy()
    if R.variant == PAPER:
        out[1] = y[1] + math.exp(x[0]) * y[1]
    else:
        out[1] = math.exp(x[0]) * y[1]
    return out


# -- axioms -----------------------------------------------------------------


@dataclass
class AxiomResult:
    name: str
    passed: bool = True
    max_residual: float = 0.0
    witness: Optional[dict] = None

    def observe(self, residual: float, tol: float, **witness):
        if residual > self.max_residual:
            self.max_residual = residual
        if residual > tol and self.passed:
            self.passed = False
            self.witness = {k: np.asarray(v).tolist() for k, v in witness.items()}


@dataclass
class RackReport:
    variant: str
    dim: int
    samples: int
    seed: int
    tol: float
    axioms: dict = field(default_factory=dict)

    @property
    def rack(self) -> bool:
        return self.axioms["autodistributive"].passed and self.axioms["left_bijective"].passed

    @property
    def pointed(self) -> bool:
        return self.rack and self.axioms["unit_left"].passed and self.axioms["unit_right"].passed

    @property
    def quandle(self) -> bool:
        return self.rack and self.axioms["idempotent"].passed

    @property
    def max_residual(self) -> float:
        """Largest residual over the pointed-rack axioms (idempotence excluded)."""
        return max(a.max_residual for k, a in self.axioms.items() if k != "idempotent")


def sample_points(R: SmoothRack, rng: np.random.Generator, count: int) -> np.ndarray:
    """Uniform points in ``[-2, 2]^n``; for ``conj`` only well-conditioned matrices are kept."""
    if R.variant != CONJ:
        return rng.uniform(-SAMPLE_BOX, SAMPLE_BOX, size=(count, R.dim))
    out = []
    while len(out) < count:
        p = rng.uniform(-SAMPLE_BOX, SAMPLE_BOX, size=R.dim)
        if np.linalg.cond(_as_matrix(p, R.k)) < 1e3:
            out.append(p)
    return np.array(out)


def _res(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)))) if np.size(a) else 0.0


def check_rack_axioms(R: SmoothRack, samples: int = 1000, seed: int = 0, tol: float = 1e-9) -> RackReport:
    """Sampled check of the pointed-rack axioms (plus idempotence, reported separately).

    The unit laws are also checked on the unit and the coordinate basis
    vectors before the random points, so a failing law reports the simplest
    witness available.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    rng = np.random.default_rng(seed)
    names = ("autodistributive", "left_bijective", "unit_left", "unit_right", "idempotent")
    rep = RackReport(R.variant, R.dim, samples, seed, tol, {k: AxiomResult(k) for k in names})
    ax = rep.axioms
    one = R.unit
    special = [one] + [one + e for e in np.eye(R.dim)]
    for p in special:
        ax["unit_left"].observe(_res(R.op(one, p), p), tol, x=p, image=R.op(one, p))
        ax["unit_right"].observe(_res(R.op(p, one), one), tol, x=p, image=R.op(p, one))
    pts = sample_points(R, rng, 3 * samples)
    for s in range(samples):
        x, y, z = pts[3 * s], pts[3 * s + 1], pts[3 * s + 2]
        lhs = R.op(x, R.op(y, z))
        rhs = R.op(R.op(x, y), R.op(x, z))
        scale = max(1.0, float(np.max(np.abs(lhs))))
        ax["autodistributive"].observe(_res(lhs, rhs) / scale, tol, x=x, y=y, z=z)
        back = R.op(x, R.op_inv(x, y))
        fwd = R.op_inv(x, R.op(x, y))
        ax["left_bijective"].observe(max(_res(back, y), _res(fwd, y)), tol, x=x, y=y)
        ax["unit_left"].observe(_res(R.op(one, x), x), tol, x=x, image=R.op(one, x))
        ax["unit_right"].observe(_res(R.op(x, one), one), tol, x=x, image=R.op(x, one))
        ax["idempotent"].observe(_res(R.op(x, x), x), tol, x=x, image=R.op(x, x))
    return rep


# -- tangent algebra ----------------------------------------------------------


def tangent_bracket(R: SmoothRack, u, v, h: float = DEFAULT_H) -> np.ndarray:
    """Mixed central difference of ``(1 + s u) |> (1 + t v)`` at ``s = t = 0``."""
    if h <= 0:
        raise ValueError("h must be positive")
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    one = R.unit

    def F(s, t):
        return R.op(one + s * u, one + t * v)

    return (F(h, h) - F(h, -h) - F(-h, h) + F(-h, -h)) / (4.0 * h * h)


@dataclass(frozen=True)
class TangentTensor:
    c: np.ndarray  # c[i, j, k]
    h: float
    error_estimate: float  # max |T(h) - T(h/2)|

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    def bracket(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(x, float), np.asarray(y, float), self.c)


def _tangent_constants(R: SmoothRack, h: float) -> np.ndarray:
    n = R.dim
    E = np.eye(n)
    c = np.empty((n, n, n))
    for i in range(n):
        for j in range(n):
            c[i, j] = tangent_bracket(R, E[i], E[j], h)
    return c


def tangent_algebra(R: SmoothRack, h: float = DEFAULT_H) -> TangentTensor:
    c = _tangent_constants(R, h)
    half = _tangent_constants(R, h / 2)
    return TangentTensor(c, h, float(np.max(np.abs(c - half))))


def ln_identification(n: int) -> list[int]:
    """Rack coordinate i corresponds to basis vector ``perm[i]`` of L_n:
    coordinate 1 -> e2, coordinate 2 -> e1, the rest -> f3..fn."""
    return [1, 0] + list(range(2, n))


@dataclass(frozen=True)
class TangentComparison:
    max_deviation: float
    at: tuple  # (i, j, k) in rack coordinates, 0-based
    passed: bool
    tol: float


def compare_tangent(T: TangentTensor, L: LeibnizAlgebra, tol: float = DEFAULT_TOL, perm=None) -> TangentComparison:
    """Largest ``|T_ij^k - c_{p(i) p(j)}^{p(k)}|`` under the coordinate identification ``p``."""
    n = T.dim
    if L.dim != n:
        raise ValueError("dimension mismatch: tangent %d vs algebra %d" % (n, L.dim))
    p = ln_identification(n) if perm is None else list(perm)
    ref = np.array(
        [[[float(L.table[p[i]][p[j]][p[k]]) for k in range(n)] for j in range(n)] for i in range(n)]
    )
    diff = np.abs(T.c - ref)
    idx = np.unravel_index(int(np.argmax(diff)), diff.shape)
    worst = float(diff[idx])
    return TangentComparison(worst, tuple(int(i) for i in idx), worst <= tol, tol)


def leibniz_residual(T: TangentTensor) -> float:
    """Max violation of the left Leibniz identity by the tangent constants on basis triples."""
    c = T.c
    # [x,[y,z]] - [[x,y],z] - [y,[x,z]] on basis triples
    lhs = np.einsum("jkm,imr->ijkr", c, c)
    t1 = np.einsum("ijm,mkr->ijkr", c, c)
    t2 = np.einsum("ikm,jmr->ijkr", c, c)
    return float(np.max(np.abs(lhs - t1 - t2)))


def gl_algebra(k: int) -> LeibnizAlgebra:
    """``gl_k`` with the commutator bracket on matrix units ``E_ab`` (index ``a*k + b``)."""
    br = {}
    for a in range(k):
        for b in range(k):
            for c in range(k):
                for d in range(k):
                    # [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb
                    res: dict = {}
                    if b == c:
                        res[a * k + d] = res.get(a * k + d, 0) + 1
                    if d == a:
                        res[c * k + b] = res.get(c * k + b, 0) - 1
                    res = {t: Fraction(v) for t, v in res.items() if v}
                    if res:
                        br[(a * k + b, c * k + d)] = res
    labels = ["E%d%d" % (a + 1, b + 1) for a in range(k) for b in range(k)]
    return from_brackets(k * k, br, labels)
