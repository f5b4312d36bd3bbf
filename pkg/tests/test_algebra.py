import random
from fractions import Fraction

import pytest

from leibniz import algebra as alg
from leibniz import exactlin as xl
from leibniz import families as fam
from conftest import rand_invertible, rand_vector


def e(n, i):
    return xl.unit_vector(n, i - 1)


def leibniz_defect_on_vectors(L, rng, trials=30):
    """Independent oracle: evaluate the left identity on random rational vectors."""
    n = L.dim
    for _ in range(trials):
        x, y, z = (rand_vector(rng, n, 0.2) for _ in range(3))
        lhs = L.bracket(x, L.bracket(y, z))
        rhs = xl.vadd(L.bracket(L.bracket(x, y), z), L.bracket(y, L.bracket(x, z)))
        if lhs != rhs:
            return True
    return False


def test_bracket_examples():
    L2 = fam.l_n(2)
    assert L2.bracket(e(2, 2), e(2, 1)) == e(2, 1)
    for x in [(1, 2), (0, -1)]:
        assert L2.bracket(xl.vector(x), (0, 0)) == (0, 0)
    S2 = fam.s2()
    assert S2.bracket(e(2, 2), xl.vadd(e(2, 1), e(2, 2))) == (2, 0)


def test_bracket_length_mismatch():
    with pytest.raises(xl.DimensionError):
        fam.l_n(3).bracket((1, 0), (0, 1, 0))


@pytest.mark.parametrize("n", range(2, 7))
def test_ln_is_left_leibniz(n, rng):
    L = fam.l_n(n)
    assert alg.check_left_leibniz(L) is None
    assert not leibniz_defect_on_vectors(L, rng)


def test_deliberate_violation_detected(rng):
    # [e1,e1] = e2 and [e2,e1] = e2: [e1,[e1,e1]] = 0 but [[e1,e1],e1] + [e1,[e1,e1]] = e2
    L = alg.from_brackets(2, {(0, 0): {1: 1}, (1, 0): {1: 1}})
    assert alg.check_left_leibniz(L) is not None
    assert leibniz_defect_on_vectors(L, rng)
    i, j, k = alg.check_left_leibniz(L)
    T = L.table
    lhs = L.bracket(e(2, i + 1), T[j][k])
    rhs = xl.vadd(L.bracket(T[i][j], e(2, k + 1)), L.bracket(e(2, j + 1), T[i][k]))
    assert lhs != rhs


def test_abelian_identities():
    A = fam.abelian(3)
    assert alg.check_left_leibniz(A) is None
    assert alg.is_lie(A) and alg.is_symmetric(A)


def test_s1_s2_symmetry():
    assert alg.is_lie(fam.s1())
    assert alg.check_right_leibniz(fam.s2()) is not None
    assert not alg.is_symmetric(fam.s2())
    assert alg.check_left_leibniz(fam.s2()) is None


@pytest.mark.parametrize(
    "L",
    [fam.heisenberg([[1, 0], [0, 2]]), fam.kronecker(3), fam.dieudonne(2), fam.heisenberg_lie(2)],
    ids=["heis", "kron", "dieu", "h5"],
)
def test_two_step_nilpotent_are_symmetric(L):
    assert alg.is_symmetric(L)
    assert alg.derived_subalgebra(L) <= alg.center(L)


@pytest.mark.parametrize("n", range(2, 7))
def test_ln_invariants(n):
    L = fam.l_n(n)
    assert alg.leibniz_kernel(L) == xl.span([e(n, 1)], n)
    Zl = xl.span([e(n, 1)] + [e(n, i) for i in range(3, n + 1)], n)
    Zr = xl.span([e(n, 2)] + [e(n, i) for i in range(3, n + 1)], n)
    assert alg.left_center(L) == Zl
    assert alg.right_center(L) == Zr
    assert alg.center(L) == xl.span([e(n, i) for i in range(3, n + 1)], n)
    assert [S.dim for S in alg.derived_series(L)] == [n, 1, 0]
    lcs = alg.lower_central_series(L)
    assert lcs[-1] == xl.span([e(n, 1)], n)
    assert alg.is_nilpotent(L) is None
    assert alg.is_solvable(L) == 2


def test_lie_algebras_have_zero_kernel():
    assert alg.leibniz_kernel(fam.s1()).dim == 0
    assert alg.leibniz_kernel(fam.heisenberg_lie(3)).dim == 0


def test_heisenberg_kernel_from_symmetric_part():
    L = fam.heisenberg([[0, 1], [1, 0]])
    assert alg.leibniz_kernel(L) == xl.span([e(5, 5)], 5)


def test_abelian_centers_and_series():
    A = fam.abelian(3)
    assert alg.left_center(A) == alg.right_center(A) == alg.center(A) == xl.full_space(3)
    assert alg.is_nilpotent(A) == 1 and alg.is_solvable(A) == 1
    assert [S.dim for S in alg.lower_central_series(A)] == [3, 0]


def test_zero_algebra_steps():
    Z = fam.abelian(0)
    assert alg.is_nilpotent(Z) == 0


def test_kronecker_series():
    L = fam.kronecker(3)
    assert [S.dim for S in alg.lower_central_series(L)] == [7, 1, 0]
    assert alg.is_nilpotent(fam.dieudonne(3)) == 2


def test_is_ideal_examples():
    n = 5
    L = fam.l_n(n)
    assert alg.is_ideal(L, xl.span([e(n, 1), e(n, 2)], n))
    L2 = fam.l_n(2)
    # [L, e2] = 0 but [e2, e1] = e1 leaves span{e2}
    assert alg.is_ideal(L2, xl.span([e(2, 2)], 2), alg.LEFT)
    assert not alg.is_ideal(L2, xl.span([e(2, 2)], 2), alg.RIGHT)
    assert not alg.is_ideal(L2, xl.span([e(2, 2)], 2))
    assert alg.is_ideal(L2, xl.full_space(2))
    assert alg.is_ideal(L2, xl.span([e(2, 1)], 2))


def test_quotients():
    for n in range(2, 6):
        L = fam.l_n(n)
        Q, proj = alg.quotient(L, alg.leibniz_kernel(L))
        assert Q.dim == n - 1
        assert all(xl.is_zero(v) for row in Q.table for v in row)
        assert alg.is_lie(Q)
        assert xl.shape(proj) == (n - 1, n)
    L = fam.l_n(3)
    Q, _ = alg.quotient(L, xl.full_space(3))
    assert Q.dim == 0
    Q, _ = alg.quotient(fam.s2(), xl.span([(1, 0)], 2))
    assert Q.dim == 1 and Q.table == (((0,),),)


def test_quotient_rejects_non_ideal():
    with pytest.raises(alg.NotAnIdealError):
        alg.quotient(fam.l_n(2), xl.span([(0, 1)], 2))


def test_quotient_projection_is_homomorphism(rng):
    L = fam.heisenberg([[1, 2], [0, 1]])
    Q, proj = alg.quotient(L, alg.leibniz_kernel(L))
    for _ in range(10):
        x, y = rand_vector(rng, L.dim), rand_vector(rng, L.dim)
        assert xl.matvec(proj, L.bracket(x, y)) == Q.bracket(xl.matvec(proj, x), xl.matvec(proj, y))


def test_direct_sum():
    for n in range(2, 7):
        assert alg.direct_sum(fam.s2_normalized(), fam.abelian(n - 2)).table == fam.l_n(n).table
    A = fam.kronecker(1)
    assert alg.direct_sum(A, fam.abelian(0)).table == A.table
    assert alg.direct_sum(fam.abelian(2), fam.abelian(3)) == fam.abelian(5)


def test_transport_examples():
    T = alg.transport(fam.s2(), fam.S2_NORMALIZING)
    assert T == fam.s2_normalized()
    L = fam.paper_presentation(4, [1, 2], [0, 3])
    assert alg.transport(L, xl.identity(4)) == L
    P = xl.matrix([[1, 2, 0, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 0, 0, 2]])
    assert alg.transport(alg.transport(L, P), xl.inverse(P)) == L
    with pytest.raises(ValueError):
        alg.transport(L, xl.zeros(4, 4))


def test_transport_matches_bracket_of_new_basis(rng):
    L = fam.paper_presentation(4, [1, -1], [2, 0])
    P = rand_invertible(rng, 4)
    T = alg.transport(L, P)
    cols = xl.columns(P)
    for i in range(4):
        for j in range(4):
            assert xl.matvec(P, T.table[i][j]) == L.bracket(cols[i], cols[j])


def _invariants(L):
    return (
        alg.is_lie(L),
        alg.is_symmetric(L),
        alg.is_nilpotent(L),
        alg.is_solvable(L),
        tuple(S.dim for S in alg.derived_series(L)),
        tuple(S.dim for S in alg.lower_central_series(L)),
        alg.leibniz_kernel(L).dim,
        alg.left_center(L).dim,
        alg.right_center(L).dim,
    )


def test_transport_preserves_invariants():
    rng = random.Random(7)
    pool = [
        fam.l_n(4), fam.s1_plus_abelian(2), fam.kronecker(2), fam.dieudonne(1),
        fam.heisenberg([[1]]), fam.paper_presentation(5, [1, 0, 2], [0, 1, 1]), fam.s2(), fam.heisenberg_lie(1),
    ]
    for t in range(100):
        L = pool[t % len(pool)]
        P = rand_invertible(rng, L.dim)
        T = alg.transport(L, P)
        assert alg.check_left_leibniz(T) is None
        assert _invariants(T) == _invariants(L)


def test_find_ideal_ln():
    for n in range(2, 6):
        found = alg.find_nonnilpotent_ideal(fam.l_n(n))
        assert found.kind == alg.S2
        assert found.witness.side == alg.BILATERAL
        assert alg.is_ideal(fam.l_n(n), found.witness.subspace)


def test_find_ideal_iso_is_standard():
    L = fam.paper_presentation(4, [Fraction(1, 2), 3], [2, 0])
    found = alg.find_nonnilpotent_ideal(L)
    S = alg.restrict(L, list(found.basis))
    assert alg.transport(S, found.iso).table == fam.s2().table
    found = alg.find_nonnilpotent_ideal(fam.s1_plus_abelian(3))
    assert found.kind == alg.S1
    S = alg.restrict(fam.s1_plus_abelian(3), list(found.basis))
    assert alg.transport(S, found.iso).table == fam.s1().table


def test_find_ideal_rejects_out_of_scope():
    with pytest.raises(alg.HypothesisError, match="hypotheses not met"):
        alg.find_nonnilpotent_ideal(fam.kronecker(2))
    with pytest.raises(alg.HypothesisError):
        alg.find_nonnilpotent_ideal(fam.abelian(3))


def test_leib_in_left_center_and_quotient_lie():
    for L in [fam.l_n(5), fam.s2(), fam.heisenberg([[1, 1], [0, 1]]), fam.kronecker(2), fam.dieudonne(2),
              fam.paper_presentation(4, [1, 2], [3, 4])]:
        assert alg.leibniz_kernel(L) <= alg.left_center(L)
        assert alg.is_lie(alg.quotient(L, alg.leibniz_kernel(L)).algebra)
