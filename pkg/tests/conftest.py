import random
from fractions import Fraction

import pytest

from leibniz import exactlin as xl

SMALL = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(-3), Fraction(1, 2), Fraction(-2, 3)]


def rand_rational(rng, zero_weight=0.3):
    if rng.random() < zero_weight:
        return Fraction(0)
    return Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 4))


def rand_nonzero(rng):
    return Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))


def rand_matrix(rng, rows, cols, zero_weight=0.3):
    return xl.matrix([[rand_rational(rng, zero_weight) for _ in range(cols)] for _ in range(rows)])


def rand_invertible(rng, n):
    while True:
        m = rand_matrix(rng, n, n, 0.2)
        if xl.is_invertible(m):
            return m


def rand_vector(rng, n, zero_weight=0.3):
    return tuple(rand_rational(rng, zero_weight) for _ in range(n))


@pytest.fixture
def rng():
    return random.Random(20240601)
