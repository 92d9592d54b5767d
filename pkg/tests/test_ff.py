import random

import pytest
import sympy

from schubvan.errors import BadPrime
from schubvan.ff import MERSENNE_61, check_prime, ff_det, ff_rank


def test_identity_and_zero():
    eye = [[int(i == j) for j in range(6)] for i in range(6)]
    assert ff_det(eye, 7) == 1 and ff_rank(eye, 7) == 6
    zero = [[0] * 4 for _ in range(4)]
    assert ff_det(zero, 7) == 0 and ff_rank(zero, 7) == 0


def test_sign_tracking():
    assert ff_det([[0, 1], [1, 0]], 11) == 10
    assert ff_det([[0, 0, 1], [0, 1, 0], [1, 0, 0]], 11) == 10


@pytest.mark.parametrize("seed", range(5))
def test_random_10x10_against_bareiss(seed):
    rng = random.Random(seed)
    m = [[rng.randrange(MERSENNE_61) for _ in range(10)] for _ in range(10)]
    assert ff_det(m, MERSENNE_61) == sympy.Matrix(m).det(method="bareiss") % MERSENNE_61


def test_rank_of_dependent_rows():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert ff_rank(rows, 13) == 2
    assert ff_det(rows, 13) == 0
    assert ff_rank([[1, 2, 3]], 13) == 1


def test_bad_prime():
    with pytest.raises(BadPrime):
        ff_det([[1]], 15)
    with pytest.raises(BadPrime):
        check_prime(2**61 + 1)
    assert check_prime(MERSENNE_61) == MERSENNE_61
