"""Dense linear algebra over prime fields ``F_p``."""

from __future__ import annotations

from typing import Sequence

from sympy import isprime

from .errors import BadPrime

MERSENNE_61 = 2**61 - 1

Matrix = Sequence[Sequence[int]]


def check_prime(p: int, minimum: int = 2) -> int:
    if p < minimum or not isprime(p):
        raise BadPrime(f"{p} is not a prime >= {minimum}")
    return p


def _echelon(matrix: Matrix, p: int) -> tuple[int, int]:
    """Row-reduce a copy of ``matrix`` mod p; return ``(rank, det)``.

    ``det`` is only meaningful for square input (0 when singular).
    """
    rows = [[a % p for a in row] for row in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    det, rank = 1, 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if rows[r][col]), None)
        if pivot is None:
            det = 0
            continue
        if pivot != rank:
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            det = -det
        lead = rows[rank][col]
        det = det * lead % p
        inv = pow(lead, -1, p)
        prow = rows[rank]
        for r in range(rank + 1, nrows):
            f = rows[r][col]
            if f:
                f = f * inv % p
                row = rows[r]
                for c in range(col, ncols):
                    row[c] = (row[c] - f * prow[c]) % p
        rank += 1
    if nrows != ncols:
        det = 0
    return rank, det % p


def ff_det(matrix: Matrix, p: int) -> int:
    """Determinant mod ``p`` by Gaussian elimination."""
    check_prime(p)
    if not matrix:
        return 1
    if any(len(row) != len(matrix) for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    return _echelon(matrix, p)[1]


def ff_rank(matrix: Matrix, p: int) -> int:
    check_prime(p)
    if not matrix:
        return 0
    return _echelon(matrix, p)[0]
