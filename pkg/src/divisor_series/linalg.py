"""Exact linear algebra over the integers and rationals.

Everything here is fraction-free (Bareiss) so intermediate entries stay
integral; rational input rows are scaled to integers first.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


class SingularMatrixError(ValueError):
    pass


def _integral_row(row: Sequence) -> list[int]:
    den = 1
    for a in row:
        den = lcm(den, Fraction(a).denominator)
    return [int(Fraction(a) * den) for a in row]


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a matrix with rational entries (fraction-free elimination)."""
    mat = [_integral_row(r) for r in rows if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    nrows = len(mat)
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][c]
        for i in range(r + 1, nrows):
            a = mat[i][c]
            row_i = mat[i]
            row_r = mat[r]
            # Bareiss step; exact division by the previous pivot
            mat[i] = [(p * row_i[j] - a * row_r[j]) // prev if j > c else 0
                      for j in range(ncols)]
        prev = p
        r += 1
    return r


def determinant(mat: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    m = [list(map(int, row)) for row in mat]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def leading_minors(mat: Sequence[Sequence[int]]) -> list[int]:
    return [determinant([row[:k] for row in mat[:k]]) for k in range(1, len(mat) + 1)]


def inverse(mat: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Exact inverse of a square integer matrix.

    Fraction-free elimination on the augmented matrix ``[A | d*I]`` followed by
    a single division by the determinant at the end.
    """
    n = len(mat)
    aug = [list(map(int, row)) + [1 if i == j else 0 for j in range(n)]
           for i, row in enumerate(mat)]
    prev = 1
    for k in range(n):
        if aug[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if aug[i][k]), None)
            if swap is None:
                raise SingularMatrixError("matrix is singular")
            aug[k], aug[swap] = aug[swap], aug[k]
        p = aug[k][k]
        for i in range(n):
            if i == k:
                continue
            a = aug[i][k]
            aug[i] = [(p * aug[i][j] - a * aug[k][j]) // prev for j in range(2 * n)]
        prev = p
    # every diagonal entry now equals +-det; the right block is +-adj
    return [[Fraction(aug[i][n + j], aug[i][i]) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(a))]
