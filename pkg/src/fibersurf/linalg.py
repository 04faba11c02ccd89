"""Exact rational linear algebra on small integer matrices."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def _to_fractions(matrix: Matrix) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in matrix]


def leading_minors(matrix: Matrix) -> list[Fraction]:
    """Return ``det_1, ..., det_n`` of the leading principal submatrices.

    Elimination proceeds without row exchanges, so the k-th pivot equals
    ``det_k / det_{k-1}``. Once a zero pivot appears the remaining minors
    are computed by cofactor-free fallback (fresh elimination per minor).
    """
    a = _to_fractions(matrix)
    n = len(a)
    minors: list[Fraction] = []
    running = Fraction(1)
    for k in range(n):
        pivot = a[k][k]
        if pivot == 0:
            minors.extend(det([row[: j + 1] for row in matrix[: j + 1]]) for j in range(k, n))
            return minors
        running *= pivot
        minors.append(running)
        for i in range(k + 1, n):
            factor = a[i][k] / pivot
            if factor:
                for j in range(k, n):
                    a[i][j] -= factor * a[k][j]
    return minors


def det(matrix: Matrix) -> Fraction:
    a = _to_fractions(matrix)
    n = len(a)
    result = Fraction(1)
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            result = -result
        pivot = a[k][k]
        result *= pivot
        for i in range(k + 1, n):
            factor = a[i][k] / pivot
            if factor:
                for j in range(k, n):
                    a[i][j] -= factor * a[k][j]
    return result


def is_negative_definite(matrix: Matrix) -> bool:
    """Sylvester's criterion for negative definiteness: ``(-1)^k det_k > 0``.

    The empty matrix is negative definite (vacuously).
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    for i in range(n):
        for j in range(i):
            if matrix[i][j] != matrix[j][i]:
                raise ValueError("matrix must be symmetric")
    for k, d in enumerate(leading_minors(matrix), start=1):
        if (-1) ** k * d <= 0:
            return False
    return True


def solve(matrix: Matrix, rhs: Sequence[int | Fraction]) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly; the matrix must be invertible."""
    n = len(matrix)
    a = _to_fractions(matrix)
    b = [Fraction(x) for x in rhs]
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            raise ZeroDivisionError("singular matrix")
        a[k], a[pivot_row] = a[pivot_row], a[k]
        b[k], b[pivot_row] = b[pivot_row], b[k]
        pivot = a[k][k]
        for i in range(n):
            if i == k or a[i][k] == 0:
                continue
            factor = a[i][k] / pivot
            for j in range(k, n):
                a[i][j] -= factor * a[k][j]
            b[i] -= factor * b[k]
    return [b[i] / a[i][i] for i in range(n)]


def matvec(matrix: Matrix, vec: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, vec)) for row in matrix]
