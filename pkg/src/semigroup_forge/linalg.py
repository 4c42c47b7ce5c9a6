"""Exact rational matrices: fraction-free rank and determinant."""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import lcm


def _as_fraction(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class RationalMatrix:
    """Dense matrix of Fractions.  Rank and det go through integer Bareiss."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = [[_as_fraction(x) for x in row] for row in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        self.rows = rows

    @property
    def shape(self):
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"RationalMatrix({[[str(x) for x in r] for r in self.rows]})"

    def submatrix(self, rows=None, cols=None):
        rows = range(self.shape[0]) if rows is None else rows
        cols = range(self.shape[1]) if cols is None else cols
        return RationalMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def stack(self, other):
        return RationalMatrix(self.rows + other.rows)

    def _integer_rows(self):
        out, scale = [], Fraction(1)
        for row in self.rows:
            m = lcm(*(x.denominator for x in row)) if row else 1
            out.append([int(x * m) for x in row])
            scale *= m
        return out, scale

    def rank(self):
        a, _ = self._integer_rows()
        return _bareiss_rank(a)

    def det(self):
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return Fraction(1)
        a, scale = self._integer_rows()
        return Fraction(_bareiss_det(a)) / scale

    def minor(self, rows, cols):
        return self.submatrix(rows, cols).det()

    def is_full_rank(self):
        return self.rank() == min(self.shape)


def _bareiss_rank(a):
    a = [row[:] for row in a]
    n = len(a)
    m = len(a[0]) if n else 0
    rank, prev = 0, 1
    for col in range(m):
        piv = next((i for i in range(rank, n) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, n):
            for j in range(col + 1, m):
                a[i][j] = (a[i][j] * p - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = p
        rank += 1
        if rank == n:
            break
    return rank


def _bareiss_det(a):
    a = [row[:] for row in a]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _perm_sign(p):
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(rows, one=1, zero=0):
    """Determinant by permutation expansion; works over any commutative ring.

    Meant for small symbolic matrices (entries may be Polynomials).
    """
    n = len(rows)
    total = zero
    for p in permutations(range(n)):
        term = one
        for i, j in enumerate(p):
            term = term * rows[i][j]
        total = total + term if _perm_sign(p) > 0 else total - term
    return total
