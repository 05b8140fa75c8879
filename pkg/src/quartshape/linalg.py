"""Exact small-matrix linear algebra over the rationals."""
from __future__ import annotations

from fractions import Fraction


def det(m):
    a = [[Fraction(x) for x in row] for row in m]
    n, sign, out = len(a), 1, Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        out *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    v = sign * out
    return int(v) if v.denominator == 1 else v


def inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def transpose(a):
    return [list(r) for r in zip(*a)]


def charpoly(m):
    """Characteristic polynomial det(tI - M), lowest degree first (Faddeev-LeVerrier)."""
    n = len(m)
    m = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = M (M_{k-1} + c_{n-k+1} I)
        prev = [[mk[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)]
                for i in range(n)]
        mk = matmul(m, prev)
        coeffs[n - k] = -sum(mk[i][i] for i in range(n)) / k
    return [int(c) if c.denominator == 1 else c for c in coeffs]
