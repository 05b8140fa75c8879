"""Small exact univariate polynomial helpers (coefficient lists, lowest degree first)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


def trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def deriv(p):
    return trim([k * c for k, c in enumerate(p)][1:] or [0])


def polyrem(a, b):
    a = [Fraction(x) for x in trim(a)]
    b = [Fraction(x) for x in trim(b)]
    while len(a) >= len(b) and any(a):
        f = a[-1] / b[-1]
        sh = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + sh] -= f * c
        a = trim(a)
        if len(a) == 1 and a[0] == 0:
            break
    return trim(a)


def polygcd(a, b):
    a, b = trim(a), trim(b)
    while any(b):
        a, b = b, polyrem(a, b)
    return a


def is_squarefree(p) -> bool:
    return len(trim(polygcd(p, deriv(p)))) == 1


def _sign_changes(seq):
    s = [x for x in seq if x != 0]
    return sum(1 for u, v in zip(s, s[1:]) if (u > 0) != (v > 0))


def count_real_roots(p) -> int:
    """Number of distinct real roots, by a Sturm sequence."""
    p = trim(p)
    seq = [p, deriv(p)]
    while len(seq[-1]) > 1 or seq[-1][0] != 0:
        r = polyrem(seq[-2], seq[-1])
        if len(r) == 1 and r[0] == 0:
            break
        seq.append([-c for c in r])
    at_neg = [q[-1] * (-1) ** (len(q) - 1) for q in seq]
    at_pos = [q[-1] for q in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def _divisors(n):
    from sympy import divisors
    return divisors(abs(n))


def rational_roots(p):
    """All rational roots of an integer polynomial."""
    p = trim([int(c) for c in p])
    roots = set()
    while len(p) > 1 and p[0] == 0:
        roots.add(Fraction(0))
        p = p[1:]
    if len(p) == 1:
        return sorted(roots)
    lead, const = p[-1], p[0]
    for num in _divisors(const):
        for den in _divisors(lead):
            if gcd(num, den) != 1:
                continue
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if sum(c * cand ** k for k, c in enumerate(p)) == 0:
                    roots.add(cand)
    return sorted(roots)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
