"""Quartic fields of small discriminant by Hunter's bound on monic polynomials.

Independent of the pair machinery: field discriminants come from a small
round-two maximal order computation on polynomial orders.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from fractions import Fraction

from sympy import Matrix, Poly, discriminant, factor_list, factorint, symbols, sympify
from sympy.matrices.normalforms import hermite_normal_form

x = symbols("x")


def _square_part_ok(d, bound):
    # some k^2 | d with |d|/k^2 <= bound
    sq = 1
    for p, e in factorint(abs(d)).items():
        sq *= p ** (e // 2)
    return abs(d) // (sq * sq) <= bound


def _cubic_resolvent_irreducible(a):
    # x^4 + a3 x^3 + a2 x^2 + a1 x + a0, resolvent y^3 - a2 y^2 + (a1 a3 - 4 a0) y + 4 a0 a2 - a1^2 - a3^2 a0
    a0, a1, a2, a3 = a
    r = Poly(x ** 3 - a2 * x ** 2 + (a1 * a3 - 4 * a0) * x + 4 * a0 * a2 - a1 ** 2 - a3 ** 2 * a0, x)
    return len(factor_list(r)[1]) == 1 and factor_list(r)[1][0][1] == 1


def _polymulmod(a, b, f):
    # a, b: Fraction lists of length n (low first); f monic integer coeffs low first, degree n
    n = len(f) - 1
    prod = [Fraction(0)] * (2 * n - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                prod[i + j] += u * v
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k]
        if c:
            for i in range(n + 1):
                prod[k - n + i] -= c * f[i]
    return prod[:n]


def _kernel_mod(rows, p):
    """Basis of {c : sum_i c_i rows[i] = 0 mod p} (rows: integer lists)."""
    m = len(rows)
    ncol = len(rows[0])
    # augment with identity and row-reduce the transposed system
    aug = [[r[j] % p for j in range(ncol)] + [int(i == k) for k in range(m)] for i, r in enumerate(rows)]
    piv_row = 0
    for col in range(ncol):
        pr = next((i for i in range(piv_row, m) if aug[i][col] % p), None)
        if pr is None:
            continue
        aug[piv_row], aug[pr] = aug[pr], aug[piv_row]
        inv = pow(aug[piv_row][col], -1, p)
        aug[piv_row] = [v * inv % p for v in aug[piv_row]]
        for i in range(m):
            if i != piv_row and aug[i][col] % p:
                t = aug[i][col]
                aug[i] = [(u - t * v) % p for u, v in zip(aug[i], aug[piv_row])]
        piv_row += 1
    return [row[ncol:] for row in aug[piv_row:]]


def _hnf_basis(vectors):
    """Z-basis (Fraction rows) of the lattice spanned by rational vectors of full rank."""
    den = 1
    for v in vectors:
        for c in v:
            den = den * c.denominator // math.gcd(den, c.denominator)
    mat = Matrix([[int(c * den) for c in v] for v in vectors]).T
    h = hermite_normal_form(mat).T
    return [[Fraction(int(c), den) for c in h.row(i)] for i in range(h.rows)]


class _Order:
    def __init__(self, f, basis):
        self.f = f
        self.n = len(f) - 1
        self.basis = basis
        self.inv = Matrix(basis).inv()

    def coords(self, v):
        c = Matrix([v]) * self.inv
        return [Fraction(int(sympify(t).p), int(sympify(t).q)) for t in c]

    def mul(self, a, b):
        return _polymulmod(a, b, self.f)

    def power(self, a, e):
        r = [Fraction(int(i == 0)) for i in range(self.n)]
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r


def _enlarge(order, p):
    """A strictly larger order at p, or None when the order is p-maximal."""
    n = order.n
    q = p
    while q < n:
        q *= p
    frob = [[int(c) % p for c in order.coords(order.power(e, q))] for e in order.basis]
    rad = _kernel_mod(frob, p)
    ip = [[sum(Fraction(r[i]) * order.basis[i][k] for i in range(n)) for k in range(n)] for r in rad]
    ip = _hnf_basis(ip + [[p * c for c in e] for e in order.basis])
    ipinv = Matrix(ip).inv()
    rows = []
    for e in order.basis:
        row = []
        for g in ip:
            c = Matrix([order.mul(e, g)]) * ipinv
            row.extend(int(sympify(t)) for t in c)
        rows.append(row)
    ker = _kernel_mod(rows, p)
    if not ker:
        return None
    new = [[sum(Fraction(r[i], p) * order.basis[i][k] for i in range(n)) for k in range(n)] for r in ker]
    return _Order(order.f, _hnf_basis(new + order.basis))


def _field_disc(fpoly):
    f = [int(c) for c in reversed(fpoly.all_coeffs())]
    n = len(f) - 1
    d = int(discriminant(fpoly))
    order = _Order(f, [[Fraction(int(i == k)) for k in range(n)] for i in range(n)])
    for p, e in factorint(abs(d)).items():
        if e < 2:
            continue
        while True:
            bigger = _enlarge(order, p)
            if bigger is None:
                break
            order = bigger
    index = 1 / abs(Matrix(order.basis).det())
    return d // int(index) ** 2


def quartic_fields(bound, real_places=None):
    """Sorted (field disc, r2, "S4" or "A4", coeffs low->high) for primitive quartic fields.

    Every S4 or A4 field with |D| <= bound is met; fields sharing a discriminant are
    reported once, so callers should rely on the discriminant set only.
    """
    n = 4
    found = {}
    for a1 in range(0, 3):
        t2max = a1 * a1 / n + 2 ** (1 / 3) * (bound / n) ** (1 / 3) + 1e-9
        c3 = int(math.floor(4 * (t2max / 4) ** 1.5))
        c4 = int(math.floor((t2max / 4) ** 2))
        lo2 = math.ceil((a1 * a1 - t2max) / 2)
        # |sum theta^2| <= T2 also bounds e2 from above when roots are complex
        hi2 = math.floor((a1 * a1 + t2max) / 2)
        for e2 in range(lo2, hi2 + 1):
            for e3 in range(-c3, c3 + 1):
                for e4 in range(-c4, c4 + 1):
                    if e4 == 0:
                        continue
                    # x^4 - e1 x^3 + e2 x^2 - e3 x + e4
                    coeffs = (e4, -e3, e2, -a1)
                    roots = np.roots([1, -a1, e2, -e3, e4])
                    if float(np.sum(np.abs(roots) ** 2)) > t2max + 1e-6:
                        continue
                    nreal = int(np.sum(np.abs(roots.imag) < 1e-7))
                    r2 = (n - nreal) // 2
                    if real_places is not None and nreal != real_places:
                        continue
                    f = Poly(x ** 4 - a1 * x ** 3 + e2 * x ** 2 - e3 * x + e4, x)
                    if not f.is_irreducible:
                        continue
                    d = int(discriminant(f))
                    if not _square_part_ok(d, bound):
                        continue
                    if not _cubic_resolvent_irreducible(coeffs):
                        continue
                    label = "A4" if d > 0 and math.isqrt(d) ** 2 == d else "S4"
                    dk = _field_disc(f)
                    if abs(dk) > bound:
                        continue
                    key = (dk, label)
                    if key not in found:
                        found[key] = (dk, r2, label, coeffs + (1,))
    return sorted(found.values(), key=lambda t: (abs(t[0]), t[0]))


def smallest_totally_real_s4(bound):
    fields = [f for f in quartic_fields(bound, real_places=4) if f[2] == "S4"]
    return fields[0][0] if fields else None
