"""Quartic rings of pairs and cubic rings of binary cubic forms, as integer multiplication tables."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, List, Sequence, Tuple

from .forms import BinaryCubic, GroupElement, Pair, act, disc_pair, resolvent_cubic
from .linalg import charpoly, det, inverse
from .polyutil import is_squarefree


def lam(x: Pair, ij: str, kl: str):
    """lambda^{ij}_{kl} = a_ij b_kl - a_kl b_ij."""
    return x.A[ij] * x.B[kl] - x.A[kl] * x.B[ij]


def _int(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


class RingTable:
    """Commutative rank-n ring on the basis 1, w_1, ..., w_{n-1}.

    ``prod[(i, j)]`` holds (c0, c1, ..., c_{n-1}) with w_i w_j = c0 + sum_k ck w_k.
    """

    __slots__ = ("rank", "prod")

    def __init__(self, rank: int, prod: Dict[Tuple[int, int], Sequence]):
        self.rank = rank
        full = {}
        for i in range(1, rank):
            for j in range(1, rank):
                key = (i, j) if (i, j) in prod else (j, i)
                full[(i, j)] = tuple(_int(c) for c in prod[key])
        self.prod = full

    def c(self, k: int, i: int, j: int):
        return self.prod[(i, j)][k]

    def mult(self, u, v):
        n = self.rank
        out = [0] * n
        for i in range(n):
            if u[i] == 0:
                continue
            for j in range(n):
                if v[j] == 0:
                    continue
                w = u[i] * v[j]
                if i == 0 or j == 0:
                    out[i + j] += w
                else:
                    for k, ck in enumerate(self.prod[(i, j)]):
                        out[k] += w * ck
        return [_int(x) for x in out]

    def mult_matrix(self, u):
        """Matrix of multiplication by u: column k is u * e_k."""
        n = self.rank
        cols = [self.mult(u, [int(i == k) for i in range(n)]) for k in range(n)]
        return [[cols[k][i] for k in range(n)] for i in range(n)]

    def trace(self, u):
        m = self.mult_matrix(u)
        return sum(m[i][i] for i in range(self.rank))

    def trace_form(self):
        n = self.rank
        e = [[int(i == k) for i in range(n)] for k in range(n)]
        return [[self.trace(self.mult(e[i], e[j])) for j in range(n)] for i in range(n)]

    def disc(self):
        return det(self.trace_form())

    def is_associative(self) -> bool:
        n = self.rank
        e = [[int(i == k) for i in range(n)] for k in range(n)]
        for i in range(1, n):
            for j in range(1, n):
                for k in range(1, n):
                    if self.mult(self.mult(e[i], e[j]), e[k]) != self.mult(e[i], self.mult(e[j], e[k])):
                        return False
        return True

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for v in self.prod.values() for c in v)

    def basechange(self, m) -> "RingTable":
        """Table on the basis w'_i = sum_j m[i][j] w_j (i, j >= 1)."""
        n = self.rank
        minv = inverse(m)
        vec = [[0] + list(row) for row in m]
        new = {}
        for i in range(1, n):
            for j in range(i, n):
                p = self.mult(vec[i - 1], vec[j - 1])
                rest = [sum(Fraction(p[1 + a]) * minv[a][b] for a in range(n - 1)) for b in range(n - 1)]
                new[(i, j)] = [p[0]] + rest
        return RingTable(n, new)

    def translate(self, shift) -> "RingTable":
        """Table on the basis w_i + shift_i."""
        n = self.rank
        new = {}
        for i in range(1, n):
            for j in range(i, n):
                u = [shift[i - 1]] + [int(k == i) for k in range(1, n)]
                v = [shift[j - 1]] + [int(k == j) for k in range(1, n)]
                p = self.mult(u, v)
                c0 = p[0] - sum(p[k] * shift[k - 1] for k in range(1, n))
                new[(i, j)] = [c0] + p[1:]
        return RingTable(n, new)

    def normalized(self) -> "RingTable":
        """Fix the translation freedom by a rank-specific convention."""
        if self.rank == 4:
            shift = (-self.c(2, 1, 2), -self.c(3, 2, 3), -self.c(1, 1, 3))
        elif self.rank == 3:
            shift = (-self.c(2, 1, 2), -self.c(1, 1, 2))
        else:
            return self
        return self.translate(shift)

    def serialize(self) -> List:
        t = self.normalized()
        n = self.rank
        pairs = [(i, j) for i in range(1, n) for j in range(i, n)]
        out = [t.c(0, i, j) for i, j in pairs]
        skip = {(2, 1, 2), (3, 2, 3), (1, 1, 3)} if n == 4 else {(1, 1, 2), (2, 1, 2)}
        for k in range(1, n):
            for i, j in pairs:
                if (k, i, j) not in skip:
                    out.append(t.c(k, i, j))
        return out

    def generic_element(self, t: int):
        return [0] + [t ** k for k in range(self.rank - 1)]

    def generic_charpoly(self, tries: int = 64):
        """Characteristic polynomial of w_1 + t w_2 + t^2 w_3 for the first t making it squarefree."""
        for t in range(1, tries + 1):
            p = charpoly(self.mult_matrix(self.generic_element(t)))
            if is_squarefree(p):
                return p
        raise ValueError("no squarefree generic characteristic polynomial found")

    def generic_t(self, tries: int = 64) -> int:
        for t in range(1, tries + 1):
            if is_squarefree(charpoly(self.mult_matrix(self.generic_element(t)))):
                return t
        raise ValueError("no squarefree generic characteristic polynomial found")

    def __eq__(self, o):
        return isinstance(o, RingTable) and self.rank == o.rank and self.prod == o.prod

    def __hash__(self):
        return hash(tuple(sorted(self.prod.items())))

    def __repr__(self):
        return f"RingTable(rank={self.rank}, {self.serialize()})"


QuarticRingTable = RingTable


class CubicRingTable(RingTable):
    __slots__ = ("form",)

    def __init__(self, form: BinaryCubic):
        a, b, c, d = form.coeffs
        super().__init__(3, {(1, 1): (-a * c, b, -a), (1, 2): (-a * d, 0, 0), (2, 2): (-b * d, d, -c)})
        self.form = form


def _lambdas(x: Pair):
    keys = ("11", "22", "33", "12", "13", "23")
    a, b = x.A, x.B
    return {(p, q): a[p] * b[q] - a[q] * b[p] for p in keys for q in keys}


def quartic_ring(x: Pair) -> RingTable:
    L = _lambdas(x)
    c = {}
    c[(1, 1, 1)] = L["11", "23"] + L["12", "13"]
    c[(2, 1, 1)] = -L["11", "13"]
    c[(3, 1, 1)] = L["11", "12"]
    c[(1, 2, 2)] = L["22", "23"]
    c[(2, 2, 2)] = L["22", "13"] - L["12", "23"]
    c[(3, 2, 2)] = -L["22", "12"]
    c[(1, 3, 3)] = -L["33", "23"]
    c[(2, 3, 3)] = L["33", "13"]
    c[(3, 3, 3)] = L["13", "23"] + L["33", "12"]
    c[(1, 1, 2)] = L["22", "13"]
    c[(2, 1, 2)] = 0
    c[(3, 1, 2)] = L["11", "22"]
    c[(1, 1, 3)] = 0
    c[(2, 1, 3)] = -L["11", "33"]
    c[(3, 1, 3)] = L["11", "23"]
    c[(1, 2, 3)] = L["22", "33"]
    c[(2, 2, 3)] = L["33", "12"]
    c[(3, 2, 3)] = 0

    def cc(k, i, j):
        return c[(k, i, j) if i <= j else (k, j, i)]

    prod = {}
    for i in (1, 2, 3):
        for j in range(i, 4):
            k = 2 if i == 1 else 1
            c0 = sum(cc(r, j, k) * cc(k, i, r) - cc(r, i, j) * cc(k, r, k) for r in (1, 2, 3))
            prod[(i, j)] = (c0, cc(1, i, j), cc(2, i, j), cc(3, i, j))
    return RingTable(4, prod)


def cubic_ring(f: BinaryCubic) -> CubicRingTable:
    return CubicRingTable(f)


def ring_of_action(x: Pair, g: GroupElement) -> RingTable:
    """Basis change matching quartic_ring(act(g, x)); used by tests and stabilizers."""
    d = g.det3() * g.det2()
    m = [[d * v for v in row] for row in g.g3]
    return quartic_ring(x).basechange(m).normalized()


def _content_shift(q: RingTable, n: int):
    """Translation making every ck_ij divisible by n, or None."""
    shift = []
    for i in (1, 2, 3):
        j = 2 if i == 1 else 1
        shift.append(-q.c(j, i, j) % n)
    t = q.translate(shift)
    ok = all(t.c(k, i, j) % n == 0 for (i, j) in t.prod for k in (1, 2, 3)) and \
        all(t.c(0, i, j) % (n * n) == 0 for (i, j) in t.prod)
    return t if ok else None


def content(q: RingTable):
    """Return (n, Q') with Q = Z + n Q' and n maximal."""
    d = q.disc()
    if d == 0:
        raise ValueError("content needs a nondegenerate ring")
    base = q.normalized()
    g = 0
    # gcd of translation-invariant constants and combinations bounds n
    for i in (1, 2, 3):
        others = [k for k in (1, 2, 3) if k != i]
        g = gcd(g, base.c(others[0], i, i), base.c(others[1], i, i))
        g = gcd(g, base.c(i, i, i) - 2 * base.c(others[0], i, others[0]))
        g = gcd(g, base.c(others[0], i, others[0]) - base.c(others[1], i, others[1]))
    g = gcd(g, base.c(3, 1, 2), base.c(2, 1, 3), base.c(1, 2, 3))
    best, best_t = 1, base
    from sympy import divisors
    for n in divisors(g) if g else []:
        if n == 1 or d % n ** 6:
            continue
        t = _content_shift(base, n)
        if t is not None and n > best:
            best, best_t = n, t
    if best == 1:
        return 1, base
    qp = RingTable(4, {key: (v[0] // best ** 2,) + tuple(c // best for c in v[1:])
                       for key, v in best_t.prod.items()})
    return best, qp.normalized()


def hecke_points(n: int):
    """Upper triangular (a, b, d) with ad = n, 0 <= b < d, sorted by (d, b)."""
    if n < 1:
        raise ValueError("n must be positive")
    pts = [(n // d, b, d) for d in range(1, n + 1) if n % d == 0 for b in range(d)]
    return sorted(pts, key=lambda p: (p[2], p[1]))


def _apply_g2(x: Pair, a, b, d, scale=1) -> Pair:
    g = GroupElement(((1, 0, 0), (0, 1, 0), (0, 0, 1)), ((Fraction(a, scale), Fraction(b, scale)),
                                                          (0, Fraction(d, scale))))
    return act(g, x)


def primitive_model(x: Pair):
    """(n, x') with x = h x' for some h of determinant n and x' primitive."""
    n, _ = content(quartic_ring(x))
    if n == 1:
        return 1, x
    for a, b, d in hecke_points(n):
        y = _apply_g2(x, a, b, d, n)
        if y.is_integral() and content(quartic_ring(y))[0] == 1:
            return n, y
    raise ArithmeticError("no primitive model found")


def resolvents_of(x: Pair) -> List[BinaryCubic]:
    if disc_pair(x) == 0:
        raise ValueError("resolvents need a nondegenerate pair")
    n, y = primitive_model(x)
    if n == 1:
        return [resolvent_cubic(x)]
    return [resolvent_cubic(_apply_g2(y, a, b, d)) for a, b, d in hecke_points(n)]
