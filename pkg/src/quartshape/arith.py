"""Maximality at p (form side and ring side), reducibility, and the sieve indicators."""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional

from sympy import factorint

from .forms import KEYS, Pair, disc_pair, pairing, resolvent_cubic
from .polyutil import is_square, rational_roots
from .rings import RingTable, content, quartic_ring

MAXIMAL = "maximal"


def _lines(p: int) -> Iterator[tuple]:
    """Normalized representatives of the p^2 + p + 1 lines of F_p^3."""
    for a in range(p):
        for b in range(p):
            yield (1, a, b)
    for b in range(p):
        yield (0, 1, b)
    yield (0, 0, 1)


def _planes(p: int) -> Iterator[tuple]:
    """Each plane of F_p^3 as (u1, u2, w) with w completing a basis."""
    for a in range(p):
        for b in range(p):
            yield (1, 0, a), (0, 1, b), (0, 0, 1)
    for a in range(p):
        yield (1, a, 0), (0, 0, 1), (0, 1, 0)
    yield (0, 1, 0), (0, 0, 1), (1, 0, 0)


def _complement(v):
    """Two vectors completing the normalized vector v to a basis."""
    piv = next(i for i in range(3) if v[i] % 1 == 0 and v[i] != 0)
    others = [i for i in range(3) if i != piv]
    return [tuple(int(k == o) for k in range(3)) for o in others]


def _family3(x: Pair, p: int) -> bool:
    a, b = x.A.coeffs, x.B.coeffs
    return all((a[i] * b[j] - a[j] * b[i]) % p == 0 for i in range(6) for j in range(i + 1, 6))


def _family1(x: Pair, p: int) -> bool:
    A, B = x.A, x.B
    p2 = p * p
    for v0 in _lines(p):
        av, bv = A(v0) % p, B(v0) % p
        if any((av * cb - bv * ca) % p for ca, cb in zip(A.coeffs, B.coeffs)):
            continue
        comp = _complement(v0)
        if av == 0 and bv == 0:
            la = [A.polar(v0, w) % p for w in comp]
            lb = [B.polar(v0, w) % p for w in comp]
            if (la[0] * lb[1] - la[1] * lb[0]) % p:
                continue
        for s1 in range(p):
            for s2 in range(p):
                v = tuple(v0[k] + p * (s1 * comp[0][k] + s2 * comp[1][k]) for k in range(3))
                av2, bv2 = A(v), B(v)
                if all((av2 * B.polar(v, w) - bv2 * A.polar(v, w)) % p2 == 0 for w in comp):
                    return True
    return False


def _family2(x: Pair, p: int) -> bool:
    A, B = x.A, x.B
    p2 = p * p

    def restricted(u1, u2):
        return ((A(u1), A.polar(u1, u2), A(u2)), (B(u1), B.polar(u1, u2), B(u2)))

    def minors(ra, rb, mod):
        return all((ra[i] * rb[j] - ra[j] * rb[i]) % mod == 0 for i in range(3) for j in range(i + 1, 3))

    for u1, u2, w in _planes(p):
        ra, rb = restricted(u1, u2)
        if not minors(ra, rb, p):
            continue
        ca = (A.polar(u1, w), A.polar(u2, w))
        cb = (B.polar(u1, w), B.polar(u2, w))
        if any((ra[i] * cb[k] - ca[k] * rb[i]) % p for i in range(3) for k in range(2)):
            continue
        for s1 in range(p):
            for s2 in range(p):
                v1 = tuple(u1[k] + p * s1 * w[k] for k in range(3))
                v2 = tuple(u2[k] + p * s2 * w[k] for k in range(3))
                ra, rb = restricted(v1, v2)
                if minors(ra, rb, p2):
                    return True
    return False


def nonmaximal_type(x: Pair, p: int) -> Optional[int]:
    """Which condition family (3, 1, 2 tried in that order) certifies non-maximality, or None."""
    if _family3(x, p):
        return 3
    if _family1(x, p):
        return 1
    if _family2(x, p):
        return 2
    return None


def phi_p(x: Pair, p: int) -> bool:
    return nonmaximal_type(x, p) is not None


def _squarefree_primes(q: int) -> List[int]:
    f = factorint(q)
    if any(e > 1 for e in f.values()):
        raise ValueError(f"{q} is not squarefree")
    return sorted(f)


def phi_q(x: Pair, q: int) -> bool:
    return all(phi_p(x, p) for p in _squarefree_primes(q))


# ---------------------------------------------------------------- ring side

def _rank_mod(rows, p) -> int:
    m = [[c % p for c in r] for r in rows]
    rank, col, n = 0, 0, len(m[0]) if m else 0
    while rank < len(m) and col < n:
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [c * inv % p for c in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
        col += 1
    return rank


def _kernel_mod(mat, p):
    """Basis of {v : mat v = 0} over F_p (mat as list of rows)."""
    rows = [[c % p for c in r] for r in mat]
    n = len(rows[0])
    piv_cols, r = [], 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [c * inv % p for c in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    free = [c for c in range(n) if c not in piv_cols]
    basis = []
    for fcol in free:
        v = [0] * n
        v[fcol] = 1
        for i, pc in enumerate(piv_cols):
            v[pc] = -rows[i][fcol] % p
        basis.append(v)
    return basis


def _power_mod(q: RingTable, u, e, p):
    result = [1, 0, 0, 0]
    base = [c % p for c in u]
    while e:
        if e & 1:
            result = [c % p for c in q.mult(result, base)]
        base = [c % p for c in q.mult(base, base)]
        e >>= 1
    return result


def nilradical_mod(q: RingTable, p: int):
    e = p
    while e < 4:
        e *= p
    images = [_power_mod(q, [int(i == k) for i in range(4)], e, p) for k in range(4)]
    mat = [[images[k][i] for k in range(4)] for i in range(4)]
    return _kernel_mod(mat, p)


def _subspaces(r: int, p: int):
    """All nonzero subspaces of F_p^r, each as a list of basis rows in reduced echelon form."""
    from itertools import combinations, product
    for d in range(1, r + 1):
        for pivots in combinations(range(r), d):
            free = [(i, c) for i in range(d) for c in range(r) if c > pivots[i] and c not in pivots]
            for vals in product(range(p), repeat=len(free)):
                rows = [[0] * r for _ in range(d)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, c), v in zip(free, vals):
                    rows[i][c] = v
                yield rows


def superring_oracle(q: RingTable, p: int) -> bool:
    """True iff Q + W/p is a ring for some nonzero subspace W of Q/pQ."""
    if q.disc() == 0:
        raise ValueError("oracle needs a nondegenerate ring")
    rad = nilradical_mod(q, p)
    if not rad:
        return False
    e = [[int(i == k) for i in range(4)] for k in range(4)]
    for coords in _subspaces(len(rad), p):
        basis = [[sum(c * rad[t][i] for t, c in enumerate(row)) % p for i in range(4)] for row in coords]
        dim = len(basis)

        def inside(v):
            return _rank_mod(basis + [v], p) == dim

        ok = all(inside(q.mult(e[k], w)) for w in basis for k in range(1, 4))
        if ok:
            for i in range(dim):
                for j in range(i, dim):
                    prod = q.mult(basis[i], basis[j])
                    if any(c % p for c in prod):
                        ok = False
                        break
                    if not inside([c // p for c in prod]):
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            return True
    return False


# ---------------------------------------------------------------- verdicts and flags

@dataclass
class MaximalityVerdict:
    per_prime: Dict[int, str] = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return all(v == MAXIMAL for v in self.per_prime.values())


def relevant_primes(d: int) -> List[int]:
    return sorted(p for p, e in factorint(abs(d)).items() if e >= 2)


def maximality(x: Pair) -> MaximalityVerdict:
    d = disc_pair(x)
    if d == 0:
        raise ValueError("maximality needs a nondegenerate pair")
    verdict = MaximalityVerdict()
    for p in relevant_primes(d):
        t = nonmaximal_type(x, p)
        verdict.per_prime[p] = MAXIMAL if t is None else f"non-maximal-type-{t}"
    return verdict


@dataclass(frozen=True)
class ClassificationFlags:
    reducible: bool
    totally_irreducible: bool
    galois_hint: str = "not-applicable"


def cubic_reducible(x: Pair) -> bool:
    a, b, c, d = resolvent_cubic(x).coeffs
    if a == 0:
        return True
    return bool(rational_roots([d, c, b, a]))


def common_rational_zero(x: Pair) -> bool:
    poly = quartic_ring(x).generic_charpoly()
    return bool(rational_roots(poly))


def classify(x: Pair, maximal: Optional[bool] = None) -> ClassificationFlags:
    d = disc_pair(x)
    if d == 0:
        raise ValueError("classify needs a nondegenerate pair")
    reducible = cubic_reducible(x) or common_rational_zero(x)
    hint = "not-applicable"
    if not reducible:
        if maximal is None:
            maximal = maximality(x).overall
        if maximal:
            hint = "A4" if is_square(d) else "S4"
    return ClassificationFlags(reducible, not reducible, hint)


# ---------------------------------------------------------------- Fourier transform estimate

@dataclass(frozen=True)
class ComplexEstimate:
    real: float
    imag: float
    stderr_real: float
    stderr_imag: float

    def __abs__(self):
        return math.hypot(self.real, self.imag)


def phi_hat_estimate(y: Pair, q: int, samples: int, seed: int) -> ComplexEstimate:
    """Monte Carlo mean of Phi_q(X) e([X, y] / q^2) over uniform X in (Z/q^2)^12."""
    primes = _squarefree_primes(q) if q > 1 else []
    if not primes:
        return ComplexEstimate(1.0, 0.0, 0.0, 0.0)
    rng = random.Random(seed)
    m = q * q
    sr = si = sr2 = si2 = 0.0
    for _ in range(samples):
        X = Pair.from_coeffs([rng.randrange(m) for _ in range(12)])
        if not all(phi_p(X, p) for p in primes):
            continue
        ang = 2 * math.pi * float(Fraction(pairing(X, y)) / m % 1)
        z = cmath.exp(1j * ang)
        sr += z.real
        si += z.imag
        sr2 += z.real ** 2
        si2 += z.imag ** 2
    n = samples
    mr, mi = sr / n, si / n
    ser = math.sqrt(max(sr2 / n - mr * mr, 0.0) / max(n - 1, 1))
    sei = math.sqrt(max(si2 / n - mi * mi, 0.0) / max(n - 1, 1))
    return ComplexEstimate(mr, mi, ser, sei)
