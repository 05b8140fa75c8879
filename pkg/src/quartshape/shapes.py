"""Archimedean embeddings of ring tables, projected Gram matrices and their reduction."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .linalg import charpoly, inverse
from .polyutil import is_squarefree
from .rings import CubicRingTable, RingTable

DEFAULT_PREC = 128


@dataclass
class EmbeddingData:
    r1: int
    r2: int
    # coords[i][s]: image of basis element i (0 is the unit) at place s; real places first
    coords: List[List]
    prec: int

    @property
    def rank(self):
        return self.r1 + 2 * self.r2

    def vector(self, i):
        out = []
        for s, z in enumerate(self.coords[i]):
            if s < self.r1:
                out.append(mpmath.re(z))
            else:
                out.extend([mpmath.re(z), mpmath.im(z)])
        return out

    def gram(self):
        vs = [self.vector(i) for i in range(self.rank)]
        return mpmath.matrix([[mpmath.fsum(a * b for a, b in zip(u, v)) for v in vs] for u in vs])

    def covolume(self):
        return mpmath.sqrt(mpmath.det(self.gram()))


def embed(table: RingTable, prec: int = DEFAULT_PREC) -> EmbeddingData:
    n = table.rank
    t = table.generic_t()
    theta = table.generic_element(t)
    poly = charpoly(table.mult_matrix(theta))
    # coordinates of theta^k in the basis; invert to write basis elements as polynomials in theta
    powers = [[int(i == 0) for i in range(n)]]
    for _ in range(n - 1):
        powers.append(table.mult(powers[-1], theta))
    w = inverse(powers)  # theta^k = sum_i P[k][i] e_i, so e_i = sum_k w[i][k] theta^k
    with mpmath.workprec(prec + 32):
        roots = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator if hasattr(c, "denominator")
                                  else mpmath.mpf(c) for c in reversed(poly)],
                                 maxsteps=400, extraprec=prec + 64)
        scale = max(1, max(abs(r) for r in roots))
        tol = mpmath.mpf(2) ** (-(prec // 2)) * scale
        real = sorted((mpmath.re(r) for r in roots if abs(mpmath.im(r)) <= tol))
        cplx = sorted((r for r in roots if mpmath.im(r) > tol), key=lambda z: (mpmath.re(z), mpmath.im(z)))
        if len(real) + 2 * len(cplx) != n:
            raise ArithmeticError("root isolation failed at this precision")
        places = [mpmath.mpc(r, 0) for r in real] + list(cplx)
        coords = []
        for i in range(n):
            row = []
            for z in places:
                acc = mpmath.mpc(0)
                zk = mpmath.mpc(1)
                for k in range(n):
                    cf = w[i][k]
                    acc += (mpmath.mpf(cf.numerator) / cf.denominator if hasattr(cf, "denominator")
                            else mpmath.mpf(cf)) * zk
                    zk *= z
                row.append(acc)
            coords.append(row)
    return EmbeddingData(len(real), len(cplx), coords, prec)


def projected_gram(e: EmbeddingData):
    """Gram matrix of the basis elements projected orthogonally to 1 (not rescaled)."""
    g = e.gram()
    n = e.rank
    return mpmath.matrix([[g[i, j] - g[0, i] * g[0, j] / g[0, 0] for j in range(1, n)]
                          for i in range(1, n)])


# ---------------------------------------------------------------- lattice reduction


def _qf(g, v):
    m = len(v)
    return mpmath.fsum(g[i, j] * v[i] * v[j] for i in range(m) for j in range(m))


def _bf(g, u, v):
    m = len(u)
    return mpmath.fsum(g[i, j] * u[i] * v[j] for i in range(m) for j in range(m))


def _det_int(rows):
    if len(rows) == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    a = rows
    return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))


def _greedy(g) -> List[List[int]]:
    """Greedy reduction (Minkowski-reduced in dimension <= 3); returns basis rows."""
    m = g.rows
    basis = [[int(i == j) for j in range(m)] for i in range(m)]
    for _ in range(200):
        basis.sort(key=lambda v: _qf(g, v))
        changed = False
        for i in range(1, m):
            best = basis[i]
            bn = _qf(g, best)
            # closest vector of the span of the earlier vectors, by searching around Babai rounding
            prev = basis[:i]
            gp = mpmath.matrix([[_bf(g, a, b) for b in prev] for a in prev])
            rhs = mpmath.matrix([_bf(g, a, basis[i]) for a in prev])
            y = mpmath.lu_solve(gp, rhs)
            centre = [int(mpmath.nint(c)) for c in y]
            for delta in itertools.product((-1, 0, 1), repeat=i):
                coef = [c + d for c, d in zip(centre, delta)]
                cand = [basis[i][k] - sum(coef[j] * prev[j][k] for j in range(i)) for k in range(m)]
                cn = _qf(g, cand)
                if cn < bn * (1 - mpmath.mpf(10) ** -30):
                    best, bn = cand, cn
            if best is not basis[i]:
                basis[i] = best
                changed = True
        if not changed:
            break
    basis.sort(key=lambda v: _qf(g, v))
    return basis


def reduced_bases(g, rel_tol=None) -> List[List[List[int]]]:
    """Every basis (up to signs of its vectors) realizing the successive minima of g.

    Ties are detected with relative tolerance ``rel_tol``; rows are integer coordinate vectors.
    """
    m = g.rows
    if rel_tol is None:
        rel_tol = mpmath.mpf(2) ** (-(mpmath.mp.prec * 2 // 3))
    base = _greedy(g)
    lam = [_qf(g, v) for v in base]
    top = lam[-1] * (1 + rel_tol)
    short = []
    for coef in itertools.product(range(-2, 3), repeat=m):
        if not any(coef):
            continue
        v = [sum(coef[j] * base[j][k] for j in range(m)) for k in range(m)]
        first = next(c for c in v if c)
        if first < 0:
            continue
        nv = _qf(g, v)
        if nv <= top:
            short.append((nv, v))
    levels = [[v for nv, v in short if abs(nv - lam[i]) <= rel_tol * lam[i]] for i in range(m)]
    out = []
    for combo in itertools.product(*levels):
        if abs(_det_int(list(combo))) == 1:
            out.append([list(v) for v in combo])
    if not out:
        raise ArithmeticError("no reduced basis found")
    return out


def _sign_normalize(g3):
    """Flip basis signs so off-diagonal entries are nonpositive where possible."""
    m = g3.rows
    signs = [1] * m
    if m == 2:
        if g3[0, 1] > 0:
            signs[1] = -1
    else:
        if g3[0, 1] != 0:
            if g3[0, 1] > 0:
                signs[1] = -1
            if g3[0, 2] * signs[0] * 1 > 0:
                signs[2] = -1
        else:
            if g3[0, 2] > 0:
                signs[2] = -1
            if g3[1, 2] * signs[2] > 0:
                signs[1] = -1
    return signs


@dataclass
class Shape:
    rank: int
    gram: object  # mpmath matrix, det 1, reduced
    basis: List[List[int]]  # reduced basis in coordinates of the input basis

    @property
    def z(self):
        if self.rank != 2:
            raise AttributeError("z is defined for rank-2 shapes")
        g = self.gram
        return mpmath.mpc(g[0, 1] / g[0, 0], mpmath.sqrt(mpmath.det(g)) / g[0, 0])

    def entries(self):
        g = self.gram
        if self.rank == 2:
            return [g[0, 0], g[1, 1], g[0, 1]]
        return [g[0, 0], g[1, 1], g[2, 2], g[0, 1], g[0, 2], g[1, 2]]


def _apply_basis(g, b):
    m = len(b)
    return mpmath.matrix([[_bf(g, b[i], b[j]) for j in range(m)] for i in range(m)])


def reduce_gram(g) -> Shape:
    """Canonical reduced representative of a positive-definite Gram matrix of det 1."""
    m = g.rows
    best = None
    for b in reduced_bases(g):
        h = _apply_basis(g, b)
        s = _sign_normalize(h)
        b2 = [[s[i] * c for c in b[i]] for i in range(m)]
        h = _apply_basis(g, b2)
        if m == 2 and h[0, 1] < 0:
            # fold the reflection x -> -x so that 0 <= x <= 1/2
            b2 = [b2[0], [-c for c in b2[1]]]
            h = _apply_basis(g, b2)
        key = tuple(float(mpmath.nstr(v, 15)) for v in
                    ([h[0, 0], h[1, 1], h[0, 1]] if m == 2 else
                     [h[0, 0], h[1, 1], h[2, 2], -h[0, 1], -h[0, 2], -h[1, 2]]))
        if best is None or key < best[0]:
            best = (key, h, b2)
    return Shape(m, best[1], best[2])


def unit_gram(g):
    m = g.rows
    return g / mpmath.det(g) ** (mpmath.mpf(1) / m)


def project_shape(e: EmbeddingData) -> Shape:
    with mpmath.workprec(e.prec):
        return reduce_gram(unit_gram(projected_gram(e)))


def shape_of(table: RingTable, prec: int = DEFAULT_PREC) -> Shape:
    return project_shape(embed(table, prec))


def greedy_float(g: np.ndarray) -> List[List[int]]:
    """Float64 twin of the greedy reduction; rows are integer coordinate vectors."""
    m = g.shape[0]
    basis = [[int(i == j) for j in range(m)] for i in range(m)]

    def q(v):
        v = np.asarray(v, dtype=float)
        return float(v @ g @ v)

    for _ in range(200):
        basis.sort(key=q)
        changed = False
        for i in range(1, m):
            prev = np.array(basis[:i], dtype=float)
            centre = np.rint(np.linalg.solve(prev @ g @ prev.T, prev @ g @ np.array(basis[i], dtype=float)))
            best, bn = basis[i], q(basis[i])
            for delta in itertools.product((-1, 0, 1), repeat=i):
                coef = centre.astype(int) + np.array(delta)
                cand = [basis[i][k] - int(sum(coef[j] * basis[j][k] for j in range(i))) for k in range(m)]
                cn = q(cand)
                if cn < bn * (1 - 1e-12):
                    best, bn = cand, cn
            if best is not basis[i]:
                basis[i] = best
                changed = True
        if not changed:
            break
    basis.sort(key=q)
    return basis


def _udu(w):
    """w = U diag(d) U^t with U unit upper triangular (3x3)."""
    d3 = w[2, 2]
    u13, u23 = w[0, 2] / d3, w[1, 2] / d3
    d2 = w[1, 1] - u23 * u23 * d3
    u12 = (w[0, 1] - u13 * u23 * d3) / d2
    d1 = w[0, 0] - u12 * u12 * d2 - u13 * u13 * d3
    return (u12, u13, u23), (d1, d2, d3)


def goldfeld_coords(gram) -> Tuple[float, ...]:
    """Canonical (x12, x13, x23, y1, y2) of a rank-3 lattice in the Siegel set.

    The rows r1, r2, r3 of z = x y are chosen so that r3 is a shortest vector, r2 has
    the shortest projection orthogonal to r3, all x are size-reduced, and the signs of
    the rows make x12 and x13 nonnegative.
    """
    g = np.array([[float(gram[i, j]) for j in range(3)] for i in range(3)]) if not isinstance(gram, np.ndarray) \
        else np.asarray(gram, dtype=float)
    b = np.array(greedy_float(g))
    g = b @ g @ b.T
    # project b2, b3 orthogonally to b1 and Gauss-reduce the plane
    p = g[1:, 1:] - np.outer(g[0, 1:], g[0, 1:]) / g[0, 0]
    t = np.array(greedy_float(p))
    rows = np.zeros((3, 3), dtype=int)
    rows[2] = (1, 0, 0)
    rows[1] = (0, t[0][0], t[0][1])
    rows[0] = (0, t[1][0], t[1][1])
    for _ in range(3):
        w = rows @ g @ rows.T
        (u12, u13, u23), _ = _udu(w)
        rows[0] -= int(round(u12)) * rows[1]
        w = rows @ g @ rows.T
        (u12, u13, u23), _ = _udu(w)
        rows[1] -= int(round(u23)) * rows[2]
        rows[0] -= int(round(u13)) * rows[2]
    w = rows @ g @ rows.T
    (u12, u13, u23), (d1, d2, d3) = _udu(w)
    s2 = -1.0 if u12 < 0 else 1.0
    s3 = -1.0 if u13 < 0 else 1.0
    return (s2 * u12, s3 * u13, s2 * s3 * u23, math.sqrt(d2 / d3), math.sqrt(d1 / d2))


def iwasawa_coords(s: Shape):
    """Rank 2: (x, y) of the reduced z.  Rank 3: canonical coordinates in the Siegel set."""
    if s.rank == 2:
        z = s.z
        return (float(mpmath.re(z)), float(mpmath.im(z)))
    return goldfeld_coords(s.gram)


def gram_from_iwasawa(c):
    """Det-1 Gram whose basis is the rows of z = x y (inverse of the coordinate maps)."""
    if len(c) == 2:
        x, y = c
        return mpmath.matrix([[1 / y, x / y], [x / y, (x * x + y * y) / y]])
    x12, x13, x23, y1, y2 = (mpmath.mpf(v) for v in c)
    z = mpmath.matrix([[y1 * y2, x12 * y1, x13], [0, y1, x23], [0, 0, 1]])
    w = z * z.T
    return w / mpmath.det(w) ** (mpmath.mpf(1) / 3)
