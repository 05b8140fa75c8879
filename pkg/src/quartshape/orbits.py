"""Orbit enumeration, canonical representatives, equivalence and stabilizers."""
from __future__ import annotations

import itertools
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .arith import ClassificationFlags, MaximalityVerdict, classify, maximality
from .forms import GroupElement, Pair, act, disc_pair, resolvent_cubic
from .linalg import charpoly
from .rings import RingTable, content, cubic_ring, quartic_ring
from .shapes import greedy_float

log = logging.getLogger(__name__)

_D = ((1, 0), (0, -1))


class Undecided(ArithmeticError):
    """Raised when a canonical form or an equivalence cannot be certified."""

    def __init__(self, msg, certificate=None):
        super().__init__(msg)
        self.certificate = certificate


# ---------------------------------------------------------------- float embeddings

def _embedding_matrix(table: RingTable) -> np.ndarray:
    """Complex images of the basis (rows) under all n embeddings (columns), float64."""
    n = table.rank
    t = table.generic_t()
    theta = table.generic_element(t)
    poly = [float(c) for c in charpoly(table.mult_matrix(theta))]
    roots = np.roots(poly[::-1])
    # polish with a few Newton steps in extended precision
    p = np.poly1d(poly[::-1])
    dp = p.deriv()
    for _ in range(3):
        roots = roots - p(roots) / dp(roots)
    powers = [[int(i == 0) for i in range(n)]]
    for _ in range(n - 1):
        powers.append(table.mult(powers[-1], theta))
    w = np.linalg.inv(np.array(powers, dtype=float))
    vander = np.vander(roots, n, increasing=True).T  # [k, s] = root_s^k
    return w @ vander


def _real_coords(emb: np.ndarray) -> np.ndarray:
    """Rows of R^n coordinates; complex places (Im > 0) contribute Re and Im."""
    cols = []
    for s in range(emb.shape[1]):
        im = emb[:, s].imag
        big = np.abs(im) > 1e-6 * max(1.0, float(np.max(np.abs(emb[:, s]))))
        if not big.any():
            cols.append(emb[:, s].real)
        elif im[np.argmax(big)] > 0:
            # conjugate columns disagree in sign at their first clearly nonzero entry
            cols.append(emb[:, s].real)
            cols.append(emb[:, s].imag)
    if len(cols) != emb.shape[1]:
        raise Undecided("could not separate the complex places")
    return np.array(cols).T


def _proj_gram_float(table: RingTable) -> np.ndarray:
    v = _real_coords(_embedding_matrix(table))
    g = v @ v.T
    pg = g[1:, 1:] - np.outer(g[0, 1:], g[0, 1:]) / g[0, 0]
    return pg / np.linalg.det(pg) ** (1.0 / pg.shape[0])


def _reduced_bases_float(g: np.ndarray, tol: float = 1e-7) -> List[np.ndarray]:
    m = g.shape[0]
    base = np.array(greedy_float(g))
    lam = [float(v @ g @ v) for v in base]
    levels = [[] for _ in range(m)]
    for coef in itertools.product(range(-2, 3), repeat=m):
        if not any(coef):
            continue
        v = np.array(coef) @ base
        if v[np.nonzero(v)[0][0]] < 0:
            continue
        nv = float(v @ g @ v)
        for i in range(m):
            if abs(nv - lam[i]) <= tol * lam[i]:
                levels[i].append(v)
    out = []
    for combo in itertools.product(*levels):
        b = np.array(combo)
        if abs(round(np.linalg.det(b))) == 1:
            out.append(b)
    if not out:
        raise Undecided("no reduced basis found")
    return out


# ---------------------------------------------------------------- canonical forms

def _g2_from_resolvent_basis(v) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    """The g2 whose induced change of resolvent-ring basis is v."""
    d = int(round(v[0][0] * v[1][1] - v[0][1] * v[1][0]))
    return ((d * int(v[0][0]), -d * int(v[0][1])), (-d * int(v[1][0]), d * int(v[1][1])))


def reduction_candidates(x: Pair) -> List[Pair]:
    """Pairs obtained by moving both attached rings to every reduced basis."""
    q = quartic_ring(x)
    us = _reduced_bases_float(_proj_gram_float(q))
    f = resolvent_cubic(x)
    vs = _reduced_bases_float(_proj_gram_float(cubic_ring(f)))
    out = []
    for u in us:
        y = act(GroupElement([[int(c) for c in row] for row in u]), x)
        for v in vs:
            out.append(act(GroupElement(((1, 0, 0), (0, 1, 0), (0, 0, 1)), _g2_from_resolvent_basis(v)), y))
    return out


def canonicalize(x: Pair) -> Pair:
    """Orbit invariant representative.

    Both attached rings are moved to reduced bases (every tie enumerated) and the
    least candidate under signed permutations, sign changes and the A/B swap wins.
    """
    if disc_pair(x) == 0:
        raise ValueError("canonical forms need a nondegenerate pair")
    best = None
    for y in reduction_candidates(x):
        key = kernels.sp_min(y.coeffs)
        if best is None or key < best:
            best = key
    return Pair.from_coeffs(best)


# ---------------------------------------------------------------- equivalence and stabilizers

def _ring_isomorphisms(q1: RingTable, q2: RingTable) -> List[List[List[int]]]:
    """Integral N with q2 equal to the basis change of q1 by N (translations ignored)."""
    e1 = _embedding_matrix(q1)
    e2 = _embedding_matrix(q2)
    target = q2.normalized()
    n = q1.rank
    inv1 = np.linalg.inv(e1)
    found = []
    for perm in itertools.permutations(range(n)):
        m = e2[:, list(perm)] @ inv1
        if np.max(np.abs(m.imag)) > 1e-6:
            continue
        r = np.rint(m.real)
        if np.max(np.abs(m.real - r)) > 1e-6:
            continue
        nmat = [[int(r[i][j]) for j in range(1, n)] for i in range(1, n)]
        try:
            if q1.basechange(nmat).normalized() == target and nmat not in found:
                found.append(nmat)
        except ZeroDivisionError:
            continue
    return found


def _solve_g2(xa: Pair, y: Pair):
    """Integral g2 with (I, g2) . xa = y, or None."""
    a, b = xa.A.coeffs, xa.B.coeffs
    idx = next(((i, j) for i in range(6) for j in range(i + 1, 6) if a[i] * b[j] - a[j] * b[i] != 0), None)
    if idx is None:
        return None
    i, j = idx
    det = Fraction(a[i] * b[j] - a[j] * b[i])
    rows = []
    for tgt in (y.A.coeffs, y.B.coeffs):
        r = (tgt[i] * b[j] - tgt[j] * b[i]) / det
        s = (a[i] * tgt[j] - a[j] * tgt[i]) / det
        rows.append((r, s))
    if any(v.denominator != 1 for row in rows for v in row):
        return None
    g2 = tuple(tuple(int(v) for v in row) for row in rows)
    if abs(g2[0][0] * g2[1][1] - g2[0][1] * g2[1][0]) != 1:
        return None
    g = GroupElement(((1, 0, 0), (0, 1, 0), (0, 0, 1)), g2)
    return g2 if act(g, xa).coeffs == y.coeffs else None


def equivalences(x: Pair, y: Pair) -> List[GroupElement]:
    """All g in G_Z with g . x = y, one per coset of the trivially acting (-I, I).

    The quartic rings transform by det(g3) det(g2) g3, so every ring isomorphism N
    gives the candidate g3 = N, whose g2 is then forced by linear algebra.
    """
    if disc_pair(x) != disc_pair(y) or disc_pair(x) == 0:
        return []
    out = []
    for nmat in _ring_isomorphisms(quartic_ring(x), quartic_ring(y)):
        det = nmat[0][0] * (nmat[1][1] * nmat[2][2] - nmat[1][2] * nmat[2][1]) \
            - nmat[0][1] * (nmat[1][0] * nmat[2][2] - nmat[1][2] * nmat[2][0]) \
            + nmat[0][2] * (nmat[1][0] * nmat[2][1] - nmat[1][1] * nmat[2][0])
        if abs(det) != 1:
            continue
        xa = act(GroupElement(nmat), x)
        g2 = _solve_g2(xa, y)
        if g2 is not None and g2[0][0] * g2[1][1] - g2[0][1] * g2[1][0] == det:
            out.append(GroupElement(nmat, g2))
    return out


def equivalent(x: Pair, y: Pair) -> Optional[GroupElement]:
    eq = equivalences(x, y)
    return eq[0] if eq else None


def stabilizer(x: Pair) -> List[GroupElement]:
    if disc_pair(x) == 0:
        raise ValueError("stabilizers are computed for nondegenerate pairs")
    return equivalences(x, x)


# ---------------------------------------------------------------- enumeration

@dataclass(frozen=True)
class EnumerationConfig:
    disc_bound: int
    box_scale: Fraction = Fraction(2)
    plateau_budget: int = 4096
    descent_steps: int = 100000

    @property
    def half_width(self) -> int:
        h = math.ceil(float(self.box_scale) * self.disc_bound ** (1.0 / 12) - 1e-12)
        if h < 1:
            raise ValueError("box half-width must be at least 1")
        return h

    @property
    def norm_bound(self) -> int:
        return self.half_width ** 2


@dataclass
class OrbitRecord:
    representative: Pair
    disc: int
    j: int
    stabilizer_order: int
    flags: ClassificationFlags
    maximality: MaximalityVerdict
    content: int
    undecided: bool = False

    @property
    def maximal(self) -> bool:
        return self.maximality.overall

    def sort_key(self):
        return (abs(self.disc), self.j, self.representative.coeffs)


def signature_of(q: RingTable, d: int) -> int:
    if d < 0:
        return 1
    from .polyutil import count_real_roots
    return (4 - count_real_roots(q.generic_charpoly())) // 2


def make_record(x: Pair, undecided: bool = False) -> OrbitRecord:
    d = disc_pair(x)
    q = quartic_ring(x)
    mv = maximality(x)
    flags = classify(x, maximal=mv.overall)
    stab = len(stabilizer(x))
    return OrbitRecord(x, d, signature_of(q, d), stab, flags, mv, content(q)[0], undecided)


def _shape_fingerprint(x: Pair):
    a = _proj_gram_float(quartic_ring(x))
    b = _proj_gram_float(cubic_ring(resolvent_cubic(x)))
    return (np.round(np.sort(np.linalg.eigvalsh(a)), 6).tolist(), np.round(np.sort(np.linalg.eigvalsh(b)), 6).tolist())


@dataclass
class EnumerationResult:
    records: List[OrbitRecord]
    candidates: int
    visited: int
    undecided: int
    merged: int


def _canon_or_none(key):
    try:
        return canonicalize(Pair.from_coeffs(key)).coeffs
    except Undecided:
        return None


def _record_of(coeffs):
    return make_record(Pair.from_coeffs(coeffs))


def _pmap(fn, items, threads: int, chunk: int = 256):
    if threads <= 1 or len(items) < 2 * chunk:
        return [fn(v) for v in items]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items, chunksize=chunk))


def enumerate_orbits(config: EnumerationConfig, threads: int = 1) -> EnumerationResult:
    """All orbits with 0 < |disc| <= X meeting the coefficient ball of radius H.

    Output order and content do not depend on ``threads``.
    """
    pts, visited = kernels.scan_ball(config.norm_bound, config.disc_bound)
    log.info("scan: %d locally minimal points of %d visited", len(pts), visited)
    keys = set()
    for c in pts:
        key, _status = kernels.descent_canonical(c, config.plateau_budget, config.descent_steps)
        keys.add(key)
    keys = sorted(keys)
    log.info("descent: %d distinct keys", len(keys))
    canon = _pmap(_canon_or_none, keys, threads)
    by_canon: Dict[tuple, Pair] = {}
    undecided: List[Pair] = []
    for key, cx in zip(keys, canon):
        if cx is None:
            undecided.append(Pair.from_coeffs(key))
        else:
            by_canon.setdefault(cx, Pair.from_coeffs(cx))
    # a rounding slip in a tie could split an orbit: merge exactly-equivalent survivors
    groups: Dict[tuple, List[tuple]] = defaultdict(list)
    for cx in sorted(by_canon):
        x = by_canon[cx]
        groups[(disc_pair(x), str(_shape_fingerprint(x)))].append(cx)
    reps = []
    merged = 0
    for _, members in sorted(groups.items(), key=lambda kv: (abs(kv[0][0]), kv[0])):
        kept: List[tuple] = []
        for cx in members:
            if any(equivalent(by_canon[k], by_canon[cx]) for k in kept):
                merged += 1
                continue
            kept.append(cx)
        reps.extend(kept)
    unresolved = 0
    for x in undecided:
        d = disc_pair(x)
        if not any(disc_pair(Pair.from_coeffs(r)) == d and equivalent(Pair.from_coeffs(r), x) for r in reps):
            reps.append(x.coeffs)
            unresolved += 1
    records = _pmap(_record_of, reps, threads, chunk=64)
    undecided_keys = {x.coeffs for x in undecided}
    for r in records:
        r.undecided = r.representative.coeffs in undecided_keys
    records.sort(key=OrbitRecord.sort_key)
    log.info("orbits: %d (merged %d, undecided %d)", len(records), merged, len(undecided))
    return EnumerationResult(records, len(pts), visited, unresolved, merged)


def class_numbers(records: Iterable[OrbitRecord], j: int, m: int):
    """(h_j(m), sum of 1/|stabilizer|) over records of discriminant (-1)^j m."""
    target = (-1) ** j * m
    h = 0
    w = Fraction(0)
    for r in records:
        if r.j == j and r.disc == target:
            h += 1
            w += Fraction(1, r.stabilizer_order)
    return h, w
