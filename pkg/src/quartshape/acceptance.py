"""The twelve acceptance checks, shared by the test suite and ``quartshape selftest --acceptance``."""
from __future__ import annotations

import math
import random
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import mpmath
import numpy as np

CORPUS_BOUND = 10 ** 4
WEYL_XS = (1000, 4000, 16000)


@dataclass
class CorpusEntry:
    pair: object
    disc: int
    j: int
    stabilizer: int
    content: int
    reducible: bool
    maximal: bool
    galois: str


@dataclass
class Outcome:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} criterion {self.number:2d} {self.name}: {self.detail} [{self.seconds:.1f}s]"


def corpus_from_records(records) -> List[CorpusEntry]:
    return [CorpusEntry(r.representative, r.disc, r.j, r.stabilizer_order, r.content, r.flags.reducible,
                        r.maximal, r.flags.galois_hint) for r in records]


def corpus_from_rows(rows) -> List[CorpusEntry]:
    from .cli import ORBIT_COLUMNS
    from .forms import Pair

    return [CorpusEntry(Pair.from_coeffs([int(r[c]) for c in ORBIT_COLUMNS[:12]]), int(r["disc"]), int(r["j"]),
                        int(r["stabilizer"]), int(r["content"]), r["reducible"] == "1", r["maximal"] == "1",
                        r["galois"]) for r in rows]


def build_corpus(bound: int = max(WEYL_XS), threads: int = 1) -> List[CorpusEntry]:
    from .orbits import EnumerationConfig, enumerate_orbits

    return corpus_from_records(enumerate_orbits(EnumerationConfig(bound), threads=threads).records)


def _within(corpus, bound):
    return [e for e in corpus if abs(e.disc) <= bound]


# ---------------------------------------------------------------- 1-3: exact algebra

def check_equivariance(trials: int = 10 ** 4, seed: int = 1):
    from .forms import GroupElement, Pair, act, disc_pair

    rng = random.Random(seed)
    bad = done = 0
    while done < trials:
        g3 = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        g2 = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        try:
            g = GroupElement(g3, g2)
        except ValueError:
            continue
        x = Pair.from_coeffs([rng.randint(-5, 5) for _ in range(12)])
        done += 1
        bad += disc_pair(act(g, x)) != g.det3() ** 8 * g.det2() ** 6 * disc_pair(x)
    return bad == 0, f"{bad} mismatches in {trials} random (g, x)"


def _commutative(t) -> bool:
    e = [[int(i == k) for i in range(t.rank)] for k in range(t.rank)]
    return all(t.mult(e[i], e[j]) == t.mult(e[j], e[i]) for i in range(t.rank) for j in range(i + 1, t.rank))


def check_rings(corpus):
    from .forms import resolvent_cubic
    from .rings import cubic_ring, quartic_ring

    bad = []
    for e in corpus:
        q, c = quartic_ring(e.pair), cubic_ring(resolvent_cubic(e.pair))
        if not (q.is_associative() and c.is_associative() and _commutative(q) and _commutative(c)
                and q.disc() == e.disc == c.disc()):
            bad.append(e.pair.coeffs)
    return not bad, f"{len(corpus)} pairs, {len(bad)} failures" + (f", first {bad[0]}" if bad else "")


def check_maximality(corpus):
    from .arith import phi_p, relevant_primes, superring_oracle
    from .rings import quartic_ring

    checks, bad = 0, []
    for e in corpus:
        q = quartic_ring(e.pair)
        for p in relevant_primes(e.disc):
            checks += 1
            if phi_p(e.pair, p) != superring_oracle(q, p):
                bad.append((e.pair.coeffs, p))
    return not bad, f"{checks} (pair, prime) checks, {len(bad)} disagreements"


# ---------------------------------------------------------------- 4: sieve

def check_sieve(corpus, bound: int = CORPUS_BOUND):
    from .cli import sieve_report

    counts, _mu, total, direct = sieve_report([(e.pair, None) for e in corpus], bound)
    ok = total == direct and counts[1] == len(_within(corpus, bound))
    return ok, f"inclusion-exclusion {total}, direct {direct}, {len(counts) - 1} squarefree q > 1"


# ---------------------------------------------------------------- 5-6: shapes

def check_covolume(corpus, prec: int = 128):
    from .forms import resolvent_cubic
    from .rings import cubic_ring, quartic_ring
    from .shapes import embed

    worst = 0.0
    for e in corpus:
        for t in (quartic_ring(e.pair), cubic_ring(resolvent_cubic(e.pair))):
            em = embed(t, prec)
            want = mpmath.mpf(2) ** (-em.r2) * mpmath.sqrt(abs(t.disc()))
            worst = max(worst, float(abs(em.covolume() / want - 1)))
    return worst < 1e-8, f"worst relative error {worst:.2e} over {2 * len(corpus)} rings"


def check_shape_regressions():
    from .forms import BinaryCubic, Pair
    from .rings import cubic_ring, quartic_ring
    from .shapes import shape_of

    z = complex(shape_of(cubic_ring(BinaryCubic(0, 1, -1, 0))).z)
    dz = abs(z - complex(0.5, math.sqrt(3) / 2))
    g = shape_of(quartic_ring(Pair.from_coeffs((0, 0, 0, -1, -1, 0, 0, 0, 0, -1, 0, -1)))).gram
    want = 4 ** (1 / 3) * (np.eye(3) - np.ones((3, 3)) / 4)
    dg = float(np.max(np.abs(np.array(g.tolist(), dtype=float) - want)))
    return dz < 1e-9 and dg < 1e-9, f"|z - rho| = {dz:.1e}, max Gram deviation {dg:.1e}"


# ---------------------------------------------------------------- 7: resolvents

def _iso_classes(entries):
    """Partition entries by isomorphism of their quartic rings; yields (|Aut Q|, members)."""
    from .orbits import _ring_isomorphisms
    from .rings import quartic_ring

    classes = []
    for e in entries:
        q = quartic_ring(e.pair)
        for cl in classes:
            if _ring_isomorphisms(cl[0], q):
                cl[1].append(e)
                break
        else:
            classes.append((q, [e]))
    return [(len(_ring_isomorphisms(q, q)), members) for q, members in classes]


def check_resolvents(corpus):
    """Each content-n ring carries sigma(n) resolvents.

    Automorphisms of Q permute its resolvents, so the orbits with ring Q are counted
    with mass |Aut Q| / |Stab x|; the masses must add up to sigma(n).
    """
    from fractions import Fraction

    from sympy import divisor_sigma

    from .rings import resolvents_of

    by_key = defaultdict(list)
    for e in corpus:
        by_key[(e.disc, e.content)].append(e)
    tallies = {1: [0, 0], 2: [0, 0], 3: [0, 0]}
    bad = []
    for (d, n), entries in sorted(by_key.items()):
        if n not in tallies:
            continue
        want = int(divisor_sigma(n))
        for aut, members in _iso_classes(entries):
            mass = sum(Fraction(aut, e.stabilizer) for e in members)
            tallies[n][0] += 1
            if mass == want and len(resolvents_of(members[0].pair)) == want:
                tallies[n][1] += 1
            else:
                bad.append((d, n, str(mass)))
    detail = ", ".join(f"content {n}: {v[1]}/{v[0]} rings" for n, v in tallies.items())
    if bad:
        detail += f"; {len(bad)} short, first (disc, n, mass) = {bad[0]}"
    return not bad, detail


# ---------------------------------------------------------------- 8-10: analytic pieces

def check_bessel():
    from .spectral import kbessel

    closed = max(abs(kbessel(0.5, y, imaginary=False) / (math.sqrt(math.pi / (2 * y)) * math.exp(-y)) - 1)
                 for y in (0.1, 0.5, 1, 2, 5, 10, 30, 100))
    asym = 0.0
    for order, imag in ((0.0, False), (0.5, True), (0.5, False), (0.25, False)):
        for y in (30, 40, 60, 100, 300, 700):
            asym = max(asym, abs(kbessel(order, y, imaginary=imag) / (math.sqrt(math.pi / (2 * y)) * math.exp(-y)) - 1))
    return closed < 1e-10 and asym < 0.01, f"closed form {closed:.1e}, asymptotic for y >= 30 {asym:.2e}"


def check_hecke(seed: int = 7):
    from sympy import primerange

    from .spectral import gl2_generate, gl2_hecke_violations, gl3_generate, hecke_terms

    rng = random.Random(seed)
    primes = list(primerange(2, 101))
    a2 = gl2_generate({p: rng.randint(-4, 4) for p in primes}, 100)
    bad2 = gl2_hecke_violations(a2, 100)
    A = gl3_generate({k: rng.randint(-4, 4) for p in primes for k in ((p, 1), (1, p))}, 100, check=False)
    bad3 = A.violations(100)
    counts = all(len(hecke_terms(p)) == p * p + p + 1 for p in primes if p <= 13)
    return not bad2 and not bad3 and counts, \
        f"GL2 violations {len(bad2)}, GL3 violations {len(bad3)}, T_p counts {'ok' if counts else 'wrong'}"


def check_haar(seed: int = 11, n2: int = 10 ** 6, n3: int = 2 * 10 ** 5):
    from .spectral import haar_coords, in_siegel_set

    y = haar_coords(2, n2, seed)[:, 1]
    p = float(np.mean(y > 2))
    want = 3 / (2 * math.pi)
    se = math.sqrt(want * (1 - want) / n2)
    c3 = haar_coords(3, n3, seed + 1)
    inside = bool(in_siegel_set(c3).all())
    z = (p - want) / se
    return abs(z) <= 3 and inside, f"P(y > 2) = {p:.5f} vs {want:.5f} ({z:+.2f} se); rank-3 in Siegel set: {inside}"


# ---------------------------------------------------------------- 11: equidistribution

def s4_points(corpus, prec: int = 128):
    from .cli import shape_row
    from .spectral import ShapePoint

    pts = []
    for e in corpus:
        if e.maximal and e.galois == "S4":
            s = shape_row(e.pair.coeffs, prec)
            pts.append(ShapePoint(e.disc, e.j, tuple(s[-5:]), (s[0], s[1]), e.stabilizer))
    return pts


def check_equidistribution(points, xs: Sequence[int] = WEYL_XS, seed: int = 1, samples: int = 200000):
    from .spectral import SmoothingWindow, default_pairs, ks_distance_y2, weyl_sum

    ks = [ks_distance_y2([p.cubic[1] for p in points if abs(p.disc) <= X]) for X in xs]
    ks_ok = all(a > b for a, b in zip(ks, ks[1:]))
    psi = SmoothingWindow()
    pairs = default_pairs(samples, seed)
    first, last, sig_first, sig_last = [], [], [], []
    for f3, f2 in pairs:
        r0 = weyl_sum(points, f3, f2, psi, xs[0])
        r1 = weyl_sum(points, f3, f2, psi, xs[-1])
        first.append(abs(r0.ratio))
        last.append(abs(r1.ratio))
        # centring offsets enter S/N as a bias of at most |offset error| times the other factor's sup
        sig = f3.stderr * 1.0 + f2.stderr * 1.0
        sig_first.append(sig)
        sig_last.append(sig)
    m0, m1 = float(np.mean(first)), float(np.mean(last))
    s = float(np.mean(sig_first)) + 1.5 * float(np.mean(sig_last))
    decay_ok = m0 + 3 * s >= 1.5 * m1 and m0 >= 1.5 * m1 - 3 * s
    factor = m0 / m1 if m1 else math.inf
    return ks_ok and decay_ok, (f"KS {', '.join(f'{v:.4f}' for v in ks)} at X = {', '.join(map(str, xs))}; "
                                f"mean |S|/N {m0:.4f} -> {m1:.4f} (factor {factor:.2f}, mc sigma {s:.1e}, "
                                f"{len(pairs)} pairs)")


# ---------------------------------------------------------------- 12: smallest totally real S4 field

def smallest_totally_real_s4(corpus) -> Optional[int]:
    ds = [e.disc for e in corpus if e.maximal and e.galois == "S4" and e.j == 0]
    return min(ds) if ds else None


def check_smallest_s4(corpus, oracle: Callable[[int], Optional[int]], bound: int = CORPUS_BOUND):
    mine = smallest_totally_real_s4(_within(corpus, bound))
    theirs = oracle(bound)
    return mine is not None and mine == theirs, f"pipeline {mine}, oracle {theirs} (bound {bound})"


# ---------------------------------------------------------------- driver

NAMES = {1: "discriminant equivariance", 2: "ring tables", 3: "maximality cross-oracle", 4: "sieve identity",
         5: "covolume identity", 6: "shape regressions", 7: "resolvent multiplicity", 8: "special functions",
         9: "Hecke algebra", 10: "Haar sampler", 11: "equidistribution", 12: "smallest totally real S4"}


def run_one(number: int, fn, *args) -> Outcome:
    t0 = time.time()
    ok, detail = fn(*args)
    return Outcome(number, NAMES[number], bool(ok), detail, time.time() - t0)


def run_all(corpus, oracle=None, only: Optional[Sequence[int]] = None, report=print) -> List[Outcome]:
    """Run the checks in order; criterion 12 is skipped without an oracle."""
    small = _within(corpus, CORPUS_BOUND)
    plan = {1: (check_equivariance,), 2: (check_rings, small), 3: (check_maximality, small),
            4: (check_sieve, corpus, CORPUS_BOUND), 5: (check_covolume, small), 6: (check_shape_regressions,),
            7: (check_resolvents, small), 8: (check_bessel,), 9: (check_hecke,), 10: (check_haar,)}
    out = []
    for k in sorted(plan):
        if only and k not in only:
            continue
        out.append(run_one(k, *plan[k]))
        report(out[-1].line())
    if not only or 11 in only:
        out.append(run_one(11, check_equidistribution, s4_points(corpus)))
        report(out[-1].line())
    if oracle is not None and (not only or 12 in only):
        out.append(run_one(12, check_smallest_s4, corpus, oracle))
        report(out[-1].line())
    return out
