"""Test functions on shape spaces, Hecke algebra utilities, Weyl sums and L-function partial sums."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import mpmath
import numpy as np
from sympy import divisors, factorint

from .shapes import Shape, gram_from_iwasawa, goldfeld_coords, reduce_gram

SQRT3_2 = math.sqrt(3.0) / 2


# ---------------------------------------------------------------- Haar samplers

def _proposals2(rng, n):
    x = rng.uniform(-0.5, 0.5, n)
    y = SQRT3_2 / rng.uniform(0.0, 1.0, n)  # density proportional to y^-2 on [sqrt3/2, inf)
    return x, y


def _proposals3(rng, n):
    x = rng.uniform(-0.5, 0.5, (n, 3))
    y = SQRT3_2 / np.sqrt(rng.uniform(0.0, 1.0, (n, 2)))  # density proportional to y^-3
    return x, y


# primitive c != +-e3 that can beat the last row inside the Siegel set
_RIVALS = np.array([(a, b, c) for a in (-1, 0, 1) for b in (-1, 0, 1) for c in range(-2, 3)
                    if (a, b) != (0, 0) and math.gcd(math.gcd(a, b), c) == 1], dtype=float)


def in_fundamental_domain3(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Membership in the reduced domain for rows of z = x y (vectorized over the first axis).

    The last row must be a shortest lattice vector and the projected plane must be
    Gauss-reduced; the box conditions are assumed.
    """
    x12, x13, x23 = x[:, 0], x[:, 1], x[:, 2]
    y1, y2 = y[:, 0], y[:, 1]
    plane = x12 * x12 + y2 * y2 >= 1.0
    c1, c2, c3 = _RIVALS[:, 0][None, :], _RIVALS[:, 1][None, :], _RIVALS[:, 2][None, :]
    v1 = c1 * (y1 * y2)[:, None]
    v2 = (c1 * x12[:, None] + c2) * y1[:, None]
    v3 = c1 * x13[:, None] + c2 * x23[:, None] + c3
    shortest = np.all(v1 * v1 + v2 * v2 + v3 * v3 >= 1.0, axis=1)
    return plane & shortest


def haar_coords(rank: int, count: int, seed: int, batch: int = 1 << 16) -> np.ndarray:
    """Haar-distributed canonical coordinates: rank 2 (x, y); rank 3 (x12, x13, x23, y1, y2).

    Rank-2 x keeps its sign (law symmetric under x -> -x); rank-3 samples are folded to
    x12, x13 >= 0 like the coordinates of computed shapes.
    """
    if rank not in (2, 3) or count < 1:
        raise ValueError("rank must be 2 or 3 and count positive")
    rng = np.random.default_rng(seed)
    out = []
    got = 0
    while got < count:
        if rank == 2:
            x, y = _proposals2(rng, batch)
            keep = x * x + y * y >= 1.0
            chunk = np.column_stack([x[keep], y[keep]])
        else:
            x, y = _proposals3(rng, batch)
            keep = in_fundamental_domain3(x, y)
            x, y = x[keep], y[keep]
            s2 = np.where(x[:, 0] < 0, -1.0, 1.0)
            s3 = np.where(x[:, 1] < 0, -1.0, 1.0)
            chunk = np.column_stack([s2 * x[:, 0], s3 * x[:, 1], s2 * s3 * x[:, 2], y])
        out.append(chunk)
        got += len(chunk)
    return np.concatenate(out)[:count]


def haar_sample(rank: int, count: int, seed: int) -> List[Shape]:
    """Haar samples as reduced shapes (slow path; use :func:`haar_coords` for bulk statistics)."""
    pts = haar_coords(rank, count, seed)
    out = []
    for row in pts:
        if rank == 2:
            g = gram_from_iwasawa((mpmath.mpf(row[0]), mpmath.mpf(row[1])))
            # shortest vector first so that Shape.z reproduces (x, y)
            g = mpmath.matrix([[g[1, 1], g[1, 0]], [g[0, 1], g[0, 0]]])
            out.append(Shape(2, g, [[0, 1], [1, 0]]))
        else:
            out.append(reduce_gram(gram_from_iwasawa(tuple(row))))
    return out


def in_siegel_set(coords: np.ndarray) -> np.ndarray:
    c = np.atleast_2d(coords)
    k = c.shape[1] - (1 if c.shape[1] == 2 else 2)
    return np.all(np.abs(c[:, :k]) <= 0.5 + 1e-12, axis=1) & np.all(c[:, k:] > SQRT3_2 - 1e-12, axis=1)


def haar_y_survival2(t: float) -> float:
    """P(y > t) for the Haar probability measure on the rank-2 fundamental domain."""
    if t <= SQRT3_2:
        return 1.0
    if t >= 1.0:
        return 3.0 / (math.pi * t)

    def prim(u):
        return -1.0 / u + 2.0 * math.sqrt(1.0 - u * u) / u + 2.0 * math.asin(u)

    return 3.0 / math.pi + 3.0 / math.pi * (prim(1.0) - prim(t))


# ---------------------------------------------------------------- K-Bessel function

@dataclass(frozen=True)
class BesselValue:
    value: float
    underflow: bool = False

    def __float__(self):
        return self.value


def kbessel_ex(order: float, y: float, imaginary: bool = True, dps: int = 20) -> BesselValue:
    """K_{i t}(y) (imaginary=True) or K_t(y) by quadrature of the cosh integral.

    The integrand is scaled by e^{y}; values below the double range are reported as
    zero with the underflow flag set.
    """
    if y <= 0:
        raise ValueError("K-Bessel argument must be positive")
    if y > 740:
        return BesselValue(0.0, True)
    with mpmath.workdps(dps):
        y_ = mpmath.mpf(y)
        t = mpmath.mpf(order)
        # e^{-y (cosh u - 1)} < 1e-30 beyond u_max
        u_max = mpmath.acosh(1 + 70 / y_) + (abs(t) / 10 if not imaginary else 0)
        if imaginary:
            f = lambda u: mpmath.exp(-y_ * (mpmath.cosh(u) - 1)) * mpmath.cos(t * u)
        else:
            f = lambda u: mpmath.exp(-y_ * (mpmath.cosh(u) - 1) + abs(t) * u) * 0.5 * \
                (1 + mpmath.exp(-2 * abs(t) * u))
        pieces = max(4, int(u_max * (1 + abs(t)) / 2))
        val = mpmath.quad(f, mpmath.linspace(0, u_max, pieces + 1)) * mpmath.exp(-y_)
    return BesselValue(float(val), float(val) == 0.0 and val != 0)


def kbessel(order: float, y: float, imaginary: bool = True) -> float:
    return kbessel_ex(order, y, imaginary).value


# ---------------------------------------------------------------- GL(2) Maass forms

def gl2_generate(prime_data: Mapping[int, object], limit: int) -> Dict[int, object]:
    """a(n) for n <= limit from a(p) via a(p^{k+1}) = a(p) a(p^k) - a(p^{k-1}) and multiplicativity."""
    out = {1: 1}
    for n in range(2, limit + 1):
        f = factorint(n)
        val = 1
        for p, e in f.items():
            if p not in prime_data:
                raise KeyError(f"missing a({p})")
            prev, cur = 1, prime_data[p]
            for _ in range(e - 1):
                prev, cur = cur, prime_data[p] * cur - prev
            val = val * cur
        out[n] = val
    return out


def gl2_hecke_violations(a: Mapping[int, object], limit: int, tol: float = 0.0) -> List[Tuple[int, int]]:
    """Pairs (m, n) with mn <= limit where a(m)a(n) differs from sum over d | (m, n) of a(mn/d^2)."""
    bad = []
    for m in range(1, limit + 1):
        for n in range(m, limit // m + 1):
            rhs = sum(a[m * n // (d * d)] for d in divisors(math.gcd(m, n)))
            if abs(a[m] * a[n] - rhs) > tol:
                bad.append((m, n))
    return bad


@dataclass
class MaassFormGL2:
    t: float
    coeffs: Dict[int, float]
    parity: int = 1  # +1 even (a(-n) = a(n)), -1 odd

    def __post_init__(self):
        if self.coeffs.get(1) != 1:
            raise ValueError("coefficients must be normalized with a(1) = 1")

    @property
    def truncation(self) -> int:
        n = 0
        while n + 1 in self.coeffs:
            n += 1
        return n

    @classmethod
    def from_file(cls, path, parity: int = 1) -> "MaassFormGL2":
        t = None
        coeffs = {}
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                head, _, rest = line.partition(" ")
                if head == "R":
                    t = float(rest)
                else:
                    coeffs[int(head)] = float(rest)
        if t is None:
            raise ValueError(f"{path}: missing 'R <spectral parameter>' header")
        return cls(t, coeffs, parity)

    def hecke_violations(self, tol: float = 1e-6):
        return gl2_hecke_violations(self.coeffs, self.truncation, tol)

    def bound_constant(self, eps: float = 1 / 64) -> float:
        """Smallest C with |a(m)| <= C m^{7/64 + eps} on the available range."""
        return max(abs(v) / m ** (7 / 64 + eps) for m, v in self.coeffs.items() if m <= self.truncation)

    def check_bound(self, allowed: float = 10.0, eps: float = 1 / 64):
        c = self.bound_constant(eps)
        if c > allowed:
            warnings.warn(f"coefficients exceed {allowed} m^(7/64+eps) (constant {c:.3g})", stacklevel=2)
        return c


def _maass_tail(form: MaassFormGL2, y: float, n0: int) -> float:
    """Bound for the terms n > n0 using K_it(u) <= K_0(u) <= sqrt(pi/(2u)) e^{-u}."""
    c = form.bound_constant()
    q = math.exp(-2 * math.pi * y)
    total = 0.0
    n = n0 + 1
    term = 1.0
    while term > 1e-300:
        term = c * n ** (7 / 64 + 1 / 64) * math.sqrt(math.pi / (4 * math.pi * n * y)) * q ** n
        total += term
        n += 1
        if n > n0 + 10000:
            break
    return 2 * math.sqrt(2 * math.pi * y) * total


class TruncationError(ValueError):
    def __init__(self, msg, required):
        super().__init__(msg)
        self.required = required


def maass_eval(form: MaassFormGL2, z, tol: float = 1e-8) -> Tuple[float, float]:
    """f(z) with a certified truncation bound; z is a Shape, a complex number or (x, y)."""
    if isinstance(z, Shape):
        z = complex(z.z)
    if isinstance(z, tuple):
        z = complex(*z)
    x, y = z.real, z.imag
    if y <= 0:
        raise ValueError("z must lie in the upper half plane")
    n_max = form.truncation
    tail = _maass_tail(form, y, n_max)
    if tail > tol:
        need = n_max
        while _maass_tail(form, y, need) > tol:
            need += 1
        raise TruncationError(f"truncation N = {n_max} gives tail {tail:.3g}; need N >= {need}", need)
    terms = []
    for n in range(1, n_max + 1):
        k = kbessel(form.t, 2 * math.pi * n * y)
        if k == 0.0:
            break
        trig = math.cos(2 * math.pi * n * x) if form.parity == 1 else math.sin(2 * math.pi * n * x)
        terms.append(form.coeffs[n] * k * trig)
    return 2 * math.sqrt(2 * math.pi * y) * math.fsum(terms), tail


def modularity_defect(form: MaassFormGL2, z: complex, tol: float = 1e-8) -> float:
    """|f(z) - f(-1/z)| after reducing both points: a soft automorphy diagnostic."""
    def reduce(w):
        for _ in range(1000):
            w = complex(w.real - round(w.real), w.imag)
            if abs(w) < 1 - 1e-15:
                w = -1 / w
            else:
                return w
        return w

    return abs(maass_eval(form, reduce(z), tol)[0] - maass_eval(form, reduce(-1 / z), tol)[0])


# ---------------------------------------------------------------- GL(3) Hecke coefficients

def _h_from_e(e1, e2, k):
    """Complete homogeneous symmetric polynomials h_0..h_k of three variables with e3 = 1."""
    h = [1]
    for i in range(1, k + 1):
        v = e1 * h[i - 1]
        if i >= 2:
            v -= e2 * h[i - 2]
        if i >= 3:
            v += h[i - 3]
        h.append(v)
    return h


def _schur(e1, e2, a, b):
    """Schur polynomial s_{(a+b, b, 0)} in terms of e1, e2 (e3 = 1), by Jacobi-Trudi."""
    lam = (a + b, b, 0)
    h = _h_from_e(e1, e2, a + b + 2)
    hh = lambda i: h[i] if i >= 0 else 0
    m = [[hh(lam[i] - i + j) for j in range(3)] for i in range(3)]
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


class RelationViolation(ValueError):
    pass


@dataclass
class HeckeCoefficientsGL3:
    """A(m1, m2) generated from A(p, 1) and A(1, p) through the Hecke relations."""

    prime_data: Dict[Tuple[int, int], object]
    limit: int

    def __post_init__(self):
        self._cache = {}
        for (m1, m2), v in self.prime_data.items():
            f = factorint(m1 * m2)
            if len(f) != 1:
                raise ValueError("prime data must be indexed by prime powers")
            p = next(iter(f))
            if (p, 1) not in self.prime_data or (1, p) not in self.prime_data:
                raise ValueError(f"need both A({p},1) and A(1,{p})")
            k, l = _vp(m1, p), _vp(m2, p)
            want = _schur(self.prime_data[(p, 1)], self.prime_data[(1, p)], k, l)
            if want != v:
                raise RelationViolation(f"A({m1},{m2}) = {v} contradicts the Hecke relations (expected {want})")

    def __call__(self, m1: int, m2: int):
        key = (m1, m2)
        if key in self._cache:
            return self._cache[key]
        val = 1
        for p in set(factorint(m1)) | set(factorint(m2)):
            if (p, 1) not in self.prime_data:
                raise KeyError(f"no prime data for p = {p}")
            val = val * _schur(self.prime_data[(p, 1)], self.prime_data[(1, p)], _vp(m1, p), _vp(m2, p))
        self._cache[key] = val
        return val

    def dual(self) -> "HeckeCoefficientsGL3":
        return HeckeCoefficientsGL3({(b, a): v for (a, b), v in self.prime_data.items()}, self.limit)

    def violations(self, limit: Optional[int] = None) -> List[str]:
        """Every instance of the three relation families with indices <= limit that fails."""
        lim = limit or self.limit
        bad = []
        A = self
        for m1 in range(1, lim + 1):
            for m2 in range(1, lim + 1):
                # first relation: coprime multiplicativity, split along each prime
                for p in factorint(m1 * m2):
                    u1, u2 = p ** _vp(m1, p), p ** _vp(m2, p)
                    if A(m1, m2) != A(u1, u2) * A(m1 // u1, m2 // u2):
                        bad.append(f"multiplicativity at ({m1},{m2}) split by {p}")
                # third relation
                rhs = sum(A(m1 // d, m2 // d) for d in divisors(math.gcd(m1, m2)))
                if A(m1, 1) * A(1, m2) != rhs:
                    bad.append(f"A({m1},1)A(1,{m2})")
        # second relation, n * max(m) kept inside the range
        for n in range(1, lim + 1):
            for m1 in range(1, lim // n + 1):
                for m2 in range(1, lim // n + 1):
                    rhs = 0
                    for d0 in divisors(n):
                        for d1 in divisors(n // d0):
                            d2 = n // (d0 * d1)
                            if m1 % d1 == 0 and m2 % d2 == 0:
                                rhs += A(m1 * d0 // d1, m2 * d1 // d2)
                    if A(n, 1) * A(m1, m2) != rhs:
                        bad.append(f"A({n},1)A({m1},{m2})")
        return bad


def _vp(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def gl3_generate(prime_data: Mapping[Tuple[int, int], object], limit: int, check: bool = True) -> HeckeCoefficientsGL3:
    coeffs = HeckeCoefficientsGL3(dict(prime_data), limit)
    if check:
        bad = coeffs.violations()
        if bad:
            raise RelationViolation(f"{len(bad)} relation instances fail, first: {bad[0]}")
    return coeffs


# ---------------------------------------------------------------- GL(3) Hecke operator

def z_matrix(c) -> np.ndarray:
    x12, x13, x23, y1, y2 = c
    return np.array([[y1 * y2, x12 * y1, x13], [0.0, y1, x23], [0.0, 0.0, 1.0]])


def coords_of_upper(t: np.ndarray) -> Tuple[float, ...]:
    """Coordinates of an invertible upper-triangular matrix modulo scalars (positive diagonal assumed)."""
    t = t / t[2, 2]
    y1 = t[1, 1]
    y2 = t[0, 0] / t[1, 1]
    return (t[0, 1] / t[1, 1], t[0, 2], t[1, 2], y1, y2)


def hecke_terms(n: int):
    """Matrices (a b1 c1; 0 b c2; 0 0 c) with abc = n, 0 <= c1, c2 < c, 0 <= b1 < b."""
    out = []
    for a in divisors(n):
        for b in divisors(n // a):
            c = n // (a * b)
            for c1 in range(c):
                for c2 in range(c):
                    for b1 in range(b):
                        out.append(np.array([[a, b1, c1], [0, b, c2], [0, 0, c]], dtype=float))
    return out


def hecke_gl3_apply(F: Callable[[Tuple[float, ...]], float], n: int, z) -> float:
    """T_n F at z for F on coordinates (x12, x13, x23, y1, y2)."""
    if n < 1:
        raise ValueError("n must be positive")
    zm = z_matrix(z)
    return math.fsum(F(coords_of_upper(m @ zm)) for m in hecke_terms(n)) / n


def theta_gl3(c, radius: int = 4) -> float:
    """An automorphic test function: the theta series of the det-1 lattice with rows of z."""
    zm = z_matrix(c)
    g = zm @ zm.T
    g = g / np.linalg.det(g) ** (1.0 / 3)
    r = np.arange(-radius, radius + 1)
    v = np.array(np.meshgrid(r, r, r, indexing="ij")).reshape(3, -1).T
    q = np.einsum("ij,jk,ik->i", v, g, v)
    return math.fsum(np.exp(-math.pi * q[q > 0]))


# ---------------------------------------------------------------- test functions and windows

@dataclass
class TestFunction:
    """A function on canonical coordinates (vectorized over rows), optionally Haar-centred."""

    __test__ = False  # not a pytest class

    id: str
    rank: int
    fn: Callable[[np.ndarray], np.ndarray]
    offset: float = 0.0
    stderr: float = 0.0
    mean_zero: bool = False

    def __call__(self, coords) -> np.ndarray:
        c = np.atleast_2d(np.asarray(coords, dtype=float))
        return self.fn(c) - self.offset

    def centred(self, samples: int, seed: int) -> "TestFunction":
        vals = self.fn(haar_coords(self.rank, samples, seed))
        mean = float(np.mean(vals))
        se = float(np.std(vals, ddof=1) / math.sqrt(len(vals)))
        return TestFunction(self.id, self.rank, self.fn, mean, se, True)


def constant_function(rank: int) -> TestFunction:
    return TestFunction(f"one{rank}", rank, lambda c: np.ones(len(c)))


def bump2(x0: float, y0: float, rx: float, rl: float, name: Optional[str] = None) -> TestFunction:
    """(1 - r^2)^3 bump in (|x|, log y)."""
    def fn(c):
        r2 = ((np.abs(c[:, 0]) - x0) / rx) ** 2 + ((np.log(c[:, 1]) - math.log(y0)) / rl) ** 2
        return np.where(r2 < 1, (1 - r2) ** 3, 0.0)

    return TestFunction(name or f"bump2({x0},{y0},{rx},{rl})", 2, fn)


def bump3(centre: Sequence[float], radii: Sequence[float], name: Optional[str] = None) -> TestFunction:
    """(1 - r^2)^3 bump in (x12, x13, x23, log y1, log y2)."""
    cen = np.array(list(centre[:3]) + [math.log(centre[3]), math.log(centre[4])])
    rad = np.array(radii, dtype=float)

    def fn(c):
        u = np.column_stack([c[:, :3], np.log(c[:, 3:5])])
        r2 = np.sum(((u - cen) / rad) ** 2, axis=1)
        return np.where(r2 < 1, (1 - r2) ** 3, 0.0)

    return TestFunction(name or f"bump3({list(centre)},{list(radii)})", 3, fn)


def maass_function(form: MaassFormGL2, name: str = "maass") -> TestFunction:
    def fn(c):
        return np.array([maass_eval(form, complex(abs(a), b))[0] for a, b in c])

    return TestFunction(name, 2, fn, mean_zero=True)


def default_pairs(samples: int = 200000, seed: int = 1) -> List[Tuple[TestFunction, TestFunction]]:
    """Mean-zero (phi3, phi2) pairs used for the decay statistics."""
    one2, one3 = constant_function(2), constant_function(3)
    a2 = bump2(0.25, 1.0, 0.35, 0.45, "bump2-low").centred(samples, seed)
    b2 = bump2(0.15, 1.6, 0.35, 0.5, "bump2-mid").centred(samples, seed + 1)
    a3 = bump3((0.25, 0.25, 0.0, 1.0, 1.0), (0.4, 0.4, 0.6, 0.3, 0.3), "bump3-low").centred(samples, seed + 2)
    b3 = bump3((0.25, 0.25, 0.0, 1.3, 1.3), (0.4, 0.4, 0.6, 0.4, 0.4), "bump3-mid").centred(samples, seed + 3)
    return [(one3, a2), (a3, one2), (b3, b2), (one3, b2), (b3, one2)]


@dataclass(frozen=True)
class SmoothingWindow:
    """psi(u) = (1 - s^2)^3 with s the affine map of [u1, u2] onto [-1, 1]; C^2 at the ends."""

    u1: float = 0.125
    u2: float = 1.0

    def __post_init__(self):
        if not 0 < self.u1 < self.u2:
            raise ValueError("window support must satisfy 0 < u1 < u2")

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        s = (2 * u - self.u1 - self.u2) / (self.u2 - self.u1)
        return np.where(np.abs(s) < 1, (1 - s * s) ** 3, 0.0)


# ---------------------------------------------------------------- Weyl sums and L-function partial sums

@dataclass(frozen=True)
class ShapePoint:
    """Per-orbit data needed by the statistics."""

    disc: int
    r2: int
    quartic: Tuple[float, ...]  # canonical rank-3 coordinates
    cubic: Tuple[float, float]  # (x, y) of the resolvent shape
    stabilizer_order: int = 1
    weight: float = 1.0  # sieve weight, 1 when unused


@dataclass(frozen=True)
class WeylResult:
    S: float
    N: float

    @property
    def ratio(self) -> float:
        return self.S / self.N if self.N else 0.0


def weyl_sum(points: Iterable[ShapePoint], phi3: TestFunction, phi2: TestFunction,
             psi: SmoothingWindow, X: float, r2: Optional[int] = None) -> WeylResult:
    """Smoothed sum of phi3(quartic shape) phi2(cubic shape) with its count; order independent."""
    pts = [p for p in points if r2 is None or p.r2 == r2]
    if not pts:
        return WeylResult(0.0, 0.0)
    w = psi(np.array([abs(p.disc) / X for p in pts]))
    v3 = phi3(np.array([p.quartic for p in pts]))
    v2 = phi2(np.array([p.cubic for p in pts]))
    return WeylResult(math.fsum(w * v3 * v2), math.fsum(w))


@dataclass(frozen=True)
class LfunResult:
    value: complex
    tail_bound: float
    terms: int


def lfun_partial(points: Iterable[ShapePoint], j: int, q: int, phi3: TestFunction, phi2: TestFunction,
                 s: complex, M: int, coverage: int, phi_q: Optional[Callable[[ShapePoint], bool]] = None) -> LfunResult:
    """Sum over m <= M of m^{-s} sum_i Phi_q(x_i) phi(x_i) / |Gamma(x_i)| for disc (-1)^j m.

    The tail bound for real s > 1 extrapolates the largest observed linear growth
    constant of the weighted count and is therefore a heuristic majorant.
    """
    if M > coverage:
        raise ValueError(f"truncation M = {M} exceeds the table coverage {coverage}")
    sign = (-1) ** j
    pts = [p for p in points if p.disc * sign > 0 and abs(p.disc) <= M and (q == 1 or phi_q(p))]
    if not pts:
        return LfunResult(0j, 0.0, 0)
    v = phi3(np.array([p.quartic for p in pts])) * phi2(np.array([p.cubic for p in pts]))
    re, im = [], []
    counts: Dict[int, float] = {}
    for p, val in zip(pts, v):
        m = abs(p.disc)
        term = complex(val) / p.stabilizer_order * complex(mpmath.power(m, -s))
        re.append(term.real)
        im.append(term.imag)
        counts[m] = counts.get(m, 0.0) + 1.0 / p.stabilizer_order
    sup = float(np.max(np.abs(v))) if len(v) else 0.0
    tail = math.inf
    sr = complex(s).real
    if sr > 1:
        cum = 0.0
        growth = 0.0
        for m in sorted(counts):
            cum += counts[m]
            growth = max(growth, cum / m)
        tail = sup * growth * sr / (sr - 1) * M ** (1 - sr)
    return LfunResult(complex(math.fsum(re), math.fsum(im)), tail, len(pts))


def ks_distance_y2(ys: Sequence[float]) -> float:
    """Kolmogorov-Smirnov distance between the empirical law of y and the rank-2 Haar law."""
    from scipy.stats import kstest

    if len(ys) == 0:
        return 1.0
    return float(kstest(np.asarray(ys), lambda t: np.array([1 - haar_y_survival2(v) for v in np.atleast_1d(t)])).statistic)
