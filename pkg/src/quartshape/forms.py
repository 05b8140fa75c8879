"""Ternary quadratic forms, pairs of them, and the GL3 x GL2 action."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

KEYS = ("11", "22", "33", "12", "13", "23")
_POS = {"11": (0, 0), "22": (1, 1), "33": (2, 2), "12": (0, 1), "13": (0, 2), "23": (1, 2)}


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def _transpose(a):
    return [list(r) for r in zip(*a)]


def _inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _det(m):
    if len(m) == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return _det3(m)


def _norm(x):
    """Demote integral Fractions to int so equality and hashing stay simple."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


@dataclass(frozen=True)
class TernaryForm:
    a11: int = 0
    a22: int = 0
    a33: int = 0
    a12: int = 0
    a13: int = 0
    a23: int = 0

    @property
    def coeffs(self):
        return (self.a11, self.a22, self.a33, self.a12, self.a13, self.a23)

    def __getitem__(self, key: str):
        return getattr(self, "a" + key)

    def doubled(self):
        """The doubled Gram matrix 2A (integral for integral forms)."""
        a11, a22, a33, a12, a13, a23 = self.coeffs
        return [[2 * a11, a12, a13], [a12, 2 * a22, a23], [a13, a23, 2 * a33]]

    @classmethod
    def from_doubled(cls, m) -> "TernaryForm":
        h = Fraction(1, 2)
        return cls(_norm(m[0][0] * h), _norm(m[1][1] * h), _norm(m[2][2] * h),
                   _norm(m[0][1]), _norm(m[0][2]), _norm(m[1][2]))

    def __call__(self, v: Sequence[int]):
        x, y, z = v
        a11, a22, a33, a12, a13, a23 = self.coeffs
        return a11 * x * x + a22 * y * y + a33 * z * z + a12 * x * y + a13 * x * z + a23 * y * z

    def polar(self, v, w):
        """Bilinear polarization Q(v+w) - Q(v) - Q(w)."""
        m = self.doubled()
        return sum(v[i] * m[i][j] * w[j] for i in range(3) for j in range(3))

    def __add__(self, o):
        return TernaryForm(*(a + b for a, b in zip(self.coeffs, o.coeffs)))

    def scale(self, k):
        return TernaryForm(*(_norm(k * a) for a in self.coeffs))


UNIT = TernaryForm(1, 1, 1, 0, 0, 0)
ZERO = TernaryForm()


@dataclass(frozen=True)
class Pair:
    """A pair (A, B). ``dual`` marks membership in the dual lattice (even mixed terms)."""
    A: TernaryForm
    B: TernaryForm
    dual: bool = False

    def __post_init__(self):
        if self.dual:
            mixed = self.A.coeffs[3:] + self.B.coeffs[3:]
            if any(Fraction(c).denominator != 1 or int(c) % 2 for c in mixed):
                raise ValueError("dual-lattice pair needs even mixed coefficients")

    @property
    def coeffs(self):
        return self.A.coeffs + self.B.coeffs

    @classmethod
    def from_coeffs(cls, c: Sequence[int], dual: bool = False) -> "Pair":
        c = tuple(c)
        if len(c) != 12:
            raise ValueError("a pair has 12 coefficients")
        return cls(TernaryForm(*c[:6]), TernaryForm(*c[6:]), dual)

    def to_line(self) -> str:
        return " ".join(str(c) for c in self.coeffs)

    @classmethod
    def parse(cls, line: str) -> "Pair":
        return cls.from_coeffs(int(t) for t in line.replace(",", " ").split())

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coeffs)


@dataclass(frozen=True)
class BinaryCubic:
    a: int
    b: int
    c: int
    d: int

    @property
    def coeffs(self):
        return (self.a, self.b, self.c, self.d)

    def __call__(self, x, y):
        return self.a * x ** 3 + self.b * x * x * y + self.c * x * y * y + self.d * y ** 3

    def act(self, g) -> "BinaryCubic":
        """f(rx - ty, -sx + uy): the action induced on resolvents by g2 = ((r, s), (t, u))."""
        (r, s), (t, u) = g
        p, q = (r, -t), (-s, u)          # x -> p0 x + p1 y, y -> q0 x + q1 y
        a, b, c, d = self.coeffs
        out = [0, 0, 0, 0]
        for coef, ex in ((a, 3), (b, 2), (c, 1), (d, 0)):
            # coef * (p0 x + p1 y)^ex * (q0 x + q1 y)^(3 - ex)
            poly = [coef]
            for lin in [p] * ex + [q] * (3 - ex):
                nxt = [0] * (len(poly) + 1)
                for k, v in enumerate(poly):
                    nxt[k] += v * lin[0]
                    nxt[k + 1] += v * lin[1]
                poly = nxt
            out = [o + v for o, v in zip(out, poly)]
        return BinaryCubic(*(_norm(v) for v in out))


class GroupElement:
    """(g3, g2) with exact rational entries."""

    __slots__ = ("g3", "g2")

    def __init__(self, g3, g2=((1, 0), (0, 1))):
        g3 = tuple(tuple(_norm(Fraction(x)) for x in row) for row in g3)
        g2 = tuple(tuple(_norm(Fraction(x)) for x in row) for row in g2)
        if len(g3) != 3 or len(g2) != 2:
            raise ValueError("expected a 3x3 and a 2x2 matrix")
        if _det(g3) == 0 or _det(g2) == 0:
            raise ValueError("group element must be invertible")
        self.g3, self.g2 = g3, g2

    @classmethod
    def identity(cls):
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    @property
    def integral(self) -> bool:
        ints = all(isinstance(x, int) for m in (self.g3, self.g2) for row in m for x in row)
        return ints and abs(_det(self.g3)) == 1 and abs(_det(self.g2)) == 1

    def det3(self):
        return _det(self.g3)

    def det2(self):
        return _det(self.g2)

    def __mul__(self, o: "GroupElement") -> "GroupElement":
        return GroupElement(_matmul(self.g3, o.g3), _matmul(self.g2, o.g2))

    def inverse(self) -> "GroupElement":
        return GroupElement(_inverse(self.g3), _inverse(self.g2))

    def __eq__(self, o):
        return isinstance(o, GroupElement) and self.g3 == o.g3 and self.g2 == o.g2

    def __hash__(self):
        return hash((self.g3, self.g2))

    def __repr__(self):
        return f"GroupElement(g3={self.g3}, g2={self.g2})"


def act(g: GroupElement, x: Pair) -> Pair:
    m3 = [list(r) for r in g.g3]
    t3 = _transpose(m3)
    pa = _matmul(_matmul(m3, x.A.doubled()), t3)
    pb = _matmul(_matmul(m3, x.B.doubled()), t3)
    (r, s), (t, u) = g.g2
    na = [[r * pa[i][j] + s * pb[i][j] for j in range(3)] for i in range(3)]
    nb = [[t * pa[i][j] + u * pb[i][j] for j in range(3)] for i in range(3)]
    return Pair(TernaryForm.from_doubled(na), TernaryForm.from_doubled(nb), x.dual)


def resolvent_cubic(x: Pair) -> BinaryCubic:
    """4 det(Ax - By) as an integral binary cubic."""
    p, q = x.A.doubled(), x.B.doubled()
    # det(Px - Qy) = detP x^3 - tr(adjP Q) x^2 y + tr(P adjQ) x y^2 - detQ y^3, then halve
    adjp, adjq = _adj3(p), _adj3(q)
    tr = lambda m, n: sum(m[i][k] * n[k][i] for i in range(3) for k in range(3))
    vals = (_det3(p), -tr(adjp, q), tr(p, adjq), -_det3(q))
    return BinaryCubic(*(_norm(Fraction(v, 2) if isinstance(v, int) else Fraction(v) / 2)
                         for v in vals))


def _adj3(m):
    c = lambda i, j: (m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
                      - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3])
    return [[c(j, i) for j in range(3)] for i in range(3)]


def disc_cubic(f: BinaryCubic):
    a, b, c, d = f.coeffs
    return b * b * c * c - 4 * a * c ** 3 - 4 * b ** 3 * d - 27 * a * a * d * d + 18 * a * b * c * d


def disc_pair(x: Pair):
    return disc_cubic(resolvent_cubic(x))


def _bracket(x: TernaryForm, y: TernaryForm) -> Fraction:
    s = Fraction(0)
    for i in (1, 2, 3):
        s += x[f"{i}{i}"] * y[f"{4 - i}{4 - i}"]
    for i, j in ((1, 2), (1, 3), (2, 3)):
        s += Fraction(x[f"{i}{j}"] * y[f"{4 - j}{4 - i}"], 2)
    return s


def pairing(x: Pair, y: Pair):
    return _norm(_bracket(x.A, y.B) + _bracket(x.B, y.A))


_W3 = ((0, 0, 1), (0, 1, 0), (1, 0, 0))
_W2 = ((0, 1), (1, 0))


def involute(g: GroupElement) -> GroupElement:
    """tau (g^-1)^t tau with tau the antidiagonal permutation on each factor."""
    inv = g.inverse()
    g3 = _matmul(_matmul(_W3, _transpose(inv.g3)), _W3)
    g2 = _matmul(_matmul(_W2, _transpose(inv.g2)), _W2)
    return GroupElement(g3, g2)


def signature_orbit(x: Pair) -> int:
    """Index j of the real orbit: the number of complex places of the quartic algebra."""
    d = disc_pair(x)
    if d == 0:
        raise ValueError("singular pair: discriminant 0")
    if d < 0:
        return 1
    from .rings import quartic_ring
    from .polyutil import count_real_roots
    poly = quartic_ring(x).generic_charpoly()
    return (4 - count_real_roots(poly)) // 2
