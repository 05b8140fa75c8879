import math

import mpmath
import numpy as np
import pytest

from quartshape.forms import BinaryCubic, Pair, disc_pair, resolvent_cubic
from quartshape.rings import cubic_ring, quartic_ring
from quartshape.shapes import embed, goldfeld_coords, gram_from_iwasawa, iwasawa_coords, reduce_gram, shape_of

from conftest import SPLIT, random_pair


def test_z3_shape_is_rho():
    s = shape_of(cubic_ring(BinaryCubic(0, 1, -1, 0)))
    assert abs(complex(s.z) - complex(0.5, math.sqrt(3) / 2)) < 1e-12


def test_z4_shape():
    g = np.array(shape_of(quartic_ring(SPLIT)).gram.tolist(), dtype=float)
    assert np.allclose(g, 4 ** (1 / 3) * (np.eye(3) - np.ones((3, 3)) / 4), atol=1e-12)
    assert np.allclose(goldfeld_coords(g), (0.5, 1 / 3, -1 / 3, math.sqrt(8) / 3, math.sqrt(3) / 2), atol=1e-9)


def test_covolume(rng):
    n = 0
    while n < 20:
        x = random_pair(rng)
        d = disc_pair(x)
        if d == 0:
            continue
        n += 1
        for t in (quartic_ring(x), cubic_ring(resolvent_cubic(x))):
            e = embed(t)
            want = mpmath.mpf(2) ** (-e.r2) * mpmath.sqrt(abs(d))
            assert abs(e.covolume() / want - 1) < 1e-12


def test_reduction_is_basis_invariant(rng):
    g = mpmath.matrix([[2, 0.3, 0.1], [0.3, 1.5, -0.2], [0.1, -0.2, 1.1]])
    g = g / mpmath.det(g) ** (mpmath.mpf(1) / 3)
    ref = reduce_gram(g).gram
    for _ in range(20):
        while True:
            rows = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
            if abs(round(np.linalg.det(np.array(rows, dtype=float)))) == 1:
                u = mpmath.matrix(rows)
                break
        h = reduce_gram(u * g * u.T).gram
        assert mpmath.mnorm(h - ref, 1) < 1e-12


def test_iwasawa_roundtrip_rank3(rng):
    for _ in range(50):
        c = (rng.uniform(0, 0.5), rng.uniform(0, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(1.0, 2.0),
             rng.uniform(1.0, 2.0))
        g = gram_from_iwasawa(c)
        s = reduce_gram(g)
        c2 = iwasawa_coords(s)
        assert all(abs(v) <= 0.5 + 1e-9 for v in c2[:3]) and min(c2[3:]) >= math.sqrt(3) / 2 - 1e-9
        # same lattice, so the same canonical coordinates
        assert np.allclose(c2, goldfeld_coords(np.array(g.tolist(), dtype=float)), atol=1e-8)


def test_iwasawa_roundtrip_rank2():
    g = gram_from_iwasawa((0.2, 1.7))
    x, y = iwasawa_coords(reduce_gram(g))
    assert abs(x - 0.2) < 1e-12 and abs(y - 1.7) < 1e-12


@pytest.mark.parametrize("c", [(0, 1, 1, 0), (1, 0, -1, 1), (1, 1, 2, 1)])
def test_cubic_shapes_in_domain(c):
    x, y = iwasawa_coords(shape_of(cubic_ring(BinaryCubic(*c))))
    assert 0 <= x <= 0.5 + 1e-12 and x * x + y * y >= 1 - 1e-12
