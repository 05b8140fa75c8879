import random

import pytest

from quartshape.forms import GroupElement, Pair

SPLIT = Pair.from_coeffs((0, 0, 0, -1, -1, 0, 0, 0, 0, -1, 0, -1))


def random_pair(rng, lo=-3, hi=3):
    return Pair.from_coeffs([rng.randint(lo, hi) for _ in range(12)])


def random_unimodular(rng):
    while True:
        g3 = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        g2 = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
        try:
            g = GroupElement(g3, g2)
        except ValueError:
            continue
        if g.integral:
            return g


@pytest.fixture
def rng():
    return random.Random(20240601)
