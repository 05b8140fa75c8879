from fractions import Fraction

import pytest

from quartshape.forms import (BinaryCubic, GroupElement, Pair, act, disc_cubic, disc_pair, involute, pairing,
                              resolvent_cubic, signature_orbit)

from conftest import SPLIT, random_pair, random_unimodular


def test_serialization_roundtrip():
    x = Pair.from_coeffs(range(1, 13))
    assert Pair.parse(x.to_line()) == x
    assert x.coeffs == tuple(range(1, 13))
    with pytest.raises(ValueError):
        Pair.from_coeffs(range(11))


def test_split_pair_has_disc_one():
    assert disc_pair(SPLIT) == 1
    assert signature_orbit(SPLIT) == 0


def test_resolvent_of_diagonal_pair():
    # A = diag(1, 0, -1), B = diag(0, 1, 1): 4 det(Ax - By) = -4 x (x - y)... up to the factor
    x = Pair.from_coeffs((1, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0))
    f = resolvent_cubic(x)
    for u, v in ((1, 0), (0, 1), (1, 1), (2, -3)):
        assert f(u, v) == 4 * (u * (-v) * (-u - v))


def test_cubic_disc_formula():
    assert disc_cubic(BinaryCubic(0, 1, -1, 0)) == 1
    assert disc_cubic(BinaryCubic(1, 0, 0, -2)) == -108


def test_equivariance(rng):
    for _ in range(300):
        x = random_pair(rng)
        try:
            g = GroupElement([[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)],
                             [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)])
        except ValueError:
            g = random_unimodular(rng)
        assert disc_pair(act(g, x)) == g.det3() ** 8 * g.det2() ** 6 * disc_pair(x)


def test_action_is_a_left_action(rng):
    x = random_pair(rng)
    g, h = random_unimodular(rng), random_unimodular(rng)
    assert act(g * h, x) == act(g, act(h, x))
    assert act(GroupElement.identity(), x) == x


def test_rational_elements_accepted():
    g = GroupElement([[Fraction(1, 2), 0, 0], [0, 1, 0], [0, 0, 1]])
    assert g.det3() == Fraction(1, 2)
    with pytest.raises(ValueError):
        GroupElement([[1, 0, 0], [0, 0, 0], [0, 0, 1]])


def test_pairing_invariance(rng):
    for _ in range(100):
        x, y = random_pair(rng), Pair.from_coeffs([2 * rng.randint(-2, 2) if i % 6 >= 3 else rng.randint(-2, 2)
                                                   for i in range(12)], dual=True)
        g = random_unimodular(rng)
        assert pairing(act(g, x), act(involute(g), y)) == pairing(x, y)


def test_dual_lattice_rejects_odd_mixed_terms():
    with pytest.raises(ValueError):
        Pair.from_coeffs((0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0), dual=True)


def test_signature_matches_sign(rng):
    for _ in range(100):
        x = random_pair(rng)
        d = disc_pair(x)
        if d:
            assert (-1) ** signature_orbit(x) == (1 if d > 0 else -1)
