import pytest
from sympy import divisor_sigma

from quartshape.forms import GroupElement, Pair, act, disc_pair, resolvent_cubic
from quartshape.rings import (content, cubic_ring, hecke_points, primitive_model, quartic_ring, resolvents_of,
                              ring_of_action)

from conftest import SPLIT, random_pair, random_unimodular


def test_split_ring_is_z4():
    q = quartic_ring(SPLIT)
    assert q.disc() == 1 and q.is_associative()
    assert content(q)[0] == 1


def test_tables_associative_with_matching_disc(rng):
    for _ in range(150):
        x = random_pair(rng)
        d = disc_pair(x)
        if d == 0:
            continue
        q, c = quartic_ring(x), cubic_ring(resolvent_cubic(x))
        assert q.is_associative() and c.is_associative()
        assert q.disc() == d == c.disc()


def test_covariance_under_the_action(rng):
    for _ in range(150):
        x = random_pair(rng)
        if disc_pair(x) == 0:
            continue
        g = random_unimodular(rng)
        assert quartic_ring(act(g, x)).normalized() == ring_of_action(x, g)


def test_scaled_pair_has_content():
    # 2x has ring Z + 2Q with Q the ring of x, up to the GL2 side
    x = Pair.from_coeffs((1, 0, -1, 0, 1, 0, 0, 1, 1, 1, 0, 0))
    assert disc_pair(x) != 0
    y = act(GroupElement(((1, 0, 0), (0, 1, 0), (0, 0, 1)), ((2, 0), (0, 1))), x)
    n, _ = content(quartic_ring(y))
    assert n in (1, 2)
    m, prim = primitive_model(y)
    assert m == n and content(quartic_ring(prim))[0] == 1


def test_hecke_points_count():
    for n in range(1, 13):
        assert len(hecke_points(n)) == divisor_sigma(n)
    with pytest.raises(ValueError):
        hecke_points(0)


def test_resolvents_count_follows_content(rng):
    seen = set()
    for _ in range(400):
        x = random_pair(rng, -2, 2)
        if disc_pair(x) == 0:
            continue
        n, _ = content(quartic_ring(x))
        rs = resolvents_of(x)
        assert len(rs) == divisor_sigma(n)
        assert all(disc_pair(x) == c.disc() for c in map(cubic_ring, rs))
        seen.add(n)
    assert 1 in seen


def test_singular_pair_rejected():
    with pytest.raises(ValueError):
        resolvents_of(Pair.from_coeffs([0] * 12))
