import pytest

from quartshape.arith import (classify, maximality, nonmaximal_type, phi_hat_estimate, phi_q, relevant_primes,
                              superring_oracle)
from quartshape.forms import Pair, disc_pair
from quartshape.rings import quartic_ring

from conftest import SPLIT, random_pair


def test_split_ring_is_maximal_and_reducible():
    assert maximality(SPLIT).overall
    f = classify(SPLIT)
    assert f.reducible and not f.totally_irreducible and f.galois_hint == "not-applicable"


def test_relevant_primes():
    assert relevant_primes(2 ** 3 * 3 * 25) == [2, 5]
    assert relevant_primes(-229) == []


def test_form_side_agrees_with_ring_side(rng):
    checks = 0
    for _ in range(300):
        x = random_pair(rng, -3, 3)
        d = disc_pair(x)
        if d == 0:
            continue
        q = quartic_ring(x)
        for p in relevant_primes(d):
            if p > 7:
                continue
            assert (nonmaximal_type(x, p) is not None) == superring_oracle(q, p), (x.coeffs, p)
            checks += 1
    assert checks > 50


def test_phi_q_needs_squarefree():
    with pytest.raises(ValueError):
        phi_q(SPLIT, 4)
    assert phi_q(SPLIT, 1)


def test_totally_irreducible_hint():
    # x^4 - x - 1 style field of discriminant -283 reached through a reduced pair
    from quartshape.orbits import EnumerationConfig, enumerate_orbits

    recs = enumerate_orbits(EnumerationConfig(300)).records
    hints = {r.disc: r.flags.galois_hint for r in recs if r.flags.totally_irreducible and r.maximal}
    assert hints.get(-283) == "S4" and hints.get(229) == "S4"


def test_phi_hat_trivial_character():
    est = phi_hat_estimate(Pair.from_coeffs([0] * 12), 2, 4000, seed=3)
    assert 0 < est.real < 1 and est.imag == 0
    assert phi_hat_estimate(SPLIT, 1, 10, seed=0).real == 1.0
