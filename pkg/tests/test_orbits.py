import pytest

from quartshape.forms import Pair, act, disc_pair
from quartshape.orbits import (EnumerationConfig, canonicalize, class_numbers, enumerate_orbits, equivalent,
                               make_record, stabilizer)

from conftest import SPLIT, random_pair, random_unimodular


@pytest.fixture(scope="module")
def small():
    return enumerate_orbits(EnumerationConfig(300))


def test_disc_one_is_the_split_orbit():
    res = enumerate_orbits(EnumerationConfig(1))
    assert len(res.records) == 1
    r = res.records[0]
    assert r.disc == 1 and r.j == 0 and r.stabilizer_order == 24 and r.maximal and r.content == 1
    assert equivalent(r.representative, SPLIT) is not None


def test_config_bounds():
    c = EnumerationConfig(10 ** 4)
    assert c.half_width == 5 and c.norm_bound == 25
    assert EnumerationConfig(1000).half_width == 4


def test_canonical_form_is_an_orbit_invariant(rng):
    done = 0
    while done < 25:
        x = random_pair(rng, -2, 2)
        if disc_pair(x) == 0:
            continue
        done += 1
        c = canonicalize(x)
        for _ in range(3):
            assert canonicalize(act(random_unimodular(rng), x)) == c


def test_equivalence_certificates(rng):
    x = random_pair(rng)
    while disc_pair(x) == 0:
        x = random_pair(rng)
    g = random_unimodular(rng)
    h = equivalent(x, act(g, x))
    assert h is not None and act(h, x) == act(g, x)


def test_stabilizer_orders(small):
    for r in small.records:
        if r.flags.totally_irreducible:
            assert r.stabilizer_order == 1
        assert len(stabilizer(r.representative)) == r.stabilizer_order


def test_records_are_sorted_distinct_and_signed(small):
    recs = small.records
    assert [r.sort_key() for r in recs] == sorted(r.sort_key() for r in recs)
    for r in recs:
        assert (-1) ** r.j == (1 if r.disc > 0 else -1)
        assert 0 < abs(r.disc) <= 300
    # pairwise inequivalent within each discriminant
    by_d = {}
    for r in recs:
        by_d.setdefault(r.disc, []).append(r.representative)
    for reps in by_d.values():
        for i in range(len(reps)):
            for j in range(i):
                assert equivalent(reps[i], reps[j]) is None
    assert small.undecided == 0


def test_smallest_fields_found(small):
    s4 = {r.disc for r in small.records if r.flags.galois_hint == "S4"}
    assert {-283, 229} <= s4


def test_box_scale_monotone():
    a = {r.representative.coeffs for r in enumerate_orbits(EnumerationConfig(100)).records}
    b = {r.representative.coeffs for r in enumerate_orbits(EnumerationConfig(100, box_scale=4)).records}
    assert a <= b


def test_threads_do_not_change_output():
    a = enumerate_orbits(EnumerationConfig(60)).records
    b = enumerate_orbits(EnumerationConfig(60), threads=2).records
    assert [r.representative for r in a] == [r.representative for r in b]


def test_class_numbers(small):
    h, mass = class_numbers(small.records, 0, 1)
    assert h == 1 and mass == pytest.approx(1 / 24)


def test_degenerate_input_rejected():
    with pytest.raises(ValueError):
        make_record(Pair.from_coeffs([0] * 12))


def test_conjugate_places_with_zero_mean_imaginary_part(rng):
    # embedding columns with imaginary parts (-2, 2, 0) and (2, -2, 0) once lost a place
    x = Pair.from_coeffs((-4, -1, 0, 0, -4, -1, 0, 0, 0, 0, -1, 1))
    assert disc_pair(x) == -10000
    c = canonicalize(x)
    for _ in range(5):
        assert canonicalize(act(random_unimodular(rng), x)) == c
    assert make_record(x).j == 1
