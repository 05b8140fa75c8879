"""The Hunter-search oracle itself, checked against small known field discriminants."""
from sympy import Poly, symbols

from quartshape.oracles.hunter import _field_disc, quartic_fields, smallest_totally_real_s4

t = symbols("t")


def test_field_discriminants():
    assert _field_disc(Poly(t ** 4 - t - 1, t)) == -283
    assert _field_disc(Poly(t ** 4 + 1, t)) == 256
    assert _field_disc(Poly(t ** 4 + 4 * t ** 2 + 2, t)) == 2048
    # generates Q(i, sqrt 2); the polynomial discriminant carries an index factor of 24^2
    assert _field_disc(Poly(t ** 4 - 2 * t ** 2 + 9, t)) == 256


def test_smallest_fields_by_signature():
    f = quartic_fields(1000)
    s4 = {(d, r2) for d, r2, g, _ in f if g == "S4"}
    assert (-283, 1) in s4 and (229, 2) in s4
    assert all(abs(d) <= 1000 for d, *_ in f)


def test_smallest_totally_real_s4():
    assert smallest_totally_real_s4(2500) == 1957
