import math

import numpy as np
import pytest

from quartshape.spectral import (MaassFormGL2, ShapePoint, SmoothingWindow, TruncationError, bump2, constant_function,
                                 default_pairs, gl2_generate, gl2_hecke_violations, gl3_generate, haar_coords,
                                 haar_y_survival2, hecke_gl3_apply, hecke_terms, in_siegel_set, kbessel, kbessel_ex,
                                 ks_distance_y2, lfun_partial, maass_eval, theta_gl3, weyl_sum)
from quartshape.spectral import RelationViolation


def test_bessel_half_order_closed_form():
    for y in (0.2, 1.0, 7.5, 40.0):
        assert kbessel(0.5, y, imaginary=False) == pytest.approx(math.sqrt(math.pi / (2 * y)) * math.exp(-y),
                                                                 rel=1e-12)


def test_bessel_underflow_flag():
    v = kbessel_ex(3.0, 800.0)
    assert v.value == 0.0 and v.underflow
    with pytest.raises(ValueError):
        kbessel(1.0, 0.0)


def test_bessel_imaginary_order_matches_mpmath():
    import mpmath
    for t, y in ((2.0, 1.0), (9.53, 5.0), (0.5, 30.0)):
        assert kbessel(t, y) == pytest.approx(float(mpmath.besselk(1j * t, y).real), rel=1e-8)


def test_gl2_relations():
    from sympy import primerange
    a = gl2_generate({p: (p % 5) - 2 for p in primerange(2, 80)}, 80)
    assert not gl2_hecke_violations(a, 80)
    a[6] += 1
    assert gl2_hecke_violations(a, 80)


def test_gl3_relations_and_inconsistent_data():
    from sympy import primerange
    data = {k: (p % 3) - 1 for p in primerange(2, 40) for k in ((p, 1), (1, p))}
    A = gl3_generate(data, 40)
    assert A(1, 1) == 1
    assert A.dual()(2, 1) == A(1, 2)
    with pytest.raises(RelationViolation):
        gl3_generate({**data, (4, 1): 99}, 40)


def test_hecke_operator_properties():
    assert all(len(hecke_terms(p)) == p * p + p + 1 for p in (2, 3, 5, 7, 11, 13))
    c = (0.1, 0.2, -0.3, 1.1, 1.2)
    assert hecke_gl3_apply(theta_gl3, 1, c) == pytest.approx(theta_gl3(c), rel=1e-12)
    t6 = hecke_gl3_apply(theta_gl3, 6, c)
    t23 = hecke_gl3_apply(lambda z: hecke_gl3_apply(theta_gl3, 3, z), 2, c)
    assert t6 == pytest.approx(t23, rel=1e-10)


def test_haar_rank2_survival():
    y = haar_coords(2, 400000, seed=5)[:, 1]
    for t in (0.9, 1.0, 2.0, 5.0):
        p = float(np.mean(y > t))
        want = haar_y_survival2(t)
        assert abs(p - want) <= 4 * math.sqrt(want * (1 - want) / len(y))


def test_haar_rank3_in_siegel_set_and_deterministic():
    a = haar_coords(3, 5000, seed=9)
    assert in_siegel_set(a).all()
    assert np.array_equal(a, haar_coords(3, 5000, seed=9))
    assert (a[:, :2] >= 0).all()


def test_window_and_constant_weyl_sum():
    psi = SmoothingWindow()
    assert psi(0.5625) == pytest.approx(1.0) and psi(0.1) == 0 and psi(1.0) == 0
    pts = [ShapePoint(d, 0, (0.1, 0.1, 0.0, 1.0, 1.0), (0.1, 1.0)) for d in range(200, 1000, 7)]
    one3, one2 = constant_function(3), constant_function(2)
    r = weyl_sum(pts, one3, one2, psi, 1000)
    assert r.S == r.N and r.ratio == 1.0
    # order independent
    assert weyl_sum(pts[::-1], one3, one2, psi, 1000).S == r.S


def test_default_pairs_are_centred():
    for f3, f2 in default_pairs(20000, 3):
        assert f3.mean_zero or f2.mean_zero
        mc = np.mean(f2(haar_coords(2, 20000, 99))) if f2.mean_zero else np.mean(f3(haar_coords(3, 20000, 99)))
        assert abs(mc) < 0.02


def test_lfun_partial_sum_and_coverage():
    pts = [ShapePoint(d, 0, (0.1, 0.1, 0.0, 1.0, 1.0), (0.1, 1.0), 1) for d in (5, 5, 12, 40)]
    one3, one2 = constant_function(3), constant_function(2)
    r = lfun_partial(pts, 0, 1, one3, one2, 2.0, 40, 40)
    assert r.value.real == pytest.approx(2 / 25 + 1 / 144 + 1 / 1600) and r.terms == 4
    assert math.isfinite(r.tail_bound)
    r2 = lfun_partial(pts, 0, 2, one3, one2, 2.0, 40, 40, phi_q=lambda p: p.disc % 2 == 0)
    assert abs(r2.value) <= abs(r.value)
    with pytest.raises(ValueError):
        lfun_partial(pts, 0, 1, one3, one2, 2.0, 100, 40)


def test_ks_distance():
    y = haar_coords(2, 20000, seed=1)[:, 1]
    assert ks_distance_y2(y) < 0.02
    assert ks_distance_y2(np.full(100, 1.0)) > 0.3


def test_maass_truncation_and_file(tmp_path):
    from sympy import primerange
    coeffs = gl2_generate({p: 0.0 for p in primerange(2, 30)}, 30)
    path = tmp_path / "form.txt"
    path.write_text("R 9.53369526135\n" + "".join(f"{n} {v}\n" for n, v in coeffs.items()))
    f = MaassFormGL2.from_file(path)
    assert f.truncation == 30 and not f.hecke_violations()
    val, tail = maass_eval(f, complex(0.1, 1.0))
    assert tail < 1e-8 and math.isfinite(val)
    with pytest.raises(TruncationError) as e:
        maass_eval(f, complex(0.1, 0.01))
    assert e.value.required > 30


def test_bump_support():
    b = bump2(0.25, 1.0, 0.35, 0.45)
    assert b(np.array([[0.25, 1.0]]))[0] == 1.0 and b(np.array([[0.25, 5.0]]))[0] == 0.0
