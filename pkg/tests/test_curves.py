import math

import numpy as np
import pytest

from cuspidal import curves
from cuspidal.curves import CurveClass, CurveGerm
from cuspidal.errors import Not23Type, NotSingular
from cuspidal.jets import Jet1
from cuspidal.synth import random_reparam, random_rotation, random_type23

from conftest import curve


@pytest.mark.parametrize("polys, kappa, tau", [
    (([0, 0, 0.5], [0, 0, 0, 1 / 6], [0]), 1.0, 0.0),
    (([0, 0, 1], [0, 0, 0, 1], [0]), 3 / math.sqrt(2), 0.0),
    (([0, 0, 0.5], [0, 0, 0, 1 / 6], [0, 0, 0, 0, 1 / 24]), 1.0, 1.0),
])
def test_cusp_examples(polys, kappa, tau):
    g = curve(*polys)
    assert curves.classify_curve(g) is CurveClass.Type23
    assert curves.cuspidal_curvature(g) == pytest.approx(kappa, rel=1e-12)
    assert curves.cuspidal_torsion(g) == pytest.approx(tau, abs=1e-12)


def test_sigma_examples():
    assert curves.sigma_sing(curve([0, 0, 0.5], [0, 0, 0, 1 / 6], [0, 0, 0, 0, 1 / 24])) == \
        pytest.approx(0.0, abs=1e-14)
    assert curves.sigma_sing(curve([0, 0, 0.5], [0, 0, 0, 1 / 6, 1 / 24], [0])) == \
        pytest.approx(1.0, rel=1e-12)


def test_half_arclength_examples():
    np.testing.assert_allclose(curves.half_arclength_series(curve([0, 0, 1], [0], [0])).coeffs[:3],
                               [0, 1, 0], atol=1e-14)
    lead = curves.half_arclength_series(curve([0, 0, 0.5], [0, 0, 0, 1 / 6], [0])).coeff(1)
    assert lead == pytest.approx(1 / math.sqrt(2), rel=1e-12)


def test_limit_examples():
    g = curve([0, 0, 0.5], [0, 0, 0, 1 / 6], [0])
    assert curves.limit_kappa(g) == pytest.approx(1 / (2 * math.sqrt(2)), abs=1e-4)
    assert curves.limit_kappa(curve([0, 0, 1], [0, 0, 0, 1], [0])) == pytest.approx(0.75, abs=1e-4)
    assert curves.limit_tau(curve([0, 0, 0.5], [0, 0, 0, 1 / 6], [0, 0, 0, 0, -1 / 24])) == \
        pytest.approx(-2 / (3 * math.sqrt(2)), abs=1e-4)


def test_normal_form_examples(rng):
    g = curve([0, 0, 0.5], [0, 0, 0, 1 / 6], [0, 0, 0, 0, 1 / 24])
    a = curves.normal_form_identities(curves.curve_normal_form(g))
    b = curves.normal_form_identities(curves.curve_normal_form(g.transform(random_rotation(rng))))
    assert (a.kappa_sing, a.tau_sing) == pytest.approx((1.0, 1.0), abs=1e-12)
    assert (b.kappa_sing, b.tau_sing, b.sigma_sing) == pytest.approx(
        (a.kappa_sing, a.tau_sing, a.sigma_sing), abs=1e-8)


def test_classification():
    assert curves.classify_curve(curve([0, 1], [0], [0])) is CurveClass.Regular
    assert curves.classify_curve(curve([0, 0, 1], [0, 0, 2], [0])) is CurveClass.AType
    assert curves.classify_curve(curve([0], [0], [0])) is CurveClass.Degenerate
    with pytest.raises(NotSingular):
        curves.cuspidal_curvature(curve([0, 1], [0], [0]))
    with pytest.raises(Not23Type):
        curves.cuspidal_torsion(curve([0, 0, 1], [0, 0, 2], [0]))


def test_normal_form_identities(rng):
    for _ in range(20):
        g = random_type23(rng)
        inv = curves.curve_invariants(g)
        nf = curves.curve_normal_form(g)
        ident = curves.normal_form_identities(nf)
        assert ident.kappa_sing == pytest.approx(inv.kappa_sing, rel=1e-9)
        assert ident.tau_sing == pytest.approx(inv.tau_sing, rel=1e-8, abs=1e-10)
        assert ident.sigma_sing == pytest.approx(inv.sigma_sing, rel=1e-8, abs=1e-10)


def test_half_arclength_series_speed(rng):
    g = random_type23(rng)
    t = curves.half_arclength_series(g)
    h = g.reparametrize(t.inverse())
    speed_sq = sum((c.deriv() * c.deriv() for c in h.components), Jet1.zero(h.order - 1))
    expected = Jet1([0, 0, 4], speed_sq.order)
    assert speed_sq.truncate(3).allclose(expected.truncate(3), atol=1e-9)


def test_limits(rng):
    for _ in range(5):
        g = random_type23(rng)
        ks, ts = curves.cuspidal_curvature(g), curves.cuspidal_torsion(g)
        assert curves.limit_kappa(g) == pytest.approx(ks / (2 * math.sqrt(2)), abs=1e-4)
        assert curves.limit_tau(g) == pytest.approx(2 * ts / (3 * math.sqrt(2)), abs=1e-4)


def test_kappa_sing_prime_normal_form_parameter():
    # gamma = (t^2/2, k t^3/6 + g24 t^4/24, ...)
    k, g24 = 1.3, 0.7
    g = curve([0, 0, 0.5], [0, 0, 0, k / 6, g24 / 24], [0, 0, 0, 0, 0.1])
    assert curves.kappa_sing_prime(g, "given") == pytest.approx(
        math.sqrt(2) * g24 / 6, rel=1e-9)
    assert curves.kappa_sing_prime(g) == pytest.approx(g24 / 3, rel=1e-9)


def test_invariance_under_rotation_and_reparametrization(rng):
    for _ in range(20):
        g = random_type23(rng)
        inv = curves.curve_invariants(g)
        h = g.reparametrize(random_reparam(rng)).transform(random_rotation(rng))
        other = curves.curve_invariants(h)
        for name in ("kappa_sing", "tau_sing", "sigma_sing"):
            a, b = getattr(inv, name), getattr(other, name)
            assert abs(a - b) <= 1e-8 * max(1.0, abs(a))


def test_orientation_reversal_flips_torsion(rng):
    g = random_type23(rng)
    h = g.reparametrize(Jet1([0, -1], g.order))
    assert curves.cuspidal_torsion(h) == pytest.approx(-curves.cuspidal_torsion(g), rel=1e-10)
    assert curves.cuspidal_curvature(h) == pytest.approx(curves.cuspidal_curvature(g), rel=1e-10)


def test_reconstruct_constant_data():
    rc = curves.reconstruct_curve(1.0, 0.5, steps=800)
    speed = np.linalg.norm(np.gradient(rc.points, rc.ts, axis=0), axis=1)
    inner = slice(5, -5)
    np.testing.assert_allclose(speed[inner], 2 * np.abs(rc.ts[inner]), atol=1e-4)
    g = curves.reconstruct_germ(Jet1([1.0], 6), Jet1([0.5], 6))
    assert curves.cuspidal_curvature(g) == pytest.approx(2 * math.sqrt(2), rel=1e-9)
    assert curves.cuspidal_torsion(g) == pytest.approx(3 * 0.5 / math.sqrt(2), rel=1e-9)


def test_reconstruct_rejects_nonpositive_alpha():
    from cuspidal.errors import InvalidData
    with pytest.raises(InvalidData):
        curves.reconstruct_curve([0.1, -1.0], 0.0)


def test_curve_json():
    g = curve([0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 0, 1])
    d = g.to_dict()
    back = CurveGerm([Jet1.from_dict(c) for c in d])
    assert all(a.allclose(b, atol=0) for a, b in zip(back.components, g.components))
