import math

import numpy as np
import pytest

from cuspidal import oracle
from cuspidal.errors import NotDefined
from cuspidal.jets import Jet1, Jet2


def test_finite_diff_examples():
    assert oracle.finite_diff(lambda t: t * t, 0.3, 2) == pytest.approx(2.0, abs=1e-6)
    assert oracle.finite_diff(np.sin, 0.0, 1, h=1e-4) == pytest.approx(1.0, abs=1e-8)
    assert oracle.finite_diff(np.exp, 0.0, 4, h=1e-2) == pytest.approx(1.0, abs=1e-3)


def test_jets_agree_with_finite_differences(rng):
    for _ in range(20):
        j = Jet1(rng.uniform(-1, 1, 7), 6)
        for k in range(1, 5):
            fd = oracle.finite_diff(j, 0.0, k, h=0.05, accuracy=8)
            exact = j.derivative_at_zero(k)
            assert abs(fd - exact) <= 1e-6 * max(1.0, abs(exact))


def test_derivative_stack_with_richardson():
    d = oracle.derivative_stack(lambda t: np.array([np.exp(t), np.sin(t), t ** 3]), 0.0, 3)
    np.testing.assert_allclose(d[0], [1, 1, 0], atol=1e-9)
    np.testing.assert_allclose(d[2], [1, -1, 6], atol=1e-5)


def test_frenet_examples():
    circle = lambda t: np.array([np.cos(t), np.sin(t), 0.0])
    k, tau = oracle.frenet_kappa_tau(circle, 0.7)
    assert k == pytest.approx(1, abs=1e-8) and tau == pytest.approx(0, abs=1e-6)
    helix = lambda t: np.array([np.cos(t), np.sin(t), t])
    k, tau = oracle.frenet_kappa_tau(helix, 0.3)
    assert k == pytest.approx(0.5, abs=1e-7) and tau == pytest.approx(0.5, abs=1e-6)
    with pytest.raises(NotDefined):
        oracle.frenet_kappa_tau(lambda t: np.array([t, 2 * t, 0.0]), 0.0)


def test_curve_on_surface_plane_and_normal_form():
    plane = lambda u, v: np.array([u, v, 0.0])
    nu = lambda u, v: np.array([0.0, 0.0, 1.0])
    knb, kgb = oracle.curve_on_surface_invariants(plane, nu, lambda t: (t, 2 * t), 0.1)
    assert abs(knb) < 1e-8 and abs(kgb) < 1e-8

    b20 = 0.7
    f = lambda u, v: np.array([u, v * v / 2, b20 * u * u / 2 + v ** 3 / 6])

    def normal(u, v):
        w = np.cross([1.0, 0.0, b20 * u], [0.0, 1.0, v / 2])
        return w / np.linalg.norm(w)
    knb, _ = oracle.curve_on_surface_invariants(f, normal, lambda t: (t, 0.0), 0.0)
    assert knb == pytest.approx(b20, abs=1e-8)


def test_curve_on_sphere():
    # latitude circle at height z0 on the unit sphere; normal curvature is 1 in magnitude
    z0 = 0.6
    r = math.sqrt(1 - z0 * z0)
    f = lambda u, v: np.array([np.cos(u) * np.cos(v), np.sin(u) * np.cos(v), np.sin(v)])
    nu = lambda u, v: -f(u, v)
    b = lambda t: (t / r, math.asin(z0))
    knb, kgb = oracle.curve_on_surface_invariants(f, nu, b, 0.2)
    assert knb == pytest.approx(1.0, abs=1e-7)
    assert abs(kgb) == pytest.approx(z0 / r, abs=1e-6)


def test_grid_derivative():
    ts = np.linspace(0, 1, 201)
    d = oracle.grid_derivative(ts, np.sin(ts), 1)
    ok = np.isfinite(d)
    np.testing.assert_allclose(d[ok], np.cos(ts[ok]), atol=1e-10)


def test_extrapolate_limit():
    got = oracle.extrapolate_limit(lambda t: 2 + 3 * t + t * t)
    assert got == pytest.approx(2.0, abs=1e-9)
