import numpy as np
import pytest

from cuspidal import surface
from cuspidal.errors import InvalidData, NotCuspidalEdge
from cuspidal.jets import Jet2
from cuspidal.surface import Case1Coeffs, Case2Coeffs, NormalFormData, SurfaceGerm
from cuspidal.synth import disguise, random_normal_form

from conftest import germ


def standard_edge():
    return germ({(1, 0): 1}, {(0, 2): 0.5}, {(0, 3): 1 / 6})


def test_standard_edge_is_cuspidal():
    f = standard_edge()
    assert surface.is_cuspidal_edge(f)
    # (f, nu) is an immersion at a cuspidal edge
    assert surface.front_jacobian_rank(f) == 2


def test_non_edges():
    cone = germ({(1, 0): 1}, {(0, 2): 1}, {(0, 2): 1})
    assert not surface.is_cuspidal_edge(cone)
    immersion = germ({(1, 0): 1}, {(0, 1): 1}, {})
    with pytest.raises(NotCuspidalEdge):
        surface.reduce_to_normal_form(immersion)


def test_normal_form_of_normal_form():
    nf = NormalFormData(a20=0.3, a30=-0.2, b20=0.5, b30=0.1, b12=0.4, b03=0.9, h5_00=0.0)
    got = surface.reduce_to_normal_form(surface.normal_form_germ(nf))
    np.testing.assert_allclose(got.surface_vector(), nf.surface_vector(), atol=1e-12)


def test_round_trip_disguised(rng):
    for case in (None, 1, 2):
        for _ in range(10):
            nf = random_normal_form(rng, case=case)
            f, b, _ = disguise(nf, rng)
            got = surface.reduce_to_normal_form(f, b)
            np.testing.assert_allclose(got.surface_vector(), nf.surface_vector(), atol=1e-8)
            np.testing.assert_allclose(got.boundary_vector(), nf.boundary_vector(), atol=1e-8)


def test_edge_invariants():
    nf = NormalFormData(a20=0.3, a30=0, b20=0.5, b30=0, b12=0.4, b03=0.9)
    inv = surface.edge_invariants(nf)
    assert (inv.kappa_s, inv.kappa_nu, inv.kappa_c, inv.kappa_t) == (0.3, 0.5, 0.9, 0.4)


def test_validation():
    with pytest.raises(InvalidData):
        NormalFormData(a20=0, a30=0, b20=0, b30=0, b12=0, b03=0)
    with pytest.raises(InvalidData):
        NormalFormData(a20=0, a30=0, b20=-1, b30=0, b12=0, b03=1)
    with pytest.raises(InvalidData):
        NormalFormData(a20=0, a30=0, b20=0, b30=0, b12=0, b03=1,
                       boundary=Case1Coeffs(2, 0, 0, 0))


def test_dict_round_trip():
    nf = NormalFormData(0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, Case2Coeffs(-1, 0.1, 0.2, 0.3))
    assert NormalFormData.from_dict(nf.to_dict()) == nf


def test_unit_normal_is_unit():
    f = surface.normal_form_germ(NormalFormData(0.3, 0.1, 0.5, 0.2, 0.4, 0.9))
    nu = surface.unit_normal_jet(f)
    sq = sum((c * c for c in nu), Jet2.zero(nu[0].order))
    assert sq.allclose(Jet2.one(sq.order), atol=1e-10)


def test_rotation_invariance(rng):
    from cuspidal.synth import random_rotation
    nf = random_normal_form(rng, case=None)
    f, _, _ = disguise(nf, rng)
    a = surface.reduce_to_normal_form(f)
    b = surface.reduce_to_normal_form(f.rotate(random_rotation(rng)))
    np.testing.assert_allclose(a.surface_vector(), b.surface_vector(), atol=1e-9)
