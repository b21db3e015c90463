import math

import numpy as np
import pytest

from cuspidal import ruled
from cuspidal.errors import InvalidData
from cuspidal.ruled import RuledInput, ScalarFunction

E1, E2 = [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]


def worked(y=(1.5, 0, 1), **kw):
    args = dict(x=0.5, y=list(y), kappa_delta=1.0, delta0=E1, delta1=E2, eps=1.0, M=2.0)
    args.update(kw)
    return RuledInput(**args)


@pytest.fixture(scope="module")
def worked_surface():
    return ruled.build_surface(worked(), steps=2000)


# -- scalar functions and input ----------------------------------------------------

def test_scalar_function_forms():
    assert ScalarFunction.from_spec(2.0)(0.3) == 2.0
    p = ScalarFunction.from_spec({"poly": [1, 0, 3]})
    assert p(2.0) == 13 and p(2.0, 1) == 12 and p(2.0, 2) == 6
    ts = np.linspace(-1, 1, 41)
    s = ScalarFunction.from_spec({"t": ts.tolist(), "values": np.sin(ts).tolist()})
    assert s(0.3) == pytest.approx(math.sin(0.3), abs=1e-5)
    assert ScalarFunction.from_spec(p.to_spec())(0.7) == p(0.7)


def test_input_validation():
    with pytest.raises(InvalidData):
        worked(delta1=[1.0, 0.0, 0.0])
    with pytest.raises(InvalidData):
        worked(delta0=[2.0, 0.0, 0.0])
    with pytest.raises(InvalidData):
        worked(eps=3.0)
    with pytest.raises(InvalidData):
        worked(y=(0.5,))


def test_input_round_trip():
    inp = worked()
    back = RuledInput.from_dict(inp.to_dict())
    assert back.to_dict() == inp.to_dict()


# -- construction -----------------------------------------------------------------

def test_great_circle():
    inp = worked(y=(2.0,), x=1.0, kappa_delta=0.0)
    sc = ruled.build_delta(inp, steps=2000)
    expected = np.cos(sc.ts)[:, None] * E1 + np.sin(sc.ts)[:, None] * np.array(E2)
    np.testing.assert_allclose(sc.delta, expected, atol=1e-10)
    gamma, gp = ruled.build_gamma(inp, sc)
    t = sc.ts
    want = np.stack([np.cos(t) - 2 * np.sin(t), np.sin(t) + 2 * np.cos(t), 0 * t], axis=1)
    np.testing.assert_allclose(gp, want, atol=1e-10)
    assert np.allclose(gamma[np.argmin(np.abs(t))], 0.0)


@pytest.mark.parametrize("kappa", [0.7, [0.0, 1.0]])
def test_frame_stays_orthonormal(kappa):
    inp = worked(kappa_delta=kappa)
    sc = ruled.build_delta(inp, steps=10000)
    gram = np.einsum("nki,nkj->nij", sc.frames, sc.frames)
    assert np.max(np.abs(gram - np.eye(3))) < 1e-6
    np.testing.assert_allclose(np.linalg.norm(sc.delta, axis=1), 1.0, atol=1e-7)
    np.testing.assert_allclose(np.linalg.norm(sc.delta_prime, axis=1), 1.0, atol=1e-7)


def test_grid_mismatch():
    sc = ruled.build_delta(worked(), steps=100)
    with pytest.raises(InvalidData):
        ruled.build_gamma(worked(kappa_delta=0.3), sc)


def test_flatness(worked_surface):
    s = worked_surface
    assert ruled.is_flat(s.gamma, s.delta, s.ts, s.gamma_prime, s.delta_prime)
    ts = np.linspace(-1, 1, 401)
    helicoid = ruled.flatness_defect(np.stack([0 * ts, 0 * ts, ts], 1),
                                     np.stack([np.cos(ts), np.sin(ts), 0 * ts], 1), ts)
    assert helicoid == pytest.approx(1.0, abs=1e-6)
    helix = np.stack([np.cos(ts), np.sin(ts), ts], 1)
    tangent = np.stack([-np.sin(ts), np.cos(ts), np.ones_like(ts)], 1) / math.sqrt(2)
    assert ruled.is_flat(helix, tangent, ts)
    bent = ruled.build_surface(worked(z=0.3), steps=500)
    assert not ruled.is_flat(bent.gamma, bent.delta, bent.ts, bent.gamma_prime, bent.delta_prime)


# -- singular set and criteria --------------------------------------------------------

def test_singular_set_examples():
    s = ruled.singular_set(worked(y=(1, 0, 1), eps=0.5))
    np.testing.assert_allclose(s[:, 1], -1 - s[:, 0] ** 2)
    assert len(ruled.singular_set(worked(y=(3.0,)), samples=11)) == 0
    flat = ruled.singular_set(worked(y=(-1.5,)), samples=11)
    np.testing.assert_allclose(flat[:, 1], 1.5)


def test_rank_at_singular_points(worked_surface, rng):
    s = worked_surface
    for t in rng.uniform(-1, 1, 20):
        v = -s.inp.y(t)
        ft, fv = s.partials(t, v)
        assert np.linalg.norm(np.cross(ft, fv)) < 1e-6
        ft, fv = s.partials(t, v + 0.3)
        assert np.linalg.norm(np.cross(ft, fv)) > 1e-3


def test_classify_point_examples():
    rep = ruled.classify_ruled_point(worked(y=(1, 0, 1), eps=0.5), 0.0)
    assert rep.is_cuspidal_edge and rep.v0 == -1.0
    assert rep.diagnostics["y_prime_minus_x"] == pytest.approx(-0.5)
    # y' = x at t = 0.25
    assert not ruled.classify_ruled_point(worked(y=(1, 0, 1), eps=0.5), 0.25).is_cuspidal_edge
    assert not ruled.classify_ruled_point(worked(kappa_delta=0.0), 0.0).is_cuspidal_edge


def test_find_births_examples():
    reps = ruled.find_births(worked())
    assert len(reps) == 1
    assert reps[0].t0 == pytest.approx(0.0, abs=1e-9) and reps[0].v0 == pytest.approx(-1.5)
    assert reps[0].is_generic_birth
    quartic = ruled.find_births(worked(y=(1.5, 0, 0, 0, 1)))
    assert len(quartic) == 1 and not quartic[0].is_generic_birth
    assert ruled.find_births(worked(y=(1.5, 0.2))) == []
    assert len(ruled.find_births(worked(y=(1.5, 0.2)), include_endpoints=True)) == 1


def test_birth_cross_check(worked_surface):
    rep = ruled.find_births(worked())[0]
    c1, c2 = ruled.birth_cross_check(worked_surface, rep)
    assert abs(c1) < 1e-6 and abs(c2) > 1e-3


def test_jet_cusp_test_matches_criterion(worked_surface):
    s = worked_surface
    inp = s.inp
    for t in (-0.6, 0.0, 0.4, 0.25):
        crit = ruled.classify_ruled_point(inp, t).is_cuspidal_edge
        assert ruled.jet_is_cuspidal_edge(s, t, -inp.y(t)) == crit


# -- meshes --------------------------------------------------------------------------

def test_mesh(worked_surface, tmp_path):
    m = ruled.mesh_export(worked_surface, nt=21, nv=11)
    assert len(m.vertices) == 21 * 11
    assert len(m.faces) == 2 * 20 * 10
    np.testing.assert_array_equal(m.strip, np.abs(m.params[:, 1]) <= 1.0)
    # singular polyline lies on F
    for (t, v), p in zip(m.singular_params[::200], m.singular_polyline[::200]):
        np.testing.assert_allclose(p, worked_surface.point(t, v), atol=1e-9)
    path = tmp_path / "m.obj"
    ruled.write_obj(m, path)
    text = path.read_text()
    assert "g strip" in text and "g exterior" in text and "o singular_set" in text
    assert sum(1 for line in text.splitlines() if line.startswith("f ")) == len(m.faces)
