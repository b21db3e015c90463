import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cuspidal.errors import ArityError, GeometryError, NotDivisible
from cuspidal.jets import (Jet1, Jet2, apply_map, invert_map, jet_add, jet_compose,
                           jet_div_exact, jet_mul, jet_scale, jet_sqrt_inv)

coef = st.floats(-2, 2, allow_nan=False)


def jet1_strategy(order=6, zero_constant=False):
    return arrays(np.float64, order + 1, elements=coef).map(
        lambda c: Jet1(np.concatenate([[0.0], c[1:]]) if zero_constant else c, order))


def jet2_strategy(order=6):
    return arrays(np.float64, (order + 1, order + 1), elements=coef).map(lambda c: Jet2(c, order))


# -- examples ----------------------------------------------------------------------

def test_product_difference_of_squares():
    a = Jet1([1, 1], 2) * Jet1([1, -1], 2)
    np.testing.assert_allclose(a.coeffs, [1, 0, -1])


def test_add_zero_is_identity():
    j = Jet1([0.3, -1, 2, 5], 3)
    assert jet_add(j, Jet1.zero(3)).allclose(j)


def test_square_of_two_variable_linear():
    a = Jet2.from_terms({(0, 0): 1, (1, 0): 1, (0, 1): 1}, 2)
    sq = jet_mul(a, a)
    expected = {(0, 0): 1, (1, 0): 2, (0, 1): 2, (2, 0): 1, (1, 1): 2, (0, 2): 1}
    for (i, j), c in expected.items():
        assert sq.coeff(i, j) == pytest.approx(c)
    assert np.sum(np.abs(sq.coeffs)) == pytest.approx(9)


def test_truncation_to_minimum_order():
    assert (Jet1([1, 1, 1], 2) * Jet1([1, 1, 1, 1, 1], 4)).order == 2


def test_arity_mismatch():
    with pytest.raises(ArityError):
        Jet1([1, 1], 2) + Jet2.one(2)


@pytest.mark.parametrize("outer, inner, order, expected", [
    ([0, 0, 1], [0, 2], 4, [0, 0, 4, 0, 0]),
    ([0, 1], [0, 1, 1], 4, [0, 1, 1, 0, 0]),
    ([0, 0, 1], [0, 1, 1], 4, [0, 0, 1, 2, 1]),
])
def test_compose_examples(outer, inner, order, expected):
    got = jet_compose(Jet1(outer, order), Jet1(inner, order))
    np.testing.assert_allclose(got.coeffs, expected, atol=1e-15)


def test_compose_needs_vanishing_constant():
    with pytest.raises(GeometryError):
        Jet1([0, 1], 3).compose(Jet1([1, 1], 3))


def test_div_exact_examples():
    num = Jet2.from_terms({(0, 2): 1, (1, 2): 1}, 6)
    q = jet_div_exact(num, 1, 2)
    assert q.order == 4
    assert q.coeff(0, 0) == 1 and q.coeff(1, 0) == 1
    assert np.count_nonzero(q.coeffs) == 2
    q = jet_div_exact(Jet2.from_terms({(0, 3): 1}, 6), 1, 1)
    assert q.coeff(0, 2) == 1 and np.count_nonzero(q.coeffs) == 1
    with pytest.raises(NotDivisible):
        jet_div_exact(Jet2.from_terms({(1, 0): 1, (0, 1): 1}, 6), 1, 1)


def test_sqrt_inv_examples():
    assert jet_sqrt_inv(Jet1.one(3)).allclose(Jet1.one(3))
    np.testing.assert_allclose(jet_sqrt_inv(Jet1([4], 0)).coeffs, [0.5])
    np.testing.assert_allclose(jet_sqrt_inv(Jet1([1, 2], 2)).coeffs, [1, -1, 1.5])
    with pytest.raises(GeometryError):
        jet_sqrt_inv(Jet1([-1, 1], 2))


def test_scale_and_evaluation():
    j = jet_scale(Jet2.from_terms({(0, 0): 2, (1, 1): 3}, 3), 0.5)
    assert j(0, 0) == 1.0
    assert j(2.0, 1.0) == pytest.approx(1 + 3)


def test_series_inverse_and_map_inverse():
    t = Jet1([0, 2, 1, -0.5, 0.3], 4)
    assert t.compose(t.inverse()).allclose(Jet1.var(4), atol=1e-12)
    u, v = Jet2.var(0, 5), Jet2.var(1, 5)
    m = (u + 0.3 * v * v - 0.2 * u * v, 2 * v + 0.5 * u * u)
    inv = invert_map(m)
    ident = apply_map(m, inv)
    assert ident[0].allclose(u, atol=1e-12) and ident[1].allclose(v, atol=1e-12)


def test_json_round_trip():
    j = Jet2.from_terms({(1, 0): 1.5, (0, 3): -2.25}, 5)
    d = j.to_dict()
    assert d["vars"] == 2 and d["order"] == 5
    assert sorted(map(tuple, d["coeffs"])) == [(0, 3, -2.25), (1, 0, 1.5)]
    assert Jet2.from_dict(d).allclose(j, atol=0)


# -- properties ----------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(jet2_strategy(), jet2_strategy(), jet2_strategy())
def test_ring_axioms(a, b, c):
    assert ((a + b) + c).allclose(a + (b + c), atol=1e-12)
    assert (a * (b + c)).allclose(a * b + a * c, atol=1e-11)


@settings(max_examples=60, deadline=None)
@given(jet1_strategy(), jet1_strategy(), jet1_strategy())
def test_ring_axioms_one_variable(a, b, c):
    assert ((a + b) + c).allclose(a + (b + c), atol=1e-12)
    assert (a * (b + c)).allclose(a * b + a * c, atol=1e-12)
    assert (a * b).allclose(b * a, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, 6, elements=st.floats(-0.5, 0.5)))
def test_sqrt_inv_round_trip(tail):
    a = Jet1(np.concatenate([[1.0], tail]), 6)
    g = jet_sqrt_inv(a)
    assert (g * g * a).allclose(Jet1.one(6), atol=1e-10)


@settings(max_examples=60, deadline=None)
@given(jet1_strategy(zero_constant=True), jet1_strategy(zero_constant=True),
       jet1_strategy(zero_constant=True))
def test_compose_associative(f, g, h):
    lhs = f.compose(g).compose(h)
    rhs = f.compose(g.compose(h))
    scale = max(1.0, lhs.max_abs())
    assert lhs.allclose(rhs, atol=1e-10 * scale)
