"""Random draws for property tests and the batch harness."""

import numpy as np
from scipy.spatial.transform import Rotation

from .curves import CurveGerm
from .jets import DEFAULT_ORDER, Jet1, Jet2, apply_map, invert_map
from .surface import (Case1Coeffs, Case2Coeffs, NormalFormData, SurfaceGerm,
                      allowed_remainder, normal_form_boundary, normal_form_germ)


def random_normal_form(rng, case=1, b03_min=0.2, b20_min=0.0, scale=1.0):
    """Coefficients uniform in [-scale, scale]; b20 folded to be >= b20_min, |b03| >= b03_min."""
    u = lambda: rng.uniform(-scale, scale)
    b03 = u()
    while abs(b03) < b03_min:
        b03 = u()
    b20 = abs(u())
    while b20 < b20_min:
        b20 = abs(u())
    eps = int(rng.choice([-1, 1]))
    if case == 1:
        boundary = Case1Coeffs(eps, u(), u(), u())
    elif case == 2:
        boundary = Case2Coeffs(eps, u(), u(), u())
    else:
        boundary = None
    return NormalFormData(a20=u(), a30=u(), b20=b20, b30=u(), b12=u(), b03=b03,
                          h5_00=u(), boundary=boundary)


def random_remainder(rng, order=DEFAULT_ORDER, scale=0.5):
    terms = {}
    for comp in (1, 2):
        for i in range(order + 1):
            for j in range(order + 1 - i):
                if i + j >= 4 and allowed_remainder(comp, i, j):
                    terms[(comp, i, j)] = rng.uniform(-scale, scale)
    return terms


def random_diffeo(rng, order=DEFAULT_ORDER, scale=0.5, cond_max=4.0):
    """Orientation-preserving polynomial source map (x, y) -> (u, v) fixing 0."""
    while True:
        A = rng.uniform(-1.5, 1.5, size=(2, 2))
        if np.linalg.det(A) > 0.3 and np.linalg.cond(A) < cond_max:
            break
    maps = []
    for row in range(2):
        c = np.zeros((order + 1, order + 1))
        c[1, 0], c[0, 1] = A[row]
        for i in range(4):
            for j in range(4 - i):
                if 2 <= i + j <= 3:
                    c[i, j] = rng.uniform(-scale, scale)
        maps.append(Jet2(c, order))
    return tuple(maps)


def random_reparam(rng, order=DEFAULT_ORDER, positive=True, scale=0.5):
    """t(x) with t(0) = 0 and t'(0) of the requested sign, |t'(0)| in [0.5, 2]."""
    lead = rng.uniform(0.5, 2.0) * (1 if positive else -1)
    c = [0.0, lead] + list(rng.uniform(-scale, scale, size=order - 1))
    return Jet1(c, order)


def random_rotation(rng):
    return Rotation.random(random_state=rng).as_matrix()


def disguise(nf, rng, order=DEFAULT_ORDER, remainder=True, boundary_tail=True):
    """
    Surface and boundary realising ``nf`` in scrambled coordinates.

    Returns ``(f, b, info)`` where ``f = R f_nf o D`` and ``b = D^{-1} o b_nf o rho``
    for random D, R and an orientation-preserving reparametrization rho.
    """
    rem = random_remainder(rng, order) if remainder else None
    f_nf = normal_form_germ(nf, order, rem)
    D = random_diffeo(rng, order)
    R = random_rotation(rng)
    f = f_nf.compose(D).rotate(R)
    b = None
    if nf.boundary is not None:
        tail = tuple(rng.uniform(-0.5, 0.5, size=2)) if boundary_tail else ()
        b_nf = normal_form_boundary(nf, order, tail)
        rho = random_reparam(rng, order)
        b = apply_map(invert_map(D), tuple(c.compose(rho) for c in b_nf))
    return f, b, dict(D=D, R=R, remainder=rem)


def random_type23(rng, order=DEFAULT_ORDER, scale=1.0):
    """Random curve-germ with g'(0) = 0 and g''(0) x g'''(0) != 0."""
    while True:
        c = rng.uniform(-scale, scale, size=(3, order + 1))
        c[:, :2] = 0.0
        g = CurveGerm([Jet1(row, order) for row in c])
        d2, d3 = g.derivative(2), g.derivative(3)
        if np.linalg.norm(d2) > 0.3 and np.linalg.norm(np.cross(d2, d3)) > 0.3 * np.linalg.norm(d2) ** 2.5:
            return g
