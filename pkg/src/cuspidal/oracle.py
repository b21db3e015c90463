"""
Independent numeric ground truth.

Nothing here reads normal-form coefficients.  Derivatives come from
central finite differences on plain evaluators, curvature and torsion from
their textbook definitions, limits from geometric sampling with polynomial
extrapolation.  Closed forms elsewhere in the package are checked against
these values.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NotDefined, NumericalFailure, SingularPoint

DEFAULT_STEP = 1e-3
SINGULAR_TOL = 1e-10


# -- finite-difference weights -------------------------------------------------

def fornberg_weights(x0, xs, k):
    """
    Weights ``w`` with ``sum(w * f(xs)) ~ f^(k)(x0)`` (Fornberg's recursion).

    Parameters
    ----------
    x0 : float
        Expansion point.
    xs : array_like
        Distinct stencil nodes.
    k : int
        Derivative order, ``k < len(xs)``.
    """
    xs = np.asarray(xs, dtype=float)
    n = len(xs)
    c = np.zeros((n, k + 1))
    c1, c4 = 1.0, xs[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, k)
        c2, c5, c4 = 1.0, c4, xs[i] - x0
        for j in range(i):
            c3 = xs[i] - xs[j]
            c2 *= c3
            if j == i - 1:
                for m in range(mn, 0, -1):
                    c[i, m] = c1 * (m * c[i - 1, m - 1] - c5 * c[i - 1, m]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for m in range(mn, 0, -1):
                c[j, m] = (c4 * c[j, m] - m * c[j, m - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, k]


@lru_cache(maxsize=None)
def central_stencil(k, accuracy):
    """Integer offsets and weights of the central stencil for ``f^(k)`` with error O(h**accuracy)."""
    if accuracy % 2:
        raise ValueError("central stencils have even accuracy")
    half = (k - 1) // 2 + accuracy // 2
    offsets = np.arange(-half, half + 1)
    return offsets, fornberg_weights(0.0, offsets, k)


def finite_diff(fn, t, k, h=DEFAULT_STEP, accuracy=2):
    """
    Central-difference estimate of the ``k``-th derivative of ``fn`` at ``t``.

    ``fn`` may be scalar- or vector-valued.  The default stencil has error
    O(h**2); pass a larger even ``accuracy`` for wider stencils.
    """
    if k == 0:
        return np.asarray(fn(t), dtype=float)
    offsets, w = central_stencil(k, accuracy)
    vals = np.array([fn(t + o * h) for o in offsets], dtype=float)
    return np.tensordot(w, vals, axes=1) / h ** k


def derivative_stack(fn, t, kmax, h=DEFAULT_STEP, accuracy=4, richardson=True):
    """
    Derivatives 1..kmax of a vector-valued ``fn`` at ``t`` from one shared stencil.

    With ``richardson`` the estimate at ``h`` is combined with the one at
    ``h/2`` to cancel the leading error term.

    Returns
    -------
    (kmax, dim) array
    """
    def once(step):
        offsets, _ = central_stencil(kmax, accuracy)
        vals = np.array([fn(t + o * step) for o in offsets], dtype=float)
        out = []
        for k in range(1, kmax + 1):
            w = fornberg_weights(0.0, offsets, k)
            out.append(np.tensordot(w, vals, axes=1) / step ** k)
        return np.array(out)

    d = once(h)
    if not richardson:
        return d
    d2 = once(h / 2)
    return d2 + (d2 - d) / (2 ** accuracy - 1)


def grid_derivative(ts, values, k, accuracy=6):
    """
    Derivative of uniformly sampled data by central stencils.

    Entries closer to the ends than the stencil half-width are NaN.

    Parameters
    ----------
    ts : (n,) array
        Uniform grid.
    values : (n, ...) array
    """
    ts = np.asarray(ts, dtype=float)
    values = np.asarray(values, dtype=float)
    h = np.diff(ts)
    if not np.allclose(h, h[0], rtol=1e-9, atol=0):
        raise ValueError("grid_derivative needs a uniform grid")
    offsets, w = central_stencil(k, accuracy)
    half = offsets[-1]
    out = np.full(values.shape, np.nan)
    n = len(ts)
    acc = np.zeros((n - 2 * half,) + values.shape[1:])
    for o, wi in zip(offsets, w):
        acc += wi * values[half + o:n - half + o]
    out[half:n - half] = acc / h[0] ** k
    return out


# -- curves ----------------------------------------------------------------

@dataclass
class SampledCurve:
    ts: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        self.ts = np.asarray(self.ts, dtype=float)
        self.points = np.asarray(self.points, dtype=float)
        if len(self.ts) != len(self.points):
            raise ValueError("ts and points must have equal lengths")
        if np.any(np.diff(self.ts) <= 0):
            raise ValueError("ts must be strictly increasing")


def kappa_tau_from_derivatives(d1, d2, d3=None):
    """Frenet curvature and torsion from the first three derivatives."""
    speed = np.linalg.norm(d1)
    if speed <= SINGULAR_TOL:
        raise SingularPoint("curve velocity vanishes")
    cr = np.cross(d1, d2)
    kappa = np.linalg.norm(cr) / speed ** 3
    if d3 is None:
        return kappa, None
    cr2 = cr @ cr
    if cr2 <= SINGULAR_TOL ** 2 * speed ** 6:
        raise NotDefined("torsion is undefined where the curvature vanishes")
    return kappa, np.linalg.det(np.array([d1, d2, d3])) / cr2


def frenet_kappa_tau(c, t, h=DEFAULT_STEP, accuracy=4, richardson=True):
    """
    Curvature and torsion of a regular curve at ``t``.

    Parameters
    ----------
    c : callable
        ``c(t)`` returns a point in R^3.
    t : float
    h : float
        Base step; refined to ``h/2`` when ``richardson`` is set.
    accuracy : int
        Stencil error order (4 gives five points for the first derivative).

    Raises
    ------
    SingularPoint
        If ``c'(t)`` vanishes.
    NotDefined
        If the curvature vanishes so that torsion is undefined.
    """
    d = derivative_stack(c, t, 3, h=h, accuracy=accuracy, richardson=richardson)
    return kappa_tau_from_derivatives(d[0], d[1], d[2])


def curve_on_surface_invariants(f, nu, b, t, h=DEFAULT_STEP, accuracy=4, richardson=True):
    """
    Normal and geodesic curvature of ``f o b`` at ``t``.

    kappa_nb = <b''(t), nu> / |b'|^2 and kappa_gb = det(b', b'', nu) / |b'|^3,
    with derivatives of the space curve ``f(b(t))``.

    Parameters
    ----------
    f : callable
        ``f(u, v)`` -> point of R^3.
    nu : callable
        ``nu(u, v)`` -> unit normal.
    b : callable
        ``b(t)`` -> source point ``(u, v)``.
    """
    curve = lambda s: f(*b(s))
    d = derivative_stack(curve, t, 2, h=h, accuracy=accuracy, richardson=richardson)
    speed = np.linalg.norm(d[0])
    if speed <= SINGULAR_TOL:
        raise SingularPoint("boundary image is singular")
    n = np.asarray(nu(*b(t)), dtype=float)
    knb = d[1] @ n / speed ** 2
    kgb = np.linalg.det(np.array([d[0], d[1], n])) / speed ** 3
    return knb, kgb


# -- integrals and limits -------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def gauss_legendre(fn, a, b):
    """16-point Gauss-Legendre quadrature of a scalar function on [a, b]."""
    mid, half = (a + b) / 2, (b - a) / 2
    return half * sum(w * fn(mid + half * x) for x, w in zip(_GL_NODES, _GL_WEIGHTS))


def neville_at_zero(xs, ys):
    """Value at 0 of the interpolating polynomial through (xs, ys)."""
    p = list(map(float, ys))
    xs = list(map(float, xs))
    n = len(xs)
    for m in range(1, n):
        for i in range(n - m):
            p[i] = (xs[i] * p[i + 1] - xs[i + m] * p[i]) / (xs[i] - xs[i + m])
    return p[0]


def extrapolate_limit(fn, t_min=1e-3, samples=3, ratio=2.0, rtol=1e-2):
    """
    Limit of ``fn(t)`` as ``t -> 0+`` from geometric samples.

    Samples ``t_k = t_min * ratio**k`` and evaluates the interpolating
    polynomial at 0.  A one-point-shorter extrapolation serves as an error
    estimate; disagreement beyond ``rtol`` raises.

    Raises
    ------
    NumericalFailure
    """
    ts = t_min * ratio ** np.arange(samples)
    ys = np.array([fn(t) for t in ts])
    if not np.all(np.isfinite(ys)):
        raise NumericalFailure("non-finite samples during limit extrapolation")
    best = neville_at_zero(ts, ys)
    if samples > 1:
        rough = neville_at_zero(ts[:-1], ys[:-1])
        if abs(best - rough) > rtol * max(1.0, abs(best)):
            raise NumericalFailure(
                f"limit extrapolation does not settle ({rough:.6g} vs {best:.6g})")
    return best


def rel_err(a, b):
    """|a - b| scaled by max(1, |b|)."""
    return abs(a - b) / max(1.0, abs(b))


__all__ = [
    "SampledCurve", "fornberg_weights", "central_stencil", "finite_diff",
    "derivative_stack", "grid_derivative", "frenet_kappa_tau",
    "kappa_tau_from_derivatives", "curve_on_surface_invariants",
    "gauss_legendre", "neville_at_zero", "extrapolate_limit", "rel_err",
]
