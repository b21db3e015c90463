"""
Space curve-germs with an A-type singularity at the origin.

Conventions
-----------
Derivatives at 0 are read from the jets.  Under the normal form adopted
here,

    A o gamma(t) = (t^2/2, sum_{i>=3} g2i t^i / i!, sum_{i>=4} g3i t^i / i!),

with ``A`` a rotation and ``g23 > 0``, the defining quotients give

    kappa_sing = g23,  tau_sing = g34 / g23,  sigma_sing = g23 * g24,

and the derivative of sqrt|s_g| kappa at 0 equals ``sqrt(2) g24 / 6`` in the
normal-form parameter and ``g24 / 3 = sigma_sing / (3 kappa_sing)`` in the
half-arclength parameter.  ``tau_sing`` and ``sigma_sing`` change sign when
the orientation of the parameter is reversed.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .errors import (Degenerate, InsufficientOrder, InvalidData, Not23Type,
                     NotSingular, NumericalFailure)
from .frames import integrate_frame, skew
from .jets import TAU_ZERO, Jet1, cross, dot


class CurveClass(str, enum.Enum):
    Regular = "Regular"
    AType = "AType"
    Type23 = "Type23"
    Degenerate = "Degenerate"


class CurveGerm:
    """Three Jet1 components of a curve through the origin."""

    def __init__(self, components, order=None):
        comps = [c if isinstance(c, Jet1) else Jet1(c) for c in components]
        if len(comps) != 3:
            raise ValueError("a space curve has three components")
        n = min(c.order for c in comps) if order is None else order
        self.components = tuple(c.truncate(n) for c in comps)
        if any(abs(c.constant) > TAU_ZERO for c in self.components):
            raise InvalidData("a curve-germ must pass through the origin")
        self.order = n

    @classmethod
    def from_polys(cls, *polys, order=6):
        return cls([Jet1(p, order) for p in polys], order)

    def derivative(self, k):
        """k-th derivative vector at 0."""
        if k > self.order:
            raise InsufficientOrder(f"derivative {k} needs order >= {k}, have {self.order}")
        return np.array([c.derivative_at_zero(k) for c in self.components])

    def __call__(self, t):
        return np.array([c(t) for c in self.components])

    def velocity(self, t):
        return np.array([c.deriv()(t) for c in self.components])

    def reparametrize(self, t_of_x):
        return CurveGerm([c.compose(t_of_x) for c in self.components])

    def transform(self, matrix):
        m = np.asarray(matrix, dtype=float)
        comps = [sum((c * m[i, j] for j, c in enumerate(self.components)),
                     Jet1.zero(self.order)) for i in range(3)]
        return CurveGerm(comps)

    def to_dict(self):
        return [c.to_dict() for c in self.components]


def _norm(x):
    return float(np.linalg.norm(x))


def classify_curve(g: CurveGerm, tol=TAU_ZERO) -> CurveClass:
    if g.order < 3:
        raise InsufficientOrder("classification needs order >= 3")
    d1, d2, d3 = (g.derivative(k) for k in (1, 2, 3))
    if _norm(d1) > tol:
        return CurveClass.Regular
    if _norm(d2) <= tol:
        return CurveClass.Degenerate
    if _norm(np.cross(d2, d3)) > tol:
        return CurveClass.Type23
    return CurveClass.AType


def _require_singular(g, need23=False):
    cls = classify_curve(g)
    if cls is CurveClass.Regular:
        raise NotSingular("gamma'(0) does not vanish")
    if cls is CurveClass.Degenerate:
        raise Degenerate("gamma''(0) vanishes")
    if need23 and cls is not CurveClass.Type23:
        raise Not23Type("gamma''(0) and gamma'''(0) are parallel")
    return cls


def cuspidal_curvature(g: CurveGerm) -> float:
    """|g'' x g'''| / |g''|^(5/2) at 0."""
    _require_singular(g)
    d2, d3 = g.derivative(2), g.derivative(3)
    return _norm(np.cross(d2, d3)) / _norm(d2) ** 2.5


def cuspidal_torsion(g: CurveGerm) -> float:
    """sqrt|g''| det(g'', g''', g'''') / |g'' x g'''|^2 at 0."""
    _require_singular(g, need23=True)
    if g.order < 4:
        raise InsufficientOrder("cuspidal torsion needs order >= 4")
    d2, d3, d4 = (g.derivative(k) for k in (2, 3, 4))
    c = np.cross(d2, d3)
    return math.sqrt(_norm(d2)) * np.linalg.det(np.array([d2, d3, d4])) / (c @ c)


def sigma_sing(g: CurveGerm) -> float:
    """Fourth-order invariant built from g'', g''', g'''' at 0."""
    _require_singular(g, need23=True)
    if g.order < 4:
        raise InsufficientOrder("sigma_sing needs order >= 4")
    d2, d3, d4 = (g.derivative(k) for k in (2, 3, 4))
    c23 = np.cross(d2, d3)
    n2 = d2 @ d2
    num = c23 @ np.cross(d2, d4) - 2 * (c23 @ c23) * (d2 @ d3) / n2
    return num / n2 ** 2.75


@dataclass
class CurveInvariants:
    kappa_sing: float
    tau_sing: float
    sigma_sing: float
    kappa_sing_prime: float


def curve_invariants(g: CurveGerm) -> CurveInvariants:
    return CurveInvariants(cuspidal_curvature(g), cuspidal_torsion(g),
                           sigma_sing(g), kappa_sing_prime(g))


# -- smooth series for the scaled curvature and torsion ------------------------

def _series_parts(g):
    """G = g'/t and S = |s_g| / t^2 as jets; both have nonzero constant terms."""
    _require_singular(g)
    G = tuple(c.deriv().div_exact(1) for c in g.components)
    speed = dot(G, G).sqrt()
    S = speed.mul_var(1).integrate().div_exact(2)
    return G, speed, S


def half_arclength_series(g: CurveGerm) -> Jet1:
    """Jet of sgn(t) sqrt|s_g(t)|, leading coefficient sqrt(|g''(0)|/2)."""
    _, _, S = _series_parts(g)
    return S.sqrt().mul_var(1)


def scaled_curvature_series(g: CurveGerm) -> Jet1:
    """Jet of the smooth function sqrt|s_g(t)| kappa(t)."""
    G, speed, S = _series_parts(g)
    Gp = tuple(c.deriv() for c in G)
    c = cross(G, Gp)
    return S.sqrt() * dot(c, c).sqrt() * speed.power(-3)


def scaled_torsion_series(g: CurveGerm) -> Jet1:
    """Jet of the smooth function sgn(t) sqrt|s_g(t)| tau(t)."""
    _require_singular(g, need23=True)
    G, speed, S = _series_parts(g)
    Gp = tuple(c.deriv() for c in G)
    Gpp = tuple(c.deriv() for c in Gp)
    c = cross(G, Gp)
    return S.sqrt() * dot(c, Gpp) / dot(c, c)


def kappa_sing_prime(g: CurveGerm, parameter="half-arclength") -> float:
    """
    Derivative at 0 of sqrt|s_g| kappa.

    Parameters
    ----------
    parameter : {"half-arclength", "given"}
        ``"given"`` differentiates in the curve's own parameter, which is
        not an invariant; the default uses the half-arclength parameter.
    """
    _require_singular(g, need23=True)
    if g.order < 4:
        raise InsufficientOrder("kappa_sing_prime needs order >= 4")
    k1 = scaled_curvature_series(g).coeff(1)
    if parameter == "given":
        return k1
    if parameter != "half-arclength":
        raise ValueError(f"unknown parameter choice {parameter!r}")
    return k1 / half_arclength_series(g).coeff(1)


# -- numeric limits --------------------------------------------------------

def _arclength(g, t):
    return oracle.gauss_legendre(lambda x: _norm(g.velocity(x)), 0.0, t)


def _scaled_kappa_tau(g, t):
    h = t / 8
    k, tau = oracle.frenet_kappa_tau(g, t, h=h)
    return math.sqrt(abs(_arclength(g, t))), k, tau


def limit_kappa(g: CurveGerm, samples=6, t_min=1e-3) -> float:
    """Extrapolated limit of sqrt|s_g(t)| kappa(t) as t -> 0+ (regular-curve oracle)."""
    _require_singular(g, need23=True)

    def fn(t):
        r, k, _ = _scaled_kappa_tau(g, t)
        return r * k

    return oracle.extrapolate_limit(fn, t_min=t_min, samples=samples)


def limit_tau(g: CurveGerm, samples=6, t_min=1e-3) -> float:
    """Extrapolated limit of sgn(t) sqrt|s_g(t)| tau(t) as t -> 0+."""
    _require_singular(g, need23=True)

    def fn(t):
        r, _, tau = _scaled_kappa_tau(g, t)
        return r * tau

    return oracle.extrapolate_limit(fn, t_min=t_min, samples=samples)


# -- normal form -----------------------------------------------------------

@dataclass
class CurveNormalFormCoeffs:
    gamma2: dict = field(default_factory=dict)  # i -> g2i, i >= 3
    gamma3: dict = field(default_factory=dict)  # i -> g3i, i >= 4
    l: int = 4
    rotation: np.ndarray = None

    def to_dict(self):
        return {"l": self.l,
                "gamma2": {str(k): v for k, v in self.gamma2.items()},
                "gamma3": {str(k): v for k, v in self.gamma3.items()}}


def normal_form_rotation(g: CurveGerm):
    """Rotation sending g''(0) to e1 and g'''(0) into the (e1, e2) half-plane."""
    _require_singular(g)
    d2, d3 = g.derivative(2), g.derivative(3)
    e1 = d2 / _norm(d2)
    w = d3 - (d3 @ e1) * e1
    if _norm(w) <= TAU_ZERO:
        # A-type but not (2,3): any orthogonal direction will do
        w = np.eye(3)[np.argmin(np.abs(e1))]
        w = w - (w @ e1) * e1
    e2 = w / _norm(w)
    return np.array([e1, e2, np.cross(e1, e2)])


def curve_normal_form(g: CurveGerm, l=4) -> CurveNormalFormCoeffs:
    """
    Rotate and reparametrize so the first component is exactly t^2/2.

    The new parameter is ``tau = sqrt(2 x(t))`` with the orientation of
    ``t``, where ``x`` is the first rotated component.
    """
    _require_singular(g)
    if g.order < l:
        raise InsufficientOrder(f"normal form to degree {l} needs order >= {l}")
    R = normal_form_rotation(g)
    rg = g.transform(R)
    x = rg.components[0]
    # x = t^2 q(t) with q(0) > 0, so tau = t sqrt(2 q) is a series in t
    tau = (x.div_exact(2) * 2.0).sqrt().mul_var(1)
    t_of_tau = tau.inverse()
    y = rg.components[1].compose(t_of_tau)
    z = rg.components[2].compose(t_of_tau)
    n = min(l, y.order)
    g2 = {i: math.factorial(i) * y.coeff(i) for i in range(3, n + 1)}
    g3 = {i: math.factorial(i) * z.coeff(i) for i in range(4, n + 1)}
    return CurveNormalFormCoeffs(g2, g3, n, R)


def normal_form_identities(nf: CurveNormalFormCoeffs) -> CurveInvariants:
    """Invariants from normal-form coefficients (identities derived under the t^2/2 convention)."""
    g23, g24, g34 = nf.gamma2[3], nf.gamma2[4], nf.gamma3[4]
    if abs(g23) <= TAU_ZERO:
        raise Not23Type("g23 vanishes")
    return CurveInvariants(abs(g23), g34 / g23, g23 * g24, math.copysign(1.0, g23) * g24 / 3)


# -- reconstruction --------------------------------------------------------

def _as_function(spec):
    """Accept a Jet1, a coefficient list, a callable, or (ts, values) samples."""
    if isinstance(spec, Jet1):
        return spec
    if callable(spec):
        return spec
    if isinstance(spec, tuple) and len(spec) == 2:
        from scipy.interpolate import CubicSpline
        return CubicSpline(np.asarray(spec[0], float), np.asarray(spec[1], float))
    if np.isscalar(spec):
        value = float(spec)
        return lambda t: value
    coeffs = np.asarray(spec, dtype=float)
    return lambda t: np.polynomial.polynomial.polyval(t, coeffs)


@dataclass
class ReconstructedCurve:
    ts: np.ndarray
    points: np.ndarray
    frames: np.ndarray

    def sampled(self):
        return oracle.SampledCurve(self.ts, self.points)


def reconstruct_curve(alpha, beta, t_span=(-0.5, 0.5), steps=2000, frame0=None):
    """
    Curve with prescribed scaled curvature and torsion in the half-arclength parameter.

    Solves A' = 2 A [[0, -alpha, 0], [alpha, 0, -beta], [0, beta, 0]],
    gamma' = 2 t e with A = (e, n, b), A(0) = ``frame0`` (identity by
    default) and gamma(0) = 0, integrating outward from t = 0.

    The result satisfies sqrt|s_g| kappa = alpha and
    sgn(t) sqrt|s_g| tau = beta, so kappa_sing = 2 sqrt(2) alpha(0) and
    tau_sing = 3 beta(0) / sqrt(2).

    Raises
    ------
    InvalidData
        If alpha <= 0 at a grid point.
    NumericalFailure
        If the frame integration drifts.
    """
    a, b = _as_function(alpha), _as_function(beta)
    lo, hi = map(float, t_span)
    if not lo < hi:
        raise InvalidData("t_span must be increasing")
    ts = np.linspace(lo, hi, steps + 1)
    t0 = min(max(0.0, lo), hi)
    probe = np.concatenate([ts, (ts[:-1] + ts[1:]) / 2, [t0]])
    if np.any(np.array([a(t) for t in probe]) <= 0):
        raise InvalidData("alpha must be positive on the whole span")
    omega = lambda t: 2.0 * skew(a(t), b(t), 0.0)
    velocity = lambda t: np.array([2.0 * t, 0.0, 0.0])
    A0 = np.eye(3) if frame0 is None else np.asarray(frame0, dtype=float)
    frames, points = integrate_frame(ts, t0, A0, omega, velocity)
    return ReconstructedCurve(ts, points, frames)


def reconstruct_germ(alpha: Jet1, beta: Jet1, frame0=None) -> CurveGerm:
    """
    Taylor solution of the reconstruction ODE at t = 0.

    The jet of A is obtained by Picard iteration, exact after ``order``
    rounds; gamma = integral of 2 t e.
    """
    n = min(alpha.order, beta.order)
    zero, one = Jet1.zero(n), Jet1.one(n)
    M = [[zero, -alpha, zero], [alpha, zero, -beta], [zero, beta, zero]]
    A0 = np.eye(3) if frame0 is None else np.asarray(frame0, dtype=float)
    A = [[one * A0[i, j] for j in range(3)] for i in range(3)]
    for _ in range(n + 1):
        prod = [[sum((A[i][k] * M[k][j] for k in range(3)), zero) * 2.0
                 for j in range(3)] for i in range(3)]
        A = [[prod[i][j].integrate().truncate(n) + A0[i, j] for j in range(3)]
             for i in range(3)]
    e = [A[i][0] for i in range(3)]
    return CurveGerm([(ei.mul_var(1) * 2.0).integrate() for ei in e])


def remeasure_reconstruction(curve: ReconstructedCurve, accuracy=6):
    """
    Oracle measurements on a reconstructed sample.

    Returns the grid, |gamma'|, sqrt|s_g| kappa and sgn(t) sqrt|s_g| tau,
    each computed by grid finite differences and cumulative quadrature.
    """
    from scipy.integrate import cumulative_simpson

    ts, pts = curve.ts, curve.points
    d1, d2, d3 = (oracle.grid_derivative(ts, pts, k, accuracy) for k in (1, 2, 3))
    speed = np.linalg.norm(d1, axis=1)
    ok = np.isfinite(speed)
    i0 = int(np.argmin(np.abs(ts)))
    sg = np.full(len(ts), np.nan)
    sub = np.where(ok)[0]
    lo, hi = sub[0], sub[-1] + 1
    # integrate outward from t = 0 on each side
    right = cumulative_simpson(speed[i0:hi], x=ts[i0:hi], initial=0.0)
    left = cumulative_simpson(speed[lo:i0 + 1][::-1], x=-ts[lo:i0 + 1][::-1], initial=0.0)
    sg[i0:hi] = right
    sg[lo:i0 + 1] = left[::-1]
    cr = np.cross(d1, d2)
    kappa = np.linalg.norm(cr, axis=1) / speed ** 3
    tau = np.einsum("ij,ij->i", cr, d3) / np.einsum("ij,ij->i", cr, cr)
    root = np.sqrt(np.abs(sg))
    return ts, speed, root * kappa, np.sign(ts) * root * tau


__all__ = [
    "CurveClass", "CurveGerm", "CurveInvariants", "CurveNormalFormCoeffs",
    "ReconstructedCurve", "classify_curve", "cuspidal_curvature",
    "cuspidal_torsion", "sigma_sing", "curve_invariants",
    "half_arclength_series", "scaled_curvature_series", "scaled_torsion_series",
    "kappa_sing_prime", "limit_kappa", "limit_tau", "curve_normal_form",
    "normal_form_rotation", "normal_form_identities", "reconstruct_curve",
    "reconstruct_germ", "remeasure_reconstruction", "NumericalFailure",
]
