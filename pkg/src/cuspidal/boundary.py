"""
Invariants of a cuspidal edge at a point where a boundary curve meets it.

Two routes are provided for every quantity:

* closed forms in the normal-form coefficients;
* a numeric route that never reads those coefficients.  It uses finite
  differences of the boundary image, a unit normal built in adapted
  coordinates, and the curve module's cuspidal invariants.

Conventions
-----------
Derivatives of boundary invariants are taken along the arclength of the
boundary image, oriented like the boundary's own parameter.

The unit normal is oriented so that the edge's normal curvature
``<gamma''(0), nu(0)> / |gamma'(0)|^2`` is nonnegative.  This matches
``nu(0) = e3`` for the normal form.  With this choice the geodesic
curvature ``det(b', b'', nu) / |b'|^3`` has the opposite sign to the one
used by the closed forms, so ``SIGN_CONVENTION`` maps closed-form values to
the numeric convention.

Some closed forms come in two variants.  The verified one agrees with the
numeric route and is the default; the literal variant is available with
``literal_formula=True``:

* kappa_gb(0): verified ``-eps (c1^2 + a20)``, literal ``-(eps c1^2 + a20)``.
* case 2 tau_sing: verified
  ``(1+d2^2)^(1/4) (-3 eps a20 b03 d2^3 - 3 b20 d2^2 d3 - 6 b12 d2 d3
  - 24 h5 d3 + eps b03 d4) / (b03^2 (1+d2^2) + d3^2)``.
* beta: verified ``d2 / sqrt(1 + d2^2)``, literal ``d2``.
* approaching ratio: the difference curve ``gamma - b o s`` with
  ``s'(0) = l`` gives ``|c1|`` for both signs of eps and is independent of
  the parameter of gamma; the literal ``gamma - (b o s) / l`` is kept for
  comparison.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import oracle
from .curves import CurveGerm, cuspidal_curvature, cuspidal_torsion
from .errors import (DegenerateBoundary, DegenerateContact, DegenerateInvariant,
                     InvalidData, NotCase1, NotCase2)
from .jets import TAU_ZERO, Jet1, Jet2, apply_map, cross, invert_map
from .surface import (AdaptedChart, Case1Coeffs, Case2Coeffs, NormalFormData,
                      SurfaceGerm, adapt)

# closed form times this factor = numeric value
SIGN_CONVENTION = {
    "kappa0": 1.0, "kappa_prime0": 1.0, "tau0": 1.0,
    "kappa_nb0": 1.0, "kappa_nb_prime0": 1.0,
    "kappa_gb0": -1.0, "kappa_gb_prime0": -1.0,
    "alpha": 1.0,
    "beta": 1.0, "kappa_sing_b": 1.0, "tau_sing_b": 1.0,
}

ZEROTH_ORDER = ("kappa0", "tau0", "kappa_nb0", "kappa_gb0", "alpha")
FIRST_ORDER = ("kappa_prime0", "kappa_nb_prime0", "kappa_gb_prime0")

# finite-difference settings of the numeric route; steps shrink with the
# coefficient growth of the boundary jets (see _taylor_scale)
INNER_STEP, INNER_ACCURACY = 3e-3, 10
OUTER_STEP, OUTER_ACCURACY = 1e-3, 8
INNER_FRACTION, OUTER_FRACTION = 1 / 100, 1 / 300


def _taylor_scale(jets):
    """Crude radius estimate min_k (|a_1| / |a_k|)^(1/(k-1)) of a vector series."""
    c = np.array([[j.coeff(k) for j in jets] for k in range(jets[0].order + 1)])
    norms = np.linalg.norm(c, axis=1)
    lead = norms[1] if norms[1] > TAU_ZERO else max(norms[2], TAU_ZERO)
    r = np.inf
    for k in range(2, len(norms)):
        if norms[k] > TAU_ZERO:
            r = min(r, (lead / norms[k]) ** (1.0 / (k - 1)))
    return r


@dataclass
class BoundaryClass:
    kind: str                 # "Case1" or "Case2"
    l: float = None


@dataclass
class BoundaryInvariantsCase1:
    kappa0: float
    kappa_prime0: float
    tau0: float
    kappa_nb0: float
    kappa_nb_prime0: float
    kappa_gb0: float
    kappa_gb_prime0: float
    alpha: float

    def to_dict(self):
        return {k: float(v) for k, v in asdict(self).items()}


@dataclass
class BoundaryInvariantsCase2:
    beta: float
    kappa_sing_b: float
    tau_sing_b: float

    def to_dict(self):
        return {k: float(v) for k, v in asdict(self).items()}


# -- geometric context shared by the numeric route ---------------------------

def _as_jets(b):
    return tuple(c if isinstance(c, Jet1) else Jet1(c) for c in b)


class _Context:
    """Adapted coordinates, edge orientation and normal for a pair (f, b)."""

    def __init__(self, f: SurfaceGerm, b):
        self.f = f
        self.b = _as_jets(b)
        if any(abs(c.constant) > TAU_ZERO for c in self.b):
            raise InvalidData("boundary must pass through the origin")
        if math.hypot(self.b[0].coeff(1), self.b[1].coeff(1)) <= TAU_ZERO:
            raise DegenerateBoundary("b'(0) vanishes")
        if f.adapted:
            n = f.order
            chart = (Jet2.var(0, n), Jet2.var(1, n))
            self.adapted = AdaptedChart(f, chart)
        else:
            self.adapted = adapt(f)
        G = self.adapted.germ
        self.G = G
        self.B = apply_map(invert_map(self.adapted.chart), self.b)
        gs = np.array([c.coeff(1, 0) for c in G.components])
        grr = np.array([2 * c.coeff(0, 2) for c in G.components])
        gss = np.array([2 * c.coeff(2, 0) for c in G.components])
        n0 = np.cross(gs, grr)
        n0 /= np.linalg.norm(n0)
        # orient the edge so that its normal curvature is nonnegative
        self.sign = -1.0 if gss @ n0 < 0 else 1.0
        self.nu0 = self.sign * n0
        self.edge_velocity = self.sign * gs   # gamma'(0) in the chosen orientation
        self.Gu = tuple(c.partial(0) for c in G.components)
        self.Gv_over_v = tuple(c.partial(1).div_exact(1, var=1) for c in G.components)
        self.bhat = tuple(c.compose(*self.b) for c in f.components)

    def classify(self):
        d1 = self.B[0].coeff(1)
        speed = math.hypot(d1, self.B[1].coeff(1))
        if abs(d1) > TAU_ZERO * max(1.0, speed):
            bp = np.array([c.coeff(1) for c in self.bhat])
            gp = np.array([c.coeff(1, 0) for c in self.G.components])
            return BoundaryClass("Case1", float(gp @ bp / (bp @ bp)))
        return BoundaryClass("Case2")

    # plain evaluators on polynomials
    def surface(self, u, v):
        return np.array([c(u, v) for c in self.G.components])

    def normal(self, u, v):
        w = np.cross([c(u, v) for c in self.Gu], [c(u, v) for c in self.Gv_over_v])
        return self.sign * w / np.linalg.norm(w)

    def boundary(self, t):
        return (self.B[0](t), self.B[1](t))

    def boundary_image(self, t):
        u, v = self.b[0](t), self.b[1](t)
        return np.array([c(u, v) for c in self.f.components])

    def steps(self, inner, outer):
        r = min(_taylor_scale(self.bhat), _taylor_scale(self.B))
        return ((min(inner[0], INNER_FRACTION * r), inner[1]),
                (min(outer[0], OUTER_FRACTION * r), outer[1]))


def classify_boundary(f: SurfaceGerm, b) -> BoundaryClass:
    """
    Case1 when b'(0) is not in the kernel of df(0), with ``l`` from
    gamma'(0) = l bhat'(0) for the adapted parametrization of the edge.
    """
    return _Context(f, b).classify()


# -- approaching ratio -----------------------------------------------------------

def approaching_ratio(f: SurfaceGerm, b, reparam_s: Jet1 = None, reparam_t: Jet1 = None,
                      literal_formula=False, _ctx=None) -> float:
    """
    Second-order separation of the boundary image from the edge image.

    Parameters
    ----------
    reparam_t : Jet1, optional
        New parameter x of the edge, t = t(x).
    reparam_s : Jet1, optional
        Boundary parameter as a function of the edge parameter (x if
        ``reparam_t`` is given), with s'(0) = l.  Defaults to s = l t.
    literal_formula : bool
        Use d = gamma - (b o s) / l instead of d = gamma - b o s.

    Raises
    ------
    NotCase1
    InvalidData
        ``reparam_s`` has the wrong first derivative.
    """
    ctx = _ctx or _Context(f, b)
    if ctx.classify().kind != "Case1":
        raise NotCase1("boundary is tangent to the null direction")
    gamma = tuple(c.restrict(1) for c in ctx.G.components)
    if reparam_t is not None:
        gamma = tuple(c.compose(reparam_t) for c in gamma)
    bhat = ctx.bhat
    gp = np.array([c.coeff(1) for c in gamma])
    bp = np.array([c.coeff(1) for c in bhat])
    l = gp @ bp / (bp @ bp)
    n = min(gamma[0].order, bhat[0].order)
    if reparam_s is None:
        reparam_s = Jet1.var(n) * l
    elif abs(reparam_s.coeff(1) - l) > 1e-9 * max(1.0, abs(l)):
        raise InvalidData(f"s'(0) = {reparam_s.coeff(1)} but l = {l}")
    bs = tuple(c.compose(reparam_s) for c in bhat)
    if literal_formula:
        d = tuple(g - c / l for g, c in zip(gamma, bs))
    else:
        d = tuple(g - c for g, c in zip(gamma, bs))
    dpp = np.array([2 * c.coeff(2) for c in d])
    val = np.linalg.det(np.array([gp, dpp, ctx.nu0])) / np.linalg.norm(gp) ** 3
    return math.sqrt(abs(val))


# -- closed forms --------------------------------------------------------------------

def case1_closed_forms(nf: NormalFormData, literal_formula=False,
                       undefined="raise") -> BoundaryInvariantsCase1:
    """
    Boundary invariants from the normal-form coefficients (closed-form sign convention).

    Parameters
    ----------
    undefined : {"raise", "nan"}
        What to do with kappa' and tau when the boundary image has zero
        curvature at 0.

    Raises
    ------
    DegenerateInvariant
        b20^2 + (c1^2 + a20)^2 = 0 and ``undefined="raise"``.
    """
    bd = nf.boundary
    if not isinstance(bd, Case1Coeffs):
        raise NotCase1("normal form has no transverse boundary")
    e, c1, c2 = bd.epsilon, bd.c1, bd.c2
    a20, a30, b20, b30, b12, b03 = nf.a20, nf.a30, nf.b20, nf.b30, nf.b12, nf.b03
    m = c1 ** 2 + a20
    den = b20 ** 2 + m ** 2
    kappa0 = math.sqrt(den)
    if den <= TAU_ZERO ** 2:
        if undefined != "nan":
            raise DegenerateInvariant("boundary image has vanishing curvature at 0")
        kappa_p = tau0 = math.nan
    else:
        kappa_p = (b20 * (b03 * c1 ** 3 + 3 * e * b12 * c1 ** 2 + e * b30)
                   + m * (3 * c1 * c2 + e * a30)) / kappa0
        tau0 = (m * (e * b03 * c1 ** 3 + 3 * b12 * c1 ** 2 + b30)
                - b20 * (3 * e * c1 * c2 + a30)) / den
    knb_p = b03 * c1 ** 3 / 2 + 2 * e * b12 * c1 ** 2 - a20 * b03 * c1 / 2 + e * b30 - e * a20 * b12
    kgb0 = -(e * c1 ** 2 + a20) if literal_formula else -e * (c1 ** 2 + a20)
    kgb_p = -c1 * (e * b03 * b20 / 2 + 3 * e * c2) - a30 - b12 * b20
    return BoundaryInvariantsCase1(kappa0, kappa_p, tau0, b20, knb_p, kgb0, kgb_p, abs(c1))


def case2_closed_forms(nf: NormalFormData, literal_formula=False) -> BoundaryInvariantsCase2:
    bd = nf.boundary
    if not isinstance(bd, Case2Coeffs):
        raise NotCase2("normal form has no boundary along the null direction")
    e, d2, d3, d4 = bd.epsilon, bd.d2, bd.d3, bd.d4
    a20, b20, b12, b03, h5 = nf.a20, nf.b20, nf.b12, nf.b03, nf.h5_00
    q = 1 + d2 ** 2
    big = b03 ** 2 * q + d3 ** 2
    kappa = math.sqrt(big) / q ** 1.25
    if literal_formula:
        tau = ((-3 * e * a20 * b03 * d2 ** 3 + 3 * b20 * d2 ** 2 * d3 + 6 * b12 * d2 * d3
                - h5 * d3 + e * b03 * d4) / big ** 0.75 * math.sqrt(q))
        beta = d2
    else:
        tau = (q ** 0.25 * (-3 * e * a20 * b03 * d2 ** 3 - 3 * b20 * d2 ** 2 * d3
                            - 6 * b12 * d2 * d3 - 24 * h5 * d3 + e * b03 * d4) / big)
        beta = d2 / math.sqrt(q)
    return BoundaryInvariantsCase2(beta, kappa, tau)


# -- numeric route ------------------------------------------------------------------

def case1_numeric(f: SurfaceGerm, b, inner=(INNER_STEP, INNER_ACCURACY),
                  outer=(OUTER_STEP, OUTER_ACCURACY)) -> BoundaryInvariantsCase1:
    """
    Boundary invariants from finite differences of the boundary image.

    Values follow the numeric sign convention (see module docstring).
    """
    ctx = _Context(f, b)
    if ctx.classify().kind != "Case1":
        raise NotCase1("boundary is tangent to the null direction")
    (h, acc), (H, ACC) = ctx.steps(inner, outer)
    curve = ctx.boundary_image

    def frenet(t):
        d = oracle.derivative_stack(curve, t, 3, h=h, accuracy=acc, richardson=False)
        return oracle.kappa_tau_from_derivatives(*d)

    def on_surface(t):
        return oracle.curve_on_surface_invariants(ctx.surface, ctx.normal, ctx.boundary, t,
                                                  h=h, accuracy=acc, richardson=False)

    speed = np.linalg.norm(oracle.finite_diff(curve, 0.0, 1, h=h, accuracy=acc))
    kappa0, tau0 = frenet(0.0)
    kappa_p = oracle.finite_diff(lambda t: frenet(t)[0], 0.0, 1, h=H, accuracy=ACC) / speed
    knb0, kgb0 = on_surface(0.0)
    dk = oracle.finite_diff(lambda t: np.array(on_surface(t)), 0.0, 1, h=H, accuracy=ACC) / speed
    alpha = approaching_ratio(f, b, _ctx=ctx)
    return BoundaryInvariantsCase1(kappa0, kappa_p, tau0, knb0, dk[0], kgb0, dk[1], alpha)


def angle_beta(f: SurfaceGerm, b, _ctx=None) -> float:
    """
    Cosine of the angle between bhat''(0) and the edge direction gamma'(0).

    The edge is oriented so that its normal curvature is nonnegative.

    Raises
    ------
    NotCase2
    DegenerateContact
        bhat''(0) vanishes.
    """
    ctx = _ctx or _Context(f, b)
    if ctx.classify().kind != "Case2":
        raise NotCase2("boundary is transverse to the null direction")
    bpp = np.array([2 * c.coeff(2) for c in ctx.bhat])
    if np.linalg.norm(bpp) <= TAU_ZERO:
        raise DegenerateContact("bhat''(0) vanishes")
    g = ctx.edge_velocity
    return float(bpp @ g / (np.linalg.norm(bpp) * np.linalg.norm(g)))


def case2_numeric(f: SurfaceGerm, b) -> BoundaryInvariantsCase2:
    """Cuspidal curvature and torsion of the boundary image, plus the angle beta."""
    ctx = _Context(f, b)
    beta = angle_beta(f, b, _ctx=ctx)
    g = CurveGerm(ctx.bhat)
    return BoundaryInvariantsCase2(beta, cuspidal_curvature(g), cuspidal_torsion(g))


# -- comparison ------------------------------------------------------------------------

def to_numeric_convention(inv):
    """Apply SIGN_CONVENTION to closed-form values."""
    d = inv.to_dict()
    return type(inv)(**{k: SIGN_CONVENTION[k] * v for k, v in d.items()})


def compare(closed, numeric):
    """Per-field relative error |a - b| / max(1, |b|) after the sign convention."""
    c = to_numeric_convention(closed).to_dict()
    n = numeric.to_dict()
    return {k: oracle.rel_err(c[k], n[k]) for k in c}
