"""
Cuspidal-edge surface-germs and their reduction to normal form.

The normal form is

    f1 = u
    f2 = a20/2 u^2 + a30/6 u^3 + v^2/2 + u^4 h1(u)
    f3 = b20/2 u^2 + b30/6 u^3 + b12/2 u v^2 + b03/6 v^3
         + u^4 h2(u) + u^2 v^2 h3(u) + u v^3 h4(u) + v^4 h5(u, v)

with b03 != 0 and b20 >= 0, reached by an orientation-preserving source
diffeomorphism and a rotation of the target.  A boundary curve is carried
along and written either as (eps s, sum c_k s^k / k!) when it is transverse
to the null direction, or as (sum d_k s^k / k!, eps s) when it is tangent to
it, with ``s`` oriented like the input curve.

The reduction is constructive rather than a degree-by-degree linear solve:

1. rotate the source so the kernel of df(0) is the second axis;
2. find the singular curve q = phi(p) from the area density;
3. straighten it to {w = 0};
4. shear the source so the null direction along the singular curve is d/dr;
5. rotate the target (and possibly the source by -1) to fix the frame;
6. set u = f1 and v = r sqrt(2 K) where f2 - g(f1) = r^2 K;
7. invert (s, r) -> (u, v) and read the coefficients.

Every step is a jet composition, so the result is exact up to the working
order apart from floating-point round-off.  Inputs are padded with zero
coefficients before reducing because the normal-form d-jet only depends on
the d-jet of f.
"""

import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import (DegenerateBoundary, InsufficientOrder, InvalidData,
                     LinearSolveFailure, NotAdapted, NotCuspidalEdge,
                     NotDivisible, NotFront, NumericalFailure)
from .jets import (DEFAULT_ORDER, TAU_ZERO, Jet1, Jet2, apply_map, cross, dot,
                   invert_map, linear_combination)

PAD = 5
SPARSITY_TOL = 1e-8
RANK_TOL = 1e-8


# -- data types ----------------------------------------------------------------

@dataclass
class Case1Coeffs:
    epsilon: int
    c1: float
    c2: float
    c3: float
    kind: str = "case1"


@dataclass
class Case2Coeffs:
    epsilon: int
    d2: float
    d3: float
    d4: float
    kind: str = "case2"


@dataclass
class NormalFormData:
    a20: float
    a30: float
    b20: float
    b30: float
    b12: float
    b03: float
    h5_00: float = 0.0
    boundary: Optional[Union[Case1Coeffs, Case2Coeffs]] = None

    SURFACE_FIELDS = ("a20", "a30", "b20", "b30", "b12", "b03", "h5_00")

    def __post_init__(self):
        if self.b03 == 0:
            raise InvalidData("b03 must be nonzero")
        if self.b20 < 0:
            raise InvalidData("b20 must be nonnegative")
        if self.boundary is not None and self.boundary.epsilon not in (-1, 1):
            raise InvalidData("epsilon must be +1 or -1")

    def surface_vector(self):
        return np.array([getattr(self, k) for k in self.SURFACE_FIELDS])

    def boundary_vector(self):
        b = self.boundary
        if b is None:
            return np.array([])
        if isinstance(b, Case1Coeffs):
            return np.array([b.epsilon, b.c1, b.c2, b.c3], dtype=float)
        return np.array([b.epsilon, b.d2, b.d3, b.d4], dtype=float)

    def to_dict(self):
        d = {k: float(getattr(self, k)) for k in self.SURFACE_FIELDS}
        if self.boundary is not None:
            bd = asdict(self.boundary)
            bd["epsilon"] = int(bd["epsilon"])
            d["boundary"] = bd
        else:
            d["boundary"] = None
        return d

    @classmethod
    def from_dict(cls, d):
        bd = d.get("boundary")
        boundary = None
        if bd is not None:
            bd = dict(bd)
            kind = bd.pop("kind", "case1" if "c1" in bd else "case2")
            boundary = (Case1Coeffs if kind == "case1" else Case2Coeffs)(**bd)
        return cls(**{k: float(d.get(k, 0.0)) for k in cls.SURFACE_FIELDS}, boundary=boundary)


@dataclass
class EdgeInvariants:
    kappa_s: float
    kappa_nu: float
    kappa_c: float
    kappa_t: float


class SurfaceGerm:
    """Three Jet2 components of f:(R^2,0) -> (R^3,0)."""

    def __init__(self, components, adapted=False):
        comps = tuple(components)
        if len(comps) != 3 or not all(isinstance(c, Jet2) for c in comps):
            raise ValueError("a surface germ has three Jet2 components")
        n = min(c.order for c in comps)
        self.components = tuple(c.truncate(n) for c in comps)
        self.order = n
        if any(abs(c.constant) > TAU_ZERO for c in self.components):
            raise InvalidData("a surface germ must send 0 to 0")
        self.adapted = bool(adapted)
        if self.adapted and not is_adapted(self):
            raise NotAdapted("f_v is not divisible by v or f_u(0) vanishes")

    def __call__(self, u, v):
        return np.array([c(u, v) for c in self.components])

    def partial(self, var, k=1):
        return tuple(c.partial(var, k) for c in self.components)

    def jacobian(self):
        return np.array([[c.coeff(1, 0), c.coeff(0, 1)] for c in self.components])

    def compose(self, source_map, adapted=False):
        return SurfaceGerm(tuple(c.compose(*source_map) for c in self.components), adapted)

    def rotate(self, R):
        return SurfaceGerm(linear_combination(R, self.components), self.adapted)

    def pad(self, order):
        return SurfaceGerm(tuple(c.pad(order) for c in self.components), self.adapted)

    def truncate(self, order):
        return SurfaceGerm(tuple(c.truncate(order) for c in self.components), self.adapted)

    def to_dict(self):
        return [c.to_dict() for c in self.components]


# -- adapted coordinates -------------------------------------------------------

def _vec_scale(jets):
    return max(1.0, max(j.max_abs() for j in jets))


def is_adapted(f: SurfaceGerm, tol=TAU_ZERO) -> bool:
    """f_v divisible by v and f_u(0) != 0."""
    fu0 = f.jacobian()[:, 0]
    if np.linalg.norm(fu0) <= tol:
        return False
    scale = _vec_scale(f.components)
    for c in f.components:
        fv = c.partial(1)
        if np.any(np.abs(fv.coeffs[:, 0]) > tol * scale):
            return False
    return True


def _divide_fv(f):
    try:
        return tuple(c.partial(1).div_exact(1, var=1) for c in f.components)
    except NotDivisible as exc:
        raise NotAdapted(f"f_v is not divisible by v: {exc}") from None


def unit_normal_jet(f: SurfaceGerm):
    """
    Jet of nu = w / |w| with w = f_u x (f_v / v) for adapted ``f``.

    Raises
    ------
    NotAdapted
        ``f_v`` is not divisible by ``v``.
    NotFront
        ``w(0)`` vanishes.
    """
    fv_over_v = _divide_fv(f)
    fu = f.partial(0)
    w = cross(fu, fv_over_v)
    ww = dot(w, w)
    if ww.constant <= TAU_ZERO ** 2:
        raise NotFront("f_u(0) and (f_v/v)(0) are parallel")
    inv = ww.sqrt_inv()
    return tuple(c * inv for c in w)


def is_cuspidal_edge(f: SurfaceGerm, tol=TAU_ZERO) -> bool:
    """f_u(0) != 0 and det(f_u, f_vv, f_vvv)(0) != 0 in adapted coordinates."""
    _divide_fv(f)
    fu = f.jacobian()[:, 0]
    if np.linalg.norm(fu) <= tol:
        raise NotAdapted("f_u(0) vanishes")
    fvv = np.array([2 * c.coeff(0, 2) for c in f.components])
    fvvv = np.array([6 * c.coeff(0, 3) for c in f.components])
    return abs(np.linalg.det(np.array([fu, fvv, fvvv]))) > tol


def front_jacobian_rank(f: SurfaceGerm, tol=1e-9) -> int:
    """Rank at 0 of the 6x2 Jacobian of (f, nu) for adapted ``f``."""
    nu = unit_normal_jet(f)
    J = np.vstack([f.jacobian(),
                   np.array([[c.coeff(1, 0), c.coeff(0, 1)] for c in nu])])
    s = np.linalg.svd(J, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))


@dataclass
class AdaptedChart:
    """Adapted germ ``germ = f o chart`` with chart (s, r) -> original (p, q)."""
    germ: SurfaceGerm
    chart: tuple


def _kernel_frame(f, tol=RANK_TOL):
    J = f.jacobian()
    s = np.linalg.svd(J, compute_uv=False)
    _, _, Vt = np.linalg.svd(J)
    if s[0] <= TAU_ZERO:
        raise NotCuspidalEdge("df(0) vanishes")
    if s[1] > tol * s[0]:
        raise NotCuspidalEdge("df(0) has rank 2; the germ is an immersion")
    n0 = Vt[1]
    m0 = np.array([n0[1], -n0[0]])
    return np.column_stack([m0, n0])


def adapt(f: SurfaceGerm, pad=PAD) -> AdaptedChart:
    """
    Coordinates in which S(f) = {r = 0} and d/dr spans the kernel along it.

    The chart is orientation-preserving.  Works at ``f.order + pad`` and
    returns jets of order ``f.order``.
    """
    N = f.order
    fw = f.pad(N + pad)
    W = fw.order
    P2, Q2 = Jet2.var(0, W), Jet2.var(1, W)

    # linear adaptation: kernel of df(0) becomes the second axis
    L = _kernel_frame(fw)
    lin = linear_combination(L, (P2, Q2))
    F0 = fw.compose(lin)

    # singular curve q = phi(p) from the area density
    fp, fq = F0.partial(0), F0.partial(1)
    fp0 = np.array([c.coeff(0, 0) for c in fp])
    fqq0 = np.array([2 * c.coeff(0, 2) for c in F0.components])
    nvec = np.cross(fp0, fqq0)
    if np.linalg.norm(nvec) <= TAU_ZERO:
        raise NotCuspidalEdge("f_qq(0) is parallel to the image of df(0)")
    lam = dot(cross(fp, fq), tuple(Jet2.one(W - 1) * x for x in nvec))
    lam_p, lam_q = lam.coeff(1, 0), lam.coeff(0, 1)
    if abs(lam_q) <= TAU_ZERO * max(1.0, abs(lam_p)):
        raise NotCuspidalEdge("singular set is not a smooth curve")
    # shear so the first axis is tangent to the singular curve; keeps the
    # graph q = phi(p) well conditioned when the curve is close to the kernel
    sign = 1.0 if lam_q > 0 else -1.0
    tangent = sign * np.array([lam_q, -lam_p]) / math.hypot(lam_p, lam_q)
    L = L @ np.array([[tangent[0], 0.0], [tangent[1], 1.0]])
    lin = linear_combination(L, (P2, Q2))
    F0 = fw.compose(lin)
    fp, fq = F0.partial(0), F0.partial(1)
    fp0 = np.array([c.coeff(0, 0) for c in fp])
    nvec = np.cross(fp0, np.array([2 * c.coeff(0, 2) for c in F0.components]))
    lam = dot(cross(fp, fq), tuple(Jet2.one(W - 1) * x for x in nvec))
    lam_q = lam.coeff(0, 1)
    p1 = Jet1.var(lam.order)
    phi = Jet1.zero(lam.order)
    for _ in range(lam.order + 1):
        phi = phi - lam.compose(p1, phi) / lam_q
        phi = phi - phi.constant
    P, Wv = Jet2.var(0, W), Jet2.var(1, W)
    straighten = (P, Wv + phi.compose(P))
    F1 = F0.compose(straighten)

    # shear so that d/dr is the null direction along {r = 0}
    Fp = tuple(c.partial(0).restrict(1) for c in F1.components)
    Fw = tuple(c.partial(1).restrict(1) for c in F1.components)
    k = -(dot(Fw, Fp) / dot(Fp, Fp))
    n1 = F1.order
    S, R = Jet2.var(0, n1), Jet2.var(1, n1)
    shear = (S + R * k.compose(S), R)
    G = F1.compose(shear)

    # full chart (s, r) -> (p, q)
    inner = tuple(c.compose(*shear) for c in straighten)
    chart = tuple(c.compose(*inner) for c in lin)
    G = G.truncate(min(G.order, N))
    chart = tuple(c.truncate(min(c.order, N)) for c in chart)
    if G.order < N:
        raise InsufficientOrder(f"adaptation lost too many orders ({G.order} < {N})")
    scale = _vec_scale(G.components)
    for c in G.components:
        if np.any(np.abs(c.partial(1).coeffs[:, 0]) > SPARSITY_TOL * scale):
            raise NumericalFailure("adapted germ is not adapted to tolerance")
        c.coeffs[:, 1] = np.where(np.abs(c.coeffs[:, 1]) <= SPARSITY_TOL * scale, 0.0, c.coeffs[:, 1])
    return AdaptedChart(SurfaceGerm(G.components, adapted=True), chart)


# -- normal form ------------------------------------------------------------------

@dataclass
class Reduction:
    """Full output of the normal-form reduction."""
    nf: NormalFormData
    germ: SurfaceGerm          # normal-form jets R f(Phi(u, v))
    rotation: np.ndarray       # R
    source_map: tuple          # Phi: (u, v) -> original coordinates
    boundary_jets: tuple = None  # boundary in normal-form coordinates, own parameter
    boundary_nf: tuple = None    # boundary in the normalized parameter s
    flipped: bool = False


def _frame_from(G):
    gs = np.array([c.coeff(1, 0) for c in G.components])
    grr = np.array([2 * c.coeff(0, 2) for c in G.components])
    if np.linalg.norm(gs) <= TAU_ZERO:
        raise NotCuspidalEdge("edge direction vanishes")
    e1 = gs / np.linalg.norm(gs)
    w = grr - (grr @ e1) * e1
    if np.linalg.norm(w) <= TAU_ZERO:
        raise NotCuspidalEdge("cusp direction is parallel to the edge")
    e2 = w / np.linalg.norm(w)
    return np.array([e1, e2, np.cross(e1, e2)])


def _check_sparsity(g, tol):
    f1, f2, f3 = (c.coeffs for c in g.components)
    n = g.order
    scale = _vec_scale(g.components)
    bad = []
    i, j = np.indices(f1.shape)
    inside = i + j <= n
    expect1 = np.zeros_like(f1)
    expect1[1, 0] = 1.0
    if np.any(np.abs(f1 - expect1)[inside] > tol * scale):
        bad.append("f1 != u")
    expect2_free = (j == 0) & (i >= 2)
    f2c = f2.copy()
    f2c[0, 2] -= 0.5
    if np.any(np.abs(f2c[inside & ~expect2_free]) > tol * scale):
        bad.append("f2 has mixed or pure-v terms besides v^2/2")
    forbid3 = (i + j <= 1) | (j == 1) | ((j == 2) & (i == 0))
    if np.any(np.abs(f3[inside & forbid3]) > tol * scale):
        bad.append("f3 has forbidden terms")
    if bad:
        raise LinearSolveFailure("reduced jets miss the normal-form pattern: " + "; ".join(bad))


def _reduce_oriented(f, adapted, flip, pad):
    N = f.order
    G0 = adapted.germ.pad(N + pad)
    chart = tuple(c.pad(N + pad) for c in adapted.chart)
    W = G0.order
    S, Rv = Jet2.var(0, W), Jet2.var(1, W)
    R = _frame_from(G0)
    if flip:
        neg = (-S, -Rv)
        G0 = G0.compose(neg)
        chart = tuple(c.compose(*neg) for c in chart)
        R = np.diag([-1.0, 1.0, -1.0]) @ R
    F = G0.rotate(R)
    F1, F2, _ = F.components
    mu = F1.restrict(1)
    g = F2.restrict(1).compose(mu.inverse())
    Q = F2 - g.compose(F1)
    K = Q.div_exact(2, var=1, tol=1e-7)
    if K.constant <= TAU_ZERO:
        raise NotCuspidalEdge("f2 does not grow quadratically off the edge")
    v = (K * 2.0).sqrt().mul_var(1, var=1)
    n = min(F1.order, v.order)
    psi = (F1.truncate(n), v.truncate(n))
    psi_inv = invert_map(psi)
    source = tuple(c.compose(*psi_inv) for c in chart)
    germ = SurfaceGerm(tuple(c.compose(*source) for c in f.pad(N + pad).components))
    germ = germ.rotate(R)
    if germ.order < N:
        raise InsufficientOrder(f"reduction lost too many orders ({germ.order} < {N})")
    germ = germ.truncate(N)
    source = tuple(c.truncate(min(c.order, N)) for c in source)
    return germ, R, source


def _read_surface(germ):
    _, f2, f3 = germ.components
    b03 = 6 * f3.coeff(0, 3)
    if abs(b03) <= TAU_ZERO:
        raise NotCuspidalEdge("b03 vanishes; not a cuspidal edge")
    return dict(a20=2 * f2.coeff(2, 0), a30=6 * f2.coeff(3, 0),
                b20=2 * f3.coeff(2, 0), b30=6 * f3.coeff(3, 0),
                b12=2 * f3.coeff(1, 2), b03=b03, h5_00=f3.coeff(0, 4))


def _boundary_in_nf(b, source_map):
    b = tuple(c if isinstance(c, Jet1) else Jet1(c) for c in b)
    if any(abs(c.constant) > TAU_ZERO for c in b):
        raise InvalidData("boundary must pass through the origin")
    if np.hypot(b[0].coeff(1), b[1].coeff(1)) <= TAU_ZERO:
        raise DegenerateBoundary("b'(0) vanishes")
    inv = invert_map(source_map)
    return apply_map(inv, b)


def boundary_coefficients(B):
    """
    Classify a boundary given in normal-form coordinates and read its coefficients.

    Returns
    -------
    coeffs : Case1Coeffs or Case2Coeffs
    reparam : (Jet1, Jet1)
        The boundary written in the normalized parameter.
    """
    B1, B2 = B
    d1, d2 = B1.coeff(1), B2.coeff(1)
    speed = math.hypot(d1, d2)
    if speed <= TAU_ZERO:
        raise DegenerateBoundary("b'(0) vanishes")
    if abs(d1) > TAU_ZERO * max(1.0, speed):
        eps = 1 if d1 > 0 else -1
        tau = (B1 * eps).inverse()
        c = B2.compose(tau)
        fact = [math.factorial(k) * c.coeff(k) for k in range(4)]
        s = Jet1.var(c.order)
        return Case1Coeffs(eps, fact[1], fact[2], fact[3]), (s * eps, c)
    eps = 1 if d2 > 0 else -1
    tau = (B2 * eps).inverse()
    d = B1.compose(tau)
    fact = [math.factorial(k) * d.coeff(k) for k in range(5)]
    s = Jet1.var(d.order)
    return Case2Coeffs(eps, fact[2], fact[3], fact[4]), (d, s * eps)


def normalize(f: SurfaceGerm, b=None, pad=PAD) -> Reduction:
    """
    Reduce ``f`` (and optionally a boundary ``b``) to normal form.

    Parameters
    ----------
    f : SurfaceGerm
        Any coordinates; order at least 4.
    b : pair of Jet1, optional
        Boundary curve in the coordinates of ``f``.

    Raises
    ------
    NotCuspidalEdge
    DegenerateBoundary
    LinearSolveFailure
        The reduced jets fail the normal-form sparsity check.
    """
    if f.order < 4:
        raise InsufficientOrder("normal-form reduction needs order >= 4")
    adapted = adapt(f, pad=pad)
    if not is_cuspidal_edge(adapted.germ):
        raise NotCuspidalEdge("det(f_u, f_vv, f_vvv)(0) vanishes")
    germ, R, source = _reduce_oriented(f, adapted, False, pad)
    coeffs = _read_surface(germ)
    scale = max(1.0, np.max(np.abs(list(coeffs.values()))))
    tie = abs(coeffs["b20"]) <= TAU_ZERO * scale
    flipped = False
    if coeffs["b20"] < 0 and not tie or tie and coeffs["a30"] < -TAU_ZERO * scale:
        germ, R, source = _reduce_oriented(f, adapted, True, pad)
        coeffs = _read_surface(germ)
        flipped = True
    if tie:
        coeffs["b20"] = abs(coeffs["b20"])
    _check_sparsity(germ, SPARSITY_TOL)
    boundary = jets = reparam = None
    if b is not None:
        jets = _boundary_in_nf(b, source)
        boundary, reparam = boundary_coefficients(jets)
    nf = NormalFormData(**coeffs, boundary=boundary)
    return Reduction(nf, germ, R, source, jets, reparam, flipped)


def reduce_to_normal_form(f: SurfaceGerm, b=None) -> NormalFormData:
    return normalize(f, b).nf


def edge_invariants(nf: NormalFormData) -> EdgeInvariants:
    """Singular curvature, limiting normal curvature, cuspidal curvature, cusp-directional torsion."""
    return EdgeInvariants(nf.a20, nf.b20, nf.b03, nf.b12)


# -- synthesis from coefficients ------------------------------------------------

def allowed_remainder(component, i, j):
    """Whether u^i v^j may appear beyond the named coefficients of the normal form."""
    if component == 1:
        return j == 0 and i >= 4
    if component == 2:
        if j == 0:
            return i >= 4
        if j == 2:
            return i >= 2
        if j == 3:
            return i >= 1
        return j >= 4 and (i, j) != (0, 4)
    return False


def normal_form_germ(nf: NormalFormData, order=DEFAULT_ORDER, remainder=None) -> SurfaceGerm:
    """
    Surface germ in normal form.

    Parameters
    ----------
    remainder : dict, optional
        ``{(component, i, j): value}`` for higher terms permitted by the
        normal form (component 1 or 2, zero-based).
    """
    f1 = Jet2.from_terms({(1, 0): 1.0}, order)
    t2 = {(2, 0): nf.a20 / 2, (3, 0): nf.a30 / 6, (0, 2): 0.5}
    t3 = {(2, 0): nf.b20 / 2, (3, 0): nf.b30 / 6, (1, 2): nf.b12 / 2,
          (0, 3): nf.b03 / 6, (0, 4): nf.h5_00}
    for (comp, i, j), val in (remainder or {}).items():
        if not allowed_remainder(comp, i, j):
            raise InvalidData(f"u^{i} v^{j} is not allowed in component {comp}")
        (t2 if comp == 1 else t3)[(i, j)] = (t2 if comp == 1 else t3).get((i, j), 0.0) + val
    return SurfaceGerm((f1, Jet2.from_terms(t2, order), Jet2.from_terms(t3, order)))


def normal_form_boundary(nf: NormalFormData, order=DEFAULT_ORDER, tail=()):
    """Boundary curve of the normal form; ``tail`` adds coefficients of s^4, s^5, ..."""
    bd = nf.boundary
    if bd is None:
        raise InvalidData("normal form carries no boundary")
    s = Jet1.var(order) * bd.epsilon
    if isinstance(bd, Case1Coeffs):
        c = [0.0, bd.c1, bd.c2 / 2, bd.c3 / 6, *tail]
        return s, Jet1(c, order)
    d = [0.0, 0.0, bd.d2 / 2, bd.d3 / 6, bd.d4 / 24, *tail]
    return Jet1(d, order), s
