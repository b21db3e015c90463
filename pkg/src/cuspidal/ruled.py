"""
Flat ruled surfaces F(t, v) = gamma(t) + v delta(t).

``delta`` is a unit-speed curve on the unit sphere with geodesic curvature
``kappa_delta``, so the frame A = (delta, delta', delta x delta') satisfies::

    A' = A @ [[0, -1, 0], [1, 0, -kappa_delta], [0, kappa_delta, 0]]

and ``gamma' = A @ (x, y, z)``.  The surface is flat exactly when z = 0.
Its singular set is {v = -y(t)}, and a singular point is a cuspidal edge iff
``y' - x != 0`` and ``kappa_delta != 0`` there.

Initial conditions are imposed at t = 0 when 0 lies in the interval, else at
its left end.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .errors import InvalidData, NotAdapted, NotCuspidalEdge
from .frames import integrate_frame, skew
from .jets import TAU_ZERO, Jet2
from .oracle import grid_derivative
from .surface import SurfaceGerm, adapt, is_cuspidal_edge, normalize

TAU_FLAT = 1e-7
DEFAULT_STEPS = 4000
PLATEAU_FRACTION = 0.005     # a run of zero slope this long (relative to I) is a plateau


class ScalarFunction:
    """
    A function of t given by polynomial coefficients (ascending) or by samples.

    Samples are interpolated by a cubic spline, so derivatives above the third
    vanish.
    """

    def __init__(self, poly=None, samples=None):
        if (poly is None) == (samples is None):
            raise InvalidData("give either polynomial coefficients or samples")
        self.poly = None if poly is None else np.polynomial.Polynomial(np.asarray(poly, float))
        self.spline = None
        if samples is not None:
            ts, vals = (np.asarray(a, float) for a in samples)
            self.spline = CubicSpline(ts, vals)

    @classmethod
    def from_spec(cls, spec):
        """Number, coefficient list, ``{"poly": [...]}`` or ``{"t": [...], "values": [...]}``."""
        if isinstance(spec, ScalarFunction):
            return spec
        if np.isscalar(spec):
            return cls(poly=[float(spec)])
        if isinstance(spec, dict):
            if "poly" in spec:
                return cls(poly=spec["poly"])
            return cls(samples=(spec["t"], spec["values"]))
        return cls(poly=spec)

    def __call__(self, t, k=0):
        if self.poly is not None:
            p = self.poly.deriv(k) if k else self.poly
            return p(t)
        if k > 3:
            return np.zeros_like(np.asarray(t, float))
        return self.spline(t, k)

    def taylor(self, t0, order):
        """Coefficients f^(k)(t0) / k!, k = 0..order."""
        return np.array([float(self(t0, k)) / math.factorial(k) for k in range(order + 1)])

    def to_spec(self):
        if self.poly is not None:
            return {"poly": [float(c) for c in self.poly.coef]}
        return {"t": [float(x) for x in self.spline.x],
                "values": [float(y) for y in self.spline(self.spline.x)]}


@dataclass
class RuledInput:
    x: ScalarFunction
    y: ScalarFunction
    kappa_delta: ScalarFunction
    delta0: np.ndarray
    delta1: np.ndarray
    eps: float
    M: float
    interval: tuple = (-1.0, 1.0)
    z: ScalarFunction = None     # nonzero only for non-flat test data
    check_strip: bool = True

    def __post_init__(self):
        for name in ("x", "y", "kappa_delta"):
            setattr(self, name, ScalarFunction.from_spec(getattr(self, name)))
        self.z = ScalarFunction.from_spec(0.0 if self.z is None else self.z)
        self.delta0 = np.asarray(self.delta0, float)
        self.delta1 = np.asarray(self.delta1, float)
        self.interval = tuple(float(a) for a in self.interval)
        if abs(np.linalg.norm(self.delta0) - 1) > 1e-9 or abs(np.linalg.norm(self.delta1) - 1) > 1e-9:
            raise InvalidData("delta0 and delta1 must be unit vectors")
        if abs(self.delta0 @ self.delta1) > 1e-9:
            raise InvalidData("delta0 and delta1 must be orthogonal")
        if not 0 < self.eps < self.M:
            raise InvalidData("need 0 < eps < M")
        lo, hi = self.interval
        if not lo < hi:
            raise InvalidData("empty interval")
        if self.check_strip:
            ys = self.y(np.linspace(lo, hi, 2001))
            if np.min(np.abs(ys)) <= self.eps:
                raise InvalidData("|y| must exceed eps on the interval")

    @property
    def t_initial(self):
        lo, hi = self.interval
        return 0.0 if lo <= 0.0 <= hi else lo

    @property
    def frame0(self):
        return np.column_stack([self.delta0, self.delta1, np.cross(self.delta0, self.delta1)])

    def omega(self, t):
        return skew(1.0, float(self.kappa_delta(t)), 0.0)

    def velocity(self, t):
        return np.array([self.x(t), self.y(t), self.z(t)], dtype=float)

    @classmethod
    def from_dict(cls, d):
        return cls(x=d["x"], y=d["y"], kappa_delta=d["kappa_delta"], delta0=d["delta0"],
                   delta1=d["delta1"], eps=d["eps"], M=d["M"],
                   interval=tuple(d.get("I", (-1.0, 1.0))), z=d.get("z"))

    def to_dict(self):
        return {"x": self.x.to_spec(), "y": self.y.to_spec(),
                "kappa_delta": self.kappa_delta.to_spec(),
                "delta0": self.delta0.tolist(), "delta1": self.delta1.tolist(),
                "eps": self.eps, "M": self.M, "I": list(self.interval)}


@dataclass
class SphereCurve:
    ts: np.ndarray
    delta: np.ndarray
    delta_prime: np.ndarray
    frames: np.ndarray


@dataclass
class RuledSurface:
    inp: RuledInput
    ts: np.ndarray
    gamma: np.ndarray
    gamma_prime: np.ndarray
    delta: np.ndarray
    delta_prime: np.ndarray
    frames: np.ndarray

    def frame_at(self, t):
        """Frame and gamma at any t in the interval (one short RK4 step from the nearest node)."""
        i = int(np.clip(np.searchsorted(self.ts, t), 0, len(self.ts) - 1))
        if i > 0 and abs(self.ts[i - 1] - t) < abs(self.ts[i] - t):
            i -= 1
        A, g = integrate_frame([t], self.ts[i], self.frames[i], self.inp.omega,
                               self.inp.velocity, self.gamma[i])
        return A[0], g[0]

    def point(self, t, v):
        A, g = self.frame_at(t)
        return g + v * A[:, 0]

    def partials(self, t, v):
        """(F_t, F_v) at (t, v)."""
        A, _ = self.frame_at(t)
        ft = A @ (self.inp.velocity(t) + np.array([0.0, v, 0.0]))
        return ft, A[:, 0]


def _grid(inp, steps):
    lo, hi = inp.interval
    return np.linspace(lo, hi, steps + 1)


def build_delta(inp: RuledInput, steps=DEFAULT_STEPS) -> SphereCurve:
    """Integrate delta'' = -delta + kappa_delta delta x delta' with delta(t0) = delta0, delta'(t0) = delta1."""
    ts = _grid(inp, steps)
    frames, _ = integrate_frame(ts, inp.t_initial, inp.frame0, inp.omega)
    return SphereCurve(ts, frames[:, :, 0], frames[:, :, 1], frames)


def build_gamma(inp: RuledInput, delta: SphereCurve):
    """
    gamma with gamma(t0) = 0 and gamma' = x delta + y delta' + z delta x delta'.

    Returns ``(gamma, gamma_prime)`` sampled on ``delta.ts``.
    """
    frames, gamma = integrate_frame(delta.ts, inp.t_initial, inp.frame0, inp.omega, inp.velocity)
    if np.max(np.abs(frames - delta.frames)) > 1e-12:
        raise InvalidData("delta was not built from this input on this grid")
    coords = np.stack([inp.x(delta.ts), inp.y(delta.ts), inp.z(delta.ts)], axis=1)
    gamma_prime = np.einsum("nij,nj->ni", frames, coords)
    return gamma, gamma_prime


def build_surface(inp: RuledInput, steps=DEFAULT_STEPS) -> RuledSurface:
    delta = build_delta(inp, steps)
    gamma, gamma_prime = build_gamma(inp, delta)
    return RuledSurface(inp, delta.ts, gamma, gamma_prime, delta.delta, delta.delta_prime, delta.frames)


def flatness_defect(gamma, delta, ts=None, gamma_prime=None, delta_prime=None):
    """max_t |det(gamma', delta, delta')| on the samples (grid derivatives when not supplied)."""
    gamma, delta = np.asarray(gamma, float), np.asarray(delta, float)
    if ts is None:
        ts = np.arange(len(gamma), dtype=float)
    if gamma_prime is None:
        gamma_prime = grid_derivative(ts, gamma, 1)
    if delta_prime is None:
        delta_prime = grid_derivative(ts, delta, 1)
    stack = np.stack([gamma_prime, delta, delta_prime], axis=1)
    ok = np.all(np.isfinite(stack), axis=(1, 2))   # grid stencils leave NaN at the ends
    return float(np.max(np.abs(np.linalg.det(stack[ok]))))


def is_flat(gamma, delta, ts=None, gamma_prime=None, delta_prime=None, tol=TAU_FLAT) -> bool:
    return flatness_defect(gamma, delta, ts, gamma_prime, delta_prime) < tol


def singular_set(inp: RuledInput, samples=2001):
    """Rows (t, v) with v = -y(t) and |v| <= M, on a uniform grid."""
    ts = np.linspace(*inp.interval, samples)
    vs = -inp.y(ts)
    keep = np.abs(vs) <= inp.M
    return np.column_stack([ts[keep], vs[keep]])


@dataclass
class BirthReport:
    t0: float
    v0: float
    is_cuspidal_edge: bool
    is_generic_birth: bool
    diagnostics: dict
    endpoint: bool = False
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {"t0": float(self.t0), "v0": float(self.v0),
                "is_cuspidal_edge": bool(self.is_cuspidal_edge),
                "is_generic_birth": bool(self.is_generic_birth),
                "endpoint": bool(self.endpoint), "notes": list(self.notes),
                "diagnostics": {k: float(v) for k, v in self.diagnostics.items()}}


def classify_ruled_point(inp: RuledInput, t0, tol=TAU_ZERO) -> BirthReport:
    """Cuspidal-edge test at the singular point (t0, -y(t0))."""
    y1, y2 = float(inp.y(t0, 1)), float(inp.y(t0, 2))
    xv, kap = float(inp.x(t0)), float(inp.kappa_delta(t0))
    cusp = abs(y1 - xv) > tol and abs(kap) > tol
    diag = {"y_prime": y1, "y_second": y2, "y_prime_minus_x": y1 - xv, "kappa_delta": kap}
    generic = cusp and abs(y2) > tol and abs(y1) <= max(tol, 1e-8 * abs(y2))
    return BirthReport(float(t0), -float(inp.y(t0)), cusp, generic, diag)


def find_births(inp: RuledInput, samples=4001, tol=TAU_ZERO, include_endpoints=False):
    """
    Births of singularities: local minima of |y| with |y| <= M.

    A birth is generic when |y''(t0)| > tol and the point is a cuspidal edge.
    Minima at the ends of the interval are only reported (flagged
    ``endpoint``) when ``include_endpoints`` is set.
    """
    lo, hi = inp.interval
    ts = np.linspace(lo, hi, samples)
    sgn = np.sign(inp.y(ts))
    slope = sgn * inp.y(ts, 1)            # derivative of |y|
    dslope = lambda t: np.sign(inp.y(t)) * inp.y(t, 1)
    scale = max(1.0, float(np.max(np.abs(slope))))
    flat = np.abs(slope) <= tol * scale
    roots = []
    i = 0
    while i < samples - 1:
        if flat[i]:
            # plateau or isolated grid hit: take the run of near-zero slope
            j = i
            while j + 1 < samples and flat[j + 1]:
                j += 1
            before = slope[i - 1] if i > 0 else -1.0
            after = slope[j + 1] if j + 1 < samples else 1.0
            if before < 0 < after:
                plateau = ts[j] - ts[i] >= PLATEAU_FRACTION * (hi - lo)
                t_min = 0.5 * (ts[i] + ts[j])
                if not plateau:
                    a, b = ts[max(i - 1, 0)], ts[min(j + 1, samples - 1)]
                    if dslope(a) < 0 < dslope(b):
                        t_min = brentq(dslope, a, b, xtol=1e-15, rtol=1e-15)
                roots.append((t_min, plateau))
            i = j + 1
            continue
        if slope[i] < 0 < slope[i + 1]:
            roots.append((brentq(dslope, ts[i], ts[i + 1], xtol=1e-15, rtol=1e-15), False))
        i += 1
    reports = []
    for t0, plateau in roots:
        if lo < t0 < hi and abs(inp.y(t0)) <= inp.M:
            rep = classify_ruled_point(inp, t0, tol)
            if plateau:
                rep.is_generic_birth = False
                rep.notes.append("plateau")
            _annotate(inp, rep)
            reports.append(rep)
    if include_endpoints:
        for t_end, rising in ((lo, slope[0] > 0), (hi, slope[-1] < 0)):
            if rising and abs(inp.y(t_end)) <= inp.M:
                rep = classify_ruled_point(inp, t_end, tol)
                rep.is_generic_birth = False
                rep.endpoint = True
                rep.notes.append("minimum at interval end")
                _annotate(inp, rep)
                reports.append(rep)
    return reports


def _annotate(inp, rep, tol=1e-9):
    a = abs(rep.v0)
    if abs(a - inp.M) <= tol:
        rep.notes.append("on the extension edge |v| = M")
    if abs(a - inp.eps) <= tol:
        rep.notes.append("on the strip edge |v| = eps")


# -- jets at a point -------------------------------------------------------------

def _frame_series(A0, kappa, order):
    """Taylor coefficients A_k of the frame from A' = A Omega(t)."""
    base = skew(1.0, 0.0, 0.0)
    K = skew(0.0, 1.0, 0.0)
    omegas = [base * (k == 0) + kappa[k] * K for k in range(order + 1)]
    A = [np.asarray(A0, float)]
    for k in range(order):
        A.append(sum(A[j] @ omegas[k - j] for j in range(k + 1)) / (k + 1))
    return A


def local_jet(surface: RuledSurface, t0, v0, order=6) -> SurfaceGerm:
    """Jet of F(t0 + T, v0 + V) - F(t0, v0) in the variables (T, V)."""
    inp = surface.inp
    A0, _ = surface.frame_at(t0)
    x = inp.x.taylor(t0, order)
    y = inp.y.taylor(t0, order)
    z = inp.z.taylor(t0, order)
    kap = inp.kappa_delta.taylor(t0, order)
    A = _frame_series(A0, kap, order)
    w = np.stack([x, y, z], axis=1)                      # coordinates of gamma'
    gp = [sum(A[j] @ w[k - j] for j in range(k + 1)) for k in range(order)]
    comps = []
    for c in range(3):
        coeffs = np.zeros((order + 1, order + 1))
        for k in range(1, order + 1):
            coeffs[k, 0] = gp[k - 1][c] / k + v0 * A[k][c, 0]
        for k in range(order):
            coeffs[k, 1] = A[k][c, 0]
        comps.append(Jet2(coeffs, order))
    return SurfaceGerm(comps)


def jet_is_cuspidal_edge(surface: RuledSurface, t0, v0, order=6) -> bool:
    """Cuspidal-edge test on the local jet via adapted coordinates."""
    f = local_jet(surface, t0, v0, order)
    try:
        return is_cuspidal_edge(adapt(f).germ)
    except (NotCuspidalEdge, NotAdapted):
        return False


def birth_cross_check(surface: RuledSurface, report: BirthReport, order=6):
    """
    Reduce the jet of F at a birth point with boundary {v = v0}.

    Returns ``(c1, c2)`` of the resulting transverse boundary; a generic
    birth has c1 = 0 and c2 != 0.
    """
    from .jets import Jet1
    f = local_jet(surface, report.t0, report.v0, order)
    b = (Jet1.var(order), Jet1.zero(order))
    nf = normalize(f, b).nf
    return nf.boundary.c1, nf.boundary.c2


# -- meshes ---------------------------------------------------------------------------

@dataclass
class Mesh:
    vertices: np.ndarray        # (nt * nv, 3)
    params: np.ndarray          # (nt * nv, 2) source (t, v)
    faces: np.ndarray           # (k, 3) zero-based
    strip: np.ndarray           # vertex mask |v| <= eps
    singular_polyline: np.ndarray
    singular_params: np.ndarray


def mesh_export(surface: RuledSurface, nt=101, nv=41) -> Mesh:
    """Triangulated grid of F over the interval x [-M, M]."""
    inp = surface.inp
    idx = np.unique(np.round(np.linspace(0, len(surface.ts) - 1, nt)).astype(int))
    ts = surface.ts[idx]
    vs = np.linspace(-inp.M, inp.M, nv)
    g, d = surface.gamma[idx], surface.delta[idx]
    verts = (g[:, None, :] + vs[None, :, None] * d[:, None, :]).reshape(-1, 3)
    params = np.stack(np.meshgrid(ts, vs, indexing="ij"), axis=-1).reshape(-1, 2)
    n_t, n_v = len(ts), nv
    faces = []
    for i in range(n_t - 1):
        for j in range(n_v - 1):
            a, b = i * n_v + j, (i + 1) * n_v + j
            faces.append((a, b, b + 1))
            faces.append((a, b + 1, a + 1))
    strip = np.abs(params[:, 1]) <= inp.eps
    sing_t = surface.ts
    sing_v = -inp.y(sing_t)
    keep = np.abs(sing_v) <= inp.M
    poly = surface.gamma[keep] + sing_v[keep, None] * surface.delta[keep]
    return Mesh(verts, params, np.array(faces, dtype=int), strip, poly,
                np.column_stack([sing_t[keep], sing_v[keep]]))


def write_obj(mesh: Mesh, path):
    """OBJ with face groups ``strip`` / ``exterior`` and a line object for the singular set."""
    strip_face = mesh.strip[mesh.faces].all(axis=1)
    with open(path, "w") as fh:
        fh.write("o surface\n")
        for p in mesh.vertices:
            fh.write("v %.17g %.17g %.17g\n" % tuple(p))
        for name, mask in (("strip", strip_face), ("exterior", ~strip_face)):
            fh.write(f"g {name}\n")
            for f in mesh.faces[mask] + 1:
                fh.write("f %d %d %d\n" % tuple(f))
        if len(mesh.singular_polyline):
            fh.write("o singular_set\n")
            base = len(mesh.vertices)
            for p in mesh.singular_polyline:
                fh.write("v %.17g %.17g %.17g\n" % tuple(p))
            # break the polyline where the singular set leaves the strip |v| <= M
            t = mesh.singular_params[:, 0]
            gaps = np.where(np.diff(t) > 1.5 * np.min(np.diff(t)))[0] if len(t) > 1 else []
            start = 0
            for stop in list(gaps + 1) + [len(t)]:
                if stop - start >= 2:
                    fh.write("l " + " ".join(str(base + k + 1) for k in range(start, stop)) + "\n")
                start = stop
