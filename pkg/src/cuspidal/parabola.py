"""
Curvature parabola of a corank-one map-germ and related distances.

For a germ with rank df(0) = 1 the curvature parabola is the set of normal
parts of the second fundamental form over unit-length directions::

    Delta0 = { a^2 f_uu + 2ab f_uv + b^2 f_vv  projected to N0 :
               a^2 E + 2ab F + b^2 G = 1 }

where N0 is the orthogonal complement of the image of df(0).  Writing a
unit direction as ``m + t k`` with ``|df(0) m| = 1`` and ``k`` spanning the
kernel gives ``P(t) = A + 2t B + t^2 C``.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .boundary import _Context
from .errors import HypothesisFailed, NotCase1, NotDefined, NumericalFailure, WrongRank
from .jets import TAU_ZERO
from .surface import RANK_TOL, SurfaceGerm


class ParabolaKind(str, Enum):
    PARABOLA = "Parabola"
    LINE = "Line"
    HALF_LINE = "HalfLine"
    POINT = "Point"


@dataclass
class CurvatureParabola:
    """
    Parameters
    ----------
    basepoint : ndarray
        Vertex for Parabola, endpoint for HalfLine, a point for Line, the point itself for Point.
    direction : ndarray or None
        Axis (Parabola) or direction of the (half-)line, unit length.
    quadratic_coeff : float or None
        ``y = q x^2`` in axis coordinates, Parabola only.
    normal_plane_basis : ndarray
        Rows span N0.
    """
    kind: ParabolaKind
    basepoint: np.ndarray
    direction: np.ndarray = None
    quadratic_coeff: float = None
    normal_plane_basis: np.ndarray = None
    # P(t) = A + 2tB + t^2 C, kept for sampling
    coefficients: tuple = field(default=None, repr=False)

    def point(self, t):
        A, B, C = self.coefficients
        return A + 2 * t * B + t * t * C

    def distance_to(self, x):
        """Euclidean distance from ``x`` to the set Delta0."""
        x = np.asarray(x, dtype=float)
        A, B, C = self.coefficients
        if self.kind == ParabolaKind.POINT:
            return float(np.linalg.norm(x - A))
        # critical points of |P(t) - x|^2, a cubic in t
        d = A - x
        poly = [2 * C @ C, 6 * B @ C, 4 * B @ B + 2 * d @ C, 2 * d @ B]
        roots = np.roots(np.trim_zeros(poly, "f")) if np.any(poly) else np.array([])
        ts = [r.real for r in roots if abs(r.imag) < 1e-7 * max(1.0, abs(r))]
        if not ts:
            ts = [0.0]
        return float(min(np.linalg.norm(self.point(t) - x) for t in ts))

    def to_dict(self):
        out = {"kind": self.kind.value, "basepoint": [float(x) for x in self.basepoint]}
        if self.direction is not None:
            out["direction"] = [float(x) for x in self.direction]
        if self.quadratic_coeff is not None:
            out["quadratic_coeff"] = float(self.quadratic_coeff)
        out["normal_plane_basis"] = [[float(x) for x in row] for row in self.normal_plane_basis]
        return out


def _second_order(f: SurfaceGerm):
    fuu = np.array([2 * c.coeff(2, 0) for c in f.components])
    fuv = np.array([c.coeff(1, 1) for c in f.components])
    fvv = np.array([2 * c.coeff(0, 2) for c in f.components])
    return fuu, fuv, fvv


def _rank_one_frame(f: SurfaceGerm, tol=RANK_TOL):
    """(e, m, k): unit image direction, source vector with |df m| = 1, unit kernel vector."""
    J = f.jacobian()
    U, S, Vt = np.linalg.svd(J)
    scale = max(1.0, S[0])
    rank = int(np.sum(S > tol * scale))
    if rank != 1:
        raise WrongRank(f"rank df(0) = {rank}, expected 1")
    return U[:, 0], Vt[0] / S[0], Vt[1]


def _plane_basis(e, direction=None):
    if direction is None:
        # any vector not parallel to e
        trial = np.eye(3)[np.argmin(np.abs(e))]
        direction = trial - (trial @ e) * e
    n1 = direction / np.linalg.norm(direction)
    return np.array([n1, np.cross(e, n1)])


def curvature_parabola(f: SurfaceGerm, tol=TAU_ZERO) -> CurvatureParabola:
    """
    Classify and parametrize Delta0.

    Raises
    ------
    WrongRank
        rank df(0) is 0 or 2.
    """
    e, m, k = _rank_one_frame(f)
    fuu, fuv, fvv = _second_order(f)
    proj = np.eye(3) - np.outer(e, e)

    def hess(x, y):
        return proj @ (x[0] * y[0] * fuu + (x[0] * y[1] + x[1] * y[0]) * fuv + x[1] * y[1] * fvv)

    A, B, C = hess(m, m), hess(m, k), hess(k, k)
    nb, nc = np.linalg.norm(B), np.linalg.norm(C)
    coeffs = (A, B, C)
    if nc <= tol and nb <= tol:
        return CurvatureParabola(ParabolaKind.POINT, A, None, None, _plane_basis(e), coeffs)
    if nc <= tol:
        d = B / nb
        # closest point of the line to the origin as basepoint
        base = A - (A @ d) * d
        return CurvatureParabola(ParabolaKind.LINE, base, d, None, _plane_basis(e, d), coeffs)
    axis = C / nc
    b_perp = B - (B @ axis) * axis
    if np.linalg.norm(b_perp) <= tol * max(1.0, nb):
        lam = B @ C / (nc * nc)
        return CurvatureParabola(ParabolaKind.HALF_LINE, A - lam * lam * C, axis, None,
                                 _plane_basis(e, axis), coeffs)
    t_star = -(B @ C) / (nc * nc)
    vertex = A + 2 * t_star * B + t_star ** 2 * C
    q = nc / (4 * (b_perp @ b_perp))
    return CurvatureParabola(ParabolaKind.PARABOLA, vertex, axis, q, _plane_basis(e, axis), coeffs)


def umbilic_curvature(p: CurvatureParabola) -> float:
    """Distance from the origin to the line carrying Delta0 (or to the point)."""
    if p.kind == ParabolaKind.PARABOLA:
        raise NotDefined("umbilic curvature needs a degenerate curvature parabola")
    x = p.basepoint
    if p.kind == ParabolaKind.POINT:
        return float(np.linalg.norm(x))
    d = p.direction
    return float(np.linalg.norm(x - (x @ d) * d))


def principal_normal(f: SurfaceGerm, b):
    """Unit principal normal of the boundary image at 0."""
    ctx = _Context(f, b)
    d1 = np.array([c.coeff(1) for c in ctx.bhat])
    d2 = np.array([2 * c.coeff(2) for c in ctx.bhat])
    n = d2 - (d2 @ d1) / (d1 @ d1) * d1
    norm = np.linalg.norm(n)
    if norm <= TAU_ZERO:
        raise NotDefined("boundary image has zero curvature at 0")
    return n / norm


def vertex_and_intersection(f: SurfaceGerm, b, tol=TAU_ZERO):
    """
    Vertex V of Delta0, the point P where the principal normal line of the
    boundary image meets the line of Delta0, and |V - P|.

    Raises
    ------
    NotCase1
    HypothesisFailed
        The line of Delta0 passes through 0 (zero limiting normal curvature).
    NumericalFailure
        The two lines are parallel.
    """
    if _Context(f, b).classify().kind != "Case1":
        raise NotCase1("boundary is tangent to the null direction")
    p = curvature_parabola(f)
    if p.kind not in (ParabolaKind.HALF_LINE, ParabolaKind.LINE):
        raise HypothesisFailed(f"curvature parabola is a {p.kind.value}")
    if umbilic_curvature(p) <= tol:
        raise HypothesisFailed("limiting normal curvature vanishes")
    V = p.basepoint
    D = p.direction
    n = principal_normal(f, b)
    if np.linalg.norm(np.cross(n, D)) <= tol:
        raise NumericalFailure("principal normal is parallel to the curvature line")
    # s n = V + r D
    M = np.column_stack([n, -D])
    (s, r), *_ = np.linalg.lstsq(M, V, rcond=None)
    P = s * n
    return V, P, float(np.linalg.norm(V - P))


def parabola_svg(p: CurvatureParabola, V=None, P=None, normal=None, size=400, span=None):
    """SVG picture of Delta0 in the normal plane, with optional V, P and the normal line."""
    basis = p.normal_plane_basis
    pts = [np.zeros(2), basis @ p.basepoint]
    if V is not None:
        pts.append(basis @ V)
    if P is not None:
        pts.append(basis @ P)
    if span is None:
        span = max(1.0, 1.5 * max(np.abs(q).max() for q in pts))
    scale = size / (2 * span)

    def xy(q):
        return size / 2 + scale * q[0], size / 2 - scale * q[1]

    def path(points):
        coords = [xy(basis @ q) for q in points]
        return "M " + " L ".join(f"{x:.3f} {y:.3f}" for x, y in coords)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<line x1="0" y1="{size / 2}" x2="{size}" y2="{size / 2}" stroke="#bbb"/>',
           f'<line x1="{size / 2}" y1="0" x2="{size / 2}" y2="{size}" stroke="#bbb"/>']
    if p.kind == ParabolaKind.POINT:
        x, y = xy(basis @ p.basepoint)
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="4" fill="black"/>')
    else:
        if p.kind == ParabolaKind.PARABOLA:
            A, B, C = p.coefficients
            ts = np.linspace(-1, 1, 201) * math.sqrt(2 * span / max(np.linalg.norm(C), 1e-12))
            t0 = -(B @ C) / (C @ C)
            curve = [p.point(t0 + t) for t in ts]
        elif p.kind == ParabolaKind.HALF_LINE:
            curve = [p.basepoint, p.basepoint + 3 * span * p.direction]
        else:
            curve = [p.basepoint - 3 * span * p.direction, p.basepoint + 3 * span * p.direction]
        out.append(f'<path d="{path(curve)}" fill="none" stroke="black" stroke-width="2"/>')
    if normal is not None:
        out.append(f'<path d="{path([-3 * span * normal, 3 * span * normal])}" '
                   f'stroke="#36c" stroke-dasharray="6 4"/>')
    for label, q in (("V", V), ("P", P)):
        if q is not None:
            x, y = xy(basis @ q)
            out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="4" fill="#c33"/>')
            out.append(f'<text x="{x + 6:.3f}" y="{y - 6:.3f}" font-size="14">{label}</text>')
    x, y = xy(np.zeros(3))
    out.append(f'<text x="{x + 4:.3f}" y="{y + 16:.3f}" font-size="12">0</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
