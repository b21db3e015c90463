"""
Moving-frame ODE integration shared by curve reconstruction and ruled surfaces.

Both problems have the shape

    A'(t) = A(t) @ Omega(t),    x'(t) = A(t) @ w(t),

with ``Omega`` skew-symmetric.  We integrate with classical RK4 and project
``A`` back onto SO(3) after every step (nearest orthogonal matrix via the
polar decomposition), which keeps frame drift at round-off level.
"""

import numpy as np

from .errors import NumericalFailure


def skew(a, b, c):
    """Skew matrix with (1,0)=a, (2,1)=b, (0,2)=c."""
    return np.array([[0.0, -a, c],
                     [a, 0.0, -b],
                     [-c, b, 0.0]])


def nearest_rotation(A):
    U, _, Vt = np.linalg.svd(A)
    R = U @ Vt
    if np.linalg.det(R) < 0:
        U[:, -1] *= -1
        R = U @ Vt
    return R


def _rk4_step(t, A, x, h, omega, velocity):
    def rhs(tt, AA):
        return AA @ omega(tt), AA @ velocity(tt)

    k1A, k1x = rhs(t, A)
    k2A, k2x = rhs(t + h / 2, A + h / 2 * k1A)
    k3A, k3x = rhs(t + h / 2, A + h / 2 * k2A)
    k4A, k4x = rhs(t + h, A + h * k3A)
    A_new = A + h / 6 * (k1A + 2 * k2A + 2 * k3A + k4A)
    x_new = x + h / 6 * (k1x + 2 * k2x + 2 * k3x + k4x)
    return A_new, x_new


def integrate_frame(ts, t0, A0, omega, velocity=None, x0=None, drift_limit=1e-3):
    """
    Integrate a frame ODE from ``t0`` over the sorted grid ``ts``.

    Parameters
    ----------
    ts : array_like
        Sorted output times.  ``t0`` need not be a grid node; the first step
        on each side is shortened to land on the grid.
    t0 : float
        Time of the initial condition.
    A0 : (3, 3) array
        Initial frame, columns are the frame vectors.
    omega : callable
        ``omega(t)`` returns the skew 3x3 generator.
    velocity : callable, optional
        ``velocity(t)`` returns frame coordinates of ``x'``.  Defaults to 0.
    x0 : (3,) array, optional
        Initial position, default origin.

    Returns
    -------
    frames : (n, 3, 3) array
    points : (n, 3) array
    """
    ts = np.asarray(ts, dtype=float)
    if velocity is None:
        velocity = lambda t: np.zeros(3)
    A0 = np.asarray(A0, dtype=float)
    x0 = np.zeros(3) if x0 is None else np.asarray(x0, dtype=float)
    n = len(ts)
    frames = np.empty((n, 3, 3))
    points = np.empty((n, 3))
    right = np.searchsorted(ts, t0, side="left")
    for idx, direction in ((range(right, n), 1), (range(right - 1, -1, -1), -1)):
        A, x, t = A0.copy(), x0.copy(), t0
        for i in idx:
            h = ts[i] - t
            if h != 0.0:
                A, x = _rk4_step(t, A, x, h, omega, velocity)
                drift = np.max(np.abs(A.T @ A - np.eye(3)))
                if not np.isfinite(drift) or drift > drift_limit:
                    raise NumericalFailure(f"frame drift {drift:.3g} at t={ts[i]:.6g}; reduce the step size")
                A = nearest_rotation(A)
                t = ts[i]
            frames[i] = A
            points[i] = x
    return frames, points
