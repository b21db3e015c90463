"""
Truncated Taylor polynomials (jets) in one or two variables.

A jet of order ``N`` stores the Taylor coefficients of a germ at the origin
up to total degree ``N``.  Binary operations truncate to the smaller of the
two operand orders, so the order carried on a value always states how many
of its coefficients are trustworthy.

Coefficients are plain ``float64`` arrays:

* :class:`Jet1` -- ``c[k]`` is the coefficient of ``t**k``.
* :class:`Jet2` -- ``c[i, j]`` is the coefficient of ``u**i * v**j``; entries
  with ``i + j > N`` are kept at zero.
"""

import math

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import ArityError, GeometryError, NotDivisible

TAU_ZERO = 1e-9
DEFAULT_ORDER = 6


def _scale_of(c):
    return max(1.0, float(np.max(np.abs(c)))) if c.size else 1.0


class _Jet:
    nvars = 0

    __array_priority__ = 100  # make ndarray * jet defer to the jet

    @property
    def constant(self):
        return float(self.coeffs.flat[0])

    def _check(self, other):
        if isinstance(other, _Jet) and other.nvars != self.nvars:
            raise ArityError(
                f"cannot combine jets in {self.nvars} and {other.nvars} variables")

    def __add__(self, other):
        if isinstance(other, _Jet):
            self._check(other)
            n = min(self.order, other.order)
            return type(self)(self._trunc(self.coeffs, n) + self._trunc(other.coeffs, n), n)
        c = self.coeffs.copy()
        c.flat[0] += other
        return type(self)(c, self.order)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(-self.coeffs, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _Jet):
            self._check(other)
            n = min(self.order, other.order)
            return type(self)(self._mul(self._trunc(self.coeffs, n),
                                        self._trunc(other.coeffs, n), n), n)
        if isinstance(other, np.ndarray):
            return NotImplemented
        return type(self)(self.coeffs * float(other), self.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _Jet):
            return self * other.reciprocal()
        return type(self)(self.coeffs / float(other), self.order)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, k):
        if not isinstance(k, (int, np.integer)) or k < 0:
            return self.power(k)
        result = self.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self):
        return f"{type(self).__name__}(order={self.order}, coeffs={self.coeffs.tolist()})"

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot raise the order of a jet from {self.order} to {order}")
        return type(self)(self._trunc(self.coeffs, order), order)

    def pad(self, order):
        """Same polynomial, carried at a higher order with zero coefficients.

        Only meaningful when the jet is treated as an exact polynomial.
        """
        if order < self.order:
            return self.truncate(order)
        c = np.zeros((order + 1,) * self.nvars)
        c[tuple(slice(0, s) for s in self.coeffs.shape)] = self.coeffs
        return type(self)(c, order)

    def allclose(self, other, atol=1e-12):
        self._check(other)
        n = min(self.order, other.order)
        return bool(np.allclose(self._trunc(self.coeffs, n),
                                self._trunc(other.coeffs, n), rtol=0, atol=atol))

    def max_abs(self):
        return float(np.max(np.abs(self.coeffs)))

    # -- analytic functions of a jet through the Taylor series of the function
    def _apply_series(self, taylor):
        x = self - self.constant
        out = self.zero(self.order) + taylor[-1]
        for c in reversed(taylor[:-1]):
            out = out * x + c
        return out

    def power(self, p):
        """``self ** p`` for real ``p``; the constant term must be positive."""
        a0 = self.constant
        if a0 <= 0:
            raise GeometryError(f"real power of a jet needs a positive constant term, got {a0}")
        coeffs = [a0 ** p]
        for k in range(1, self.order + 1):
            coeffs.append(coeffs[-1] * (p - k + 1) / (k * a0))
        return self._apply_series(coeffs)

    def reciprocal(self):
        a0 = self.constant
        # invertibility only involves a0; large tails are legitimate after ill-conditioned shears
        if abs(a0) <= TAU_ZERO:
            raise GeometryError("reciprocal of a jet with vanishing constant term")
        coeffs = [(-1) ** k / a0 ** (k + 1) for k in range(self.order + 1)]
        return self._apply_series(coeffs)

    def sqrt(self):
        return self.power(0.5)

    def sqrt_inv(self):
        return self.power(-0.5)

    # -- serialization
    def to_dict(self):
        idx = np.argwhere(self.coeffs != 0)
        return {"vars": self.nvars, "order": self.order,
                "coeffs": [[*map(int, i), float(self.coeffs[tuple(i)])] for i in idx]}

    @staticmethod
    def from_dict(obj):
        nvars = obj["vars"]
        order = obj["order"]
        cls = Jet1 if nvars == 1 else Jet2
        c = np.zeros((order + 1,) * nvars)
        for entry in obj["coeffs"]:
            *index, value = entry
            if len(index) != nvars or sum(index) > order or min(index) < 0:
                raise ValueError(f"bad coefficient index {index} for a jet of order {order}")
            c[tuple(index)] += value
        return cls(c, order)


class Jet1(_Jet):
    """Univariate jet ``sum c[k] t**k`` for ``k <= order``."""

    nvars = 1

    def __init__(self, coeffs, order=None):
        c = np.atleast_1d(np.asarray(coeffs, dtype=float))
        if order is None:
            order = len(c) - 1
        full = np.zeros(order + 1)
        m = min(len(c), order + 1)
        full[:m] = c[:m]
        self.coeffs = full
        self.order = int(order)

    @classmethod
    def zero(cls, order=DEFAULT_ORDER):
        return cls(np.zeros(order + 1), order)

    @classmethod
    def one(cls, order=DEFAULT_ORDER):
        return cls([1.0], order)

    @classmethod
    def var(cls, order=DEFAULT_ORDER):
        return cls([0.0, 1.0], order)

    @staticmethod
    def _trunc(c, n):
        return c[:n + 1]

    @staticmethod
    def _mul(a, b, n):
        return np.convolve(a, b)[:n + 1]

    def coeff(self, k):
        return float(self.coeffs[k]) if k <= self.order else 0.0

    def derivative_at_zero(self, k):
        return math.factorial(k) * self.coeff(k)

    def __call__(self, t):
        return P.polyval(t, self.coeffs)

    def deriv(self, k=1):
        if k > self.order:
            return Jet1.zero(0)
        return Jet1(P.polyder(self.coeffs, k), self.order - k)

    def integrate(self):
        """Antiderivative vanishing at 0; the order goes up by one."""
        return Jet1(P.polyint(self.coeffs), self.order + 1)

    def compose(self, inner):
        """``self(inner)`` for a Jet1 or Jet2 ``inner`` with zero constant term."""
        if not isinstance(inner, _Jet):
            raise TypeError("inner argument must be a jet")
        if abs(inner.constant) > TAU_ZERO * _scale_of(inner.coeffs):
            raise GeometryError("composition needs an inner jet with zero constant term")
        n = min(self.order, inner.order)
        x = inner - inner.constant
        x = x.truncate(n)
        out = x.zero(n) + float(self.coeffs[n])
        for k in range(n - 1, -1, -1):
            out = out * x + float(self.coeffs[k])
        return out

    def div_exact(self, k=1, var=0, tol=TAU_ZERO):
        if var != 0:
            raise ArityError("a univariate jet only has variable 0")
        if k > self.order:
            raise NotDivisible(f"order {self.order} jet cannot be divided by t^{k}")
        low = self.coeffs[:k]
        if np.any(np.abs(low) > tol * _scale_of(self.coeffs)):
            raise NotDivisible(f"coefficients below degree {k} do not vanish: {low}")
        return Jet1(self.coeffs[k:], self.order - k)

    def mul_var(self, k=1, var=0):
        """Multiply by ``t**k``; the order goes up by ``k``."""
        return Jet1(np.concatenate([np.zeros(k), self.coeffs]), self.order + k)

    def inverse(self):
        """Compositional inverse ``g`` with ``self(g(t)) = t``."""
        c1 = self.coeff(1)
        if abs(self.constant) > TAU_ZERO or abs(c1) <= TAU_ZERO:
            raise GeometryError("series reversion needs f(0)=0 and f'(0)!=0")
        t = Jet1.var(self.order)
        g = t / c1
        for _ in range(self.order):
            g = g - (self.compose(g) - t) / c1
        return g


class Jet2(_Jet):
    """Bivariate jet ``sum c[i, j] u**i v**j`` for ``i + j <= order``."""

    nvars = 2

    def __init__(self, coeffs, order=None):
        c = np.asarray(coeffs, dtype=float)
        if c.ndim != 2:
            raise ValueError("Jet2 coefficients must be a 2-d array")
        if order is None:
            order = max(c.shape) - 1
        full = np.zeros((order + 1, order + 1))
        m0, m1 = min(c.shape[0], order + 1), min(c.shape[1], order + 1)
        full[:m0, :m1] = c[:m0, :m1]
        self.coeffs = full * _mask(order)
        self.order = int(order)

    @classmethod
    def zero(cls, order=DEFAULT_ORDER):
        return cls(np.zeros((order + 1, order + 1)), order)

    @classmethod
    def one(cls, order=DEFAULT_ORDER):
        return cls.from_terms({(0, 0): 1.0}, order)

    @classmethod
    def var(cls, index, order=DEFAULT_ORDER):
        return cls.from_terms({(1, 0) if index == 0 else (0, 1): 1.0}, order)

    @classmethod
    def from_terms(cls, terms, order=DEFAULT_ORDER):
        c = np.zeros((order + 1, order + 1))
        for (i, j), value in terms.items():
            if i + j <= order:
                c[i, j] += value
        return cls(c, order)

    @staticmethod
    def _trunc(c, n):
        return c[:n + 1, :n + 1] * _mask(n)

    @staticmethod
    def _mul(a, b, n):
        ia, ib, target = _product_index(n)
        size = (n + 1) * (n + 1)
        out = np.bincount(target, weights=a.ravel()[ia] * b.ravel()[ib], minlength=size)
        return out.reshape(n + 1, n + 1)

    def coeff(self, i, j):
        return float(self.coeffs[i, j]) if i + j <= self.order else 0.0

    def __call__(self, u, v):
        return P.polyval2d(u, v, self.coeffs)

    def partial(self, var, k=1):
        if k > self.order:
            return Jet2.zero(0)
        c = P.polyder(self.coeffs, k, axis=var)
        return Jet2(c, self.order - k)

    def restrict(self, var=1):
        """Restriction to ``{var = 0}`` as a jet in the other variable."""
        c = self.coeffs[:, 0] if var == 1 else self.coeffs[0, :]
        return Jet1(c, self.order)

    def compose(self, first, second):
        """``self(first, second)`` for two Jet1 or two Jet2 with zero constant terms."""
        if type(first) is not type(second):
            raise ArityError("both inner jets must have the same number of variables")
        for g in (first, second):
            if abs(g.constant) > TAU_ZERO * _scale_of(g.coeffs):
                raise GeometryError("composition needs inner jets with zero constant term")
        n = min(self.order, first.order, second.order)
        x = (first - first.constant).truncate(n)
        y = (second - second.constant).truncate(n)
        zero = x.zero(n)
        out = zero
        for i in range(n, -1, -1):
            row = zero + float(self.coeffs[i, n - i])
            for j in range(n - i - 1, -1, -1):
                row = row * y + float(self.coeffs[i, j])
            out = out * x + row
        return out

    def div_exact(self, k=1, var=1, tol=TAU_ZERO):
        if k > self.order:
            raise NotDivisible(f"order {self.order} jet cannot be divided by a degree-{k} monomial")
        c = self.coeffs if var == 1 else self.coeffs.T
        if np.any(np.abs(c[:, :k]) > tol * _scale_of(self.coeffs)):
            raise NotDivisible(
                f"coefficients of degree < {k} in variable {var} do not vanish")
        out = c[:, k:]
        if var == 0:
            out = out.T
        return Jet2(out, self.order - k)

    def mul_var(self, k=1, var=1):
        """Multiply by ``u**k`` (var=0) or ``v**k`` (var=1); the order goes up by ``k``."""
        n = self.order + k
        c = np.zeros((n + 1, n + 1))
        if var == 1:
            c[:self.order + 1, k:] = self.coeffs
        else:
            c[k:, :self.order + 1] = self.coeffs
        return Jet2(c, n)


def _product_index(n, _cache={}):
    # flat index pairs (a, b) whose product monomial survives truncation at n
    hit = _cache.get(n)
    if hit is None:
        i, j = np.indices((n + 1, n + 1))
        keep = (i + j <= n).ravel()
        flat = np.flatnonzero(keep)
        deg = (i + j).ravel()[flat]
        A, B = np.meshgrid(flat, flat, indexing="ij")
        ok = (deg[:, None] + deg[None, :]) <= n
        ia, ib = A[ok], B[ok]
        ti = i.ravel()[ia] + i.ravel()[ib]
        tj = j.ravel()[ia] + j.ravel()[ib]
        hit = _cache[n] = (ia, ib, ti * (n + 1) + tj)
    return hit


def _mask(n, _cache={}):
    m = _cache.get(n)
    if m is None:
        i, j = np.indices((n + 1, n + 1))
        m = _cache[n] = (i + j <= n).astype(float)
    return m


# -- functional interface ---------------------------------------------------

def jet_add(a, b):
    return a + b


def jet_mul(a, b):
    return a * b


def jet_scale(a, s):
    return a * s


def jet_compose(outer, *inner):
    return outer.compose(*inner)


def jet_div_exact(num, var, k, tol=TAU_ZERO):
    return num.div_exact(k, var=var, tol=tol)


def jet_sqrt_inv(a):
    if a.constant <= 0:
        raise GeometryError("reciprocal square root needs a positive constant term")
    return a.sqrt_inv()


# -- vector-valued helpers ---------------------------------------------------

def dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def linear_combination(matrix, jets):
    """Apply a constant matrix to a vector of jets."""
    matrix = np.asarray(matrix, dtype=float)
    out = []
    for row in matrix:
        acc = jets[0].zero(min(j.order for j in jets))
        for coef, jet in zip(row, jets):
            if coef != 0.0:
                acc = acc + jet * coef
        out.append(acc)
    return tuple(out)


def linear_part(mapping):
    """Jacobian at 0 of a pair of Jet2 (rows) or a 3-vector of Jet1 (column)."""
    if isinstance(mapping[0], Jet2):
        return np.array([[m.coeff(1, 0), m.coeff(0, 1)] for m in mapping])
    return np.array([m.coeff(1) for m in mapping])


def invert_map(mapping):
    """Inverse of a germ of diffeomorphism ``(R^2,0) -> (R^2,0)`` given as two Jet2."""
    first, second = mapping
    n = min(first.order, second.order)
    lin = linear_part(mapping)
    if abs(np.linalg.det(lin)) <= TAU_ZERO:
        raise GeometryError("map germ is not invertible (singular linear part)")
    lin_inv = np.linalg.inv(lin)
    u, v = Jet2.var(0, n), Jet2.var(1, n)
    g = linear_combination(lin_inv, (u, v))
    for _ in range(n):
        r = (first.compose(*g) - u, second.compose(*g) - v)
        corr = linear_combination(lin_inv, r)
        g = (g[0] - corr[0], g[1] - corr[1])
    return g


def apply_map(mapping, point):
    """Compose a pair of Jet2 with a pair of jets (a curve or another map)."""
    return tuple(m.compose(*point) for m in mapping)
