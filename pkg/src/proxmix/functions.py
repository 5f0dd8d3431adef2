"""Catalog of proper lsc convex functions with exact first-order oracles.

Each catalog atom knows its value, proximity operator, Legendre conjugate
and recession function in closed form.  The catalog is closed under a
small transform calculus (translation, argument/value scaling, affine and
quadratic perturbation); transforms stack with the outermost one applied
last and every oracle peels them off exactly.

All operations broadcast over batches shaped ``(..., dim)`` and act along
the last axis.  Extended values are plain floats, with ``inf`` standing
for the point being outside the domain; NaN never appears.  Indicator
membership uses an absolute boundary tolerance of 1e-9 so that projection
outputs always evaluate as feasible despite roundoff.

Function objects are immutable and all methods are pure.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DimensionError,
    ParameterError,
    ShapeError,
    UnsupportedConjugate,
)

__all__ = [
    "ConvexFunction",
    "L1Norm",
    "EuclideanNorm",
    "Quadratic",
    "Affine",
    "BallIndicator",
    "SubspaceIndicator",
    "BallDistance",
    "BallSupport",
    "SeparableSum",
    "MoreauEnvelopeFunction",
    "OracleFunction",
    "quadratic_kernel",
    "conjugate_function",
    "function_from_spec",
    "function_to_spec",
]

#: absolute slack for indicator-set membership
BOUNDARY_TOL = 1e-9


def _norm(x):
    return np.linalg.norm(x, axis=-1)


def _dot(a, b):
    return np.sum(a * b, axis=-1)


def _scalarize(values):
    """0-d arrays become Python floats, batches stay arrays."""
    arr = np.asarray(values, dtype=float)
    return float(arr) if arr.ndim == 0 else arr


class ConvexFunction:
    """Base class: a function in the catalog, possibly transformed.

    Subclasses implement ``__call__``, ``prox``, ``conjugate``,
    ``recession``, ``lipschitz_bound``, ``domain_contains`` and
    ``has_full_domain``.
    """

    dim = None  # type: int

    # -- contract -----------------------------------------------------
    def __call__(self, x):
        raise NotImplementedError

    def prox(self, gamma, x):
        """Unique minimizer of ``f(y) + ||x - y||^2 / (2 gamma)``."""
        raise NotImplementedError

    def conjugate(self, s):
        """Closed-form value of the Legendre conjugate at ``s``."""
        raise NotImplementedError

    def recession(self, x):
        """Asymptotic slope function evaluated at ``x``."""
        raise NotImplementedError

    def lipschitz_bound(self):
        """A global Lipschitz constant, or None when there is none."""
        return None

    def domain_contains(self, x, tol=BOUNDARY_TOL):
        """Whether ``x`` lies in the domain, with slack for indicators."""
        vals = np.asarray(self(x))
        return _scalarize(np.isfinite(vals)) if vals.ndim else bool(np.isfinite(vals))

    def has_full_domain(self):
        """True when the function is finite everywhere."""
        raise NotImplementedError

    # -- derived operations -------------------------------------------
    def prox_conjugate(self, gamma, x):
        """Prox of ``gamma * f*`` without building the conjugate.

        Moreau decomposition: ``prox_{g f*}(x) = x - g prox_{f/g}(x/g)``
        where ``prox_{f/g}`` is the prox of ``f`` with parameter ``1/g``.
        """
        _check_gamma(gamma)
        x = np.asarray(x, dtype=float)
        return x - gamma * self.prox(1.0 / gamma, x / gamma)

    # -- transform builders --------------------------------------------
    def translate(self, w):
        """``y -> f(y - w)``."""
        return TranslatedFunction(self, w)

    def scale_arg(self, rho):
        """``y -> f(rho y)``."""
        return ArgScaledFunction(self, rho)

    def scale_val(self, rho):
        """``y -> rho f(y)``."""
        return ValueScaledFunction(self, rho)

    def add_affine(self, u, alpha=0.0):
        """``y -> f(y) + <y, u> + alpha``."""
        return AffineAddedFunction(self, u, alpha)

    def add_quad(self, rho):
        """``y -> f(y) + rho ||y||^2 / 2`` with rho >= 0."""
        return QuadAddedFunction(self, rho)

    # -- helpers --------------------------------------------------------
    def _check_point(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[-1:] != (self.dim,):
            raise DimensionError(
                f"function expects dimension {self.dim}, got shape {x.shape}"
            )
        return x

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"


def _check_gamma(gamma):
    if not gamma > 0:
        raise ParameterError(f"prox parameter must be positive, got {gamma}")


def _check_rho(rho):
    if not rho > 0:
        raise ParameterError(f"scaling factor must be positive, got {rho}")


# ---------------------------------------------------------------------------
# atoms
# ---------------------------------------------------------------------------


class L1Norm(ConvexFunction):
    """``x -> sum_i |x_i|``; prox is the soft threshold."""

    def __init__(self, dim):
        self.dim = int(dim)

    def __call__(self, x):
        x = self._check_point(x)
        return _scalarize(np.sum(np.abs(x), axis=-1))

    def prox(self, gamma, x):
        _check_gamma(gamma)
        x = self._check_point(x)
        return np.sign(x) * np.maximum(np.abs(x) - gamma, 0.0)

    def conjugate(self, s):
        s = self._check_point(s)
        slack = BOUNDARY_TOL * (1.0 + _norm(s))
        inside = np.max(np.abs(s), axis=-1) <= 1.0 + slack
        return _scalarize(np.where(inside, 0.0, np.inf))

    def recession(self, x):
        return self(x)

    def lipschitz_bound(self):
        # Euclidean-norm constant of the l1 norm.
        return float(np.sqrt(self.dim))

    def has_full_domain(self):
        return True


class EuclideanNorm(ConvexFunction):
    """``x -> ||x||``; prox is the block soft threshold."""

    def __init__(self, dim):
        self.dim = int(dim)

    def __call__(self, x):
        x = self._check_point(x)
        return _scalarize(_norm(x))

    def prox(self, gamma, x):
        _check_gamma(gamma)
        x = self._check_point(x)
        nx = _norm(x)[..., None]
        factor = np.where(nx > gamma, 1.0 - gamma / np.where(nx > 0, nx, 1.0), 0.0)
        return factor * x

    def conjugate(self, s):
        s = self._check_point(s)
        inside = _norm(s) <= 1.0 + BOUNDARY_TOL * (1.0 + _norm(s))
        return _scalarize(np.where(inside, 0.0, np.inf))

    def recession(self, x):
        return self(x)

    def lipschitz_bound(self):
        return 1.0

    def has_full_domain(self):
        return True


class Quadratic(ConvexFunction):
    """``x -> <x, A x> / 2`` for a symmetric PSD matrix ``A``.

    The conjugate lives on the range of ``A`` and is the quadratic form of
    the generalized inverse there; the recession function indicates the
    kernel.
    """

    def __init__(self, matrix, psd_tol=1e-10):
        a = np.array(matrix, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ShapeError("quadratic form needs a square matrix")
        scale = float(np.abs(a).max()) or 1.0
        if float(np.abs(a - a.T).max()) > 1e-8 * scale:
            raise ShapeError("quadratic form matrix must be symmetric")
        a = 0.5 * (a + a.T)
        eigvals, eigvecs = np.linalg.eigh(a)
        top = float(eigvals.max(initial=0.0))
        if eigvals.min(initial=0.0) < -100 * psd_tol * max(top, 1.0):
            raise ShapeError("quadratic form matrix must be PSD")
        eigvals = np.maximum(eigvals, 0.0)
        a.setflags(write=False)
        self.dim = a.shape[0]
        self.matrix = a
        self._eigvals = eigvals
        self._eigvecs = eigvecs
        self._range_mask = eigvals > psd_tol * max(top, 1e-300)

    def __call__(self, x):
        x = self._check_point(x)
        return _scalarize(0.5 * _dot(x, x @ self.matrix))

    def prox(self, gamma, x):
        _check_gamma(gamma)
        x = self._check_point(x)
        coef = x @ self._eigvecs
        coef = coef / (1.0 + gamma * self._eigvals)
        return coef @ self._eigvecs.T

    def conjugate(self, s):
        s = self._check_point(s)
        coef = s @ self._eigvecs
        null = coef[..., ~self._range_mask]
        scale = 1.0 + _norm(s)
        in_range = (
            np.max(np.abs(null), axis=-1, initial=0.0) <= BOUNDARY_TOL * scale
        )
        pos = coef[..., self._range_mask]
        vals = 0.5 * np.sum(pos * pos / self._eigvals[self._range_mask], axis=-1)
        return _scalarize(np.where(in_range, vals, np.inf))

    def recession(self, x):
        x = self._check_point(x)
        ax = x @ self.matrix
        in_kernel = _norm(ax) <= BOUNDARY_TOL * (1.0 + _norm(x))
        return _scalarize(np.where(in_kernel, 0.0, np.inf))

    def has_full_domain(self):
        return True


def quadratic_kernel(dim):
    """The quadratic kernel ``x -> ||x||^2 / 2``."""
    return Quadratic(np.eye(dim))


class Affine(ConvexFunction):
    """``x -> <x, u> + alpha``."""

    def __init__(self, u, alpha=0.0):
        self.u = np.array(u, dtype=float)
        self.u.setflags(write=False)
        self.alpha = float(alpha)
        self.dim = self.u.shape[0]

    def __call__(self, x):
        x = self._check_point(x)
        return _scalarize(_dot(x, self.u) + self.alpha)

    def prox(self, gamma, x):
        _check_gamma(gamma)
        x = self._check_point(x)
        return x - gamma * self.u

    def conjugate(self, s):
        s = self._check_point(s)
        hit = _norm(s - self.u) <= BOUNDARY_TOL * (1.0 + _norm(self.u) + _norm(s))
        return _scalarize(np.where(hit, -self.alpha, np.inf))

    def recession(self, x):
        x = self._check_point(x)
        return _scalarize(_dot(x, self.u))

    def lipschitz_bound(self):
        return float(np.linalg.norm(self.u))

    def has_full_domain(self):
        return True


class BallIndicator(ConvexFunction):
    """Indicator of the closed ball ``B(center, radius)``."""

    def __init__(self, center, radius):
        if radius < 0:
            raise ParameterError("ball radius must be nonnegative")
        self.center = np.array(center, dtype=float)
        self.center.setflags(write=False)
        self.radius = float(radius)
        self.dim = self.center.shape[0]

    def _project(self, x):
        d = x - self.center
        nd = _norm(d)[..., None]
        factor = np.where(nd > self.radius, self.radius / np.where(nd > 0, nd, 1.0), 1.0)
        return self.center + factor * d

    def __call__(self, x):
        x = self._check_point(x)
        gap = _norm(x - self.center)
        inside = gap <= self.radius + BOUNDARY_TOL * (1.0 + _norm(x))
        return _scalarize(np.where(inside, 0.0, np.inf))

    def prox(self, gamma, x):
        _check_gamma(gamma)
        return self._project(self._check_point(x))

    def conjugate(self, s):
        s = self._check_point(s)
        return _scalarize(_dot(s, self.center) + self.radius * _norm(s))

    def recession(self, x):
        x = self._check_point(x)
        at_zero = _norm(x) <= BOUNDARY_TOL
        return _scalarize(np.where(at_zero, 0.0, np.inf))

    def domain_contains(self, x, tol=BOUNDARY_TOL):
        x = self._check_point(x)
        return _scalarize(_norm(x - self.center) <= self.radius + tol)

    def has_full_domain(self):
        return False


class SubspaceIndicator(ConvexFunction):
    """Indicator of the span of orthonormal basis columns."""

    def __init__(self, basis):
        b = np.array(basis, dtype=float)
        if b.ndim != 2:
            raise ShapeError("basis must be a (dim, k) array of columns")
        gram = b.T @ b
        if float(np.abs(gram - np.eye(b.shape[1])).max()) > 1e-10:
            raise ShapeError("basis columns must be orthonormal")
        b.setflags(write=False)
        self.basis = b
        self.dim = b.shape[0]

    def _project(self, x):
        return (x @ self.basis) @ self.basis.T

    def __call__(self, x):
        x = self._check_point(x)
        dist = _norm(x - self._project(x))
        inside = dist <= BOUNDARY_TOL * (1.0 + _norm(x))
        return _scalarize(np.where(inside, 0.0, np.inf))

    def prox(self, gamma, x):
        _check_gamma(gamma)
        return self._project(self._check_point(x))

    def conjugate(self, s):
        s = self._check_point(s)
        tangential = _norm(self._project(s))
        return _scalarize(np.where(tangential <= BOUNDARY_TOL * (1 + _norm(s)), 0.0, np.inf))

    def recession(self, x):
        return self(x)

    def domain_contains(self, x, tol=BOUNDARY_TOL):
        x = self._check_point(x)
        return _scalarize(_norm(x - self._project(x)) <= tol)

    def has_full_domain(self):
        return False


class BallDistance(ConvexFunction):
    """``x -> dist(x, B(center, radius))``; 1-Lipschitz with full domain."""

    def __init__(self, center, radius):
        if radius < 0:
            raise ParameterError("ball radius must be nonnegative")
        self.center = np.array(center, dtype=float)
        self.center.setflags(write=False)
        self.radius = float(radius)
        self.dim = self.center.shape[0]

    def _dist_and_proj(self, x):
        d = x - self.center
        nd = _norm(d)
        dist = np.maximum(nd - self.radius, 0.0)
        factor = np.where(nd > self.radius, self.radius / np.where(nd > 0, nd, 1.0), 1.0)
        proj = self.center + factor[..., None] * d
        return dist, proj

    def __call__(self, x):
        x = self._check_point(x)
        return _scalarize(self._dist_and_proj(x)[0])

    def prox(self, gamma, x):
        # Shrink toward the projection; land on it once within gamma.
        _check_gamma(gamma)
        x = self._check_point(x)
        dist, proj = self._dist_and_proj(x)
        far = dist > gamma
        safe = np.where(dist > 0, dist, 1.0)
        step = np.where(far, gamma / safe, 1.0)[..., None]
        return x + step * (proj - x)

    def conjugate(self, s):
        # Distance = norm infimal-convolved with the indicator, so the
        # conjugate is the ball support plus the unit-ball indicator.
        s = self._check_point(s)
        inside = _norm(s) <= 1.0 + BOUNDARY_TOL * (1.0 + _norm(s))
        support = _dot(s, self.center) + self.radius * _norm(s)
        return _scalarize(np.where(inside, support, np.inf))

    def recession(self, x):
        x = self._check_point(x)
        return _scalarize(_norm(x))

    def lipschitz_bound(self):
        return 1.0

    def has_full_domain(self):
        return True


class BallSupport(ConvexFunction):
    """Support function of ``B(center, radius)``: ``x -> <x,c> + r ||x||``."""

    def __init__(self, center, radius):
        if radius < 0:
            raise ParameterError("ball radius must be nonnegative")
        self.center = np.array(center, dtype=float)
        self.center.setflags(write=False)
        self.radius = float(radius)
        self.dim = self.center.shape[0]

    def __call__(self, x):
        x = self._check_point(x)
        return _scalarize(_dot(x, self.center) + self.radius * _norm(x))

    def prox(self, gamma, x):
        _check_gamma(gamma)
        x = self._check_point(x)
        shifted = x - gamma * self.center
        nx = _norm(shifted)[..., None]
        thresh = gamma * self.radius
        factor = np.where(nx > thresh, 1.0 - thresh / np.where(nx > 0, nx, 1.0), 0.0)
        return factor * shifted

    def conjugate(self, s):
        s = self._check_point(s)
        inside = _norm(s - self.center) <= self.radius + BOUNDARY_TOL * (
            1.0 + _norm(s)
        )
        return _scalarize(np.where(inside, 0.0, np.inf))

    def recession(self, x):
        return self(x)

    def lipschitz_bound(self):
        return float(np.linalg.norm(self.center)) + self.radius

    def has_full_domain(self):
        return True


class SeparableSum(ConvexFunction):
    """Weighted sum of functions acting on disjoint contiguous blocks.

    ``blocks`` is a sequence of ``(weight, fn, start)`` triples; blocks
    must tile ``0..dim`` contiguously.  Every oracle decomposes blockwise,
    e.g. the prox of the term ``w * fn`` uses parameter ``gamma * w``.
    """

    def __init__(self, blocks):
        if not blocks:
            raise ShapeError("separable sum needs at least one block")
        items = []
        offset = 0
        for weight, fn, start in sorted(blocks, key=lambda b: b[2]):
            if start != offset:
                raise ShapeError("separable blocks must tile the space contiguously")
            if not weight > 0:
                raise ParameterError("separable block weights must be positive")
            items.append((float(weight), fn, slice(start, start + fn.dim)))
            offset += fn.dim
        self.blocks = tuple(items)
        self.dim = offset

    def __call__(self, x):
        x = self._check_point(x)
        total = 0.0
        for w, fn, sl in self.blocks:
            total = total + w * np.asarray(fn(x[..., sl]))
        return _scalarize(total)

    def prox(self, gamma, x):
        _check_gamma(gamma)
        x = self._check_point(x)
        out = np.empty_like(x)
        for w, fn, sl in self.blocks:
            out[..., sl] = fn.prox(gamma * w, x[..., sl])
        return out

    def conjugate(self, s):
        s = self._check_point(s)
        total = 0.0
        for w, fn, sl in self.blocks:
            total = total + w * np.asarray(fn.conjugate(s[..., sl] / w))
        return _scalarize(total)

    def recession(self, x):
        x = self._check_point(x)
        total = 0.0
        for w, fn, sl in self.blocks:
            total = total + w * np.asarray(fn.recession(x[..., sl]))
        return _scalarize(total)

    def lipschitz_bound(self):
        parts = []
        for w, fn, _ in self.blocks:
            beta = fn.lipschitz_bound()
            if beta is None:
                return None
            parts.append((w * beta) ** 2)
        return float(np.sqrt(sum(parts)))

    def domain_contains(self, x, tol=BOUNDARY_TOL):
        x = self._check_point(x)
        ok = True
        for _, fn, sl in self.blocks:
            ok = np.logical_and(ok, fn.domain_contains(x[..., sl], tol))
        return _scalarize(ok) if np.ndim(ok) else bool(ok)

    def has_full_domain(self):
        return all(fn.has_full_domain() for _, fn, _ in self.blocks)


# ---------------------------------------------------------------------------
# transform wrappers (peeled outermost-first by every oracle)
# ---------------------------------------------------------------------------


class TranslatedFunction(ConvexFunction):
    """``x -> f(x - w)``."""

    def __init__(self, inner, w):
        self.inner = inner
        self.w = np.array(w, dtype=float)
        self.w.setflags(write=False)
        if self.w.shape[0] != inner.dim:
            raise DimensionError("translation vector dimension mismatch")
        self.dim = inner.dim

    def __call__(self, x):
        return self.inner(self._check_point(x) - self.w)

    def prox(self, gamma, x):
        x = self._check_point(x)
        return self.w + self.inner.prox(gamma, x - self.w)

    def conjugate(self, s):
        s = self._check_point(s)
        return _scalarize(np.asarray(self.inner.conjugate(s)) + _dot(s, self.w))

    def recession(self, x):
        return self.inner.recession(x)

    def lipschitz_bound(self):
        return self.inner.lipschitz_bound()

    def domain_contains(self, x, tol=BOUNDARY_TOL):
        return self.inner.domain_contains(self._check_point(x) - self.w, tol)

    def has_full_domain(self):
        return self.inner.has_full_domain()


class ArgScaledFunction(ConvexFunction):
    """``x -> f(rho x)`` with rho > 0."""

    def __init__(self, inner, rho):
        _check_rho(rho)
        self.inner = inner
        self.rho = float(rho)
        self.dim = inner.dim

    def __call__(self, x):
        return self.inner(self.rho * self._check_point(x))

    def prox(self, gamma, x):
        x = self._check_point(x)
        return self.inner.prox(gamma * self.rho**2, self.rho * x) / self.rho

    def conjugate(self, s):
        return self.inner.conjugate(self._check_point(s) / self.rho)

    def recession(self, x):
        return self.inner.recession(self.rho * self._check_point(x))

    def lipschitz_bound(self):
        beta = self.inner.lipschitz_bound()
        return None if beta is None else beta * self.rho

    def domain_contains(self, x, tol=BOUNDARY_TOL):
        return self.inner.domain_contains(self.rho * self._check_point(x), tol)

    def has_full_domain(self):
        return self.inner.has_full_domain()


class ValueScaledFunction(ConvexFunction):
    """``x -> rho f(x)`` with rho > 0."""

    def __init__(self, inner, rho):
        _check_rho(rho)
        self.inner = inner
        self.rho = float(rho)
        self.dim = inner.dim

    def __call__(self, x):
        return _scalarize(self.rho * np.asarray(self.inner(x)))

    def prox(self, gamma, x):
        return self.inner.prox(gamma * self.rho, x)

    def conjugate(self, s):
        s = self._check_point(s)
        return _scalarize(self.rho * np.asarray(self.inner.conjugate(s / self.rho)))

    def recession(self, x):
        return _scalarize(self.rho * np.asarray(self.inner.recession(x)))

    def lipschitz_bound(self):
        beta = self.inner.lipschitz_bound()
        return None if beta is None else beta * self.rho

    def domain_contains(self, x, tol=BOUNDARY_TOL):
        return self.inner.domain_contains(x, tol)

    def has_full_domain(self):
        return self.inner.has_full_domain()


class AffineAddedFunction(ConvexFunction):
    """``x -> f(x) + <x, u> + alpha``."""

    def __init__(self, inner, u, alpha=0.0):
        self.inner = inner
        self.u = np.array(u, dtype=float)
        self.u.setflags(write=False)
        if self.u.shape[0] != inner.dim:
            raise DimensionError("affine term dimension mismatch")
        self.alpha = float(alpha)
        self.dim = inner.dim

    def __call__(self, x):
        x = self._check_point(x)
        return _scalarize(np.asarray(self.inner(x)) + _dot(x, self.u) + self.alpha)

    def prox(self, gamma, x):
        _check_gamma(gamma)
        x = self._check_point(x)
        return self.inner.prox(gamma, x - gamma * self.u)

    def conjugate(self, s):
        s = self._check_point(s)
        return _scalarize(np.asarray(self.inner.conjugate(s - self.u)) - self.alpha)

    def recession(self, x):
        x = self._check_point(x)
        return _scalarize(np.asarray(self.inner.recession(x)) + _dot(x, self.u))

    def lipschitz_bound(self):
        beta = self.inner.lipschitz_bound()
        return None if beta is None else beta + float(np.linalg.norm(self.u))

    def domain_contains(self, x, tol=BOUNDARY_TOL):
        return self.inner.domain_contains(x, tol)

    def has_full_domain(self):
        return self.inner.has_full_domain()


class QuadAddedFunction(ConvexFunction):
    """``x -> f(x) + rho ||x||^2 / 2`` with rho >= 0."""

    def __init__(self, inner, rho):
        if rho < 0:
            raise ParameterError("quadratic perturbation weight must be >= 0")
        self.inner = inner
        self.rho = float(rho)
        self.dim = inner.dim

    def __call__(self, x):
        x = self._check_point(x)
        return _scalarize(
            np.asarray(self.inner(x)) + 0.5 * self.rho * _norm(x) ** 2
        )

    def prox(self, gamma, x):
        _check_gamma(gamma)
        x = self._check_point(x)
        if self.rho == 0.0:
            return self.inner.prox(gamma, x)
        shrink = 1.0 + gamma * self.rho
        return self.inner.prox(gamma / shrink, x / shrink)

    def conjugate(self, s):
        # (f + rho Q)* is the Moreau envelope of f* with index rho.
        s = self._check_point(s)
        if self.rho == 0.0:
            return self.inner.conjugate(s)
        p = self.inner.prox_conjugate(self.rho, s)
        inner_val = np.asarray(self.inner.conjugate(p))
        return _scalarize(inner_val + 0.5 / self.rho * _norm(s - p) ** 2)

    def recession(self, x):
        x = self._check_point(x)
        if self.rho == 0.0:
            return self.inner.recession(x)
        base = np.asarray(self.inner.recession(np.zeros_like(x)))
        at_zero = _norm(x) <= BOUNDARY_TOL
        return _scalarize(np.where(at_zero, base * 0.0, np.inf))

    def lipschitz_bound(self):
        return self.inner.lipschitz_bound() if self.rho == 0.0 else None

    def domain_contains(self, x, tol=BOUNDARY_TOL):
        return self.inner.domain_contains(x, tol)

    def has_full_domain(self):
        return self.inner.has_full_domain()


# ---------------------------------------------------------------------------
# derived function objects
# ---------------------------------------------------------------------------


class MoreauEnvelopeFunction(ConvexFunction):
    """The Moreau envelope of a catalog function, as a smooth function.

    Exact prox via ``prox_{g env_r f}(x) = x + g/(g+r) (prox_{(g+r)f}(x) - x)``
    and exact conjugate ``f* + r Q``.
    """

    def __init__(self, inner, index):
        _check_rho(index)
        self.inner = inner
        self.index = float(index)
        self.dim = inner.dim

    def __call__(self, x):
        x = self._check_point(x)
        p = self.inner.prox(self.index, x)
        return _scalarize(
            np.asarray(self.inner(p)) + 0.5 / self.index * _norm(x - p) ** 2
        )

    def prox(self, gamma, x):
        _check_gamma(gamma)
        x = self._check_point(x)
        p = self.inner.prox(gamma + self.index, x)
        return x + gamma / (gamma + self.index) * (p - x)

    def conjugate(self, s):
        s = self._check_point(s)
        return _scalarize(
            np.asarray(self.inner.conjugate(s)) + 0.5 * self.index * _norm(s) ** 2
        )

    def recession(self, x):
        return self.inner.recession(x)

    def lipschitz_bound(self):
        return self.inner.lipschitz_bound()

    def has_full_domain(self):
        return True


class OracleFunction(ConvexFunction):
    """A convex function given through callables.

    Used to feed numerically realized functions (for instance an already
    composed function whose prox is exact only at one parameter) back into
    the solvers.  ``prox_fn(gamma, x)`` may be restricted to a single
    parameter value via ``prox_gamma``.
    """

    def __init__(
        self,
        dim,
        value_fn,
        prox_fn=None,
        conjugate_fn=None,
        recession_fn=None,
        lipschitz=None,
        prox_gamma=None,
        full_domain=True,
    ):
        self.dim = int(dim)
        self._value_fn = value_fn
        self._prox_fn = prox_fn
        self._conjugate_fn = conjugate_fn
        self._recession_fn = recession_fn
        self._lipschitz = lipschitz
        self._prox_gamma = prox_gamma
        self._full_domain = bool(full_domain)

    def __call__(self, x):
        return _scalarize(self._value_fn(self._check_point(x)))

    def prox(self, gamma, x):
        _check_gamma(gamma)
        if self._prox_fn is None:
            raise UnsupportedConjugate("oracle function has no prox")
        if self._prox_gamma is not None and not np.isclose(
            gamma, self._prox_gamma, rtol=1e-12, atol=0.0
        ):
            raise ParameterError(
                f"oracle prox only available at parameter {self._prox_gamma}"
            )
        return self._prox_fn(gamma, self._check_point(x))

    def conjugate(self, s):
        if self._conjugate_fn is None:
            raise UnsupportedConjugate("oracle function has no closed conjugate")
        return _scalarize(self._conjugate_fn(self._check_point(s)))

    def recession(self, x):
        if self._recession_fn is None:
            raise UnsupportedConjugate("oracle function has no recession oracle")
        return _scalarize(self._recession_fn(self._check_point(x)))

    def lipschitz_bound(self):
        return self._lipschitz

    def has_full_domain(self):
        return self._full_domain


# ---------------------------------------------------------------------------
# conjugation as a catalog object
# ---------------------------------------------------------------------------


def conjugate_function(fn):
    """Build the Legendre conjugate of ``fn`` as a catalog function.

    Supported for every atom except the ball distance (whose conjugate is
    a sum of two atoms) and for singular quadratic forms; transforms map
    through the standard conjugate calculus.  Raises UnsupportedConjugate
    otherwise.
    """
    if isinstance(fn, L1Norm):
        ball = lambda: BallIndicator(np.zeros(1), 1.0)  # noqa: E731
        if fn.dim == 1:
            return ball()
        return SeparableSum([(1.0, ball(), i) for i in range(fn.dim)])
    if isinstance(fn, EuclideanNorm):
        return BallIndicator(np.zeros(fn.dim), 1.0)
    if isinstance(fn, Quadratic):
        if not bool(np.all(fn._range_mask)):
            raise UnsupportedConjugate(
                "conjugate of a singular quadratic form is not a single atom"
            )
        return Quadratic((fn._eigvecs / fn._eigvals) @ fn._eigvecs.T)
    if isinstance(fn, Affine):
        point = BallIndicator(fn.u, 0.0)
        return point if fn.alpha == 0 else point.add_affine(np.zeros(fn.dim), -fn.alpha)
    if isinstance(fn, BallIndicator):
        return BallSupport(fn.center, fn.radius)
    if isinstance(fn, BallSupport):
        return BallIndicator(fn.center, fn.radius)
    if isinstance(fn, SubspaceIndicator):
        full, _ = np.linalg.qr(
            np.concatenate([fn.basis, np.eye(fn.dim)], axis=1)
        )
        complement = full[:, fn.basis.shape[1]:]
        return SubspaceIndicator(complement)
    if isinstance(fn, SeparableSum):
        blocks = []
        for w, sub, sl in fn.blocks:
            conj = conjugate_function(sub)
            if w != 1.0:
                conj = conj.scale_arg(1.0 / w).scale_val(w)
            blocks.append((1.0, conj, sl.start))
        return SeparableSum(blocks)
    if isinstance(fn, TranslatedFunction):
        return conjugate_function(fn.inner).add_affine(fn.w)
    if isinstance(fn, ArgScaledFunction):
        return conjugate_function(fn.inner).scale_arg(1.0 / fn.rho)
    if isinstance(fn, ValueScaledFunction):
        return (
            conjugate_function(fn.inner)
            .scale_arg(1.0 / fn.rho)
            .scale_val(fn.rho)
        )
    if isinstance(fn, AffineAddedFunction):
        out = conjugate_function(fn.inner).translate(fn.u)
        if fn.alpha != 0:
            out = out.add_affine(np.zeros(fn.dim), -fn.alpha)
        return out
    if isinstance(fn, QuadAddedFunction):
        inner = conjugate_function(fn.inner)
        return inner if fn.rho == 0 else MoreauEnvelopeFunction(inner, fn.rho)
    if isinstance(fn, MoreauEnvelopeFunction):
        return conjugate_function(fn.inner).add_quad(fn.index)
    raise UnsupportedConjugate(
        f"no catalog form for the conjugate of {type(fn).__name__}"
    )


# ---------------------------------------------------------------------------
# JSON (de)serialization
# ---------------------------------------------------------------------------

_ATOM_NAMES = {
    L1Norm: "l1_norm",
    EuclideanNorm: "euclidean_norm",
    Quadratic: "quadratic",
    Affine: "affine",
    BallIndicator: "ball_indicator",
    SubspaceIndicator: "subspace_indicator",
    BallDistance: "ball_distance",
    BallSupport: "ball_support",
    SeparableSum: "separable_sum",
}

_TRANSFORM_NAMES = {
    TranslatedFunction: "translate",
    ArgScaledFunction: "scale_arg",
    ValueScaledFunction: "scale_val",
    AffineAddedFunction: "add_affine",
    QuadAddedFunction: "add_quad",
}


def function_to_spec(fn):
    """Serialize a catalog function to the JSON spec dictionary."""
    transforms = []
    while type(fn) in _TRANSFORM_NAMES:
        kind = _TRANSFORM_NAMES[type(fn)]
        if kind == "translate":
            transforms.append({"kind": kind, "w": fn.w.tolist()})
        elif kind in ("scale_arg", "scale_val"):
            transforms.append({"kind": kind, "rho": fn.rho})
        elif kind == "add_affine":
            transforms.append({"kind": kind, "u": fn.u.tolist(), "alpha": fn.alpha})
        else:
            transforms.append({"kind": kind, "rho": fn.rho})
        fn = fn.inner
    transforms.reverse()  # stored innermost-first, applied in order
    atom = _ATOM_NAMES.get(type(fn))
    if atom is None:
        raise ShapeError(f"{type(fn).__name__} has no JSON spec form")
    if atom == "l1_norm" or atom == "euclidean_norm":
        params = {"dim": fn.dim}
    elif atom == "quadratic":
        params = {"matrix": fn.matrix.tolist()}
    elif atom == "affine":
        params = {"u": fn.u.tolist(), "alpha": fn.alpha}
    elif atom in ("ball_indicator", "ball_distance", "ball_support"):
        params = {"center": fn.center.tolist(), "radius": fn.radius}
    elif atom == "subspace_indicator":
        params = {"basis": fn.basis.tolist()}
    else:
        params = {
            "blocks": [
                {"weight": w, "fn": function_to_spec(sub), "start": sl.start}
                for w, sub, sl in fn.blocks
            ]
        }
    return {"atom": atom, "params": params, "transforms": transforms}


def function_from_spec(obj):
    """Build a catalog function from its JSON spec dictionary."""
    atom = obj.get("atom")
    params = obj.get("params", {})
    if atom == "l1_norm":
        fn = L1Norm(params["dim"])
    elif atom == "euclidean_norm":
        fn = EuclideanNorm(params["dim"])
    elif atom == "quadratic":
        fn = Quadratic(params["matrix"])
    elif atom == "affine":
        fn = Affine(params["u"], params.get("alpha", 0.0))
    elif atom == "ball_indicator":
        fn = BallIndicator(params["center"], params["radius"])
    elif atom == "subspace_indicator":
        fn = SubspaceIndicator(params["basis"])
    elif atom == "ball_distance":
        fn = BallDistance(params["center"], params["radius"])
    elif atom == "ball_support":
        fn = BallSupport(params["center"], params["radius"])
    elif atom == "separable_sum":
        fn = SeparableSum(
            [
                (b["weight"], function_from_spec(b["fn"]), b["start"])
                for b in params["blocks"]
            ]
        )
    else:
        raise ShapeError(f"unknown atom name: {atom!r}")
    for t in obj.get("transforms", []):
        kind = t.get("kind")
        if kind == "translate":
            fn = fn.translate(t["w"])
        elif kind == "scale_arg":
            fn = fn.scale_arg(t["rho"])
        elif kind == "scale_val":
            fn = fn.scale_val(t["rho"])
        elif kind == "add_affine":
            fn = fn.add_affine(t["u"], t.get("alpha", 0.0))
        elif kind == "add_quad":
            fn = fn.add_quad(t["rho"])
        else:
            raise ShapeError(f"unknown transform kind: {kind!r}")
    return fn
