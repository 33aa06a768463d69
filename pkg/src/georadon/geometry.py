"""The three constant-curvature models: points, totally geodesic submanifolds,
distances, and rotation-based constructions.

Euclidean R^n uses ambient dimension n; the sphere S^n and hyperbolic H^n live
in R^(n+1), the latter as the upper hyperboloid sheet of the Lorentz form
[x, y] = -x_1 y_1 - ... - x_n y_n + x_{n+1} y_{n+1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EUCLIDEAN",
    "SPHERE",
    "HYPERBOLIC",
    "Space",
    "Point",
    "Geodesic",
    "Rotation",
    "lorentz_dot",
    "point",
    "geodesic",
    "base_point",
    "distance_rho",
    "haar_orthogonal",
    "haar_rotation",
    "g_theta",
    "transport_to",
    "geodesic_at_distance",
    "rotate_point",
    "rotate_geodesic",
]

EUCLIDEAN = "euclidean"
SPHERE = "sphere"
HYPERBOLIC = "hyperbolic"
_KINDS = (EUCLIDEAN, SPHERE, HYPERBOLIC)

# inputs violating a model constraint beyond this are rejected, not renormalized
_VALIDATE_TOL = 1e-8


@dataclass(frozen=True)
class Space:
    """Constant-curvature model: curvature sign, ambient n, submanifold dim k."""

    kind: str
    n: int
    k: int

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.n < 2:
            raise ValueError("ambient dimension n must be >= 2")
        if not 1 <= self.k <= self.n - 1:
            raise ValueError("submanifold dimension k must satisfy 1 <= k <= n-1")

    @property
    def ambient_dim(self) -> int:
        return self.n if self.kind == EUCLIDEAN else self.n + 1

    @property
    def is_euclidean(self) -> bool:
        return self.kind == EUCLIDEAN

    @property
    def is_sphere(self) -> bool:
        return self.kind == SPHERE

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind == HYPERBOLIC


@dataclass(frozen=True)
class Point:
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", np.asarray(self.coords, dtype=float))


@dataclass(frozen=True)
class Geodesic:
    """A totally geodesic k-submanifold.

    Euclidean: `basis` holds k orthonormal columns spanning the direction
    subspace and `offset` is the foot point in its orthogonal complement.
    Sphere: k+1 orthonormal columns spanning the cutting linear subspace.
    Hyperbolic: k+1 columns, pseudo-orthonormal for the Lorentz form with the
    timelike column last (Gram = diag(-1, ..., -1, +1)).
    """

    basis: np.ndarray
    offset: np.ndarray | None = None


@dataclass(frozen=True)
class Rotation:
    matrix: np.ndarray


def lorentz_dot(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """[x, y] along the last axis, with the +1 slot in the last coordinate."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return x[..., -1] * y[..., -1] - np.sum(x[..., :-1] * y[..., :-1], axis=-1)


def point(space: Space, coords) -> Point:
    """Validated point of the model (rejects off-model input beyond 1e-8)."""
    c = np.asarray(coords, dtype=float)
    if c.shape != (space.ambient_dim,):
        raise ValueError(
            f"point has dimension {c.shape}, expected ({space.ambient_dim},)")
    if space.is_sphere:
        err = abs(float(c @ c) - 1.0)
        if err > _VALIDATE_TOL:
            raise ValueError(f"not a unit vector: |x|^2 - 1 = {err:.3e}")
    elif space.is_hyperbolic:
        q = float(lorentz_dot(c, c))
        scale = max(1.0, float(np.max(np.abs(c))) ** 2)
        if abs(q - 1.0) > _VALIDATE_TOL * scale:
            raise ValueError(f"not on the hyperboloid: [x,x] - 1 = {q - 1.0:.3e}")
        if c[-1] <= 0.0:
            raise ValueError("hyperboloid point must lie on the upper sheet")
    return Point(c)


def base_point(space: Space) -> Point:
    """Origin of the model (0 for R^n, the last coordinate axis otherwise)."""
    c = np.zeros(space.ambient_dim)
    if not space.is_euclidean:
        c[-1] = 1.0
    return Point(c)


def _check_gram(basis: np.ndarray, target: np.ndarray, lorentz: bool, what: str):
    if lorentz:
        j = -np.ones(basis.shape[0])
        j[-1] = 1.0
        gram = basis.T @ (j[:, None] * basis)
    else:
        gram = basis.T @ basis
    err = float(np.max(np.abs(gram - target)))
    if err > _VALIDATE_TOL:
        raise ValueError(f"{what} basis fails its Gram constraint by {err:.3e}")


def geodesic(space: Space, basis, offset=None) -> Geodesic:
    """Validated geodesic submanifold from a basis (columns) and offset."""
    b = np.asarray(basis, dtype=float)
    dim = space.ambient_dim
    cols = space.k if space.is_euclidean else space.k + 1
    if b.shape != (dim, cols):
        raise ValueError(f"basis has shape {b.shape}, expected ({dim}, {cols})")
    if space.is_euclidean:
        _check_gram(b, np.eye(cols), False, "euclidean")
        if offset is None:
            raise ValueError("euclidean geodesic requires an offset")
        u = np.asarray(offset, dtype=float)
        if u.shape != (dim,):
            raise ValueError("offset dimension mismatch")
        if float(np.max(np.abs(b.T @ u), initial=0.0)) > _VALIDATE_TOL * max(
                1.0, float(np.linalg.norm(u))):
            raise ValueError("offset is not orthogonal to the direction subspace")
        return Geodesic(b, u)
    if space.is_sphere:
        _check_gram(b, np.eye(cols), False, "sphere")
        return Geodesic(b, None)
    target = -np.eye(cols)
    target[-1, -1] = 1.0
    _check_gram(b, target, True, "hyperbolic")
    return Geodesic(b, None)


def distance_rho(space: Space, x: Point, xi: Geodesic) -> float:
    """Distance function: d, sin d, or sinh d of the geodesic distance to xi."""
    c = x.coords
    if c.shape != (space.ambient_dim,):
        raise ValueError("point dimension does not match the space")
    b = xi.basis
    cols = space.k if space.is_euclidean else space.k + 1
    if b.shape != (space.ambient_dim, cols):
        raise ValueError("geodesic dimension does not match the space")
    if space.is_euclidean:
        perp = c - b @ (b.T @ c)
        return float(np.linalg.norm(perp - xi.offset))
    if space.is_sphere:
        proj = b @ (b.T @ c)
        cos_d = min(1.0, float(np.linalg.norm(proj)))
        return math.sqrt(max(0.0, 1.0 - cos_d * cos_d))
    # hyperbolic: cosh d is the Lorentz norm of the projection onto the
    # signature-(k,1) subspace; columns are pseudo-orthonormal, timelike last
    comp = lorentz_dot(np.moveaxis(b, 0, -1), c)
    q = comp[-1] ** 2 - float(np.sum(comp[:-1] ** 2))
    return math.sqrt(max(0.0, q - 1.0))


def haar_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed SO(dim) matrix (QR of a Gaussian matrix, det fixed)."""
    a = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(a)
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0.0:
        q[:, -1] = -q[:, -1]
    return q


def haar_rotation(space: Space, seed: int) -> Rotation:
    """Haar rotation on SO(n), deterministic per seed.

    For sphere/hyperbolic the SO(n) block acts on the first n coordinates
    (the stabilizer of the base point), embedded in the ambient dimension.
    """
    rng = np.random.default_rng(seed)
    return _haar_stabilizer(space, rng)


def _haar_stabilizer(space: Space, rng: np.random.Generator) -> Rotation:
    q = haar_orthogonal(space.n, rng)
    if space.is_euclidean:
        return Rotation(q)
    m = np.eye(space.n + 1)
    m[:space.n, :space.n] = q
    return Rotation(m)


def g_theta(space: Space, theta: float) -> np.ndarray:
    """The standard one-parameter family moving the base point off xi_0.

    Sphere: rotation in the (e_{k+1}, e_{n+1}) plane with matrix rows
    (sin, cos; -cos, sin). Hyperbolic: the boost in (e_1, e_{n+1}).
    """
    n = space.n
    m = np.eye(n + 1)
    if space.is_sphere:
        i = space.k
        m[i, i] = math.sin(theta)
        m[i, n] = math.cos(theta)
        m[n, i] = -math.cos(theta)
        m[n, n] = math.sin(theta)
    elif space.is_hyperbolic:
        m[0, 0] = math.cosh(theta)
        m[0, n] = math.sinh(theta)
        m[n, 0] = math.sinh(theta)
        m[n, n] = math.cosh(theta)
    else:
        raise ValueError("g_theta is defined for sphere and hyperbolic only")
    return m


def transport_to(space: Space, x: Point) -> np.ndarray:
    """Minimal isometry carrying the base point e_{n+1} to x (sphere/hyperbolic).

    Householder-style: acts only in the plane spanned by e_{n+1} and x, which
    fixes a deterministic choice among all isometries with r_x e_{n+1} = x.
    """
    n = space.n
    c = float(x.coords[n])
    w = x.coords[:n]
    s = float(np.linalg.norm(w))
    m = np.eye(n + 1)
    if space.is_sphere:
        if s < 1e-14:
            if c > 0.0:
                return m
            # antipode: rotate by pi in the (e_1, e_{n+1}) plane
            m[0, 0] = -1.0
            m[n, n] = -1.0
            return m
        wh = np.zeros(n + 1)
        wh[:n] = w / s
        e = np.zeros(n + 1)
        e[n] = 1.0
        return (np.eye(n + 1)
                + (c - 1.0) * (np.outer(wh, wh) + np.outer(e, e))
                + s * (np.outer(wh, e) - np.outer(e, wh)))
    if space.is_hyperbolic:
        if s < 1e-14:
            return m
        wh = np.zeros(n + 1)
        wh[:n] = w / s
        e = np.zeros(n + 1)
        e[n] = 1.0
        return (np.eye(n + 1)
                + (c - 1.0) * (np.outer(wh, wh) + np.outer(e, e))
                + s * (np.outer(wh, e) + np.outer(e, wh)))
    raise ValueError("transport_to is defined for sphere and hyperbolic only")


def geodesic_at_distance(space: Space, x: Point, r: float, g: Rotation) -> Geodesic:
    """Geodesic submanifold at prescribed distance value r from x.

    r is the distance function value (sin/sinh of the geodesic distance on the
    curved models). The rotation g selects the member of the distance sphere.
    """
    if r < 0.0:
        raise ValueError("r must be nonnegative")
    n, k = space.n, space.k
    if space.is_euclidean:
        gamma = g.matrix
        b = gamma[:, :k]
        p = x.coords + r * gamma[:, n - 1]
        u = p - b @ (b.T @ p)
        return Geodesic(b, u)
    if space.is_sphere:
        if r >= 1.0:
            raise ValueError("sphere requires r = sin(distance) < 1")
        theta = math.asin(r)
        m = transport_to(space, x) @ g.matrix @ g_theta(space, theta).T
        return Geodesic(m[:, :k + 1], None)
    theta = math.asinh(r)
    m = transport_to(space, x) @ g.matrix @ g_theta(space, -theta)
    return Geodesic(m[:, n - k:], None)


def rotate_point(space: Space, m: np.ndarray, x: Point) -> Point:
    return Point(m @ x.coords)


def rotate_geodesic(space: Space, m: np.ndarray, xi: Geodesic) -> Geodesic:
    if space.is_euclidean:
        return Geodesic(m @ xi.basis, m @ xi.offset)
    return Geodesic(m @ xi.basis, None)
