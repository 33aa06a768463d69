"""Forward geodesic Radon transforms and the spherical-mean families."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import sphere_area
from .fields import ScalarField
from .geometry import (EUCLIDEAN, SPHERE, Geodesic, Point, Space,
                       base_point, lorentz_dot, transport_to)
from .numerics import gl_nodes, sphere_rule

__all__ = [
    "MeanProfile",
    "radon_forward",
    "spherical_mean",
    "tilde_mean",
    "mean_profile",
]


@dataclass
class MeanProfile:
    space: Space
    center: Point
    grid: np.ndarray
    values: np.ndarray
    variant: str  # "plain" | "tilde"


def _direction_rule(space: Space, polar_nodes: int, azimuth_nodes: int | None):
    return sphere_rule(space.n - 1, polar_nodes, azimuth_nodes)


def spherical_mean(space: Space, f: ScalarField, x: Point, t,
                   polar_nodes: int = 64, azimuth_nodes: int | None = None):
    """Normalized mean of f over the geodesic sphere / planar section at t.

    Euclidean: average of f(x + t theta) over directions (t >= 0).
    Sphere: mean over the section {x . y = t}, -1 < t <= 1.
    Hyperbolic: mean over {[x, y] = t}, t >= 1. The t = 1 (sphere/hyperbolic)
    endpoint is the degenerate section {x}, where the mean is f(x).
    Vectorized over a 1-d array of t values.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    scalar_in = np.ndim(t) == 0
    dirs, w = _direction_rule(space, polar_nodes, azimuth_nodes)
    area = sphere_area(space.n - 1)
    if space.kind == EUCLIDEAN:
        if np.any(t_arr < 0.0):
            raise ValueError("euclidean mean requires t >= 0")
        pts = x.coords[None, None, :] + t_arr[:, None, None] * dirs[None, :, :]
        vals = f(pts) @ w / area
    else:
        if space.kind == SPHERE:
            if np.any(t_arr <= -1.0) or np.any(t_arr > 1.0):
                raise ValueError("sphere mean requires -1 < t <= 1")
            s = np.sqrt(np.maximum(0.0, 1.0 - t_arr * t_arr))
        else:
            if np.any(t_arr < 1.0):
                raise ValueError("hyperbolic mean requires t >= 1")
            s = np.sqrt(np.maximum(0.0, t_arr * t_arr - 1.0))
        rx = transport_to(space, x)
        local = np.empty((t_arr.size, dirs.shape[0], space.n + 1))
        local[:, :, :space.n] = s[:, None, None] * dirs[None, :, :]
        local[:, :, space.n] = t_arr[:, None]
        vals = f(local @ rx.T) @ w / area
    return float(vals[0]) if scalar_in else vals


def tilde_mean(space: Space, f: ScalarField, x: Point, t,
               polar_nodes: int = 64, azimuth_nodes: int | None = None):
    """Reparameterized means with t -> 0 limit f(x) in all three spaces."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    scalar_in = np.ndim(t) == 0
    if space.kind == EUCLIDEAN:
        out = spherical_mean(space, f, x, t_arr, polar_nodes, azimuth_nodes)
    elif space.kind == SPHERE:
        if np.any(t_arr < 0.0) or np.any(t_arr >= 1.0):
            raise ValueError("sphere tilde mean requires 0 <= t < 1")
        base = spherical_mean(space, f, x, np.sqrt(1.0 - t_arr * t_arr),
                              polar_nodes, azimuth_nodes)
        out = base / np.sqrt(1.0 - t_arr * t_arr)
    else:
        if np.any(t_arr < 0.0):
            raise ValueError("hyperbolic tilde mean requires t >= 0")
        base = spherical_mean(space, f, x, np.sqrt(1.0 + t_arr * t_arr),
                              polar_nodes, azimuth_nodes)
        out = base / np.sqrt(1.0 + t_arr * t_arr)
    return float(out[0]) if scalar_in else out


def mean_profile(space: Space, f: ScalarField, x: Point, grid,
                 variant: str = "plain", polar_nodes: int = 64,
                 azimuth_nodes: int | None = None) -> MeanProfile:
    grid = np.asarray(grid, dtype=float)
    if grid.size and np.any(np.diff(grid) <= 0.0):
        raise ValueError("grid must be strictly increasing")
    if variant == "plain":
        vals = spherical_mean(space, f, x, grid, polar_nodes, azimuth_nodes) \
            if grid.size else np.empty(0)
    elif variant == "tilde":
        vals = tilde_mean(space, f, x, grid, polar_nodes, azimuth_nodes) \
            if grid.size else np.empty(0)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return MeanProfile(space=space, center=x, grid=grid,
                       values=np.atleast_1d(vals), variant=variant)


def _euclidean_forward(space: Space, f: ScalarField, xi: Geodesic,
                       nodes: int) -> float:
    if not math.isfinite(f.decay_scale):
        raise ValueError("non-integrable field: no finite decay radius")
    b, u = xi.basis, xi.offset
    k = space.k
    center = f.center if f.center is not None else np.zeros(space.n)
    s0 = b.T @ (center - u)
    half = f.decay_scale + 0.5
    grids = []
    wgts = []
    for i in range(k):
        xs, ws = gl_nodes(s0[i] - half, s0[i] + half, nodes, panels=2)
        grids.append(xs)
        wgts.append(ws)
    mesh = np.meshgrid(*grids, indexing="ij")
    coords = np.stack([m.ravel() for m in mesh], axis=-1)
    pts = u[None, :] + coords @ b.T
    vals = f(pts)
    wmesh = np.meshgrid(*wgts, indexing="ij")
    wprod = np.ones_like(wmesh[0])
    for wm in wmesh:
        wprod = wprod * wm
    # truncation-tail estimate: the integrand on the box boundary must be
    # negligible or the decay assumption is violated
    shape = tuple(g.size for g in grids)
    grid_vals = vals.reshape(shape)
    boundary = 0.0
    for axis in range(k):
        boundary = max(boundary,
                       float(np.max(np.abs(np.take(grid_vals, 0, axis=axis)))),
                       float(np.max(np.abs(np.take(grid_vals, -1, axis=axis)))))
    if boundary * (2.0 * half) ** max(k - 1, 0) * 2 * k > 1e-8:
        raise ValueError("truncation tail too large; field decays too slowly")
    return float(np.dot(wprod.ravel(), vals))


def _sphere_forward(space: Space, f: ScalarField, xi: Geodesic,
                    nodes: int) -> float:
    z, w = sphere_rule(space.k, nodes, 2 * nodes)
    return float(np.dot(w, f(z @ xi.basis.T)))


def _hyperbolic_frame(space: Space, xi: Geodesic, anchor: np.ndarray):
    # re-anchor the stored basis at the point of xi nearest to `anchor`:
    # a timelike unit vector plus k spacelike ones, Lorentz-orthogonal
    b = xi.basis
    k = space.k
    comp = np.array([lorentz_dot(b[:, i], anchor) for i in range(k + 1)])
    proj = b[:, k] * comp[k] - b[:, :k] @ comp[:k]
    q = float(lorentz_dot(proj, proj))
    if q < 1.0 - 1e-10:
        raise ValueError("degenerate projection onto the geodesic subspace")
    p = proj / math.sqrt(max(1.0, q))
    d0 = math.acosh(max(1.0, math.sqrt(max(1.0, q))))
    vs = []
    for i in range(k):
        v = b[:, i] - lorentz_dot(b[:, i], p) * p
        for prev in vs:
            v = v + lorentz_dot(v, prev) * prev
        norm = math.sqrt(max(0.0, -lorentz_dot(v, v)))
        vs.append(v / norm)
    return p, np.column_stack(vs), d0


def _hyperbolic_forward(space: Space, f: ScalarField, xi: Geodesic,
                        nodes: int) -> float:
    if not math.isfinite(f.decay_scale):
        raise ValueError("non-integrable field: no finite decay radius")
    k = space.k
    anchor = f.center if f.center is not None else base_point(space).coords
    p, vs, d0 = _hyperbolic_frame(space, xi, anchor)
    dmax = f.decay_scale + d0 + 0.5
    deltas, wd = gl_nodes(0.0, dmax, nodes, panels=3)
    dirs, wo = sphere_rule(k - 1, nodes, 2 * nodes)
    # y = cosh(delta) p + sinh(delta) (dirs . vs), volume sinh^(k-1)
    pts = (np.cosh(deltas)[:, None, None] * p[None, None, :]
           + np.sinh(deltas)[:, None, None] * (dirs @ vs.T)[None, :, :])
    vals = f(pts)
    radial = wd * np.sinh(deltas) ** (k - 1)
    return float(radial @ vals @ wo)


def radon_forward(space: Space, f: ScalarField, xi: Geodesic,
                  nodes: int = 96) -> float:
    """Integral of f over the geodesic submanifold with its canonical measure:
    Lebesgue on the k-plane, Lebesgue on the great k-sphere, invariant
    (hyperbolic volume) measure on the geodesic H^k."""
    if space.kind == EUCLIDEAN:
        return _euclidean_forward(space, f, xi, nodes)
    if space.kind == SPHERE:
        return _sphere_forward(space, f, xi, nodes)
    return _hyperbolic_forward(space, f, xi, nodes)
