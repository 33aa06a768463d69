"""Quadrature rules, log-singular integration, and endpoint differentiation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "QuadRule",
    "RadialProfile",
    "gauss_legendre",
    "gl_nodes",
    "integrate_gl",
    "quad_log_singular",
    "endpoint_derivative",
    "sphere_rule",
]


@dataclass(frozen=True)
class QuadRule:
    """Gauss-Legendre nodes and weights on (-1, 1)."""

    nodes: np.ndarray
    weights: np.ndarray

    @property
    def order(self) -> int:
        return self.nodes.size


@dataclass
class RadialProfile:
    """Sampled map r -> value on an increasing grid (starting at 0 or symmetric)."""

    grid: np.ndarray
    values: np.ndarray
    meta: str = ""

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.grid.ndim != 1 or self.grid.shape != self.values.shape:
            raise ValueError("grid and values must be 1-d arrays of equal length")
        if self.grid.size >= 2 and np.any(np.diff(self.grid) <= 0.0):
            raise ValueError("profile grid must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("profile values must be finite")


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> QuadRule:
    """Standard n-point Gauss-Legendre rule on (-1, 1), symmetry enforced."""
    if not 1 <= n <= 512:
        raise ValueError(f"gauss_legendre order must be in [1, 512], got {n}")
    x, w = np.polynomial.legendre.leggauss(n)
    # symmetrize against roundoff so that x[i] == -x[n-1-i] exactly
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    x.flags.writeable = False
    w.flags.writeable = False
    return QuadRule(nodes=x, weights=w)


def gl_nodes(a: float, b: float, n: int = 64, panels: int = 1):
    """Nodes and weights of a composite n-point GL rule on [a, b]."""
    rule = gauss_legendre(n)
    edges = np.linspace(a, b, panels + 1)
    xs = []
    ws = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        xs.append(mid + half * rule.nodes)
        ws.append(half * rule.weights)
    return np.concatenate(xs), np.concatenate(ws)


def integrate_gl(f, a: float, b: float, n: int = 64, panels: int = 1) -> float:
    """Composite Gauss-Legendre integral of a vectorized integrand on [a, b]."""
    if b <= a:
        return 0.0
    x, w = gl_nodes(a, b, n, panels)
    return float(np.dot(w, f(x)))


def _panel_sum(f, s: float, edges, rule) -> float:
    total = 0.0
    for lo, hi in edges:
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        wn = mid + half * rule.nodes
        total += half * float(np.dot(rule.weights, 2.0 * wn * f(s + wn * wn)))
    return total


def _graded_half(f, s: float, length: float, n: int, levels: int) -> float:
    # integral over x in (s, s+length) with x = s + w^2; panels graded
    # geometrically toward w = 0 (log taming) and toward the outer endpoint
    # (integrable endpoint weights like sqrt(1-x^2))
    if length <= 0.0:
        return 0.0
    wmax = math.sqrt(length)
    rule = gauss_legendre(n)
    # stop the inner grading once s + w^2 would round to s
    floor = math.sqrt(1e-13 * max(1.0, abs(s)))
    wmid = wmax / math.sqrt(2.0)
    edges = []
    hi = wmid
    for _ in range(levels):
        if hi <= floor:
            break
        edges.append((0.5 * hi, hi))
        hi = 0.5 * hi
    gap = wmax - wmid
    lo = wmid
    for j in range(levels):
        step = gap * 2.0 ** -(j + 1)
        edges.append((lo, lo + step))
        lo += step
        if wmax - lo < 1e-14 * wmax:
            break
    return _panel_sum(f, s, edges, rule)


def quad_log_singular(f, a: float, b: float, s: float, target: float = 1e-10,
                      n: int = 24, levels: int = 60) -> float:
    """Integrate f over [a, b] when f has at worst a log singularity at s.

    Splits at s and substitutes distance = w^2 on each side; panels are
    graded geometrically toward the singular point. Accepted only after two
    successive refinements (doubled node count) agree within `target`.
    """
    if not a <= s <= b:
        raise ValueError(f"singular point {s} outside [{a}, {b}]")

    def attempt(order):
        return (_graded_half(lambda x: f(x), s, b - s, order, levels)
                + _graded_half(lambda x: f(2.0 * s - x), s, s - a, order, levels))

    coarse = attempt(n)
    fine = attempt(2 * n)
    if abs(fine - coarse) > target:
        finer = attempt(4 * n)
        if abs(finer - fine) > target:
            raise ValueError(
                "quad_log_singular did not converge; integrand is likely "
                f"worse than logarithmic at {s} (last delta {abs(finer - fine):.3e})")
        return finer
    return fine


_PARITY_POWERS = {
    None: lambda d: list(range(d + 1)),
    "none": lambda d: list(range(d + 1)),
    "even": lambda d: list(range(0, d + 1, 2)),
    "odd": lambda d: list(range(1, d + 1, 2)),
    "odd_const": lambda d: [0] + list(range(1, d + 1, 2)),
}


def endpoint_derivative(profile: RadialProfile, order: int, fit_degree: int,
                        parity: str | None = None):
    """Least-squares polynomial fit of a profile; returns (d^order at 0, residual).

    The grid is rescaled to [-1, 1] before fitting and the system is solved
    by orthogonal decomposition (never normal equations). The residual is the
    rms misfit normalized by the rms of the data, a conditioning diagnostic.
    """
    if fit_degree < order + 1:
        raise ValueError("fit_degree must be at least order + 1")
    if profile.grid.size < fit_degree + 4:
        raise ValueError("grid must contain at least fit_degree + 4 points")
    try:
        powers = _PARITY_POWERS[parity](fit_degree)
    except KeyError:
        raise ValueError(f"unknown parity {parity!r}") from None
    if order not in powers:
        raise ValueError(f"order {order} not representable in parity {parity!r} basis")

    scale = float(np.max(np.abs(profile.grid)))
    if scale == 0.0:
        raise ValueError("degenerate grid")
    x = profile.grid / scale
    design = np.column_stack([x ** p for p in powers])
    coef, _, rank, _ = np.linalg.lstsq(design, profile.values, rcond=None)
    if rank < len(powers):
        raise ValueError("rank-deficient fit design (duplicate grid points?)")
    misfit = profile.values - design @ coef
    norm = max(1.0, float(np.linalg.norm(profile.values)))
    residual = float(np.linalg.norm(misfit)) / norm
    c = coef[powers.index(order)]
    value = math.factorial(order) * c / scale ** order
    return float(value), residual


@lru_cache(maxsize=None)
def sphere_rule(m: int, polar_nodes: int = 64, azimuth_nodes: int | None = None):
    """Product quadrature on the unit sphere S^m in R^(m+1).

    Returns (points, weights) with points of shape (N, m+1); the weights sum
    to the surface area sigma_m. Built recursively: trapezoid in the final
    azimuth (spectrally accurate for periodic integrands), Gauss-Legendre in
    each polar angle against the sin^(m-1) factor.
    """
    if m < 0:
        raise ValueError("sphere dimension must be nonnegative")
    if azimuth_nodes is None:
        azimuth_nodes = 2 * polar_nodes
    if m == 0:
        pts = np.array([[1.0], [-1.0]])
        wts = np.array([1.0, 1.0])
    elif m == 1:
        ang = 2.0 * np.pi * np.arange(azimuth_nodes) / azimuth_nodes
        pts = np.column_stack([np.cos(ang), np.sin(ang)])
        wts = np.full(azimuth_nodes, 2.0 * np.pi / azimuth_nodes)
    else:
        sub_pts, sub_wts = sphere_rule(m - 1, polar_nodes, azimuth_nodes)
        phi, wphi = gl_nodes(0.0, np.pi, polar_nodes)
        sin_phi = np.sin(phi)
        pts = np.concatenate(
            [sin_phi[:, None, None] * sub_pts[None, :, :],
             np.broadcast_to(np.cos(phi)[:, None, None],
                             (phi.size, sub_pts.shape[0], 1))],
            axis=2).reshape(-1, m + 1)
        wts = (wphi * sin_phi ** (m - 1))[:, None] * sub_wts[None, :]
        wts = wts.reshape(-1)
    pts.flags.writeable = False
    wts.flags.writeable = False
    return pts, wts
