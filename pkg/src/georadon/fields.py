"""Evaluatable test functions on the three spaces, with a phantom registry."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .geometry import EUCLIDEAN, HYPERBOLIC, SPHERE, Point, Space, base_point

__all__ = ["ScalarField", "PHANTOMS", "make_phantom", "rotate_field"]


@dataclass
class ScalarField:
    """A smooth test function f with the metadata quadratures need.

    evaluator maps an (..., dim) array of ambient coordinates to values.
    decay_scale is the (geodesic) radius around `center` beyond which
    |f| < 1e-14; infinite for fields without decay. scale sets the natural
    length unit used to size derivative grids.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    decay_scale: float
    parity_even: bool = False
    name: str = ""
    center: np.ndarray | None = None
    scale: float = 1.0

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        return self.evaluator(np.asarray(pts, dtype=float))

    def at(self, x: Point) -> float:
        return float(self.evaluator(x.coords[None, :])[0])


def _gaussian(space: Space, center=None) -> ScalarField:
    if space.kind != EUCLIDEAN:
        raise ValueError("the gaussian phantom lives on euclidean space")
    c = np.zeros(space.n) if center is None else np.asarray(center, dtype=float)
    if c.shape != (space.n,):
        raise ValueError("gaussian center has the wrong dimension")

    def ev(pts):
        d = pts - c
        return np.exp(-np.sum(d * d, axis=-1))

    return ScalarField(ev, decay_scale=6.0, parity_even=False,
                       name="gaussian", center=c.copy())


def _constant(space: Space) -> ScalarField:
    dim = space.ambient_dim

    def ev(pts):
        return np.ones(pts.shape[:-1])

    decay = math.pi if space.kind == SPHERE else math.inf
    return ScalarField(ev, decay_scale=decay, parity_even=True,
                       name="constant-even", center=base_point(space).coords)


def _radial_hyperbolic(space: Space, power: int = 6) -> ScalarField:
    if space.kind != HYPERBOLIC:
        raise ValueError("the radial-hyperbolic phantom lives on H^n")
    if power < 3:
        raise ValueError("power must be >= 3 for integrable transforms")

    def ev(pts):
        # cosh of the distance to the base point is the last coordinate
        return pts[..., -1] ** float(-power)

    decay = math.acosh(10.0 ** (14.0 / power))
    return ScalarField(ev, decay_scale=decay, parity_even=False,
                       name="radial-hyperbolic", center=base_point(space).coords)


def _even_poly(space: Space) -> ScalarField:
    if space.kind != SPHERE:
        raise ValueError("the even-poly phantom lives on the sphere")

    def ev(pts):
        return 1.0 + pts[..., 0] ** 2

    return ScalarField(ev, decay_scale=math.pi, parity_even=True,
                       name="even-poly", center=base_point(space).coords)


PHANTOMS = {
    "gaussian": _gaussian,
    "constant-even": _constant,
    "radial-hyperbolic": _radial_hyperbolic,
    "even-poly": _even_poly,
}


def make_phantom(space: Space, name: str, **params) -> ScalarField:
    try:
        factory = PHANTOMS[name]
    except KeyError:
        raise ValueError(
            f"unknown phantom {name!r}; available: {sorted(PHANTOMS)}") from None
    return factory(space, **params)


def rotate_field(space: Space, f: ScalarField, matrix: np.ndarray) -> ScalarField:
    """The pullback f o R (evaluates f at R y); center moves to R^-1 center."""
    m = np.asarray(matrix, dtype=float)

    def ev(pts):
        return f.evaluator(pts @ m.T)

    center = None
    if f.center is not None:
        center = np.linalg.solve(m, f.center)
    return ScalarField(ev, decay_scale=f.decay_scale, parity_even=f.parity_even,
                       name=f.name + "|rot", center=center, scale=f.scale)
