import math

import numpy as np
import pytest

from conftest import random_point
from georadon.geometry import (Point, Rotation, Space, base_point,
                               distance_rho, g_theta, geodesic,
                               geodesic_at_distance, haar_rotation,
                               lorentz_dot, point, rotate_geodesic,
                               rotate_point, transport_to)

EU = Space("euclidean", 2, 1)
SP = Space("sphere", 2, 1)
HY = Space("hyperbolic", 2, 1)


def test_space_validation():
    with pytest.raises(ValueError):
        Space("euclidean", 1, 1)
    with pytest.raises(ValueError):
        Space("euclidean", 3, 3)
    with pytest.raises(ValueError):
        Space("flat", 3, 1)


def test_point_validation():
    point(SP, [0.0, 0.0, 1.0])
    with pytest.raises(ValueError):
        point(SP, [0.0, 0.0, 1.1])
    with pytest.raises(ValueError):
        point(HY, [0.0, 0.0, -1.0])
    with pytest.raises(ValueError):
        point(HY, [1.0, 0.0, 1.0])
    point(HY, [math.sinh(2.0), 0.0, math.cosh(2.0)])


def test_geodesic_validation():
    geodesic(EU, np.array([[1.0], [0.0]]), offset=[0.0, 3.0])
    with pytest.raises(ValueError):
        geodesic(EU, np.array([[1.0], [0.0]]), offset=[0.5, 3.0])
    with pytest.raises(ValueError):
        geodesic(SP, np.array([[1.0, 0.1], [0.0, 1.0], [0.0, 0.0]]))
    bad = np.array([[0.0, 1.0], [1.0, 0.0], [0.0, 0.0]])  # two spacelike cols
    with pytest.raises(ValueError):
        geodesic(HY, bad)


def test_distance_point_line():
    line = geodesic(EU, np.array([[1.0], [0.0]]), offset=[0.0, 3.0])
    assert distance_rho(EU, Point(np.zeros(2)), line) == pytest.approx(3.0)


def test_distance_pole_equator():
    equator = geodesic(SP, np.eye(3)[:, :2])
    north = point(SP, [0.0, 0.0, 1.0])
    assert distance_rho(SP, north, equator) == pytest.approx(1.0)


def test_distance_hyperbolic_boosted_point():
    xi0 = geodesic(HY, np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
    x = point(HY, g_theta(HY, 0.7) @ base_point(HY).coords)
    assert distance_rho(HY, x, xi0) == pytest.approx(math.sinh(0.7),
                                                     abs=1e-12)


def test_distance_dimension_mismatch():
    line = geodesic(EU, np.array([[1.0], [0.0]]), offset=[0.0, 3.0])
    with pytest.raises(ValueError):
        distance_rho(EU, Point(np.zeros(3)), line)


def test_haar_determinism_and_membership():
    a = haar_rotation(Space("euclidean", 3, 1), 42).matrix
    b = haar_rotation(Space("euclidean", 3, 1), 42).matrix
    assert np.array_equal(a, b)
    assert np.max(np.abs(a.T @ a - np.eye(3))) < 1e-10
    assert np.linalg.det(a) == pytest.approx(1.0, abs=1e-10)


def test_haar_stabilizer_embedding():
    m = haar_rotation(SP, 3).matrix
    assert m[2, 2] == 1.0 and np.all(m[2, :2] == 0.0) and np.all(m[:2, 2] == 0.0)


def test_haar_zero_mean():
    acc = np.zeros((3, 3))
    n_samples = 10000
    for s in range(n_samples):
        acc += haar_rotation(Space("euclidean", 3, 1), s).matrix
    assert np.max(np.abs(acc / n_samples)) < 0.05


def test_plane_at_distance_example():
    space = Space("euclidean", 3, 2)
    xi = geodesic_at_distance(space, Point(np.zeros(3)), 2.0,
                              Rotation(np.eye(3)))
    assert xi.offset == pytest.approx([0.0, 0.0, 2.0])
    assert distance_rho(space, Point(np.zeros(3)), xi) == pytest.approx(2.0)


def test_geodesic_at_distance_zero():
    xi = geodesic_at_distance(EU, Point(np.zeros(2)), 0.0, haar_rotation(EU, 1))
    assert distance_rho(EU, Point(np.zeros(2)), xi) == pytest.approx(0.0,
                                                                     abs=1e-14)


def test_sphere_r_domain():
    with pytest.raises(ValueError):
        geodesic_at_distance(SP, point(SP, [0, 0, 1.0]), 1.0,
                             haar_rotation(SP, 0))


@pytest.mark.parametrize("space", [
    Space("euclidean", 2, 1), Space("euclidean", 3, 2), Space("euclidean", 4, 2),
    Space("sphere", 2, 1), Space("sphere", 3, 2), Space("sphere", 4, 2),
    Space("hyperbolic", 2, 1), Space("hyperbolic", 3, 2),
    Space("hyperbolic", 4, 1),
])
def test_round_trip_distance(space, rng):
    for trial in range(100):
        x = random_point(space, rng)
        r = float(rng.uniform(0.0, 0.97 if space.kind == "sphere" else 3.0))
        g = haar_rotation(space, 1000 + trial)
        xi = geodesic_at_distance(space, x, r, g)
        assert distance_rho(space, x, xi) == pytest.approx(r, abs=1e-9)


@pytest.mark.parametrize("space", [
    Space("euclidean", 3, 1), Space("sphere", 3, 2), Space("hyperbolic", 3, 2),
])
def test_isometry_invariance(space, rng):
    for trial in range(20):
        x = random_point(space, rng)
        r = float(rng.uniform(0.0, 0.9 if space.kind == "sphere" else 2.0))
        xi = geodesic_at_distance(space, x, r, haar_rotation(space, trial))
        m = haar_rotation(space, 500 + trial).matrix
        if space.kind == "hyperbolic":
            m = m @ g_theta(space, 0.6)
        d0 = distance_rho(space, x, xi)
        d1 = distance_rho(space, rotate_point(space, m, x),
                          rotate_geodesic(space, m, xi))
        assert d1 == pytest.approx(d0, abs=1e-10)


def test_boost_preserves_hyperboloid():
    x = base_point(HY)
    for theta in np.linspace(0.0, 3.0, 13):
        y = g_theta(HY, float(theta)) @ x.coords
        assert lorentz_dot(y, y) == pytest.approx(1.0, abs=1e-12)
    # far out the constraint only holds relative to cosh^2(theta)
    for theta in (5.0, 8.0):
        y = g_theta(HY, theta) @ x.coords
        scale = float(np.max(np.abs(y))) ** 2
        assert abs(lorentz_dot(y, y) - 1.0) < 1e-14 * scale


def test_transport_carries_base_point():
    for space in (SP, HY):
        rng = np.random.default_rng(8)
        for _ in range(10):
            x = random_point(space, rng)
            m = transport_to(space, x)
            assert m @ base_point(space).coords == pytest.approx(
                x.coords, abs=1e-12)


def test_transport_antipode():
    south = point(SP, [0.0, 0.0, -1.0])
    m = transport_to(SP, south)
    assert m @ np.array([0.0, 0.0, 1.0]) == pytest.approx(south.coords)
    assert np.linalg.det(m) == pytest.approx(1.0)
