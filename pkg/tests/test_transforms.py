import math

import numpy as np
import pytest

from conftest import random_point
from georadon.constants import sphere_area
from georadon.fields import make_phantom, rotate_field
from georadon.geometry import (Point, Rotation, Space, base_point, g_theta,
                               geodesic, geodesic_at_distance, haar_rotation,
                               point, rotate_geodesic)
from georadon.numerics import gl_nodes
from georadon.transforms import (mean_profile, radon_forward, spherical_mean,
                                 tilde_mean)

EU3 = Space("euclidean", 3, 2)
EU2 = Space("euclidean", 2, 1)
SP2 = Space("sphere", 2, 1)
HY2 = Space("hyperbolic", 2, 1)


def test_forward_gaussian_plane():
    f = make_phantom(EU3, "gaussian")
    for d in (0.0, 2.0):
        xi = geodesic_at_distance(EU3, Point(np.zeros(3)), d,
                                  Rotation(np.eye(3)))
        assert radon_forward(EU3, f, xi) == pytest.approx(
            math.pi * math.exp(-d * d), rel=1e-10)


def test_forward_constant_great_circle():
    f = make_phantom(SP2, "constant-even")
    xi = geodesic(SP2, np.eye(3)[:, :2])
    assert radon_forward(SP2, f, xi) == pytest.approx(2 * math.pi, rel=1e-12)


def test_forward_hyperbolic_geodesic():
    f = make_phantom(HY2, "radial-hyperbolic", power=4)
    xi0 = geodesic(HY2, np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
    assert radon_forward(HY2, f, xi0) == pytest.approx(4.0 / 3.0, rel=1e-9)


def test_forward_rejects_non_integrable():
    f = make_phantom(EU3, "constant-even")
    xi = geodesic_at_distance(EU3, Point(np.zeros(3)), 0.0,
                              Rotation(np.eye(3)))
    with pytest.raises(ValueError):
        radon_forward(EU3, f, xi)


@pytest.mark.parametrize("space,phantom,kwargs", [
    (EU2, "gaussian", {}),
    (SP2, "even-poly", {}),
    (HY2, "radial-hyperbolic", {"power": 6}),
])
def test_forward_rotation_invariance(space, phantom, kwargs, rng):
    f = make_phantom(space, phantom, **kwargs)
    x = random_point(space, rng)
    for trial in range(10):
        xi = geodesic_at_distance(space, x, float(rng.uniform(0.1, 0.8)),
                                  haar_rotation(space, trial))
        m = haar_rotation(space, 900 + trial).matrix
        if space.kind == "hyperbolic":
            m = m @ g_theta(space, 0.4)
        lhs = radon_forward(space, f, rotate_geodesic(space, m, xi))
        rhs = radon_forward(space, rotate_field(space, f, m), xi)
        assert lhs == pytest.approx(rhs, abs=1e-8)


def test_mean_gaussian_radial():
    f = make_phantom(EU3, "gaussian")
    assert spherical_mean(EU3, f, Point(np.zeros(3)), 1.0) == pytest.approx(
        math.exp(-1.0), rel=1e-12)


def test_mean_constant_is_constant():
    fc_s = make_phantom(SP2, "constant-even")
    assert spherical_mean(SP2, fc_s, point(SP2, [0, 0, 1.0]), 0.5) == \
        pytest.approx(1.0, abs=1e-9)
    fc_h = make_phantom(HY2, "constant-even")
    assert spherical_mean(HY2, fc_h, base_point(HY2), 2.0) == pytest.approx(
        1.0, abs=1e-9)
    fc_e = make_phantom(EU3, "constant-even")
    assert spherical_mean(EU3, fc_e, Point(np.zeros(3)), 1.3) == \
        pytest.approx(1.0, abs=1e-9)


def test_mean_hyperbolic_radial_profile():
    f = make_phantom(HY2, "radial-hyperbolic", power=6)
    assert spherical_mean(HY2, f, base_point(HY2), 2.0) == pytest.approx(
        2.0 ** -6, rel=1e-12)


def test_mean_domain_checks():
    f = make_phantom(SP2, "constant-even")
    with pytest.raises(ValueError):
        spherical_mean(SP2, f, point(SP2, [0, 0, 1.0]), 1.5)
    fh = make_phantom(HY2, "constant-even")
    with pytest.raises(ValueError):
        spherical_mean(HY2, fh, base_point(HY2), 0.5)
    fe = make_phantom(EU2, "gaussian")
    with pytest.raises(ValueError):
        spherical_mean(EU2, fe, Point(np.zeros(2)), -0.1)


def test_tilde_mean_values():
    fc = make_phantom(SP2, "constant-even")
    assert tilde_mean(SP2, fc, point(SP2, [0, 0, 1.0]), 0.6) == pytest.approx(
        1.25, rel=1e-12)
    fh = make_phantom(HY2, "radial-hyperbolic", power=6)
    assert tilde_mean(HY2, fh, base_point(HY2), 0.0) == pytest.approx(1.0)
    f = make_phantom(EU2, "gaussian")
    x = Point(np.array([0.4, 0.1]))
    for t in (0.2, 0.7, 1.4):
        assert tilde_mean(EU2, f, x, t) == spherical_mean(EU2, f, x, t)


def test_tilde_mean_limit():
    f = make_phantom(SP2, "even-poly")
    x = point(SP2, [0.6, 0.0, 0.8])
    fx = f.at(x)
    errs = [abs(tilde_mean(SP2, f, x, t) - fx) for t in (1e-1, 1e-2, 1e-3)]
    assert errs[0] < 0.5 * 1e-1
    assert all(e1 > e2 for e1, e2 in zip(errs, errs[1:]))


def test_mean_profile_gaussian():
    f = make_phantom(EU3, "gaussian")
    prof = mean_profile(EU3, f, Point(np.zeros(3)), [0.0, 0.5, 1.0])
    assert prof.values == pytest.approx(
        [1.0, math.exp(-0.25), math.exp(-1.0)], rel=1e-12)
    empty = mean_profile(EU3, f, Point(np.zeros(3)), [])
    assert empty.values.size == 0


def test_mean_profile_tilde_constant():
    fc = make_phantom(SP2, "constant-even")
    prof = mean_profile(SP2, fc, point(SP2, [0, 0, 1.0]), [0.0, 0.6],
                        variant="tilde")
    assert prof.values == pytest.approx([1.0, 1.25], rel=1e-12)


def test_euclidean_polar_consistency():
    # integrating the means against the polar weight recovers the full integral
    f = make_phantom(EU2, "gaussian")
    ts, ws = gl_nodes(0.0, 7.0, 96, panels=2)
    means = spherical_mean(EU2, f, Point(np.zeros(2)), ts)
    total = sphere_area(1) * float(np.dot(ws, means * ts))
    assert total == pytest.approx(math.pi, abs=1e-6)


def test_sphere_field_parity():
    f = make_phantom(SP2, "even-poly")
    rng = np.random.default_rng(3)
    for _ in range(20):
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        assert f(v[None, :])[0] == pytest.approx(f(-v[None, :])[0], abs=1e-12)
