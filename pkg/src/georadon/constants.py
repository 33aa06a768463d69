"""Closed-form constants: sphere areas, inversion constants, and the small
kernel integrals (c_k, Theta) shared by the reduction formulas."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import EUCLIDEAN, SPHERE, Space
from .numerics import integrate_gl

__all__ = [
    "SGN_EVEN",
    "LOG_ODD",
    "SHIFTED_DUAL",
    "InversionConstant",
    "gamma_half",
    "sphere_area",
    "inversion_constant",
    "lambda_weight",
    "c_k_value",
    "theta_k",
    "theta_poly",
    "theta_poly_coeffs",
    "classical_log_constant",
    "classical_sgn_constant",
]

# inversion pipeline identifiers: the sgn-weighted dual (k even), the
# log-weighted dual (k odd), and the weighted shifted-dual route (k even)
SGN_EVEN = "sgn_even"
LOG_ODD = "log_odd"
SHIFTED_DUAL = "shifted_dual"


@dataclass(frozen=True)
class InversionConstant:
    value: float
    kind: str
    space_kind: str
    n: int
    k: int


def _sign(j: int) -> float:
    return 1.0 if j % 2 == 0 else -1.0


def gamma_half(x: float) -> float:
    """Gamma(x), exact for integer and half-integer arguments.

    Gamma(p) = (p-1)! and Gamma(p + 1/2) = (2p)! sqrt(pi) / (4^p p!); other
    arguments fall back to math.gamma (relative error a few ulp).
    """
    two_x = 2.0 * x
    if two_x == int(two_x) and x > 0.0:
        m = int(two_x)
        if m % 2 == 0:
            return float(math.factorial(m // 2 - 1))
        p = (m - 1) // 2
        return math.factorial(2 * p) * math.sqrt(math.pi) / (4.0 ** p * math.factorial(p))
    return math.gamma(x)


def sphere_area(m: int) -> float:
    """Surface area sigma_m of the unit sphere S^m: 2 pi^((m+1)/2) / Gamma((m+1)/2)."""
    if m < 0:
        raise ValueError("sphere dimension must be nonnegative")
    return 2.0 * math.pi ** ((m + 1) / 2.0) / gamma_half((m + 1) / 2.0)


def inversion_constant(space: Space, kind: str,
                       printed_form: bool = False) -> InversionConstant:
    """The derivative-to-function constant of the chosen inversion pipeline.

    For the sphere sgn-even case two conventions circulate: the printed one,
    2 sig_{n-k-1} sig_k sig_{k-1} (k-1)!/sig_n, and the one the Euclidean-style
    derivation produces, which carries an extra 2(-1)^((k+2)/2). The numerical
    sign experiment (S^4, k = 2) confirms the latter, used by default;
    printed_form=True selects the former.
    """
    n, k = space.n, space.k
    fact = float(math.factorial(k - 1))
    if kind == SGN_EVEN:
        if k % 2 != 0:
            raise ValueError("the sgn pipeline requires even k")
        if space.kind == SPHERE:
            base = 2.0 * sphere_area(n - k - 1) * sphere_area(k) \
                * sphere_area(k - 1) * fact / sphere_area(n)
            value = base if printed_form else 2.0 * _sign((k + 2) // 2) * base
        else:
            value = 2.0 * _sign((k + 2) // 2) * sphere_area(n - k - 1) \
                * sphere_area(k - 1) * fact
    elif kind == LOG_ODD:
        if k % 2 != 1:
            raise ValueError("the log pipeline requires odd k")
        if space.kind == SPHERE:
            value = 2.0 * math.pi * _sign((k - 1) // 2) * sphere_area(n - k - 1) \
                * sphere_area(k) * sphere_area(k - 1) * fact / sphere_area(n)
        else:
            value = math.pi * _sign((k - 1) // 2) * sphere_area(n - k - 1) \
                * sphere_area(k - 1) * fact
    elif kind == SHIFTED_DUAL:
        if k % 2 != 0:
            raise ValueError("the shifted-dual pipeline requires even k")
        value = _sign(k // 2) * fact * sphere_area(k - 1)
        if space.kind == SPHERE:
            value *= 2.0
    else:
        raise ValueError(f"unknown inversion kind {kind!r}")
    return InversionConstant(value=value, kind=kind, space_kind=space.kind,
                             n=n, k=k)


def lambda_weight(space: Space, r):
    """Profile weight: 1, (1-r^2)^((k-1)/2), or (1+r^2)^((k-1)/2)."""
    r = np.asarray(r, dtype=float)
    if space.kind == EUCLIDEAN:
        out = np.ones_like(r)
    elif space.kind == SPHERE:
        if np.any(r >= 1.0):
            raise ValueError("sphere requires r < 1")
        out = (1.0 - r * r) ** ((space.k - 1) / 2.0)
    else:
        out = (1.0 + r * r) ** ((space.k - 1) / 2.0)
    return out if out.ndim else float(out)


def c_k_value(k: int) -> float:
    """int_0^1 (1-v^2)^(k/2-1) dv = sqrt(pi) Gamma(k/2) / (2 Gamma((k+1)/2))."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return math.sqrt(math.pi) * gamma_half(k / 2.0) / (2.0 * gamma_half((k + 1) / 2.0))


def theta_poly(k: int, u):
    """Polynomial continuation of int_1^u (v^2-1)^(k/2-1) dv for even k.

    The integrand is a polynomial when k is even, so the primitive is a
    polynomial valid for every u (used by the sgn kernel on (0, 1))."""
    if k % 2 != 0 or k < 2:
        raise ValueError("theta_poly requires even k >= 2")
    u = np.asarray(u, dtype=float)
    p = k // 2 - 1
    out = np.zeros_like(u)
    for j in range(p + 1):
        coef = math.comb(p, j) * _sign(p - j) / (2 * j + 1)
        out = out + coef * (u ** (2 * j + 1) - 1.0)
    return out if out.ndim else float(out)


def theta_poly_coeffs(k: int) -> np.ndarray:
    """Ascending coefficients of the degree-(k-1) polynomial theta_poly (even k)."""
    if k % 2 != 0 or k < 2:
        raise ValueError("theta_poly_coeffs requires even k >= 2")
    p = k // 2 - 1
    out = np.zeros(k)
    for j in range(p + 1):
        coef = math.comb(p, j) * _sign(p - j) / (2 * j + 1)
        out[2 * j + 1] += coef
        out[0] -= coef
    return out


def theta_k(u: float, k: int) -> float:
    """The incomplete integral int_1^u (v^2-1)^(k/2-1) dv for u >= 1.

    Closed forms for k <= 4; even k > 4 uses the exact polynomial; odd k > 4
    integrates sinh^(k-1) after v = cosh(w)."""
    if u < 1.0:
        raise ValueError("theta_k requires u >= 1")
    if k < 1:
        raise ValueError("k must be a positive integer")
    if k == 1:
        return math.acosh(u)
    if k == 2:
        return u - 1.0
    if k == 3:
        return 0.5 * (u * math.sqrt(max(0.0, u * u - 1.0)) - math.acosh(u))
    if k == 4:
        return u ** 3 / 3.0 - u + 2.0 / 3.0
    if k % 2 == 0:
        return float(theta_poly(k, u))
    w = math.acosh(u)
    return integrate_gl(lambda y: np.sinh(y) ** (k - 1), 0.0, w, n=64, panels=2)


def classical_sgn_constant(n: int) -> float:
    """Constant in front of the n-th t-derivative of the sgn-kernel data (n odd).

    The sign is (-1)^((n+1)/2): the direct Gaussian computation in n = 3 gives
    d^3F/dt^3 = +4 pi for a unit phantom, fixing +1/(4 pi)."""
    if n < 2 or n % 2 != 1:
        raise ValueError("the sgn classical formula applies to odd n >= 3")
    return _sign((n + 1) // 2) / (2.0 * math.factorial(n - 2) * sphere_area(n - 2))


def classical_log_constant(n: int) -> float:
    """Constant in front of the n-th t-derivative of the log-kernel data (n even)."""
    if n < 2 or n % 2 != 0:
        raise ValueError("the log classical formula applies to even n >= 2")
    return _sign((n - 2) // 2) / (math.pi * math.factorial(n - 2) * sphere_area(n - 2))
