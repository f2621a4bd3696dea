"""Independent reference computations used to cross-check the main routines.

Each oracle reaches the same quantity by a different route: ODE shooting
instead of Laplace quadrature, or a Bessel-K integral instead of the
Legendre-type integral.
"""

from __future__ import annotations

from math import lgamma

import numpy as np
from scipy.integrate import quad, solve_ivp

__all__ = [
    "shoot_hyper",
    "shoot_legendre",
    "bessel_k_integral",
    "legendre_via_bessel",
]


def _shoot(rhs, x_start: float, y_start: np.ndarray, x_eval, x_norm: float):
    x_eval = np.asarray(x_eval, dtype=float)
    pts = np.unique(np.concatenate([x_eval, [x_norm]]))[::-1]
    sol = solve_ivp(rhs, (x_start, pts[-1]), y_start, method="DOP853",
                    t_eval=pts, rtol=1e-13, atol=1e-300)
    if not sol.success:
        raise RuntimeError(sol.message)
    vals = dict(zip(sol.t, sol.y[0]))
    ref = vals[x_norm]
    return np.array([vals[x] for x in x_eval]) / ref


def shoot_hyper(gamma: float, beta: float, x_eval, x_norm: float = 1.0, x_start: float = 30.0):
    """Bounded solution of x y'' - gamma y' - (x+gamma+beta) y = 0, normalized at x_norm.

    Integrates inward from x_start, where the decaying branch behaves like
    x^{-beta/2} e^{-x}; the growing branch is suppressed during the inward sweep.
    """

    def rhs(x, u):
        y, dy = u
        return [dy, (gamma * dy + (x + gamma + beta) * y) / x]

    y0 = np.array([1.0, -1.0 - beta / (2 * x_start)])
    return _shoot(rhs, x_start, y0, x_eval, x_norm)


def shoot_legendre(beta: float, x_eval, x_norm: float = 1.0, x_start: float = 400.0):
    """Bounded solution of x z'' - beta z' - z = 0, normalized at x_norm.

    The decaying branch behaves like x^{beta/2+1/4} e^{-2 sqrt x}.
    """

    def rhs(x, u):
        z, dz = u
        return [dz, (beta * dz + z) / x]

    slope = -1 / np.sqrt(x_start) + (beta / 2 + 0.25) / x_start
    return _shoot(rhs, x_start, np.array([1.0, slope]), x_eval, x_norm)


def bessel_k_integral(nu: float, z: float) -> float:
    """K_nu(z) = int_0^inf exp(-z cosh u) cosh(nu u) du, by adaptive quadrature."""
    if z <= 0:
        raise ValueError("z must be positive")
    # the integrand is negligible once z cosh u exceeds z + 800
    upper = np.arccosh(1 + 800 / z)
    val, _ = quad(lambda u: np.exp(-z * np.cosh(u) + z) * np.cosh(nu * u), 0, upper,
                  epsabs=0, epsrel=1e-13, limit=400)
    return val * np.exp(-z)


def legendre_via_bessel(beta: float, x: float) -> float:
    """Bounded Legendre-type solution as 2 x^{(beta+1)/2} K_{beta+1}(2 sqrt x) / Gamma(beta+1)."""
    if x == 0:
        return 1.0
    k = bessel_k_integral(beta + 1, 2 * np.sqrt(x))
    return 2 * x ** ((beta + 1) / 2) * k / np.exp(lgamma(beta + 1))
