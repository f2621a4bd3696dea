"""Bounded solutions of two confluent ODE families via Laplace integrals.

Hypergeometric type, for gamma > 0 and beta >= 0::

    x y'' - gamma y' - (x + gamma + beta) y = 0,

whose bounded solution with y(0) = 1 is, for beta > 0,

    y(x) = e^{-x} / B(beta/2, gamma+1)
           * int_0^inf e^{-2xt} t^{beta/2-1} (1+t)^{-(gamma+beta/2+1)} dt.

Legendre type, for beta > 0::

    x z'' - beta z' - z = 0,

    z(x) = 1/Gamma(beta+1) * int_0^inf e^{-xt - 1/t} t^{-(2+beta)} dt.

Derivatives are taken under the integral sign.  Integrals are evaluated by a
trapezoid rule in s = log t, with the step halved until two successive
resolutions agree.  For small beta the hypergeometric integrand decays only
like e^{beta s/2} as s -> -inf; there the grid stops at s = -40, where the
integrand is e^{beta s/2 - x} to relative accuracy 1e-16, and the rest of the
trapezoid sum is added as a geometric series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, isclose, lgamma

import numpy as np
from scipy.special import betaln

from .quadrature import QuadratureRule, log_trapezoid, log_window

__all__ = [
    "BoundedHyperSolution",
    "BoundedLegendreSolution",
    "bounded_hyper",
    "bounded_legendre",
    "ode_derivative",
    "singular_index",
]

_X_FLOOR = 1e-12
_X_CEIL = 40.0
_H0 = 0.1
_REL_TOL = 1e-10
_S_CUT = -40.0
# below this beta the bounded solution is e^{-x} to relative accuracy beta
_BETA_ZERO = 1e-12


@dataclass(frozen=True, eq=False)
class _Grid:
    """Trapezoid nodes in t = e^s with step h; ``cut`` marks a truncated left end."""

    rule: QuadratureRule
    h: float
    cut: float | None = None


def singular_index(c: float) -> int:
    """Order k of the first singular derivative: c itself if integral, else floor(c)+1."""
    r = round(c)
    if isclose(c, r, rel_tol=0.0, abs_tol=1e-12):
        return int(r)
    return int(np.floor(c)) + 1


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ValueError("x must be finite and non-negative")
    return arr


class _LaplaceSolution:
    """Shared machinery: a log-space integrand on a trapezoid grid in s.

    ``_log_integrand(s, x, p)`` is the log-modulus of the p-th derivative
    integrand with respect to ds (the Jacobian e^s included); the sign is
    (-1)^p throughout.
    """

    k: int
    _log_norm: float
    _tail_rate: float | None = None

    def _log_integrand(self, s, x, p):  # pragma: no cover - abstract
        raise NotImplementedError

    def _at_zero(self, p: int) -> float:  # pragma: no cover - abstract
        raise NotImplementedError

    def _grid(self, lo: float, hi: float, h: float) -> _Grid:
        if self._tail_rate is not None and lo <= _S_CUT:
            lo = _S_CUT
            return _Grid(log_trapezoid(lo, hi, h), h, lo)
        return _Grid(log_trapezoid(lo, hi, h), h)

    def _left_end(self, x: float) -> float:
        logf = lambda s: self._log_integrand(s, x, 0)
        if self._tail_rate is None:
            return log_window(logf, 0.0, -1)
        try:
            return log_window(logf, 0.0, -1, limit=-_S_CUT)
        except RuntimeError:
            return _S_CUT

    def _window(self, x_floor: float, x_ceil: float) -> tuple[float, float]:
        # large x moves the mass towards small t, so both ends of the x-range matter
        lo = min(self._left_end(x) for x in (0.0, x_ceil))
        his = [
            log_window(lambda s, p=p: self._log_integrand(s, x_floor, p), 0.0, +1)
            for p in (0, self.k + 1)
        ]
        return lo, max(his)

    def _build_rule(self, x_floor: float, x_ceil: float = _X_CEIL) -> _Grid:
        lo, hi = self._window(x_floor, x_ceil)
        probe = np.array([x_floor, 1e-3, 1.0, 10.0, x_ceil])
        h = _H0
        for _ in range(6):
            coarse = self._grid(lo, hi, h)
            fine = self._grid(lo, hi, h / 2)
            ok = True
            for p in (0, self.k + 1):
                a = self._sum(coarse, probe, p)
                b = self._sum(fine, probe, p)
                if np.max(np.abs(a - b) / np.abs(b)) > _REL_TOL:
                    ok = False
            if ok:
                return coarse
            h /= 2
        raise RuntimeError("Laplace quadrature did not converge")

    def _sum(self, grid: _Grid, x: np.ndarray, p: int) -> np.ndarray:
        rule = grid.rule
        s = np.log(rule.nodes)
        logh = np.log(rule.weights / rule.nodes)
        L = self._log_integrand(s[None, :], x[:, None], p) + logh[None, :] - self._log_norm
        total = np.exp(L).sum(axis=1)
        if grid.cut is not None:
            # nodes cut - h, cut - 2h, ... of the integrand e^{rate s - x}
            rate = self._tail_rate
            total += grid.h * np.exp(rate * grid.cut - x - self._log_norm) / np.expm1(rate * grid.h)
        return (-1.0) ** p * total

    def _rule_for(self, x_min: float, x_max: float) -> _Grid:
        if x_min >= _X_FLOOR and x_max <= _X_CEIL:
            return self.rule
        floor = min(x_min, _X_FLOOR)
        # round the ceiling up to a power of two so nearby requests share a rule
        ceil = max(_X_CEIL, 2.0 ** np.ceil(np.log2(x_max)))
        cache = self._extra_rules
        if (floor, ceil) not in cache:
            cache[(floor, ceil)] = self._build_rule(floor, ceil)
        return cache[(floor, ceil)]

    def _check_order(self, p: int):
        if p < 0 or p != int(p):
            raise ValueError(f"derivative order must be a non-negative integer, got {p}")
        if p > self.k + 1:
            raise ValueError(
                f"derivative order {p} exceeds k+1 = {self.k + 1}; asymptotics not certified"
            )

    def derivative(self, p: int, x):
        """p-th derivative at x (array-like), by differentiation under the integral."""
        self._check_order(p)
        arr = _as_array(x)
        flat = arr.ravel()
        out = np.empty(flat.shape, dtype=float)
        zero = flat == 0
        if np.any(zero):
            if p > self.k:
                raise ValueError(f"derivative of order {p} is unbounded at x = 0")
            out[zero] = self._at_zero(p)
        pos = ~zero
        if np.any(pos):
            xp = flat[pos]
            out[pos] = self._sum(self._rule_for(float(xp.min()), float(xp.max())), xp, p)
        out = out.reshape(arr.shape)
        return float(out) if out.ndim == 0 else out

    def evaluate(self, x):
        arr = _as_array(x)
        out = self.derivative(0, arr)
        if np.ndim(out) == 0:
            return 1.0 if arr == 0 else out
        return out


@dataclass(frozen=True, eq=False)
class BoundedHyperSolution(_LaplaceSolution):
    """Bounded solution of x y'' - gamma y' - (x+gamma+beta) y = 0 with y(0) = 1."""

    gamma: float
    beta: float
    k: int = field(init=False)
    rule: _Grid | None = field(init=False, repr=False)
    _log_norm: float = field(init=False, repr=False)
    _extra_rules: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if not self.beta >= 0:
            raise ValueError(f"beta must be non-negative, got {self.beta}")
        object.__setattr__(self, "k", singular_index(self.gamma))
        if self.beta < _BETA_ZERO:
            object.__setattr__(self, "_log_norm", 0.0)
            object.__setattr__(self, "rule", None)
            return
        object.__setattr__(self, "_log_norm", float(betaln(self.beta / 2, self.gamma + 1)))
        object.__setattr__(self, "_tail_rate", self.beta / 2)
        object.__setattr__(self, "rule", self._build_rule(_X_FLOOR))

    @property
    def normalization(self) -> float:
        """B(beta/2, gamma+1), the raw integral at x = 0 (1 when beta = 0)."""
        return float(np.exp(self._log_norm))

    def _log_integrand(self, s, x, p):
        b2 = self.beta / 2
        c = self.gamma + b2 + 1
        e = np.exp(s)
        return b2 * s - c * np.logaddexp(0.0, s) - x * (1 + 2 * e) + p * np.log1p(2 * e)

    def _at_zero(self, p: int) -> float:
        if self.beta < _BETA_ZERO:
            return (-1.0) ** p
        # (1+2t)^p = sum_j C(p,j) 2^j (1+t)^j (-1)^(p-j), then Beta integrals
        b2 = self.beta / 2
        total = 0.0
        for j in range(p + 1):
            total += comb(p, j) * 2.0**j * (-1.0) ** (p - j) * np.exp(
                betaln(b2, self.gamma + 1 - j) - self._log_norm
            )
        return (-1.0) ** p * total

    def derivative(self, p: int, x):
        if self.beta < _BETA_ZERO:
            self._check_order(p)
            arr = _as_array(x)
            out = (-1.0) ** p * np.exp(-arr)
            return float(out) if np.ndim(out) == 0 else out
        return super().derivative(p, x)

    def evaluate(self, x):
        if self.beta < _BETA_ZERO:
            arr = _as_array(x)
            out = np.exp(-arr)
            return float(out) if np.ndim(out) == 0 else out
        return super().evaluate(x)

    def residual(self, x):
        """x y'' - gamma y' - (x+gamma+beta) y at x."""
        x = _as_array(x)
        y0, y1, y2 = (self.derivative(p, x) for p in (0, 1, 2))
        return x * y2 - self.gamma * y1 - (x + self.gamma + self.beta) * y0


@dataclass(frozen=True, eq=False)
class BoundedLegendreSolution(_LaplaceSolution):
    """Bounded solution of x z'' - beta z' - z = 0 with z(0) = 1.

    The solution is a multiple of 0F1-type functions, which this family of
    equations conventionally calls Legendre functions.
    """

    beta: float
    k: int = field(init=False)
    rule: _Grid = field(init=False, repr=False)
    normalization: float = field(init=False)
    _log_norm: float = field(init=False, repr=False)
    _extra_rules: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        object.__setattr__(self, "k", singular_index(self.beta))
        object.__setattr__(self, "_log_norm", lgamma(self.beta + 1))
        object.__setattr__(self, "normalization", float(np.exp(self._log_norm)))
        object.__setattr__(self, "rule", self._build_rule(_X_FLOOR))

    def _log_integrand(self, s, x, p):
        return -x * np.exp(s) - np.exp(-s) + (p - 1 - self.beta) * s

    def _at_zero(self, p: int) -> float:
        return (-1.0) ** p * np.exp(lgamma(self.beta + 1 - p) - self._log_norm)

    def residual(self, x):
        """x z'' - beta z' - z at x."""
        x = _as_array(x)
        z0, z1, z2 = (self.derivative(p, x) for p in (0, 1, 2))
        return x * z2 - self.beta * z1 - z0


def bounded_hyper(gamma: float, beta: float) -> BoundedHyperSolution:
    return BoundedHyperSolution(float(gamma), float(beta))


def bounded_legendre(beta: float) -> BoundedLegendreSolution:
    return BoundedLegendreSolution(float(beta))


def ode_derivative(sol, p: int, x):
    """p-th derivative of a bounded solution; p must not exceed k+1."""
    return sol.derivative(p, x)
