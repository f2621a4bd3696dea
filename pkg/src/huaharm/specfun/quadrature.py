"""Quadrature rules on the line and the half-line."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np
from scipy.special import roots_genlaguerre, roots_hermite

__all__ = [
    "QuadratureRule",
    "gauss_hermite",
    "gauss_laguerre",
    "log_trapezoid",
    "log_window",
]

RuleKind = Literal["gauss-hermite", "gauss-laguerre", "adaptive-halfline"]


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and positive weights; ``integrate(f)`` returns ``sum(w * f(nodes))``."""

    kind: RuleKind
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise ValueError("nodes and weights must be 1D arrays of equal length")
        if not np.all(self.weights > 0):
            raise ValueError("quadrature weights must be positive")

    @property
    def node_count(self) -> int:
        return int(self.nodes.size)

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> complex:
        return np.sum(self.weights * f(self.nodes))


def gauss_hermite(m: int) -> QuadratureRule:
    """Rule for integrals of the form int f(x) exp(-x**2) dx over the line."""
    x, w = roots_hermite(m)
    return QuadratureRule("gauss-hermite", x, w)


def gauss_laguerre(m: int, alpha: float = 0.0) -> QuadratureRule:
    """Rule for integrals of the form int_0^inf f(t) t**alpha exp(-t) dt."""
    x, w = roots_genlaguerre(m, alpha)
    return QuadratureRule("gauss-laguerre", x, w)


def log_window(
    logf: Callable[[np.ndarray], np.ndarray],
    start: float,
    direction: int,
    drop: float = 42.0,
    step: float = 0.5,
    limit: float = 5000.0,
) -> float:
    """Walk from ``start`` until ``logf`` falls ``drop`` below its running maximum.

    ``logf`` must eventually decrease in the walking direction.  Returns the
    abscissa where the walk stopped.
    """
    s = float(start)
    peak = float(logf(np.array([s]))[0])
    travelled = 0.0
    while travelled < limit:
        s += direction * step
        travelled += step
        v = float(logf(np.array([s]))[0])
        peak = max(peak, v)
        if v < peak - drop:
            return s
    raise RuntimeError("integrand does not decay inside the search window")


def log_trapezoid(s_lo: float, s_hi: float, h: float) -> QuadratureRule:
    """Trapezoid rule in s = log t, returned as a rule in t on (0, inf).

    For integrands analytic in a strip around the real s-axis and decaying at
    both ends this converges exponentially in 1/h.
    """
    n = int(np.ceil((s_hi - s_lo) / h))
    s = s_lo + h * np.arange(n + 1)
    t = np.exp(s)
    return QuadratureRule("adaptive-halfline", t, h * t)
