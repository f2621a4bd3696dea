"""Central finite differences with Richardson extrapolation along a 1D curve."""

from __future__ import annotations

from typing import Callable

import numpy as np

__all__ = ["FDSpec", "curve_derivative", "DEFAULT_FD"]


class FDSpec:
    """Step size and number of Richardson levels for a central stencil."""

    __slots__ = ("h", "levels")

    def __init__(self, h: float = 1e-3, levels: int = 2):
        if not h > 0:
            raise ValueError(f"FD step must be positive, got {h}")
        if levels < 0:
            raise ValueError(f"Richardson levels must be >= 0, got {levels}")
        self.h = float(h)
        self.levels = int(levels)

    def scaled(self, factor: float) -> "FDSpec":
        return FDSpec(self.h * factor, self.levels)

    def __repr__(self) -> str:
        return f"FDSpec(h={self.h!r}, levels={self.levels!r})"


DEFAULT_FD = FDSpec()


def _central(g: Callable[[float], complex], h: float, order: int, g0: complex | None):
    if order == 1:
        return (g(h) - g(-h)) / (2 * h)
    if order == 2:
        return (g(h) - 2 * g0 + g(-h)) / (h * h)
    raise ValueError(f"only first and second derivatives are supported, got {order}")


def curve_derivative(
    g: Callable[[float], complex], order: int = 1, fd: FDSpec = DEFAULT_FD
) -> complex:
    """Derivative of order 1 or 2 of ``g`` at 0.

    Uses steps h, h/2, ..., h/2**levels and eliminates the even error terms
    by Richardson extrapolation, so the truncation error is O(h**(2*levels+2)).
    """
    g0 = g(0.0) if order == 2 else None
    table = [_central(g, fd.h / 2**i, order, g0) for i in range(fd.levels + 1)]
    for j in range(1, fd.levels + 1):
        f = 4.0**j
        table = [(f * table[i + 1] - table[i]) / (f - 1) for i in range(len(table) - 1)]
    return table[0]


def max_abs(values) -> float:
    arr = np.abs(np.asarray(values))
    return float(arr.max()) if arr.size else 0.0
