"""Fitting c1 x^e + c2 versus c1 log x + c2 to samples near x = 0."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

__all__ = ["FitError", "SingularFit", "fit_singular", "asymptotic_exponent", "check_grid"]

EXPONENT_BOUNDS = (-0.999, -0.01)
FIT_TOLERANCE = 0.1


class FitError(RuntimeError):
    """Neither the power model nor the logarithmic model explains the samples."""


@dataclass(frozen=True)
class SingularFit:
    exponent: float
    power_coeffs: tuple[complex, complex]
    power_residual: float
    log_coeffs: tuple[complex, complex]
    log_residual: float
    smooth_residual: float
    signal: float
    pinned: bool = False

    @property
    def log_flag(self) -> bool:
        """The logarithm explains the data better, or the power fit is pinned at the
        exponent bound closest to 0, where c1 x^e degenerates into c1 (1 + e log x)."""
        return self.log_residual < self.power_residual or self.pinned

    @property
    def residual(self) -> float:
        return min(self.power_residual, self.log_residual)

    @property
    def flat(self) -> bool:
        """Samples are constant to rounding: no singular part to fit."""
        return self.signal == 0.0


def _lstsq(A: np.ndarray, D: np.ndarray):
    coef, *_ = np.linalg.lstsq(A, D, rcond=None)
    return coef, float(np.linalg.norm(A @ coef - D))


def fit_singular(x, D, bounds: tuple[float, float] = EXPONENT_BOUNDS) -> SingularFit:
    """Fit samples D(x) by c1 x^e + c2, by c1 log x + c2, and by c2 + c3 x.

    Residuals are relative to the spread ||D - mean D||.  The exponent is
    found by a coarse scan refined with a bounded scalar minimization; the
    inner problem is linear in (c1, c2), real or complex.
    """
    x = np.asarray(x, dtype=float)
    D = np.asarray(D)
    ones = np.ones_like(x)
    spread = float(np.linalg.norm(D - D.mean()))
    if spread <= 1e-13 * max(float(np.abs(D).max(initial=0.0)), 1e-300) * np.sqrt(D.size):
        return SingularFit(float("nan"), (0, 0), 0.0, (0, 0), 0.0, 0.0, 0.0)

    def power(e):
        return _lstsq(np.column_stack([x**e, ones]).astype(D.dtype), D)

    scan = np.linspace(bounds[0], bounds[1], 100)
    errs = [power(e)[1] for e in scan]
    i = int(np.argmin(errs))
    lo, hi = scan[max(i - 1, 0)], scan[min(i + 1, scan.size - 1)]
    res = minimize_scalar(lambda e: power(e)[1], bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-10})
    e = float(res.x) if res.fun <= errs[i] else float(scan[i])
    pc, perr = power(e)
    lc, lerr = _lstsq(np.column_stack([np.log(x), ones]).astype(D.dtype), D)
    _, serr = _lstsq(np.column_stack([ones, x]).astype(D.dtype), D)
    return SingularFit(
        exponent=e,
        power_coeffs=(pc[0].item(), pc[1].item()),
        power_residual=perr / spread,
        log_coeffs=(lc[0].item(), lc[1].item()),
        log_residual=lerr / spread,
        smooth_residual=serr / spread,
        signal=spread,
        pinned=bool(e >= bounds[1] - 1e-6),
    )


def check_grid(samples) -> np.ndarray:
    x = np.asarray(samples, dtype=float)
    if x.ndim != 1 or x.size < 12:
        raise ValueError("asymptotic grid needs at least 12 points")
    if np.any(x <= 0) or x.max() > 0.5:
        raise ValueError("asymptotic grid must lie in (0, 0.5]")
    if np.log10(x.max() / x.min()) < 2 - 1e-12:
        raise ValueError("asymptotic grid must span at least two decades")
    return x


def asymptotic_exponent(sol, samples=None) -> SingularFit:
    """Fit the order-(k+1) derivative of a bounded solution near 0.

    Returns the fit; ``exponent`` estimates the power (expected c - k for
    the non-integral index c) and ``log_flag`` reports that the logarithmic
    model fits better, which is the integral-index branch.
    """
    x = check_grid(np.geomspace(1e-8, 1e-4, 16) if samples is None else samples)
    D = sol.derivative(sol.k + 1, x)
    fit = fit_singular(x, D)
    if fit.residual > FIT_TOLERANCE:
        raise FitError(
            f"no model fits: power residual {fit.power_residual:.3g}, "
            f"log residual {fit.log_residual:.3g}"
        )
    return fit
