"""Poisson kernels on C^n and H^n, harmonic extensions, derivative probes and
the boundary-regularity dichotomy.

On C^n the operator is Lambda_alpha = alpha a (Delta - n d_a) + a^2 d_a^2 and
the Poisson kernel Q_a^alpha has Fourier multiplier z(alpha |xi|^2 a), z the
bounded Legendre-type solution with beta = alpha n.  On H^n the kernel P_a^alpha
of L_alpha is synthesized from e_kappa^lam g_kappa(|lam| a), g_kappa the bounded
hypergeometric-type solution with gamma = alpha n, beta = 2 alpha kappa.

Boundary data are finite sums (trigonometric modes on C^n, atoms
e_kappa^lam on H^n), so every probe reduces to a finite formula.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial, lgamma, pi
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from ._fd import DEFAULT_FD, FDSpec, curve_derivative
from .heisenberg import HPoint, SpectralProfile, e_kappa_lambda, hn_inv
from .specfun import fit_singular, singular_index
from .specfun.bounded import BoundedHyperSolution, BoundedLegendreSolution
from .specfun.orthopoly import laguerre

__all__ = [
    "RadialMultiplier",
    "TrigBoundaryData",
    "FourierProfile",
    "annular_profile",
    "q_multiplier",
    "extend_Cn",
    "lambda_alpha_residual",
    "I_p_probe",
    "g_radial",
    "p_kernel_term",
    "HKernelSpec",
    "TruncationWarning",
    "KernelEvaluation",
    "p_kernel",
    "p_kernel_grid",
    "p_kernel_mass",
    "HeisAtom",
    "HeisBoundaryData",
    "heis_I_probe",
    "psi_p_ode",
    "psi_p_limit",
    "ProbeConfig",
    "DichotomyReport",
    "dichotomy",
    "BLOWUP_EXPONENT",
    "FIT_RESIDUAL_LIMIT",
]

BLOWUP_EXPONENT = -0.05
FIT_RESIDUAL_LIMIT = 0.1


@lru_cache(maxsize=None)
def _legendre(beta: float) -> BoundedLegendreSolution:
    return BoundedLegendreSolution(beta)


@lru_cache(maxsize=None)
def _hyper(gamma: float, beta: float) -> BoundedHyperSolution:
    return BoundedHyperSolution(gamma, beta)


def _check_alpha(alpha: float):
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")


# ------------------------------------------------------------------ C^n side


@dataclass(frozen=True)
class RadialMultiplier:
    """xi -> z(alpha |xi|^2 a), the Fourier multiplier of Q_a^alpha."""

    alpha: float
    n: int

    def __post_init__(self):
        _check_alpha(self.alpha)
        if self.n < 1:
            raise ValueError("n must be at least 1")

    @property
    def z(self) -> BoundedLegendreSolution:
        return _legendre(float(self.alpha * self.n))

    @property
    def k(self) -> int:
        return self.z.k

    def __call__(self, a: float, xi) -> float:
        return self.derivative(0, a, xi)

    def derivative(self, p: int, a: float, xi) -> float:
        """d^p/da^p z(alpha |xi|^2 a) = (alpha |xi|^2)^p z^{(p)}(alpha |xi|^2 a)."""
        if a < 0:
            raise ValueError("a must be non-negative")
        s = self.alpha * float(np.sum(np.square(xi)))
        if s == 0:
            return 1.0 if p == 0 else 0.0
        return s**p * float(self.z.derivative(p, s * a))


def q_multiplier(alpha: float, n: int, a: float, xi) -> float:
    return RadialMultiplier(alpha, n)(a, xi)


@dataclass(frozen=True, eq=False)
class TrigBoundaryData:
    """f(zeta) = sum_m c_m exp(i xi_m . zeta) on C^n = R^{2n}."""

    freqs: np.ndarray
    coeffs: np.ndarray

    def __post_init__(self):
        freqs = np.atleast_2d(np.asarray(self.freqs, dtype=float))
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if freqs.shape[0] != coeffs.size:
            raise ValueError("one coefficient per frequency")
        if freqs.shape[1] % 2:
            raise ValueError("frequencies live in R^{2n}")
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def constant(cls, value: complex, n: int) -> "TrigBoundaryData":
        return cls(np.zeros((1, 2 * n)), [value])

    @classmethod
    def single_mode(cls, xi, coeff: complex = 1.0) -> "TrigBoundaryData":
        return cls([xi], [coeff])

    @property
    def n(self) -> int:
        return self.freqs.shape[1] // 2

    @property
    def bound(self) -> float:
        """sum |c_m|, a bound for sup |f|."""
        return float(np.sum(np.abs(self.coeffs)))

    def __call__(self, zeta) -> complex:
        return complex(np.sum(self.coeffs * np.exp(1j * self.freqs @ np.asarray(zeta, dtype=float))))


def extend_Cn(f: TrigBoundaryData, alpha: float, a: float, zeta) -> complex:
    """F(zeta, a) = sum_m c_m exp(i xi_m . zeta) z(alpha |xi_m|^2 a) = (f * Q_a^alpha)(zeta)."""
    mult = RadialMultiplier(alpha, f.n)
    zeta = np.asarray(zeta, dtype=float)
    total = 0j
    for xi, c in zip(f.freqs, f.coeffs):
        total += c * np.exp(1j * xi @ zeta) * mult(a, xi)
    return complex(total)


def lambda_alpha_residual(F: Callable, alpha: float, n: int, zeta, a: float,
                          fd: FDSpec = DEFAULT_FD) -> complex:
    """Lambda_alpha F = alpha a (Delta F - n d_a F) + a^2 d_a^2 F by finite differences.

    F is called as F(zeta, a) with zeta in R^{2n}.
    """
    zeta = np.asarray(zeta, dtype=float)
    fa = fd.scaled(min(1.0, a))
    if a - fa.h <= 0:
        raise ValueError("finite-difference stencil leaves the domain a > 0")
    lap = 0j
    for i in range(2 * n):
        e = np.zeros(2 * n)
        e[i] = 1.0
        lap += curve_derivative(lambda s: F(zeta + s * e, a), 2, fd)
    d1 = curve_derivative(lambda s: F(zeta, a + s), 1, fa)
    d2 = curve_derivative(lambda s: F(zeta, a + s), 2, fa)
    return alpha * a * (lap - n * d1) + a * a * d2


@dataclass(frozen=True, eq=False)
class FourierProfile:
    """A test function phi on C^n given through its Fourier transform phi_hat."""

    phi_hat: Callable[[np.ndarray], complex]
    inner: float
    outer: float

    def __call__(self, xi) -> complex:
        return self.phi_hat(np.asarray(xi, dtype=float))


def annular_profile(inner: float = 0.5, outer: float = 2.0) -> FourierProfile:
    """phi_hat(xi) = exp(1 - 1/(1 - s^2)), s the affine coordinate of |xi| in (inner, outer)."""
    if not 0 < inner < outer:
        raise ValueError("need 0 < inner < outer so that 0 is outside the support")

    def phi_hat(xi):
        s = (2 * np.linalg.norm(xi) - inner - outer) / (outer - inner)
        return float(np.exp(1 - 1 / (1 - s * s))) if abs(s) < 1 else 0.0

    return FourierProfile(phi_hat, inner, outer)


def _check_p(p: int, k: int):
    if p < 0 or p != int(p) or p > k + 1:
        raise ValueError(f"probe order must lie in 0..k+1 = {k + 1}, got {p}")


def I_p_probe(f: TrigBoundaryData, alpha: float, phi: FourierProfile, p: int, a: float) -> complex:
    """I_p(a) = alpha^p sum_m c_m phi_hat(-xi_m) |xi_m|^{2p} z^{(p)}(alpha |xi_m|^2 a)."""
    mult = RadialMultiplier(alpha, f.n)
    _check_p(p, mult.k)
    total = 0j
    for xi, c in zip(f.freqs, f.coeffs):
        weight = phi(-xi)
        if weight == 0:
            continue
        total += c * weight * mult.derivative(p, a, xi)
    return complex(total)


# ------------------------------------------------------------------ H^n side


def g_radial(alpha: float, n: int, kappa: int, x):
    """g(x) = bounded_hyper(gamma = alpha n, beta = 2 alpha kappa) at x; g(0) = 1."""
    return _g_solution(alpha, n, kappa).evaluate(x)


def _g_solution(alpha: float, n: int, kappa: int) -> BoundedHyperSolution:
    _check_alpha(alpha)
    if kappa < 0:
        raise ValueError("kappa must be non-negative")
    return _hyper(float(alpha * n), float(2 * alpha * kappa))


def p_kernel_term(alpha: float, lam: float, kappa: int, w: HPoint, a: float) -> complex:
    """e_kappa^lam(w^{-1}) g_kappa(|lam| a)."""
    if lam == 0:
        raise ValueError("lambda must be non-zero")
    if a < 0:
        raise ValueError("a must be non-negative")
    return e_kappa_lambda(lam, kappa, hn_inv(w)) * float(g_radial(alpha, w.n, kappa, abs(lam) * a))


class TruncationWarning(UserWarning):
    """The kappa-tail of a truncated kernel series is not negligible."""


_PANEL = 32


def _composite_gauss(lo: float, hi: float, m: int):
    """Gauss-Legendre with 32 nodes per panel and about m nodes in total."""
    x, w = leggauss(_PANEL)
    panels = max(1, -(-m // _PANEL))
    edges = np.linspace(lo, hi, panels + 1)
    half = np.diff(edges)[:, None] / 2
    nodes = edges[:-1, None] + half * (x[None, :] + 1)
    return nodes.ravel(), (half * w[None, :]).ravel()


@dataclass(frozen=True)
class HKernelSpec:
    """Truncation parameters for P_a^alpha.

    The lambda-integral runs over [lambda_floor, lambda_cut / a] on each side of 0;
    g_kappa(x) <= e^{-x} makes the cut at x = lambda_cut harmless.
    """

    alpha: float
    n: int = 1
    kappa_max: int = 32
    lambda_cut: float = 40.0
    lambda_floor: float = 1e-8
    lambda_nodes: int | None = None
    tail_tolerance: float = 0.01

    def __post_init__(self):
        _check_alpha(self.alpha)
        if self.kappa_max < 0:
            raise ValueError("kappa_max must be non-negative")
        if not 0 < self.lambda_floor < self.lambda_cut:
            raise ValueError("lambda grid must exclude a neighbourhood of 0")

    @property
    def constant(self) -> float:
        """c_n = 2^n / (2 pi^{n+1}); see ``heisenberg.inversion_constant``."""
        return 2.0**self.n / (2 * pi ** (self.n + 1))

    def lambda_rule(self, a: float, oscillation: float = 0.0):
        """Gauss-Legendre nodes on the positive half of the lambda grid.

        ``oscillation`` is the largest |t| the integrand is paired with; the
        node count grows with the number of periods of cos(lambda t).
        """
        hi = self.lambda_cut / a
        m = self.lambda_nodes or int(200 + 1.6 * hi * oscillation + 10 * self.kappa_max)
        return _composite_gauss(self.lambda_floor, hi, m)


@dataclass(frozen=True)
class KernelEvaluation:
    values: np.ndarray
    last_term: np.ndarray
    tail_estimate: float

    @property
    def head(self) -> float:
        return float(np.max(np.abs(self.values)))


def _kappa_sum(spec: HKernelSpec, lam: np.ndarray, a: float, radial: Callable):
    """Partial sums of g_kappa(lam a) lam^n R_kappa(lam), R_kappa = radial(E_kappa).

    Returns the sum up to kappa_max, the last two terms, and snapshots of the
    partial sums at kappa_max // 2 and kappa_max // 4.
    """
    n = spec.n
    K = spec.kappa_max
    total = None
    last = prev = None
    snaps = {}
    for kappa, E in enumerate(_laguerre_profiles(spec, lam, radial)):
        g = _g_solution(spec.alpha, n, kappa).evaluate(lam * a)
        term = (g * lam**n)[:, None] * E
        total = term if total is None else total + term
        prev, last = last, term
        if kappa in (K // 2, K // 4):
            snaps[kappa] = total.copy()
    return total, last, prev, snaps[K // 2], snaps[K // 4]


def _laguerre_profiles(spec: HKernelSpec, lam: np.ndarray, radial: Callable):
    """Yield radial(E_kappa) for kappa = 0..kappa_max, where
    E_kappa(lam, r2) = exp(-lam r2) L_kappa^{(n-1)}(2 lam r2) on the radial grid."""
    r2, reduce = radial()
    X = 2 * np.outer(lam, r2)
    damp = np.exp(-0.5 * X)
    al = spec.n - 1
    prev = np.zeros_like(X)
    cur = np.ones_like(X)
    for kappa in range(spec.kappa_max + 1):
        yield reduce(damp * cur)
        prev, cur = cur, ((2 * kappa + 1 + al - X) * cur - (kappa + al) * prev) / (kappa + 1)


def _tail(last, prev, head, kappa_max) -> float:
    """Tail size from the last two terms, taken where the last term is largest.

    Alternating terms leave at most half the last term; same-sign terms are
    extrapolated geometrically with ratio r = last/prev, which for a power law
    kappa^{-s} gives about last * kappa / s.
    """
    if last is None:
        return 0.0
    last = np.ravel(last)
    i = int(np.argmax(np.abs(last)))
    lm = float(abs(last[i]))
    if prev is None or lm == 0.0:
        return lm * max(kappa_max, 1)
    r = float(last[i] / np.ravel(prev)[i]) if np.ravel(prev)[i] != 0 else np.inf
    if r <= 0:
        return lm / 2
    if r >= 1:
        return lm * max(kappa_max, 1)
    return lm * r / (1 - r)


def p_kernel_grid(spec: HKernelSpec, r2, t, a: float, extrapolate: bool = True) -> KernelEvaluation:
    """P_a^alpha on the tensor grid |zeta|^2 in r2, t in t (shape len(t) x len(r2)).

    P_a(w) = c_n sum_kappa int e_kappa^lam(w^{-1}) g_kappa(|lam| a) |lam|^n d lam,
    with the +lam and -lam halves combined into 2 cos(lam t).  Pointwise, the
    terms settle into a same-sign kappa^{-2} decay, so the partial sums S_K
    carry an O(1/K) error; ``extrapolate`` returns 2 S_K - S_{K/2}, and the
    tail estimate is then its change from K/2 to K.
    """
    if not a > 0:
        raise ValueError("a must be positive")
    if extrapolate and spec.kappa_max < 8:
        raise ValueError("extrapolation needs kappa_max >= 8")
    r2 = np.atleast_1d(np.asarray(r2, dtype=float))
    t = np.atleast_1d(np.asarray(t, dtype=float))
    lam, wl = spec.lambda_rule(a, float(np.max(np.abs(t))))
    C = spec.constant * 2 * np.cos(np.outer(t, lam)) * wl[None, :]
    total, last, prev, half, quarter = _kappa_sum(spec, lam, a, lambda: (r2, lambda M: M))
    values = C @ total
    last_v = C @ last
    if extrapolate:
        half_v = C @ half
        coarse = 2 * half_v - C @ quarter
        values = 2 * values - half_v
        tail = float(np.max(np.abs(values - coarse)))
    else:
        tail = _tail(last_v, None if prev is None else C @ prev, values, spec.kappa_max)
    head = float(np.max(np.abs(values)))
    if tail > spec.tail_tolerance * head:
        warnings.warn(
            f"kappa tail estimate {tail:.3g} exceeds {spec.tail_tolerance:.0%} of the head {head:.3g}",
            TruncationWarning,
            stacklevel=2,
        )
    return KernelEvaluation(values, last_v, tail)


def p_kernel(spec: HKernelSpec, w: HPoint, a: float) -> float:
    """Truncated P_a^alpha at a single point of H^n."""
    if w.n != spec.n:
        raise ValueError("dimension mismatch")
    r2 = float(np.sum(np.abs(w.zeta) ** 2))
    return float(p_kernel_grid(spec, [r2], [w.t], a).values[0, 0])


def p_kernel_mass(spec: HKernelSpec, a: float, radius: float = 10.0, height: float = 40.0,
                  radial_nodes: int = 400) -> KernelEvaluation:
    """Integral of the truncated P_a^alpha over {|zeta| < radius, |t| < height}.

    The t-integral is exact (int cos(lam t) dt = 2 sin(lam h)/lam); the zeta-integral
    uses Gauss-Legendre nodes in |zeta| with the measure of C^n in polar form.
    """
    if not a > 0:
        raise ValueError("a must be positive")
    n = spec.n
    lam, wl = spec.lambda_rule(a, height)
    x, w = leggauss(radial_nodes)
    r = radius * (x + 1) / 2
    meas = 2 * pi**n / factorial(n - 1) * r ** (2 * n - 1) * w * radius / 2
    total, last, prev, _, _ = _kappa_sum(spec, lam, a, lambda: (r * r, lambda M: (M @ meas)[:, None]))
    tfac = 2 * (2 * np.sin(lam * height) / lam) * wl
    c = spec.constant
    mass = c * np.sum(tfac * total[:, 0])
    last_v = np.array([c * np.sum(tfac * last[:, 0])])
    prev_v = None if prev is None else np.array([c * np.sum(tfac * prev[:, 0])])
    tail = _tail(last_v, prev_v, mass, spec.kappa_max)
    if tail > spec.tail_tolerance * abs(mass):
        warnings.warn(f"kappa tail estimate {tail:.3g} exceeds {spec.tail_tolerance:.0%} of the mass",
                      TruncationWarning, stacklevel=2)
    return KernelEvaluation(np.array([mass]), last_v, tail)


@dataclass(frozen=True)
class HeisAtom:
    lam: float
    kappa: int
    coeff: complex = 1.0

    def __post_init__(self):
        if self.lam == 0:
            raise ValueError("atoms need lambda != 0")
        if self.kappa < 0:
            raise ValueError("kappa must be non-negative")


@dataclass(frozen=True)
class HeisBoundaryData:
    """f = sum_j b_j e_{kappa_j}^{lam_j} on H^n."""

    atoms: tuple[HeisAtom, ...]
    n: int = 1

    def __call__(self, w: HPoint) -> complex:
        return sum(at.coeff * e_kappa_lambda(at.lam, at.kappa, w) for at in self.atoms)


def _pairing(atom: HeisAtom, psi: SpectralProfile, kappa: int, n: int) -> complex:
    """int e_{kappa_j}^{lam_j}(w) e_kappa^psi(w) dw over H^n.

    The t-integral forces mu = -lam_j and the zeta-integral is the Laguerre
    orthogonality relation, which leaves
    delta_{kappa kappa_j} 2 pi psi(-lam_j) (pi / (2|lam_j|))^n C(kappa+n-1, n-1).
    """
    if atom.kappa != kappa:
        return 0j
    lam = atom.lam
    val = float(psi.func(np.array([-lam]))[0])
    return 2 * pi * val * (pi / (2 * abs(lam))) ** n * comb(kappa + n - 1, n - 1)


def heis_I_probe(f: HeisBoundaryData, alpha: float, psi: SpectralProfile, kappa: int,
                 p: int, a: float) -> complex:
    """d^p/da^p int F(w, a) e_kappa^psi(w) dw for F the L_alpha-harmonic extension of f.

    Each atom extends to e_{kappa_j}^{lam_j}(w) g_{kappa_j}(|lam_j| a), so the probe is
    sum_j b_j pairing_j |lam_j|^p g_{kappa_j}^{(p)}(|lam_j| a).
    """
    k = singular_index(alpha * f.n)
    _check_p(p, k)
    total = 0j
    for atom in f.atoms:
        pair = _pairing(atom, psi, kappa, f.n)
        if pair == 0:
            continue
        g = _g_solution(alpha, f.n, atom.kappa)
        total += atom.coeff * pair * abs(atom.lam) ** p * float(g.derivative(p, abs(atom.lam) * a))
    return complex(total)


def _psi_exponent(n: int, alpha: float, p: int) -> float:
    e = n * alpha - p + 1
    if abs(e) < 1e-12:
        raise ValueError("p - 1 - n alpha = 0: the solution formula degenerates")
    return e


def psi_p_ode(n: int, alpha: float, p: int, g_p: Callable[[float], float], lambda_const: float,
              a: float) -> float:
    """psi_p(a) = lambda a^e + a^e int_1^a g_p(t) t^{-e-1} dt with e = n alpha - p + 1.

    This solves a psi' + (p - 1 - n alpha) psi = g_p.  The integral is taken in
    s = log t, where the integrand g_p(e^s) e^{-e s} is smooth.
    """
    from scipy.integrate import quad

    _check_alpha(alpha)
    k = singular_index(alpha * n)
    if p < 1 or p > k:
        raise ValueError(f"p must lie in 1..k = {k}")
    e = _psi_exponent(n, alpha, p)
    if not a > 0:
        raise ValueError("a must be positive")
    val, _ = quad(lambda s: g_p(np.exp(s)) * np.exp(-e * s), 0.0, np.log(a),
                  epsabs=0, epsrel=1e-12, limit=200)
    return float(a**e * (lambda_const + val))


def psi_p_limit(n: int, alpha: float, p: int, g_p: Callable[[float], float],
                lambda_const: float = 0.0, a_grid: Sequence[float] | None = None):
    """Values of psi_p on a decreasing a-grid and their successive differences.

    With e > 0 the differences shrink and the last value estimates lim psi_p,
    which equals -g_p(0)/e.
    """
    a_grid = np.geomspace(1e-1, 1e-8, 8) if a_grid is None else np.asarray(a_grid, dtype=float)
    vals = np.array([psi_p_ode(n, alpha, p, g_p, lambda_const, a) for a in a_grid])
    return vals, np.abs(np.diff(vals))


# ------------------------------------------------------------------ dichotomy


@dataclass(frozen=True)
class ProbeConfig:
    """Sampling for the dichotomy: a geometric grid in [a_min, a_max], fitted on
    the last ``fit_decades`` decades; phi (C^n) or psi and kappa (H^n) profiles."""

    a_min: float = 1e-4
    a_max: float = 1.0
    samples: int = 25
    fit_decades: float = 2.0
    phi: FourierProfile | None = None
    psi: SpectralProfile | None = None
    kappa: int = 1

    def grid(self) -> np.ndarray:
        if not 0 < self.a_min < self.a_max:
            raise ValueError("need 0 < a_min < a_max")
        return np.geomspace(self.a_max, self.a_min, self.samples)


@dataclass(frozen=True)
class DichotomyReport:
    p: int
    a_samples: np.ndarray
    values: np.ndarray
    fitted_exponent: float
    expected_exponent: float
    verdict: str
    fit_residual: float
    log_flag: bool = False
    k: int = 0
    lower_bounded: tuple[bool, ...] = ()

    def as_record(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "fitted_exponent": self.fitted_exponent,
            "expected_exponent": self.expected_exponent,
            "verdict": self.verdict,
            "fit_residual": self.fit_residual,
            "log_flag": self.log_flag,
            "lower_bounded": all(self.lower_bounded),
        }


def _blows_up(fit) -> bool:
    """Singular growth: a singular model fits, beats the smooth one, and is a genuine
    negative power or the logarithm."""
    if fit.flat or fit.residual > FIT_RESIDUAL_LIMIT:
        return False
    if fit.smooth_residual <= fit.residual:
        return False
    return fit.log_flag or fit.exponent < BLOWUP_EXPONENT


def dichotomy(f, alpha: float, n: int, config: ProbeConfig = ProbeConfig()) -> DichotomyReport:
    """Probe orders 0..k+1 on a geometric a-grid and classify the boundary behaviour.

    ``f`` is TrigBoundaryData (C^n; needs ``config.phi``) or HeisBoundaryData
    (H^n; needs ``config.psi``).  The order-(k+1) probe is fitted by c1 a^e + c2
    and by c1 log a + c2 on the last decades of the grid; the verdict is
    "blow-up" when it grows like a negative power or a logarithm.
    """
    _check_alpha(alpha)
    if f.n != n:
        raise ValueError("dimension of the data does not match n")
    if isinstance(f, TrigBoundaryData):
        phi = config.phi or annular_profile()
        probe = lambda p, a: I_p_probe(f, alpha, phi, p, a)
    elif isinstance(f, HeisBoundaryData):
        if config.psi is None:
            raise ValueError("H^n probes need a spectral profile psi")
        probe = lambda p, a: heis_I_probe(f, alpha, config.psi, config.kappa, p, a)
    else:
        raise TypeError(f"unsupported boundary data {type(f).__name__}")

    k = singular_index(alpha * n)
    grid = config.grid()
    fit_mask = grid <= config.a_min * 10**config.fit_decades * (1 + 1e-12)
    values = {p: np.array([probe(p, a) for a in grid]) for p in range(k + 2)}

    def fit(p):
        return fit_singular(grid[fit_mask], values[p][fit_mask])

    lower = tuple(not _blows_up(fit(p)) and bool(np.all(np.isfinite(values[p]))) for p in range(k + 1))
    top = fit(k + 1)
    blow = _blows_up(top) or not all(lower)
    return DichotomyReport(
        p=k + 1,
        a_samples=grid,
        values=values[k + 1],
        fitted_exponent=top.exponent,
        expected_exponent=alpha * n - k,
        verdict="blow-up" if blow else "regular",
        fit_residual=top.residual,
        log_flag=bool(top.log_flag) and not top.flat,
        k=k,
        lower_bounded=lower,
    )
