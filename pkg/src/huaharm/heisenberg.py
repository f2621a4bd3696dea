"""Heisenberg group H^n, its extension S by dilations, and harmonic analysis on them.

Points of H^n are [zeta, t] with the law

    [zeta, t][eta, s] = [zeta + eta, t + s + 2 Im(zeta . conj(eta))].

S = H^n x (0, inf) has points [zeta, t, a] and acts simply transitively on the
Siegel domain U^n = {(z', z_{n+1}) : Im z_{n+1} > |z'|^2} by Heisenberg
translation after the dilation (z', z_{n+1}) -> (a^{1/2} z', a z_{n+1}).

Representation convention.  R^lam acts on L^2(R^n) by

    R^lam(u + iv, t) Phi(x) = exp(i lam (4 u.x + 2 u.v + t)) Phi(x + v),

so lam is the frequency in the central variable t.  With this convention the
sub-Laplacian acts on e_kappa^lam by (2 kappa + n)|lam|.  The representation
written with the phase 2 pi mu (u.x + u.v/2 + t/4) and scale (2 pi |mu|)^{1/2}
is the same family at lam = pi mu / 2; pass ``printed=True`` to use mu.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, pi
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

from ._fd import DEFAULT_FD, FDSpec, curve_derivative
from .specfun.orthopoly import (
    DEGREE_GUARD,
    hermite_poly_part,
    laguerre,
    multi_indices,
    phi_k,
)
from .specfun.quadrature import gauss_hermite

__all__ = [
    "HPoint",
    "SPoint",
    "SiegelPoint",
    "FieldId",
    "SpectralProfile",
    "bump_profile",
    "hn_mul",
    "hn_inv",
    "s_mul",
    "s_inv",
    "s_act",
    "dilate",
    "apply_field",
    "commutator",
    "op_calL_alpha",
    "op_L_alpha",
    "rep_coeff",
    "e_kappa_lambda",
    "e_kappa_radial",
    "e_kappa_psi",
    "cauchy_kernel",
    "log_kernel",
    "boundary_residuals",
    "inversion_constant",
    "GaussianTestFunction",
    "inversion_partial_sums",
    "inversion_target",
]


# ---------------------------------------------------------------- points


def _cvec(zeta) -> np.ndarray:
    return np.atleast_1d(np.asarray(zeta, dtype=complex))


@dataclass(frozen=True, eq=False)
class HPoint:
    zeta: np.ndarray
    t: float

    def __post_init__(self):
        object.__setattr__(self, "zeta", _cvec(self.zeta))
        object.__setattr__(self, "t", float(self.t))

    @property
    def n(self) -> int:
        return self.zeta.size

    @classmethod
    def identity(cls, n: int) -> "HPoint":
        return cls(np.zeros(n, dtype=complex), 0.0)

    def __repr__(self) -> str:
        return f"HPoint(zeta={self.zeta.tolist()}, t={self.t})"


@dataclass(frozen=True, eq=False)
class SPoint:
    zeta: np.ndarray
    t: float
    a: float

    def __post_init__(self):
        object.__setattr__(self, "zeta", _cvec(self.zeta))
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "a", float(self.a))
        if not self.a > 0:
            raise ValueError(f"S-points need a > 0, got {self.a}")

    @property
    def n(self) -> int:
        return self.zeta.size

    @property
    def h(self) -> HPoint:
        return HPoint(self.zeta, self.t)

    @classmethod
    def identity(cls, n: int) -> "SPoint":
        return cls(np.zeros(n, dtype=complex), 0.0, 1.0)

    def siegel(self) -> "SiegelPoint":
        """The image [zeta, t, a](0, i) = (zeta, t + i|zeta|^2 + i a)."""
        return SiegelPoint(np.append(self.zeta, self.t + 1j * (_abs2(self.zeta) + self.a)))

    def __repr__(self) -> str:
        return f"SPoint(zeta={self.zeta.tolist()}, t={self.t}, a={self.a})"


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    z: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "z", _cvec(self.z))
        if self.z.size < 2:
            raise ValueError("Siegel points live in C^{n+1} with n >= 1")

    @property
    def n(self) -> int:
        return self.z.size - 1

    @property
    def r(self) -> float:
        """Height Im z_{n+1} - |z'|^2; positive inside U^n, zero on its boundary."""
        return float(self.z[-1].imag - _abs2(self.z[:-1]))

    def to_spoint(self) -> SPoint:
        zp = self.z[:-1]
        return SPoint(zp, self.z[-1].real, self.r)


def _abs2(zeta) -> float:
    zeta = np.asarray(zeta)
    return float(np.sum(zeta.real**2 + zeta.imag**2))


def _check_dim(p, q):
    if p.n != q.n:
        raise ValueError(f"dimension mismatch: {p.n} vs {q.n}")


def _im_dot(zeta, eta) -> float:
    """Im(zeta . conj(eta))."""
    return float(np.sum(zeta * np.conj(eta)).imag)


def hn_mul(p: HPoint, q: HPoint) -> HPoint:
    _check_dim(p, q)
    return HPoint(p.zeta + q.zeta, p.t + q.t + 2 * _im_dot(p.zeta, q.zeta))


def hn_inv(p: HPoint) -> HPoint:
    return HPoint(-p.zeta, -p.t)


def s_mul(p: SPoint, q: SPoint) -> SPoint:
    """[zeta,t,a][eta,s,b] = [zeta + a^{1/2} eta, t + a s + 2 a^{1/2} Im(zeta.conj(eta)), ab]."""
    _check_dim(p, q)
    ra = np.sqrt(p.a)
    return SPoint(
        p.zeta + ra * q.zeta,
        p.t + p.a * q.t + 2 * ra * _im_dot(p.zeta, q.zeta),
        p.a * q.a,
    )


def s_inv(p: SPoint) -> SPoint:
    ra = np.sqrt(p.a)
    return SPoint(-p.zeta / ra, -p.t / p.a, 1 / p.a)


def dilate(delta: float, z: SiegelPoint) -> SiegelPoint:
    """delta o (z', z_{n+1}) = (delta z', delta^2 z_{n+1}); scales the height by delta^2."""
    if not delta > 0:
        raise ValueError(f"dilation factor must be positive, got {delta}")
    return SiegelPoint(np.append(delta * z.z[:-1], delta**2 * z.z[-1]))


def _translate(p: HPoint, z: SiegelPoint) -> SiegelPoint:
    zp, w = z.z[:-1], z.z[-1]
    w_new = w + p.t + 1j * _abs2(p.zeta) + 2j * np.sum(zp * np.conj(p.zeta))
    return SiegelPoint(np.append(zp + p.zeta, w_new))


def s_act(p: SPoint, z: SiegelPoint) -> SiegelPoint:
    if p.n != z.n:
        raise ValueError(f"dimension mismatch: {p.n} vs {z.n}")
    return _translate(p.h, dilate(np.sqrt(p.a), z))


# ---------------------------------------------------------------- fields

_H_TAGS = ("X", "Y", "T", "Z", "Zbar")
_S_TAGS = ("aX", "aY", "aT", "aDa", "Da", "Z_n1", "Zbar_n1")


@dataclass(frozen=True)
class FieldId:
    """A vector field by tag, with an index j (1-based) for the X, Y, Z families.

    X, Y, T, Z, Zbar are the H^n fields X_j = d_x + 2y d_t, Y_j = d_y - 2x d_t,
    T = d_t, Z_j = (X_j - iY_j)/2, Zbar_j = (X_j + iY_j)/2; on S they act on
    (zeta, t) at fixed a.  aX, aY, aT are the left-invariant fields of S
    (a^{1/2}X_j, a^{1/2}Y_j, aT), aDa is a d_a, Da is d_a, and
    Z_n1 = (T - i d_a)/2, Zbar_n1 = (T + i d_a)/2.
    """

    tag: str
    j: int = 1
    fd: FDSpec = DEFAULT_FD

    def __post_init__(self):
        if self.tag not in _H_TAGS + _S_TAGS:
            raise ValueError(f"unknown field tag {self.tag!r}")
        if self.j < 1:
            raise ValueError("field index is 1-based")


def _unit(n: int, j: int, scale: complex) -> np.ndarray:
    if j > n:
        raise ValueError(f"field index {j} exceeds dimension {n}")
    e = np.zeros(n, dtype=complex)
    e[j - 1] = scale
    return e


def _h_curve(tag: str, j: int, at):
    """Curve s -> at . gamma(s) for the real fields X_j, Y_j, T (fixed a on S)."""
    n = at.n
    if tag == "T":
        unit = lambda s: HPoint(np.zeros(n, dtype=complex), s)
    else:
        direction = _unit(n, j, 1.0 if tag == "X" else 1j)
        unit = lambda s: HPoint(s * direction, 0.0)

    if isinstance(at, SPoint):
        base = at.h
        return lambda s: (lambda q: SPoint(q.zeta, q.t, at.a))(hn_mul(base, unit(s)))
    return lambda s: hn_mul(at, unit(s))


def _require_s(at, tag):
    if not isinstance(at, SPoint):
        raise TypeError(f"field {tag} needs a point of S")


def _curve(field: FieldId, at):
    tag, j = field.tag, field.j
    if tag in ("X", "Y", "T"):
        return _h_curve(tag, j, at), field.fd
    _require_s(at, tag)
    n = at.n
    if tag in ("aX", "aY", "aT"):
        if tag == "aT":
            unit = lambda s: SPoint(np.zeros(n, dtype=complex), s, 1.0)
        else:
            d = _unit(n, j, 1.0 if tag == "aX" else 1j)
            unit = lambda s: SPoint(s * d, 0.0, 1.0)
        return (lambda s: s_mul(at, unit(s))), field.fd
    if tag == "aDa":
        return (lambda s: SPoint(at.zeta, at.t, at.a * np.exp(s))), field.fd
    if tag == "Da":
        fd = field.fd.scaled(min(1.0, at.a))
        if at.a - fd.h <= 0:
            raise ValueError("finite-difference stencil leaves the domain a > 0")
        return (lambda s: SPoint(at.zeta, at.t, at.a + s)), fd
    raise AssertionError(tag)


def _derive(field: FieldId, f: Callable, at, order: int) -> complex:
    curve, fd = _curve(field, at)
    return curve_derivative(lambda s: f(curve(s)), order, fd)


def apply_field(field: FieldId, f: Callable, at) -> complex:
    """Apply a field to a callable f(point) at a point of H^n or S."""
    tag, j, fd = field.tag, field.j, field.fd
    if tag == "Z":
        return 0.5 * (_derive(FieldId("X", j, fd), f, at, 1) - 1j * _derive(FieldId("Y", j, fd), f, at, 1))
    if tag == "Zbar":
        return 0.5 * (_derive(FieldId("X", j, fd), f, at, 1) + 1j * _derive(FieldId("Y", j, fd), f, at, 1))
    if tag == "Z_n1":
        return 0.5 * (_derive(FieldId("T", 1, fd), f, at, 1) - 1j * _derive(FieldId("Da", 1, fd), f, at, 1))
    if tag == "Zbar_n1":
        return 0.5 * (_derive(FieldId("T", 1, fd), f, at, 1) + 1j * _derive(FieldId("Da", 1, fd), f, at, 1))
    return _derive(field, f, at, 1)


def apply_field_twice(field: FieldId, f: Callable, at) -> complex:
    """F -> field(field(F)) for a real field, as the second derivative along its curve."""
    if field.tag in ("Z", "Zbar", "Z_n1", "Zbar_n1"):
        return apply_field(field, lambda q: apply_field(field, f, q), at)
    return _derive(field, f, at, 2)


def commutator(f1: FieldId, f2: FieldId, f: Callable, at) -> complex:
    """[f1, f2] f = f1(f2 f) - f2(f1 f) by nested stencils."""
    a = apply_field(f1, lambda q: apply_field(f2, f, q), at)
    b = apply_field(f2, lambda q: apply_field(f1, f, q), at)
    return a - b


def _sublaplacian(f: Callable, at, fd: FDSpec) -> complex:
    total = 0.0
    for j in range(1, at.n + 1):
        total += _derive(FieldId("X", j, fd), f, at, 2) + _derive(FieldId("Y", j, fd), f, at, 2)
    return -0.25 * total


def op_calL_alpha(alpha: float, f: Callable, at, fd: FDSpec = DEFAULT_FD) -> complex:
    """calL_alpha f = -1/4 sum_j (X_j^2 + Y_j^2) f + i alpha T f."""
    return _sublaplacian(f, at, fd) + 1j * alpha * _derive(FieldId("T", 1, fd), f, at, 1)


def op_L_alpha(alpha: float, F: Callable, at: SPoint, fd: FDSpec = DEFAULT_FD) -> complex:
    """L_alpha F = -alpha a (calL F + n d_a F) + a^2 (d_a^2 F + T^2 F), calL = calL_0."""
    _require_s(at, "L_alpha")
    n, a = at.n, at.a
    da = FieldId("Da", 1, fd)
    d1 = _derive(da, F, at, 1)
    d2 = _derive(da, F, at, 2)
    tt = _derive(FieldId("T", 1, fd), F, at, 2)
    return -alpha * a * (_sublaplacian(F, at, fd) + n * d1) + a * a * (d2 + tt)


# ---------------------------------------------------------- representation


def _freq(lam: float, printed: bool) -> float:
    if lam == 0:
        raise ValueError("lambda must be non-zero")
    return pi * lam / 2 if printed else float(lam)


_GH_NODES = 64


def rep_coeff(lam: float, k, j, w: HPoint, printed: bool = False, nodes: int = _GH_NODES) -> complex:
    """<R^lam(w) h_k^lam, h_j^lam> by Gauss-Hermite quadrature of the explicit integrand.

    With y = sigma (x + v/2), sigma = (4|lam|)^{1/2}, the Gaussian factors of the
    two Hermite functions combine into exp(-|y|^2 - sigma^2 |v|^2 / 4) and the
    phase becomes lam (4 u.y / sigma + t).
    """
    lam = _freq(lam, printed)
    k, j = tuple(k), tuple(j)
    n = w.n
    if len(k) != n or len(j) != n:
        raise ValueError("multi-index length must equal n")
    if sum(k) > DEGREE_GUARD or sum(j) > DEGREE_GUARD:
        raise ValueError("multi-index exceeds the degree guard")
    u, v = w.zeta.real, w.zeta.imag
    sigma = np.sqrt(4 * abs(lam))
    rule = gauss_hermite(nodes)
    y, wt = rule.nodes, rule.weights
    total = 1.0 + 0j
    for i in range(n):
        integrand = (
            np.exp(1j * lam * 4 * u[i] * y / sigma)
            * hermite_poly_part(k[i], y + sigma * v[i] / 2)
            * hermite_poly_part(j[i], y - sigma * v[i] / 2)
        )
        total *= np.sum(wt * integrand)
    return complex(np.exp(1j * lam * w.t - sigma**2 * np.sum(v * v) / 4) * total)


def _fast_diag(lam: float, k, w: HPoint) -> complex:
    c = 2 * np.sqrt(abs(lam))
    n = w.n
    return complex(np.exp(1j * lam * w.t) * (2 * pi) ** (n / 2) * phi_k(k, c * w.zeta))


@lru_cache(maxsize=None)
def _verified_fast_path(n: int) -> bool:
    """Compare the Laguerre form of diagonal coefficients with quadrature once per n."""
    rng = np.random.default_rng(12345)
    worst = 0.0
    for lam in (0.5, -1.3, 2.0):
        for kappa in range(4):
            for k in multi_indices(n, kappa):
                zeta = rng.normal(size=n) + 1j * rng.normal(size=n)
                w = HPoint(0.7 * zeta, rng.normal())
                worst = max(worst, abs(_fast_diag(lam, k, w) - rep_coeff(lam, k, k, w)))
    if worst > 1e-6:
        raise RuntimeError(f"Laguerre fast path disagrees with quadrature by {worst:.3g}")
    return True


def e_kappa_lambda(lam: float, kappa: int, w: HPoint, method: str = "fast",
                   printed: bool = False) -> complex:
    """e_kappa^lam(w) = sum_{|k| = kappa} <R^lam(w) h_k^lam, h_k^lam>.

    ``method="fast"`` uses exp(i lam t) (2 pi)^{n/2} Phi_k(2 |lam|^{1/2} zeta),
    enabled only after a one-time comparison with the quadrature path.
    """
    lam = _freq(lam, printed)
    if kappa < 0 or kappa > DEGREE_GUARD:
        raise ValueError(f"kappa out of range: {kappa}")
    ks = list(multi_indices(w.n, kappa))
    if method == "quadrature":
        return sum(rep_coeff(lam, k, k, w) for k in ks)
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    _verified_fast_path(w.n)
    return sum(_fast_diag(lam, k, w) for k in ks)


def e_kappa_radial(lam, kappa: int, n: int, r2, t=0.0):
    """Vectorized e_kappa^lam at |zeta|^2 = r2 and t:

    exp(i lam t) exp(-|lam| r2) L_kappa^{(n-1)}(2 |lam| r2), which is the
    multi-index sum above collapsed by the Laguerre addition formula.
    """
    lam = np.asarray(lam, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    al = np.abs(lam)
    return np.exp(1j * lam * t - al * r2) * laguerre(kappa, 2 * al * r2, alpha=n - 1)


@dataclass(frozen=True, eq=False)
class SpectralProfile:
    """A smooth profile psi supported in [lo, hi], an interval avoiding 0."""

    lo: float
    hi: float
    func: Callable[[np.ndarray], np.ndarray]

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("profile support must be a non-empty interval")
        if self.lo <= 0 <= self.hi:
            raise ValueError("profile support must not touch lambda = 0")

    def nodes(self, m: int = 128):
        x, w = leggauss(m)
        half = (self.hi - self.lo) / 2
        lam = self.lo + half * (x + 1)
        return lam, w * half * self.func(lam)

    def integral(self, m: int = 128) -> float:
        return float(np.sum(self.nodes(m)[1]))


def bump_profile(lo: float, hi: float, height: float = 1.0) -> SpectralProfile:
    """height * exp(1 - 1/(1 - s^2)) on (lo, hi), s the affine coordinate in (-1, 1)."""

    def f(lam):
        s = (2 * np.asarray(lam, dtype=float) - lo - hi) / (hi - lo)
        out = np.zeros_like(s)
        inside = np.abs(s) < 1
        out[inside] = height * np.exp(1 - 1 / (1 - s[inside] ** 2))
        return out

    return SpectralProfile(float(lo), float(hi), f)


def e_kappa_psi(kappa: int, psi: SpectralProfile, w: HPoint, m: int = 128) -> complex:
    """int e_kappa^lam(w) psi(lam) d lam by Gauss-Legendre quadrature on the support."""
    lam, wt = psi.nodes(m)
    vals = e_kappa_radial(lam, kappa, w.n, _abs2(w.zeta), w.t)
    return complex(np.sum(wt * vals))


# ----------------------------------------------------------------- kernels


def _check_not_origin(w: HPoint):
    if w.t == 0 and _abs2(w.zeta) == 0:
        raise ValueError("kernel is singular at the origin")


def cauchy_kernel(w: HPoint) -> complex:
    """K([zeta,t]) = c (t + i|zeta|^2)^{-n-1}, c = 2^{n-1} i^{n+1} n! / pi^{n+1}."""
    _check_not_origin(w)
    n = w.n
    c = 2 ** (n - 1) * 1j ** (n + 1) * factorial(n) / pi ** (n + 1)
    return complex(c * (w.t + 1j * _abs2(w.zeta)) ** (-n - 1))


def log_kernel(w: HPoint) -> complex:
    """Phi([zeta,t]) = C [log(|zeta|^2 - it) - log(|zeta|^2 + it)] (|zeta|^2 - it)^{-n},

    C = 2^{n-2} (n-1)! / pi^{n+1}, principal logarithms (arguments in the
    closed right half-plane).
    """
    _check_not_origin(w)
    n = w.n
    C = 2.0 ** (n - 2) * factorial(n - 1) / pi ** (n + 1)
    rho = _abs2(w.zeta)
    m, p = complex(rho, -w.t), complex(rho, w.t)
    return complex(C * (np.log(m) - np.log(p)) * m ** (-n))


def boundary_residuals(f: Callable, at: HPoint, fd: FDSpec = DEFAULT_FD) -> dict:
    """CR, holomorphic, antiholomorphic and pluriharmonic residuals at a boundary point.

    cr = max_j |Zbar_j f|, hol = calL_n f, antihol = calL_{-n} f,
    pluri = (calL^2 + n^2 T^2) f with calL = calL_0.
    """
    n = at.n
    cr = max(abs(apply_field(FieldId("Zbar", j, fd), f, at)) for j in range(1, n + 1))
    hol = op_calL_alpha(n, f, at, fd)
    antihol = op_calL_alpha(-n, f, at, fd)
    # nested stencils: wider steps keep the inner rounding noise from being amplified
    inner_fd, outer = fd.scaled(10.0), fd.scaled(50.0)
    inner = lambda q: op_calL_alpha(0, f, q, inner_fd)
    pluri = op_calL_alpha(0, inner, at, outer) + n * n * _derive(FieldId("T", 1, outer), f, at, 2)
    return {"cr": float(cr), "hol": hol, "antihol": antihol, "pluri": pluri}


# ------------------------------------------------------ truncated inversion


def inversion_constant(n: int) -> float:
    """c_n = 2^n / (2 pi^{n+1}), the constant of the Fourier inversion formula.

    With the t-frequency convention, sum_kappa e_kappa^lam(zeta, t) is the
    distribution (pi / (2|lam|))^n delta(zeta) exp(i lam t), which fixes c_n.
    """
    return 2.0**n / (2 * pi ** (n + 1))


@dataclass(frozen=True)
class GaussianTestFunction:
    """f(zeta, t) = exp(-|zeta|^2 / sigma^2 - t^2 / tau^2) on H^n."""

    n: int = 1
    sigma: float = 1.0
    tau: float = 1.0

    def __call__(self, w: HPoint) -> float:
        return float(np.exp(-_abs2(w.zeta) / self.sigma**2 - w.t**2 / self.tau**2))


def _zeta_grid(f: GaussianTestFunction, center: np.ndarray, m: int):
    """Gauss-Hermite nodes for int exp(-|zeta - center|^2/sigma^2) g(zeta) d zeta over C^n."""
    rule = gauss_hermite(m)
    n = f.n
    axes = [rule.nodes] * (2 * n)
    wts = [rule.weights] * (2 * n)
    grids = np.meshgrid(*axes, indexing="ij")
    wgrid = np.ones_like(grids[0])
    for i, g in enumerate(np.meshgrid(*wts, indexing="ij")):
        wgrid = wgrid * g
    zeta = np.stack([center[i] + f.sigma * (grids[2 * i] + 1j * grids[2 * i + 1]) for i in range(n)], -1)
    return zeta.reshape(-1, n), wgrid.ravel() * f.sigma ** (2 * n)


def inversion_partial_sums(f: GaussianTestFunction, psi: SpectralProfile, w: HPoint, kmax: int,
                           m_lambda: int = 96, m_zeta: int = 40) -> np.ndarray:
    """Partial sums S_K = sum_{kappa <= K} int f(w^{-1} v) e_kappa^psi(v) dv, K = 0..kmax.

    The t-integral is done in closed form (f is Gaussian in t); the zeta- and
    lambda-integrals by Gauss-Hermite and Gauss-Legendre quadrature.
    """
    lam, wl = psi.nodes(m_lambda)
    zeta, wz = _zeta_grid(f, w.zeta, m_zeta)
    r2 = np.sum(zeta.real**2 + zeta.imag**2, axis=1)
    # w^{-1} v = [zeta - zeta0, t - t0 - 2 Im(zeta0 . conj(zeta))]
    shift = w.t + 2 * np.sum(w.zeta[None, :] * np.conj(zeta), axis=1).imag
    t_part = f.tau * np.sqrt(pi) * np.exp(-(lam * f.tau) ** 2 / 4)
    phase = np.exp(1j * lam[:, None] * shift[None, :])
    terms = []
    for kappa in range(kmax + 1):
        E = e_kappa_radial(lam[:, None], kappa, f.n, r2[None, :])
        zint = (phase * E) @ wz
        terms.append(np.sum(wl * t_part * zint))
    return np.cumsum(terms)


def inversion_target(f: GaussianTestFunction, psi: SpectralProfile, w: HPoint,
                     m_lambda: int = 96, m_t: int = 64) -> complex:
    """(f *_3 phi)(w) = int f(zeta0, t0 - s) phi(s) ds for the phi paired with psi.

    phi is defined through its Fourier transform
    phi_hat(mu) = int phi(s) e^{-i mu s} ds = 2 pi (pi / (2|mu|))^n psi(mu),
    which is the pairing c_n phi_hat(lam) |lam|^n = psi(lam).  phi is
    synthesized on Gauss-Hermite nodes and convolved with f in t.
    """
    mu, wm = psi.nodes(m_lambda)
    phi_hat_w = 2 * pi * (pi / (2 * np.abs(mu))) ** f.n * wm
    rule = gauss_hermite(m_t)
    s = w.t + f.tau * rule.nodes
    phi = (np.exp(1j * np.outer(s, mu)) @ phi_hat_w) / (2 * pi)
    conv = f.tau * np.sum(rule.weights * phi)
    return complex(np.exp(-_abs2(w.zeta) / f.sigma**2) * conv)
