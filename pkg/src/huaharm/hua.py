"""Left-invariant fields on the tube group, the operators Delta_j, Delta_jk and
the strongly diagonal Hua operators, pluriharmonicity residuals, the S^- averaging
G_psi, Condition 1 probes, and the identification of S^+ with the Heisenberg
extension S.

Functions on the tube take complex Peirce coordinates z of shape (..., m) and
should broadcast over leading axes; averaging and chart probes call them once
on a whole node set.

Normalization: derivatives in flat coordinates use d/dz = d/dx - i d/dy, the
normalization under which Delta_j at the base point ie is d_{z_j} d_{zbar_j}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import expm

from . import heisenberg as hz
from ._fd import DEFAULT_FD, FDSpec, curve_derivative
from .jordan import SGroupElement, TubeGroup

__all__ = [
    "InvariantField",
    "lie_derive",
    "delta_j",
    "delta_jk",
    "hua_j",
    "pluri_residual",
    "flat_ddbar",
    "left_invariance_defect",
    "HuaReport",
    "hua_report",
    "ExpPluriharmonic",
    "g_psi_average",
    "ProductBump",
    "frame_permutation",
    "cond1_probe",
    "max_cond1_order",
    "theta",
    "theta_inverse",
    "hua_vs_l_half",
]

_KINDS = ("X", "H", "Xjk", "Yjk")


@dataclass(frozen=True)
class InvariantField:
    """Basis field X_j, H_j (V_jj and L(c_j)) or X_jk^alpha, Y_jk^alpha (e_jk and 2 e_jk box c_j)."""

    kind: str
    j: int
    k: int = 0
    alpha: int = 1
    fd: FDSpec = DEFAULT_FD

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind in ("Xjk", "Yjk") and not 1 <= self.j < self.k:
            raise ValueError("off-diagonal fields need 1 <= j < k")

    @property
    def partner(self) -> "InvariantField":
        """The field paired with this one by the complex structure."""
        swap = {"X": "H", "H": "X", "Xjk": "Yjk", "Yjk": "Xjk"}
        return InvariantField(swap[self.kind], self.j, self.k, self.alpha, self.fd)

    def lie_element(self, G: TubeGroup) -> np.ndarray:
        if self.kind == "X":
            return G.lie_X(self.j)
        if self.kind == "H":
            return G.lie_H(self.j)
        if self.kind == "Xjk":
            return G.lie_Xjk(self.j, self.k, self.alpha)
        return G.lie_Yjk(self.j, self.k, self.alpha)


def _curve(field: InvariantField, s: SGroupElement) -> Callable[[float], np.ndarray]:
    """t -> s exp(tX) . ie."""
    G = s.group
    X = field.lie_element(G)
    v, A = X[: G.m, G.m], X[: G.m, : G.m]
    base = G.base_point()
    M, x = s.linear, s.x
    if field.kind in ("X", "Xjk"):
        return lambda t: x + M @ (base + t * v)
    if field.kind == "H":
        diag = np.diag(A)
        return lambda t: x + 1j * (M @ (np.exp(t * diag) * G.e))
    return lambda t: x + 1j * (M @ (expm(t * A) @ G.e))


def _evaluate(F: Callable, z) -> complex:
    val = F(z)
    return complex(np.asarray(val).reshape(()))


def lie_derive(field: InvariantField, F: Callable, s: SGroupElement, order: int = 1) -> complex:
    """d^order/dt^order F(s exp(tX) . ie) at t = 0.

    Order 2 is X applied twice, which is the second derivative along the same
    one-parameter subgroup.
    """
    curve = _curve(field, s)
    return complex(curve_derivative(lambda t: _evaluate(F, curve(t)), order, field.fd))


def delta_j(F: Callable, s: SGroupElement, j: int, fd: FDSpec = DEFAULT_FD) -> complex:
    """Delta_j F = (X_j^2 + H_j^2 - H_j) F."""
    X, H = InvariantField("X", j, fd=fd), InvariantField("H", j, fd=fd)
    return lie_derive(X, F, s, 2) + lie_derive(H, F, s, 2) - lie_derive(H, F, s, 1)


def delta_jk(F: Callable, s: SGroupElement, j: int, k: int, alpha: int = 1,
             fd: FDSpec = DEFAULT_FD) -> complex:
    """Delta_jk^alpha F = ((X_jk^alpha)^2 + (Y_jk^alpha)^2 - H_k) F for j < k.

    Along exp(t Y_jk) the base point moves as e + t e_jk + t^2/2 c_k, so the
    first-order correction is the H field of the larger index.
    """
    X = InvariantField("Xjk", j, k, alpha, fd)
    Y = InvariantField("Yjk", j, k, alpha, fd)
    H = InvariantField("H", k, fd=fd)
    return lie_derive(X, F, s, 2) + lie_derive(Y, F, s, 2) - lie_derive(H, F, s, 1)


def hua_j(F: Callable, s: SGroupElement, j: int, fd: FDSpec = DEFAULT_FD) -> complex:
    """H_j F = Delta_j F + 1/2 sum_{k<j} Delta_kj F + 1/2 sum_{l>j} Delta_jl F (summed over alpha)."""
    G = s.group
    total = delta_j(F, s, j, fd)
    for k in range(1, G.r + 1):
        if k == j:
            continue
        lo, hi = min(j, k), max(j, k)
        for al in range(1, G.d + 1):
            total += 0.5 * delta_jk(F, s, lo, hi, al, fd)
    return total


def flat_ddbar(F: Callable, z, fd: FDSpec = DEFAULT_FD) -> np.ndarray:
    """Matrix d_{z_p} d_{zbar_q} F at z, with d_z = d_x - i d_y, by central differences."""
    z = np.asarray(z, dtype=complex)
    m = z.size
    dirs = np.concatenate([np.eye(m), 1j * np.eye(m)])

    def second(v):
        return complex(curve_derivative(lambda t: _evaluate(F, z + t * v), 2, fd))

    diag = [second(v) for v in dirs]
    hess = np.zeros((2 * m, 2 * m), dtype=complex)
    for a in range(2 * m):
        hess[a, a] = diag[a]
        for b in range(a + 1, 2 * m):
            plus, minus = second(dirs[a] + dirs[b]), second(dirs[a] - dirs[b])
            hess[a, b] = hess[b, a] = 0.25 * (plus - minus)
    xx, yy = hess[:m, :m], hess[m:, m:]
    xy = hess[:m, m:]
    return xx + yy + 1j * (xy - xy.T)


def pluri_residual(F: Callable, z, fd: FDSpec = DEFAULT_FD) -> float:
    """max_{p,q} |d_{z_p} d_{zbar_q} F(z)|."""
    return float(np.abs(flat_ddbar(F, z, fd)).max())


def left_invariance_defect(field: InvariantField, F: Callable, g: SGroupElement,
                           s: SGroupElement) -> float:
    """|(X F)(g s) - X(F o g)(s)|."""
    direct = lie_derive(field, F, g @ s)
    moved = lie_derive(field, lambda z: F(np.einsum("ij,...j->...i", g.linear, z) + g.x), s)
    return abs(direct - moved)


@dataclass(frozen=True)
class HuaReport:
    """Largest residual of each operator over a sample set, and the verdict."""

    residuals: dict
    pluri: float
    tolerance: float
    samples: int

    def __post_init__(self):
        if any(v < 0 for v in self.residuals.values()) or self.pluri < 0:
            raise ValueError("residuals are non-negative")

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())

    @property
    def annihilated(self) -> bool:
        """The system Delta_j F = 0, Delta_jk F = 0 holds on the samples."""
        return self.max_residual <= self.tolerance

    @property
    def pluriharmonic(self) -> bool:
        return self.annihilated and self.pluri <= self.tolerance

    def as_record(self) -> dict:
        return {
            "residuals": dict(self.residuals),
            "pluri": self.pluri,
            "tolerance": self.tolerance,
            "samples": self.samples,
            "annihilated": self.annihilated,
            "pluriharmonic": self.pluriharmonic,
        }


def hua_report(F: Callable, samples: Sequence[SGroupElement], tolerance: float = 1e-4,
               fd: FDSpec = DEFAULT_FD) -> HuaReport:
    if not samples:
        raise ValueError("need at least one sample point")
    G = samples[0].group
    res: dict[str, float] = {}

    def keep(name, val):
        res[name] = max(res.get(name, 0.0), abs(val))

    pluri = 0.0
    for s in samples:
        for j in range(1, G.r + 1):
            keep(f"Delta_{j}", delta_j(F, s, j, fd))
            keep(f"Hua_{j}", hua_j(F, s, j, fd))
            for k in range(j + 1, G.r + 1):
                for al in range(1, G.d + 1):
                    suffix = f"^{al}" if G.d > 1 else ""
                    keep(f"Delta_{j}{k}{suffix}", delta_jk(F, s, j, k, al, fd))
        pluri = max(pluri, pluri_residual(F, s.act(G.base_point()), fd))
    return HuaReport(res, pluri, tolerance, len(samples))


@dataclass(frozen=True)
class ExpPluriharmonic:
    """Re or Im of exp(i <z, u>); bounded on the tube when u lies in the closed cone."""

    u: np.ndarray
    part: str = "re"

    def __post_init__(self):
        if self.part not in ("re", "im"):
            raise ValueError("part must be 're' or 'im'")

    def __call__(self, z):
        val = np.exp(1j * (np.asarray(z) @ np.asarray(self.u)))
        return val.real if self.part == "re" else val.imag


# ------------------------------------------------------------- averaging


@dataclass(frozen=True)
class ProductBump:
    """psi(w) = prod_i b(w_i / radius) with b(t) = exp(-1/(1 - t^2)) on (-1, 1)."""

    dim: int
    radius: float = 1.0

    def __call__(self, w):
        t = np.asarray(w, dtype=float) / self.radius
        inside = np.abs(t) < 1
        vals = np.where(inside, np.exp(-1 / np.where(inside, 1 - t * t, 1.0)), 0.0)
        return np.prod(vals, axis=-1)

    def grid(self, m: int):
        """Tensor Gauss-Legendre nodes and weights covering the support."""
        x, wt = np.polynomial.legendre.leggauss(m)
        x, wt = x * self.radius, wt * self.radius
        nodes = np.array(list(product(x, repeat=self.dim)))
        weights = np.prod(np.array(list(product(wt, repeat=self.dim))), axis=1)
        return nodes, weights * self(nodes)


def _s_minus_coordinates(G: TubeGroup):
    """Index lists of the canonical coordinates of S^-: V^-, N_0^- blocks, a_1..a_{r-1}."""
    v_idx = [G.index(i, j, al) for (i, j, al) in G.order if j < G.r]
    n_idx = [(i, G.index(i, j, al)) for (i, j, al) in G.order if i < j < G.r]
    return v_idx, n_idx


def _s_minus_element(G: TubeGroup, sigma: np.ndarray) -> SGroupElement:
    v_idx, n_idx = _s_minus_coordinates(G)
    x = np.zeros(G.m)
    x[v_idx] = sigma[: len(v_idx)]
    ys = [np.zeros(G.m) for _ in range(G.r - 1)]
    for off, (i, idx) in enumerate(n_idx):
        ys[i - 1][idx] = sigma[len(v_idx) + off]
    a = np.zeros(G.r)
    a[: G.r - 1] = sigma[len(v_idx) + len(n_idx):]
    return G.element(x, ys, a)


def s_minus_dim(G: TubeGroup) -> int:
    v_idx, n_idx = _s_minus_coordinates(G)
    return len(v_idx) + len(n_idx) + G.r - 1


def g_psi_average(G: TubeGroup, F: Callable, psi: ProductBump, m: int = 6) -> Callable:
    """z -> int F(s^- . z) psi(s^-) ds^- over canonical coordinates of S^-.

    On the S^+ orbit, z = s^+ . ie, this is G_psi(s^+) = int F(s^- s^+) psi(s^-) ds^-.
    """
    if psi.dim != s_minus_dim(G):
        raise ValueError(f"psi must live on the {s_minus_dim(G)} coordinates of S^-")
    nodes, weights = psi.grid(m)
    keep = weights != 0
    nodes, weights = nodes[keep], weights[keep]
    elems = [_s_minus_element(G, s) for s in nodes]
    Ms = np.array([e.linear for e in elems])
    xs = np.array([e.x for e in elems])

    def averaged(z):
        z = np.asarray(z, dtype=complex)
        pts = np.einsum("nij,...j->...ni", Ms, z) + xs
        return np.asarray(F(pts)) @ weights

    return averaged


# ------------------------------------------------------------- Condition 1


def max_cond1_order(G: TubeGroup) -> int:
    return ((G.r - 1) * G.d + 1) // 2 + 1


def frame_permutation(G: TubeGroup, perm: Sequence[int]) -> np.ndarray:
    """Coordinate matrix of X -> P X P^T for the permutation matrix P of ``perm`` (0-based)."""
    alg = G.algebra
    P = np.eye(alg.size)[list(perm)]
    cols = [alg.from_matrix(P @ alg.to_matrix(v) @ P.T) for v in np.eye(G.m)]
    return np.column_stack(cols)


def cond1_probe(G: TubeGroup, F: Callable, psi: ProductBump, p: int, b: float,
                chart: np.ndarray | None = None, m: int = 5, fd: FDSpec = DEFAULT_FD) -> complex:
    """d^p/db^p int F(g Phi(w, b)) psi(w) dw, with g a linear automorphism (default identity)."""
    if not 0 <= p <= max_cond1_order(G):
        raise ValueError(f"order p must be in [0, {max_cond1_order(G)}]")
    if not 0 < b < 1:
        raise ValueError("b must lie in (0, 1)")
    if psi.dim != G.w_dim:
        raise ValueError(f"psi must live on R^{G.w_dim}")
    g = np.eye(G.m) if chart is None else np.asarray(chart, dtype=float)
    nodes, weights = psi.grid(m)
    keep = weights != 0
    nodes, weights = nodes[keep], weights[keep]
    base = np.array([G.phi(w) for w in nodes]) @ g.T
    cr = g @ G.c[-1]

    def integral(bb):
        return complex(np.asarray(F(base + 1j * bb * cr)) @ weights)

    if p == 0:
        return integral(b)
    step = fd.scaled(min(1.0, b / (4 * fd.h)) if b < 4 * fd.h else 1.0)
    return complex(curve_derivative(lambda t: integral(b + t), p, step))


# ------------------------------------------------- S^+ and the Heisenberg S


def theta(G: TubeGroup, z) -> hz.SPoint:
    """Point of the Heisenberg extension matching z on the S^+ orbit of ie.

    With x_j + i y_j the e_jr coordinates and u + i v the c_r coordinate,
    zeta = (x + i y)/2, t = u - x.y/2 and a = v - |y|^2/2.
    """
    z = np.asarray(z, dtype=complex)
    r = G.r
    idx = [G.index(j, r, al) for j in range(1, r) for al in range(1, G.d + 1)]
    zr = z[idx]
    x, y = zr.real, zr.imag
    w = z[G.index(r, r)]
    return hz.SPoint(0.5 * (x + 1j * y), w.real - 0.5 * x @ y, w.imag - 0.5 * y @ y)


def theta_inverse(G: TubeGroup, p: hz.SPoint) -> SGroupElement:
    """The element of S^+ sent by theta (through its action on ie) to p."""
    r = G.r
    if p.n != (r - 1) * G.d:
        raise ValueError(f"need an S-point with n = {(r - 1) * G.d}")
    x, y = 2 * p.zeta.real, 2 * p.zeta.imag
    xv = np.zeros(G.m)
    ys = [np.zeros(G.m) for _ in range(r - 1)]
    pos = 0
    for j in range(1, r):
        for al in range(1, G.d + 1):
            idx = G.index(j, r, al)
            xv[idx] = x[pos]
            ys[j - 1][idx] = y[pos]
            pos += 1
    xv[G.index(r, r)] = p.t + 0.5 * x @ y
    a = np.zeros(r)
    a[-1] = np.log(p.a)
    return G.element(xv, ys, a)


def hua_vs_l_half(G: TubeGroup, F_heis: Callable, p: hz.SPoint,
                  fd: FDSpec = DEFAULT_FD) -> tuple[complex, complex]:
    """(H_r (F o theta))(s^+) and (L_{1/2} F)(p) for s^+ = theta_inverse(p)."""
    s = theta_inverse(G, p)

    def pulled(z):
        z = np.asarray(z)
        if z.ndim > 1:
            return np.array([pulled(zz) for zz in z])
        return F_heis(theta(G, z))

    return hua_j(pulled, s, G.r, fd), hz.op_L_alpha(0.5, F_heis, p, fd)
