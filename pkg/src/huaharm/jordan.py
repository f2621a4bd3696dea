"""Euclidean Jordan algebras realized by symmetric matrices, Peirce decompositions,
the solvable group S = V N_0 A acting on the tube V + i Omega, and the boundary
charts phi and Phi.

Coordinates.  A TubeGroup works in the orthonormal Peirce basis {e_jk^alpha}
ordered lexicographically: (j,k) > (l,p) iff j > l or (j = l and k > p).
Linear maps are stored as matrices acting on coordinate columns, so an element
of N_0 (which sends V_ij into later blocks) is lower unitriangular.

Group elements.  g = (x, y^1, ..., y^{r-1}, a) stands for the affine map
z -> M z + x with M = tau(y^1) ... tau(y^{r-1}) exp(sum_j a_j L(c_j)) and
tau(y^j) = exp(2 y^j box c_j), y^j in the sum of V_jk over k > j.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from ._fd import DEFAULT_FD, FDSpec, curve_derivative

__all__ = [
    "JordanAlgebra",
    "JordanFrame",
    "PeirceBasis",
    "SGroupElement",
    "TubeGroup",
    "sym_algebra",
    "l_op",
    "box",
    "peirce",
    "peirce_project",
    "in_cone",
    "cone_boundary_rank",
    "s_compose",
    "s_act",
    "WeightReport",
    "JacobianReport",
]

_EIG_TOL = 1e-10


class JordanAlgebra:
    """A Jordan algebra of real symmetric matrices, x o y = (xy + yx)/2, <x, y> = tr(xy).

    ``basis`` holds m symmetric N x N matrices orthonormal for the trace form and
    spanning a subspace closed under the product.
    """

    def __init__(self, basis: np.ndarray, name: str = ""):
        basis = np.asarray(basis, dtype=float)
        if basis.ndim != 3 or basis.shape[1] != basis.shape[2]:
            raise ValueError("basis must be an (m, N, N) stack of matrices")
        if not np.allclose(basis, np.swapaxes(basis, 1, 2)):
            raise ValueError("basis matrices must be symmetric")
        gram = np.einsum("iab,jba->ij", basis, basis)
        if not np.allclose(gram, np.eye(len(basis)), atol=1e-12):
            raise ValueError("basis must be orthonormal for the trace form")
        self.basis = basis
        self.name = name
        prods = np.einsum("iab,jbc->ijac", basis, basis)
        jordan = 0.5 * (prods + np.swapaxes(prods, 0, 1))
        # structure constants C[i, j, k] = <b_i o b_j, b_k>
        self._C = np.einsum("ijab,kba->ijk", jordan, basis)
        recon = np.einsum("ijk,kab->ijab", self._C, basis)
        if not np.allclose(recon, jordan, atol=1e-12):
            raise ValueError("span of the basis is not closed under the Jordan product")
        self.unit = self.from_matrix(np.eye(basis.shape[1]))
        if not np.allclose(self.to_matrix(self.unit), np.eye(basis.shape[1]), atol=1e-12):
            raise ValueError("identity matrix is not in the span of the basis")

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def size(self) -> int:
        return self.basis.shape[1]

    @cached_property
    def rank(self) -> int:
        return self.size

    def to_matrix(self, x) -> np.ndarray:
        return np.tensordot(np.asarray(x), self.basis, axes=(-1, 0))

    def from_matrix(self, X) -> np.ndarray:
        return np.einsum("...ab,kba->...k", np.asarray(X), self.basis)

    def product(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self._C)

    def inner(self, x, y) -> float:
        return float(np.dot(x, y))

    def l_op(self, x) -> np.ndarray:
        """Matrix of L(x): column j holds the coordinates of x o b_j."""
        return np.einsum("i,ijk->kj", np.asarray(x, dtype=float), self._C)

    def box(self, x, y) -> np.ndarray:
        """x box y = L(xy) + [L(x), L(y)]."""
        Lx, Ly = self.l_op(x), self.l_op(y)
        return self.l_op(self.product(x, y)) + Lx @ Ly - Ly @ Lx

    def eigenvalues(self, x) -> np.ndarray:
        X = self.to_matrix(x)
        if np.iscomplexobj(X):
            raise TypeError("eigenvalues need a real element")
        return np.linalg.eigvalsh(X)

    def in_cone(self, x, tol: float = 0.0) -> bool:
        return bool(self.eigenvalues(x).min() > tol)

    def rank_of(self, x, tol: float = _EIG_TOL) -> int:
        ev = np.abs(self.eigenvalues(x))
        return int(np.sum(ev > tol * max(1.0, ev.max())))

    def rebased(self, change: np.ndarray, name: str = "") -> "JordanAlgebra":
        """The same algebra with basis vectors given by the columns of ``change``."""
        return JordanAlgebra(np.einsum("ji,jab->iab", change, self.basis), name or self.name)


def sym_algebra(r: int) -> JordanAlgebra:
    """Sym(r, R) with basis E_jj and (E_jk + E_kj)/sqrt 2 in lexicographic order of (j, k)."""
    if r < 1:
        raise ValueError("rank must be positive")
    mats = []
    for j in range(r):
        for k in range(j, r):
            E = np.zeros((r, r))
            if j == k:
                E[j, j] = 1.0
            else:
                E[j, k] = E[k, j] = 1 / np.sqrt(2)
            mats.append(E)
    return JordanAlgebra(np.array(mats), name=f"Sym({r})")


def l_op(alg: JordanAlgebra, x) -> np.ndarray:
    return alg.l_op(x)


def box(alg: JordanAlgebra, x, y) -> np.ndarray:
    return alg.box(x, y)


def in_cone(alg: JordanAlgebra, x) -> bool:
    return alg.in_cone(x)


def cone_boundary_rank(alg: JordanAlgebra, x) -> int:
    """Rank of x, i.e. the number of non-zero eigenvalues."""
    return alg.rank_of(x)


@dataclass(frozen=True, eq=False)
class JordanFrame:
    """Orthogonal primitive idempotents c_1, ..., c_r (rows, algebra coordinates)."""

    algebra: JordanAlgebra
    idempotents: np.ndarray

    def __post_init__(self):
        c = np.atleast_2d(np.asarray(self.idempotents, dtype=float))
        object.__setattr__(self, "idempotents", c)
        alg = self.algebra
        problems = []
        for i in range(len(c)):
            for j in range(len(c)):
                target = c[i] if i == j else np.zeros(alg.dim)
                if np.abs(alg.product(c[i], c[j]) - target).max() > 1e-12:
                    problems.append(f"c_{i + 1} c_{j + 1}")
        if np.abs(c.sum(axis=0) - alg.unit).max() > 1e-12:
            problems.append("sum of idempotents is not e")
        for i in range(len(c)):
            ones = np.sum(np.abs(np.linalg.eigvalsh(alg.l_op(c[i])) - 1) < 1e-9)
            if ones != 1:
                problems.append(f"c_{i + 1} is not primitive")
        if problems:
            raise ValueError("invalid Jordan frame: " + ", ".join(problems))

    @property
    def r(self) -> int:
        return len(self.idempotents)

    def __getitem__(self, j: int) -> np.ndarray:
        """c_j with 1-based j."""
        return self.idempotents[j - 1]

    @classmethod
    def standard(cls, alg: JordanAlgebra) -> "JordanFrame":
        """c_j = E_jj for a symmetric-matrix algebra."""
        n = alg.size
        cs = [alg.from_matrix(np.diag(np.eye(n)[j])) for j in range(n)]
        return cls(alg, np.array(cs))


def _spectral_projectors(L: np.ndarray):
    """Projectors of L(c) on its eigenvalues 0, 1/2, 1."""
    I = np.eye(len(L))
    return {
        0.0: (2 * L - I) @ (L - I),
        0.5: 4 * L @ (I - L),
        1.0: L @ (2 * L - I),
    }


@dataclass(frozen=True, eq=False)
class PeirceBasis:
    """Orthonormal bases of the blocks V_ij (1-based keys, i <= j), in algebra coordinates."""

    frame: JordanFrame
    blocks: dict

    @property
    def d(self) -> int:
        r = self.frame.r
        return self.blocks[(1, 2)].shape[0] if r >= 2 else 0

    @property
    def order(self) -> list[tuple[int, int, int]]:
        """Lexicographically ordered labels (i, j, alpha)."""
        return [(i, j, al) for (i, j) in sorted(self.blocks) for al in range(1, len(self.blocks[(i, j)]) + 1)]

    @property
    def change(self) -> np.ndarray:
        """Columns: the Peirce basis vectors in lexicographic order."""
        return np.column_stack([self.blocks[(i, j)][al - 1] for (i, j, al) in self.order])

    def projector(self, i: int, j: int) -> np.ndarray:
        B = self.blocks[(min(i, j), max(i, j))]
        return B.T @ B


def peirce(frame: JordanFrame) -> PeirceBasis:
    """Joint eigenspace decomposition of the L(c_j) with eigenvalues 0, 1/2, 1."""
    alg = frame.algebra
    r = frame.r
    projs = [_spectral_projectors(alg.l_op(frame[j])) for j in range(1, r + 1)]
    blocks = {}
    for i in range(1, r + 1):
        blocks[(i, i)] = frame[i][None, :].copy()
        for j in range(i + 1, r + 1):
            P = projs[i - 1][0.5] @ projs[j - 1][0.5]
            u, s, _ = np.linalg.svd(P)
            vecs = u[:, s > 0.5].T
            for v in vecs:
                if v[np.argmax(np.abs(v))] < 0:
                    v *= -1
            blocks[(i, j)] = vecs
    dims = {len(b) for (i, j), b in blocks.items() if i < j}
    if len(dims) > 1:
        raise ValueError("off-diagonal Peirce blocks have different dimensions")
    total = sum(len(b) for b in blocks.values())
    if total != alg.dim:
        raise ValueError("Peirce blocks do not span V")
    return PeirceBasis(frame, blocks)


def peirce_project(pb: PeirceBasis, x, i: int, j: int) -> np.ndarray:
    return pb.projector(i, j) @ np.asarray(x, dtype=float)


# ---------------------------------------------------------------- the group


@dataclass(frozen=True, eq=False)
class SGroupElement:
    """(x, y^1..y^{r-1}, a) in Peirce coordinates of ``group``."""

    group: "TubeGroup"
    x: np.ndarray
    ys: tuple
    a: np.ndarray

    def __post_init__(self):
        g = self.group
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float).reshape(g.m))
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float).reshape(g.r))
        ys = tuple(np.asarray(y, dtype=float).reshape(g.m) for y in self.ys)
        if len(ys) != g.r - 1:
            raise ValueError(f"need r - 1 = {g.r - 1} y-blocks")
        for j, y in enumerate(ys, start=1):
            if np.abs(y - g.upper_projector(j) @ y).max() > 1e-12:
                raise ValueError(f"y^{j} must lie in the sum of V_{j}k over k > {j}")
        object.__setattr__(self, "ys", ys)

    @cached_property
    def linear(self) -> np.ndarray:
        g = self.group
        M = np.eye(g.m)
        for j, y in enumerate(self.ys, start=1):
            M = M @ g.tau(y, j)
        return M @ g.a_exp(self.a)

    def act(self, z) -> np.ndarray:
        return self.linear @ np.asarray(z) + self.x

    def __matmul__(self, other: "SGroupElement") -> "SGroupElement":
        return s_compose(self, other)


def s_compose(g: SGroupElement, h: SGroupElement) -> SGroupElement:
    """g h as affine maps, refactorized into canonical coordinates."""
    if g.group is not h.group:
        raise ValueError("elements belong to different groups")
    return g.group.from_affine(g.x + g.linear @ h.x, g.linear @ h.linear)


def s_act(g: SGroupElement, z) -> np.ndarray:
    return g.act(z)


@dataclass(frozen=True)
class WeightReport:
    translation_deviation: float
    nilpotent_deviation: float
    checks: int

    @property
    def max_deviation(self) -> float:
        return max(self.translation_deviation, self.nilpotent_deviation)


@dataclass(frozen=True)
class JacobianReport:
    diagonal: np.ndarray
    expected_diagonal: np.ndarray
    triangularity_deviation: float
    minor_rows: tuple


class TubeGroup:
    """S = V N_0 A for a Jordan frame, in the lexicographic Peirce basis.

    All vectors are coordinate arrays of length m = dim V; points of the tube
    are complex coordinate arrays.
    """

    def __init__(self, algebra: JordanAlgebra, frame: JordanFrame | None = None):
        frame = frame or JordanFrame.standard(algebra)
        pb = peirce(frame)
        alg = algebra.rebased(pb.change)
        self.source = algebra
        self.algebra = alg
        self.order = pb.order
        self.r = frame.r
        self.m = alg.dim
        self.d = pb.d
        self.n = self.m
        self._index = {lab: i for i, lab in enumerate(self.order)}
        self.c = np.eye(self.m)[[self._index[(j, j, 1)] for j in range(1, self.r + 1)]]
        self._L_c = [alg.l_op(cj) for cj in self.c]

    # -- indices and blocks
    def index(self, i: int, j: int, alpha: int = 1) -> int:
        return self._index[(min(i, j), max(i, j), alpha)]

    def block_vectors(self, i: int, j: int) -> list[np.ndarray]:
        i, j = min(i, j), max(i, j)
        return [np.eye(self.m)[self._index[lab]] for lab in self.order if lab[:2] == (i, j)]

    def block_projector(self, i: int, j: int) -> np.ndarray:
        P = np.zeros((self.m, self.m))
        for v in self.block_vectors(i, j):
            P += np.outer(v, v)
        return P

    def upper_projector(self, j: int) -> np.ndarray:
        """Projector onto the sum of V_jk over k > j."""
        return sum((self.block_projector(j, k) for k in range(j + 1, self.r + 1)),
                   np.zeros((self.m, self.m)))

    def minus_projector(self) -> np.ndarray:
        """Projector onto V^- = sum of V_ij with i <= j < r."""
        return sum((self.block_projector(i, j) for i in range(1, self.r) for j in range(i, self.r)),
                   np.zeros((self.m, self.m)))

    @property
    def e(self) -> np.ndarray:
        return self.c.sum(axis=0)

    def L(self, x) -> np.ndarray:
        return self.algebra.l_op(x)

    def box(self, x, y) -> np.ndarray:
        return self.algebra.box(x, y)

    def tau(self, y, j: int) -> np.ndarray:
        return expm(2 * self.box(y, self.c[j - 1]))

    def a_exp(self, a) -> np.ndarray:
        # L(c_j) are simultaneously diagonal in the Peirce basis
        diag = sum(aj * np.diag(Lc) for aj, Lc in zip(a, self._L_c))
        return np.diag(np.exp(diag))

    # -- elements
    def element(self, x=None, ys=None, a=None) -> SGroupElement:
        x = np.zeros(self.m) if x is None else x
        ys = tuple(np.zeros(self.m) for _ in range(self.r - 1)) if ys is None else ys
        a = np.zeros(self.r) if a is None else a
        return SGroupElement(self, x, tuple(ys), a)

    def identity(self) -> SGroupElement:
        return self.element()

    def random_element(self, rng: np.random.Generator, scale: float = 0.5) -> SGroupElement:
        ys = tuple(self.upper_projector(j) @ rng.normal(scale=scale, size=self.m)
                   for j in range(1, self.r))
        return self.element(rng.normal(scale=scale, size=self.m), ys, rng.normal(scale=scale, size=self.r))

    def base_point(self) -> np.ndarray:
        return 1j * self.e

    def from_affine(self, x, M) -> SGroupElement:
        """Canonical coordinates of the affine map z -> M z + x with M in S_0."""
        M = np.asarray(M, dtype=float)
        a = np.array([np.log(M[self.index(j, j), self.index(j, j)]) for j in range(1, self.r + 1)])
        N = M @ np.linalg.inv(self.a_exp(a))
        ys = []
        for j in range(1, self.r):
            y = self.upper_projector(j) @ (N @ self.c[j - 1])
            ys.append(y)
            N = expm(-2 * self.box(y, self.c[j - 1])) @ N
        if np.abs(N - np.eye(self.m)).max() > 1e-8:
            raise RuntimeError("refactorization failed: linear part is not in S_0")
        return self.element(x, ys, a)

    def point_to_group(self, z) -> SGroupElement:
        """The unique g with g . ie = z."""
        z = np.asarray(z, dtype=complex)
        u = z.imag.copy()
        if not self.algebra.in_cone(u):
            raise ValueError("Im z is not in the cone")
        a = np.zeros(self.r)
        ys = []
        for j in range(1, self.r + 1):
            coef = u[self.index(j, j)]
            a[j - 1] = np.log(coef)
            if j == self.r:
                break
            y = self.upper_projector(j) @ u / coef
            ys.append(y)
            u = u - coef * (self.tau(y, j) @ self.c[j - 1])
        return self.element(z.real, ys, a)

    # -- Lie algebra, as affine (m+1) x (m+1) matrices
    def lie_translation(self, v) -> np.ndarray:
        X = np.zeros((self.m + 1, self.m + 1))
        X[: self.m, self.m] = v
        return X

    def lie_linear(self, A) -> np.ndarray:
        X = np.zeros((self.m + 1, self.m + 1))
        X[: self.m, : self.m] = A
        return X

    def lie_H(self, j: int) -> np.ndarray:
        return self.lie_linear(self._L_c[j - 1])

    def lie_X(self, j: int) -> np.ndarray:
        return self.lie_translation(self.c[j - 1])

    def lie_Xjk(self, j: int, k: int, alpha: int = 1) -> np.ndarray:
        return self.lie_translation(self.block_vectors(j, k)[alpha - 1])

    def lie_Yjk(self, j: int, k: int, alpha: int = 1) -> np.ndarray:
        return self.lie_linear(2 * self.box(self.block_vectors(j, k)[alpha - 1], self.c[j - 1]))

    def adjoint_weight_check(self) -> WeightReport:
        """[H, X] = (l_i + l_j)/2 X on V_ij and (l_j - l_i)/2 X on N_ij, H = L(c_h)."""
        dev_v = dev_n = 0.0
        checks = 0
        for h in range(1, self.r + 1):
            H = self.lie_H(h)
            lam = lambda i: 1.0 if i == h else 0.0
            for i in range(1, self.r + 1):
                for j in range(i, self.r + 1):
                    for al in range(1, len(self.block_vectors(i, j)) + 1):
                        X = self.lie_Xjk(i, j, al) if i < j else self.lie_X(i)
                        w = (lam(i) + lam(j)) / 2
                        dev_v = max(dev_v, np.abs(H @ X - X @ H - w * X).max())
                        checks += 1
                        if i < j:
                            Y = self.lie_Yjk(i, j, al)
                            w = (lam(j) - lam(i)) / 2
                            dev_n = max(dev_n, np.abs(H @ Y - Y @ H - w * Y).max())
                            checks += 1
        return WeightReport(float(dev_v), float(dev_n), checks)

    def nilpotent_triangularity(self, M) -> float:
        """Largest entry of M that maps a Peirce block into an earlier one."""
        M = np.asarray(M)
        return float(np.abs(np.triu(M, 1)).max(initial=0.0))

    # -- special coordinates
    @property
    def w_dim(self) -> int:
        return 2 * self.m - 1

    def w_labels(self) -> list[str]:
        labels = [f"x{i}{j}" + (f"_{al}" if self.d > 1 and i < j else "") for (i, j, al) in self.order]
        for (i, j, al) in self.order:
            if (i, j) == (self.r, self.r):
                continue
            labels.append(f"y{i}{j}" + (f"_{al}" if self.d > 1 and i < j else ""))
        return labels

    def unpack_w(self, w) -> tuple[np.ndarray, list[np.ndarray], np.ndarray]:
        """w = (x, y_11, y^1, y_22, y^2, ...) -> (x, [y^j], [y_jj])."""
        w = np.asarray(w, dtype=float)
        if w.size != self.w_dim:
            raise ValueError(f"w must have {self.w_dim} coordinates")
        x = w[: self.m]
        rest = np.zeros(self.m)
        rest[: self.m - 1] = w[self.m:]  # the lexicographic order puts (r, r) last
        ys = [self.upper_projector(j) @ rest for j in range(1, self.r)]
        a = np.array([rest[self.index(j, j)] for j in range(1, self.r)] + [0.0])
        return x, ys, a

    def s_prime(self, w) -> SGroupElement:
        x, ys, a = self.unpack_w(w)
        return self.element(x, ys, a)

    def phi(self, w) -> np.ndarray:
        """phi(w) = lim_{t -> inf} s' exp(-t H_r) . ie = x + i M' (e - c_r)."""
        g = self.s_prime(w)
        return g.x + 1j * (g.linear @ (self.e - self.c[-1]))

    def big_phi(self, w, b: float) -> np.ndarray:
        return self.phi(w) + 1j * b * self.c[-1]

    def membership(self, w, b: float, tol: float = 1e-9) -> str:
        ev = self.algebra.eigenvalues(self.big_phi(w, b).imag)
        scale = max(1.0, np.abs(ev).max())
        if ev.min() > tol * scale:
            return "interior"
        if ev.min() < -tol * scale:
            return "exterior"
        return "boundary"

    def phi_jacobian(self, w, fd: FDSpec = DEFAULT_FD) -> JacobianReport:
        """Finite-difference Jacobian of phi and its triangular (2n-1)-minor.

        Rows are Re coordinates then Im coordinates without the c_r entry, both
        lexicographic; columns are the coordinates of w.  The minor is lower
        triangular: an image coordinate depends only on the same or earlier
        coordinates of w.
        """
        w = np.asarray(w, dtype=float)
        cols = []
        for i in range(self.w_dim):
            e = np.zeros(self.w_dim)
            e[i] = 1.0
            d = curve_derivative(lambda s: self.phi(w + s * e), 1, fd)
            cols.append(np.concatenate([d.real, d.imag]))
        J = np.column_stack(cols)
        rr = self.m + self.index(self.r, self.r)
        rows = tuple(i for i in range(2 * self.m) if i != rr)
        minor = J[list(rows)]
        diag = np.diag(minor).copy()
        if np.any(np.abs(diag) < 1e-12):
            raise ValueError("singular Jacobian minor")
        _, _, a = self.unpack_w(w)
        expected = [1.0] * self.m
        for (i, j, al) in self.order:
            if (i, j) != (self.r, self.r):
                expected.append(float(np.exp(a[i - 1])))
        return JacobianReport(diag, np.array(expected), float(np.abs(np.triu(minor, 1)).max()), rows)

    # -- S = S^- S^+
    def split_s(self, g: SGroupElement) -> tuple[SGroupElement, SGroupElement]:
        """g = s^- s^+ with s^- in N^- A^- (indices < r) and s^+ in N^+ A^+.

        N_0^+ is an ideal, so the N_0^- part of tau(y^1)...tau(y^{r-1}) is the
        product of the tau's of the V^- components.
        """
        Pm = self.minus_projector()
        ys_minus = [Pm @ y for y in g.ys]
        a_minus = g.a.copy()
        a_minus[-1] = 0.0
        s_minus_lin = self.element(np.zeros(self.m), ys_minus, a_minus).linear
        x_minus = Pm @ g.x
        inv = np.linalg.inv(s_minus_lin)
        x_plus = inv @ (g.x - x_minus)
        s_minus = self.element(x_minus, ys_minus, a_minus)
        s_plus = self.from_affine(x_plus, inv @ g.linear)
        return s_minus, s_plus

    def in_s_plus(self, g: SGroupElement, tol: float = 1e-10) -> bool:
        Pm = self.minus_projector()
        ok = np.abs(Pm @ g.x).max() <= tol and np.abs(g.a[:-1]).max(initial=0.0) <= tol
        return bool(ok and all(np.abs(Pm @ y).max() <= tol for y in g.ys))

    def in_s_minus(self, g: SGroupElement, tol: float = 1e-10) -> bool:
        Pp = np.eye(self.m) - self.minus_projector()
        ok = np.abs(Pp @ g.x).max() <= tol and abs(g.a[-1]) <= tol
        return bool(ok and all(np.abs(Pp @ y).max() <= tol for y in g.ys))

    def splus_bracket_check(self) -> float:
        """Largest deviation from the Heisenberg relations of the Lie algebra of S^+."""
        r = self.r
        br = lambda A, B: A @ B - B @ A
        Xr, Hr = self.lie_X(r), self.lie_H(r)
        dev = np.abs(br(Hr, Xr) - Xr).max()
        basis = [Xr, Hr]
        for j in range(1, r):
            for al in range(1, self.d + 1):
                X, Y = self.lie_Xjk(j, r, al), self.lie_Yjk(j, r, al)
                basis += [X, Y]
                dev = max(dev, np.abs(br(Y, X) - Xr).max())
                dev = max(dev, np.abs(br(Hr, X) - 0.5 * X).max())
                dev = max(dev, np.abs(br(Hr, Y) - 0.5 * Y).max())
        # every other bracket among the X_jr, Y_jr, X_r vanishes
        heis = [B for B in basis if B is not Hr]
        for i, A in enumerate(heis):
            for B in heis[i + 1:]:
                C = br(A, B)
                if np.abs(C).max() > 0 and np.abs(C - Xr).max() > 1e-12 and np.abs(C + Xr).max() > 1e-12:
                    dev = max(dev, np.abs(C).max())
        return float(dev)
