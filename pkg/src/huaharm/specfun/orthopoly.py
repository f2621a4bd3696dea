"""Hermite functions and Laguerre polynomials via three-term recurrences."""

from __future__ import annotations

from itertools import product
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "DEGREE_GUARD",
    "hermite",
    "hermite_poly_part",
    "hermite_scaled",
    "laguerre",
    "laguerre_product",
    "phi_k",
    "multi_indices",
]

DEGREE_GUARD = 60


def _guard(k: int):
    if k < 0 or int(k) != k:
        raise ValueError(f"degree must be a non-negative integer, got {k}")
    if k > DEGREE_GUARD:
        raise ValueError(f"degree {k} exceeds the guard {DEGREE_GUARD}")


def hermite_poly_part(k: int, x):
    """h_k(x) * exp(x**2 / 2), the polynomial factor of the Hermite function.

    Recurrence p_0 = pi^{-1/4}, p_{j+1} = sqrt(2/(j+1)) x p_j - sqrt(j/(j+1)) p_{j-1}.
    """
    _guard(k)
    x = np.asarray(x, dtype=float)
    prev = np.zeros_like(x)
    cur = np.full_like(x, np.pi**-0.25)
    for j in range(k):
        prev, cur = cur, np.sqrt(2.0 / (j + 1)) * x * cur - np.sqrt(j / (j + 1.0)) * prev
    return cur


def hermite(k: int, x):
    """Orthonormal Hermite function h_k(x) = H_k(x) exp(-x^2/2) / (sqrt(pi) 2^k k!)^{1/2}."""
    x = np.asarray(x, dtype=float)
    return hermite_poly_part(k, x) * np.exp(-0.5 * x * x)


def hermite_scaled(k: Sequence[int], lam: float, x):
    """h_k^lam(x) = (4|lam|)^{n/4} prod_i h_{k_i}((4|lam|)^{1/2} x_i).

    ``lam`` is the frequency of the central variable t (phase e^{i lam t});
    see ``huaharm.heisenberg`` for the convention.  ``x`` has trailing axis n.
    """
    if lam == 0:
        raise ValueError("lambda must be non-zero")
    k = tuple(int(v) for v in k)
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != len(k):
        raise ValueError("x must have trailing dimension equal to the multi-index length")
    sigma = np.sqrt(4 * abs(lam))
    out = np.full(x.shape[:-1], sigma ** (len(k) / 2))
    for i, ki in enumerate(k):
        out = out * hermite(ki, sigma * x[..., i])
    return out


def laguerre(k: int, t, alpha: float = 0.0):
    """Generalized Laguerre polynomial L_k^{(alpha)}(t) by recurrence."""
    _guard(k)
    t = np.asarray(t, dtype=float)
    prev = np.zeros_like(t)
    cur = np.ones_like(t)
    for j in range(k):
        prev, cur = cur, ((2 * j + 1 + alpha - t) * cur - (j + alpha) * prev) / (j + 1)
    return cur


def _abs2(zeta):
    zeta = np.asarray(zeta, dtype=complex)
    return zeta.real**2 + zeta.imag**2


def laguerre_product(k: Sequence[int], zeta):
    """Lambda_k(zeta) = prod_i L_{k_i}(|zeta_i|^2 / 2); ``zeta`` has trailing axis n."""
    r2 = _abs2(zeta)
    if r2.shape[-1] != len(k):
        raise ValueError("zeta must have trailing dimension equal to the multi-index length")
    out = np.ones(r2.shape[:-1])
    for i, ki in enumerate(k):
        out = out * laguerre(int(ki), 0.5 * r2[..., i])
    return out


def phi_k(k: Sequence[int], zeta):
    """Phi_k(zeta) = (2 pi)^{-n/2} Lambda_k(zeta) exp(-|zeta|^2 / 4)."""
    r2 = _abs2(zeta)
    n = r2.shape[-1]
    return (2 * np.pi) ** (-n / 2) * laguerre_product(k, zeta) * np.exp(-0.25 * r2.sum(axis=-1))


def multi_indices(n: int, kappa: int) -> Iterator[tuple[int, ...]]:
    """All k in N^n with |k| = kappa, in lexicographic order."""
    for k in product(range(kappa + 1), repeat=n):
        if sum(k) == kappa:
            yield k
