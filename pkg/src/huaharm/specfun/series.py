"""Pochhammer symbol and the 1F1 / 0F1 power series."""

from __future__ import annotations

__all__ = ["pochhammer", "hyp1f1", "hyp0f1"]

_MAX_TERMS = 10_000
_TOL = 1e-16


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0 or int(n) != n:
        raise ValueError(f"n must be a non-negative integer, got {n}")
    out = 1.0
    for i in range(int(n)):
        out *= a + i
    return out


def _check_c(c: float):
    if c <= 0 and float(c).is_integer():
        raise ValueError(f"series undefined for non-positive integer c = {c}")


def _sum_series(ratio) -> float:
    """Sum 1 + t_1 + t_2 + ... with t_{n+1} = t_n * ratio(n)."""
    total = 1.0
    term = 1.0
    small = 0
    for n in range(_MAX_TERMS):
        term *= ratio(n)
        total += term
        if term == 0.0:
            return total
        # stop after the terms have been negligible twice in a row
        if abs(term) <= _TOL * abs(total):
            small += 1
            if small == 2:
                return total
        else:
            small = 0
    raise ArithmeticError("hypergeometric series did not converge")


def hyp1f1(a: float, c: float, x: float) -> float:
    """Kummer's series sum (a)_n / (c)_n x^n / n!."""
    _check_c(c)
    if x == 0:
        return 1.0
    return _sum_series(lambda n: (a + n) / ((c + n) * (n + 1)) * x)


def hyp0f1(c: float, x: float) -> float:
    """Series sum x^k / ((c)_k k!)."""
    _check_c(c)
    if x == 0:
        return 1.0
    return _sum_series(lambda n: x / ((c + n) * (n + 1)))

