"""Flat ``key = value`` run configurations with per-suite schemas."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

__all__ = ["ConfigError", "RunConfig", "SUITES", "parse_config", "parse_text", "parse_grid"]


class ConfigError(ValueError):
    """Malformed configuration: unknown key, bad value, or invalid constraint."""


def _float(s: str) -> float:
    return float(s)


def _int(s: str) -> int:
    return int(s)


def _str(s: str) -> str:
    return s


def _floats(s: str) -> tuple[float, ...]:
    vals = tuple(float(v) for v in s.split(",") if v.strip())
    if not vals:
        raise ValueError("empty list")
    return vals


def _ints(s: str) -> tuple[int, ...]:
    vals = tuple(int(v) for v in s.split(",") if v.strip())
    if not vals:
        raise ValueError("empty list")
    return vals


def parse_grid(s: str) -> tuple[float, ...]:
    """``v1, v2, ...`` or ``lin:lo:hi:count`` or ``log:lo:hi:count``."""
    s = s.strip()
    if s.startswith(("lin:", "log:")):
        kind, lo, hi, count = s.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
        if count < 1:
            raise ValueError("grid count must be positive")
        pts = np.linspace(lo, hi, count) if kind == "lin" else np.geomspace(lo, hi, count)
        return tuple(float(v) for v in pts)
    return _floats(s)


_COMMON = {"seed": (_int, 0)}

SUITES: dict[str, dict[str, tuple[Callable[[str], Any], Any]]] = {
    "specfun-suite": {
        "gammas": (_floats, (0.5, 1.0, 1.3, 2.0, 2.5)),
        "betas": (_floats, (0.0, 1.0, 2.0)),
        "exponent_gammas": (_floats, (0.5, 1.3, 2.5)),
        "log_gammas": (_floats, (1.0, 2.0)),
        "exponent_beta": (_float, 1.0),
        "legendre_betas": (_floats, (0.5, 1.0, 1.5)),
        "x_grid": (parse_grid, parse_grid("log:0.1:10:20")),
        "legendre_grid": (parse_grid, parse_grid("lin:0.1:5:12")),
        "residual_tol": (_float, 1e-6),
        "oracle_tol": (_float, 1e-6),
        "legendre_tol": (_float, 1e-8),
        "exponent_tol": (_float, 0.02),
    },
    "dichotomy-cn": {
        "alpha": (_float, 0.7),
        "n": (_int, 1),
        "data": (_str, "single-mode"),
        "xi": (_floats, (1.0, 0.0)),
        "a_min": (_float, 1e-4),
        "a_max": (_float, 1.0),
        "samples": (_int, 25),
        "fit_decades": (_float, 2.0),
        "exponent_tol": (_float, 0.03),
        "ratio_tol": (_float, 1.01),
    },
    "dichotomy-heis": {
        "alpha": (_float, 0.5),
        "n": (_int, 1),
        "kappa": (_int, 1),
        "lam": (_float, -1.0),
        "psi_lo": (_float, 0.5),
        "psi_hi": (_float, 2.0),
        "a_min": (_float, 1e-4),
        "a_max": (_float, 1.0),
        "samples": (_int, 25),
        "fit_decades": (_float, 2.0),
        "exponent_tol": (_float, 0.03),
    },
    "jordan-suite": {
        "ranks": (_ints, (2, 3)),
        "jacobian_samples": (_int, 20),
        "membership_samples": (_int, 100),
        "algebra_tol": (_float, 1e-10),
        "jacobian_tol": (_float, 1e-6),
    },
    "hua-suite": {
        "ranks": (_ints, (2, 3)),
        "functions": (_int, 10),
        "points": (_int, 5),
        "annihilation_tol": (_float, 1e-4),
        "control_min": (_float, 0.5),
        "base_tol": (_float, 1e-5),
        "cross_tol": (_float, 1e-4),
    },
    "kernel-tab": {
        "kind": (_str, "hyper"),
        "gamma": (_float, 2.0),
        "beta": (_float, 0.0),
        "alpha": (_float, 0.5),
        "n": (_int, 1),
        "kappa": (_int, 0),
        "a": (_float, 0.5),
        "t": (_float, 0.0),
        "kappa_max": (_int, 32),
        "grid": (parse_grid, (0.0, 1.0, 2.0)),
    },
}

TAB_KINDS = ("hyper", "legendre", "g-radial", "q-mult", "p-kernel")

_POSITIVE = {"residual_tol", "oracle_tol", "legendre_tol", "exponent_tol", "algebra_tol",
             "jacobian_tol", "annihilation_tol", "base_tol", "cross_tol", "ratio_tol",
             "a_max", "a_min", "samples", "points", "functions", "jacobian_samples",
             "membership_samples", "alpha", "n", "fit_decades"}


@dataclass(frozen=True)
class RunConfig:
    suite: str
    params: dict = field(default_factory=dict)
    out_dir: Path = Path(".")

    def __getitem__(self, key: str):
        return self.params[key]

    @property
    def seed(self) -> int:
        return self.params["seed"]

    def echo(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in sorted(self.params.items())}


def parse_text(suite: str, text: str, out_dir: Path | str = ".") -> RunConfig:
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    schema = {**_COMMON, **SUITES[suite]}
    params = {k: default for k, (_, default) in schema.items()}
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in schema:
            raise ConfigError(f"line {lineno}: unknown key {key!r} for suite {suite}")
        if key in seen:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        seen.add(key)
        try:
            params[key] = schema[key][0](value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}") from None
    for key in _POSITIVE & params.keys():
        if not params[key] > 0:
            raise ConfigError(f"{key!r} must be positive")
    if suite == "kernel-tab" and params["kind"] not in TAB_KINDS:
        raise ConfigError(f"unknown table kind {params['kind']!r}; choose from {', '.join(TAB_KINDS)}")
    if suite == "dichotomy-cn" and params["data"] not in ("constant", "single-mode"):
        raise ConfigError("data must be 'constant' or 'single-mode'")
    return RunConfig(suite, params, Path(out_dir))


def parse_config(suite: str, path: Path | str | None, out_dir: Path | str = ".") -> RunConfig:
    text = "" if path is None else Path(path).read_text()
    return parse_text(suite, text, out_dir)
