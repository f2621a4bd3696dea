"""Command line: ``huaharm <suite> --config <path> [--out <dir>]``.

Writes ``manifest.json`` and one CSV per table into the output directory.
Exit status: 0 when every check passes, 1 when some check fails, 2 for a
configuration error, 3 when a suite raises (a partial manifest is written).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import traceback
from pathlib import Path

from .config import SUITES, ConfigError, RunConfig, parse_config, parse_text
from .suites import Check, SuiteResult, Table, run_suite, tabulate, thread_cap

__all__ = [
    "ConfigError",
    "RunConfig",
    "SuiteResult",
    "Table",
    "Check",
    "main",
    "parse_config",
    "parse_text",
    "run",
    "tabulate",
]


def _version() -> str:
    from .. import __version__

    return __version__


def _manifest(cfg: RunConfig, result: SuiteResult, wall: float, error: str | None = None) -> dict:
    doc = {
        "suite": cfg.suite,
        "version": _version(),
        "seed": cfg.seed,
        "config": cfg.echo(),
        "checks": [c.as_record() for c in result.checks],
        "check_count": len(result.checks),
        "passed": result.passed and error is None,
        "details": result.details,
        "tables": [f"{t.name}.csv" for t in result.tables],
        "timing": {"wall_clock_seconds": wall, "threads": thread_cap()},
    }
    if error is not None:
        doc["error"] = error
    return doc


def _write(out_dir: Path, manifest: dict, tables) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for t in tables:
        (out_dir / f"{t.name}.csv").write_text(t.render())
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def run(cfg: RunConfig) -> tuple[dict, int]:
    """Run a suite, write its files, and return the manifest and exit status."""
    start = time.perf_counter()
    try:
        result = run_suite(cfg)
    except Exception as exc:  # the partial manifest records the failure
        manifest = _manifest(cfg, SuiteResult(), time.perf_counter() - start,
                             error="".join(traceback.format_exception_only(type(exc), exc)).strip())
        _write(cfg.out_dir, manifest, [])
        return manifest, 3
    manifest = _manifest(cfg, result, time.perf_counter() - start)
    _write(cfg.out_dir, manifest, result.tables)
    return manifest, 0 if result.passed else 1


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="huaharm", description="Run a verification suite.")
    parser.add_argument("suite", choices=sorted(SUITES))
    parser.add_argument("--config", type=Path, default=None, help="flat key = value file")
    parser.add_argument("--out", type=Path, default=Path("."), help="output directory")
    args = parser.parse_args(argv)
    try:
        cfg = parse_config(args.suite, args.config, args.out)
    except (ConfigError, OSError) as exc:
        print(f"huaharm: config error: {exc}", file=sys.stderr)
        return 2
    manifest, status = run(cfg)
    failed = [c["name"] for c in manifest["checks"] if not c["passed"]]
    print(f"{cfg.suite}: {manifest['check_count'] - len(failed)}/{manifest['check_count']} checks passed"
          + (f"; error: {manifest['error']}" if "error" in manifest else ""))
    for name in failed:
        print(f"  FAILED {name}")
    return status
