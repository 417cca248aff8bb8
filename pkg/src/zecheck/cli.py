"""Command-line interface: flag/env parsing and report emission.

Exit codes: 0 all claims pass, 1 at least one claim fails, 2 usage
error, 3 internal error.  Every flag has a ZEC_-prefixed environment
fallback; explicit flags win over the environment, which wins over the
defaults.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .report import FORMATS, RunConfig, SUITE_NAMES, TOOLKIT_VERSION, emit_report
from .suites import execute

EXIT_PASS = 0
EXIT_CLAIM_FAILURE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

ENV_PREFIX = "ZEC_"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zecheck",
        description="Certify the flagged-phase channel family claims numerically.",
    )
    parser.add_argument("--version", action="version", version=f"zecheck {TOOLKIT_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="run verification suites and emit a report")
    verify.add_argument("--d", type=int, default=None, help="qudit dimension (2 or 3)")
    verify.add_argument("--n", type=int, default=None, help="number of channel uses (1 or 2)")
    verify.add_argument(
        "--suite",
        action="append",
        choices=SUITE_NAMES,
        default=None,
        help="suite to run (repeatable; default: all)",
    )
    verify.add_argument("--trials", type=int, default=None, help="sample-count base (default 100)")
    verify.add_argument("--seed", type=int, default=None, help="unsigned 64-bit master seed")
    verify.add_argument("--tol", type=float, default=None, help="base numeric tolerance")
    verify.add_argument("--cache-dir", default=None, help="design cache directory")
    verify.add_argument("--output", default=None, help="report path (default: stdout)")
    verify.add_argument("--format", choices=FORMATS, default=None, dest="fmt")
    return parser


def _env_value(env, key, cast, parser):
    raw = env.get(ENV_PREFIX + key)
    if raw is None:
        return None
    try:
        return cast(raw)
    except (TypeError, ValueError):
        parser.error(f"invalid value {raw!r} for {ENV_PREFIX + key}")


def _env_suites(env, parser):
    raw = env.get(ENV_PREFIX + "SUITE")
    if raw is None:
        return None
    names = tuple(s for s in (part.strip() for part in raw.split(",")) if s)
    for name in names:
        if name not in SUITE_NAMES:
            parser.error(f"unknown suite {name!r} in {ENV_PREFIX}SUITE")
    return names


def parse_config(argv, env=None) -> RunConfig:
    """Resolve flags over environment over defaults into a validated RunConfig."""
    env = os.environ if env is None else env
    parser = _build_parser()
    ns = parser.parse_args(list(argv))

    def pick(flag, key, cast, default):
        if flag is not None:
            return flag
        from_env = _env_value(env, key, cast, parser)
        return default if from_env is None else from_env

    suites = ns.suite
    if suites is None:
        suites = _env_suites(env, parser)
    if suites is None:
        suites = SUITE_NAMES
    try:
        return RunConfig(
            d=pick(ns.d, "D", int, 2),
            n=pick(ns.n, "N", int, 1),
            suites=tuple(suites),
            trials=pick(ns.trials, "TRIALS", int, 100),
            seed=pick(ns.seed, "SEED", int, 1),
            tol=pick(ns.tol, "TOL", float, 1e-9),
            cache_dir=pick(ns.cache_dir, "CACHE_DIR", str, None),
            output=pick(ns.output, "OUTPUT", str, None),
            fmt=pick(ns.fmt, "FORMAT", str, "json"),
        )
    except ValueError as exc:
        parser.error(str(exc))
        raise AssertionError("unreachable")  # parser.error raises SystemExit


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_config(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    try:
        report = execute(config)
        payload = emit_report(report, config.fmt)
        if config.output:
            Path(config.output).write_text(payload, encoding="utf-8")
        else:
            sys.stdout.write(payload)
    except Exception as exc:
        print(f"zecheck: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_PASS if report.overall_pass else EXIT_CLAIM_FAILURE


if __name__ == "__main__":
    sys.exit(main())
