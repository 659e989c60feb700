"""Command-line front end: ``taildist {coeffs,estimate,empirical,bridge,selftest}``.

Every command prints a JSON ``RunReport`` (or CSV/text when ``--format``
asks for it) on stdout; logging goes to stderr. Numeric outputs are log
scale and floats are written in their shortest round-trip form, so reruns
with the same parameters give identical ``results``.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from collections.abc import Sequence
from contextlib import contextmanager
from typing import Any, TextIO

from pydantic import BaseModel

from taildist import __version__
from taildist.coeffs import coefficient_hash, compute_chain
from taildist.coeffs.reference import reference_families, reference_rational
from taildist.config import Settings, get_settings
from taildist.empirical import bridge_certificate, run_empirical, sieve_tails, write_csv
from taildist.errors import (
    ConsistencyError,
    DomainError,
    PipelineError,
    ResourceError,
    TailDistError,
)
from taildist.estimate import METHODS, run_estimates
from taildist.wfunc import EULER_GAMMA, log_w
from taildist.zetaring import ZetaExpr

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_CONSISTENCY = 4

DEFAULT_THRESHOLDS = "1,1.5,2,2.5,3"
# Coefficient order whose hash tags every report.
HASH_ORDER = 4


class RunReport(BaseModel):
    command: str
    parameters: dict[str, Any]
    results: Any
    wall_time_ms: int
    versions: dict[str, str]


class UsageError(Exception):
    """Bad command-line input detected after argparse accepted it."""


# ── helpers ────────────────────────────────────────────────────────
def _csv_list(raw: str) -> list[str]:
    return [item.strip() for item in raw.split(",") if item.strip()]


@contextmanager
def _output(path: str | None):
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        yield handle


def _emit(report: RunReport, stream: TextIO) -> None:
    json.dump(report.model_dump(mode="json"), stream, indent=2, sort_keys=False)
    stream.write("\n")


def _versions() -> dict[str, str]:
    return {"taildist": __version__, "coefficients": coefficient_hash(HASH_ORDER)}


def _report(command: str, parameters: dict[str, Any], results: Any, started: float) -> RunReport:
    return RunReport(
        command=command,
        parameters=parameters,
        results=results,
        wall_time_ms=int((time.perf_counter() - started) * 1000),
        versions=_versions(),
    )


# ── commands ───────────────────────────────────────────────────────
def cmd_coeffs(args: argparse.Namespace, settings: Settings) -> int:
    if not 2 <= args.m <= settings.max_cli_m:
        raise UsageError(f"--m must lie in 2..{settings.max_cli_m}, got {args.m}")
    started = time.perf_counter()
    coeffs = compute_chain(args.m)
    with _output(args.out) as stream:
        if args.format == "text":
            for line in coeffs.text_lines():
                stream.write(line + "\n")
        else:
            _emit(_report("coeffs", {"m": args.m}, coeffs.to_json(), started), stream)
    return EXIT_OK


def cmd_estimate(args: argparse.Namespace, settings: Settings) -> int:
    if args.t is None:
        raise UsageError("--t is required")
    if args.t < math.exp(EULER_GAMMA) * (1 - 1e-15):
        raise UsageError(f"--t must be >= e^gamma, got {args.t}")
    methods = _csv_list(args.methods)
    unknown = sorted(set(methods) - set(METHODS))
    if unknown or not methods:
        raise UsageError(f"--methods must be drawn from {', '.join(METHODS)}")
    started = time.perf_counter()
    report = run_estimates(max(args.t, math.exp(EULER_GAMMA)), methods, args.m, args.tol, settings)
    parameters = {"t": args.t, "methods": methods, "m": args.m, "tol": args.tol}
    with _output(args.out) as stream:
        if args.format == "text":
            for estimate in report.estimates:
                stream.write(f"{estimate.method}\t{estimate.log_value!r}\n")
        else:
            _emit(_report("estimate", parameters, report.model_dump(mode="json"), started), stream)
    hard = [f for f in report.failures if f["error"] != DomainError.__name__]
    return EXIT_CONSISTENCY if hard else EXIT_OK


def cmd_empirical(args: argparse.Namespace, settings: Settings) -> int:
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    thresholds = _csv_list(args.thresholds)
    checks = _csv_list(args.checks) if args.checks else []
    if "chernoff" in checks and args.n < settings.min_chernoff_n:
        raise UsageError(f"--checks=chernoff needs --n >= {settings.min_chernoff_n}")
    started = time.perf_counter()
    parameters = {"N": args.n, "thresholds": thresholds, "checks": checks}
    if not checks:
        tail = sieve_tails(args.n, thresholds, settings)
        with _output(args.out) as stream:
            if args.format == "json":
                payload = tail.model_dump(mode="json")
                _emit(_report("empirical", parameters, payload, started), stream)
            else:
                write_csv(tail, stream)
        return EXIT_OK

    result = run_empirical(args.n, thresholds, checks, settings=settings)
    with _output(args.out) as stream:
        if args.format == "json":
            _emit(_report("empirical", parameters, result.model_dump(mode="json"), started), stream)
        else:
            write_csv(result.tail, stream)
            sys.stderr.write(result.summary + "\n")
    return EXIT_OK if result.all_passed else EXIT_CONSISTENCY


def cmd_bridge(args: argparse.Namespace, settings: Settings) -> int:
    if args.t is None or args.t < 2:
        raise UsageError("--t must be >= 2")
    limit = args.n if args.n is not None else 10**5
    started = time.perf_counter()
    cert = bridge_certificate(args.t, limit, settings)
    with _output(args.out) as stream:
        payload = cert.model_dump(mode="json")
        _emit(_report("bridge", {"t": args.t, "n": limit}, payload, started), stream)
    return EXIT_OK if cert.all_passed else EXIT_CONSISTENCY


def _selftest_checks(settings: Settings) -> dict[str, bool]:
    coeffs = compute_chain(4)
    results: dict[str, bool] = {}
    for name, expected in reference_rational().items():
        results[f"coeffs.{name}"] = getattr(coeffs, name) == expected
    for name, expected in reference_families().items():
        family = coeffs.family(name)
        results[f"coeffs.{name}"] = all(family[j] == x for j, x in expected.items())

    results["log_w(0) == 0"] = log_w(0.0, settings=settings).value == 0.0
    zeta_ratio = float(
        (ZetaExpr.zeta(2) * ZetaExpr.zeta(3)).numeric(30) / ZetaExpr.zeta(6).numeric(30)
    )
    results["log_w(1)"] = abs(log_w(1.0, settings=settings).value - math.log(zeta_ratio)) <= 1e-6

    tail = sieve_tails(100, ["1", "2"], settings)
    results["counts at N=100"] = (
        tail.counts_A == [100, 24] and tail.counts_B == [100, 50] and tail.counts_D[0] == 100
    )
    return results


def cmd_selftest(args: argparse.Namespace, settings: Settings) -> int:
    started = time.perf_counter()
    results = _selftest_checks(settings)
    for name, ok in results.items():
        if not ok:
            logger.warning("selftest failed: %s", name)
    with _output(args.out) as stream:
        _emit(_report("selftest", {}, results, started), stream)
    return EXIT_OK if all(results.values()) else EXIT_CONSISTENCY


_COMMANDS = {
    "coeffs": cmd_coeffs,
    "estimate": cmd_estimate,
    "empirical": cmd_empirical,
    "bridge": cmd_bridge,
    "selftest": cmd_selftest,
}


# ── parser and entry point ─────────────────────────────────────────
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="write output to PATH instead of stdout")
    common.add_argument("--verbose", action="store_true", help="DEBUG logging on stderr")

    parser = argparse.ArgumentParser(
        prog="taildist",
        description="Tail estimates for sigma(n)/n and n/phi(n), in log scale.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    coeffs = sub.add_parser("coeffs", parents=[common], help="exact expansion coefficients")
    coeffs.add_argument("--m", type=int, default=4)
    coeffs.add_argument("--format", choices=["json", "text"], default="json")

    estimate = sub.add_parser("estimate", parents=[common], help="compare tail estimates at t")
    estimate.add_argument("--t", type=float)
    estimate.add_argument("--methods", default=",".join(METHODS))
    estimate.add_argument("--m", type=int, default=4)
    estimate.add_argument("--tol", type=float, default=None)
    estimate.add_argument("--format", choices=["json", "text"], default="json")

    empirical = sub.add_parser("empirical", parents=[common], help="sieve counts up to N")
    empirical.add_argument("--n", type=int)
    empirical.add_argument("--thresholds", default=DEFAULT_THRESHOLDS)
    empirical.add_argument(
        "--checks", default="", help="comma list of chernoff,dedekind,bridge,pointwise"
    )
    empirical.add_argument("--format", choices=["csv", "json"], default="csv")

    bridge = sub.add_parser("bridge", parents=[common], help="multiplier certificate at t")
    bridge.add_argument("--t", type=float)
    bridge.add_argument("--n", type=int, default=None, help="sample limit (default 10^5)")

    sub.add_parser("selftest", parents=[common], help="quick consistency checks")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    settings = get_settings()
    try:
        return _COMMANDS[args.command](args, settings)
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"taildist: error: {exc}\n")
        return EXIT_USAGE
    except ResourceError as exc:
        logger.error("Resource limit: %s", exc)
        return EXIT_RESOURCE
    except (PipelineError, ConsistencyError) as exc:
        logger.error("Consistency failure: %s", exc)
        return EXIT_CONSISTENCY
    except TailDistError as exc:
        logger.exception("Unexpected failure: %s", exc)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
