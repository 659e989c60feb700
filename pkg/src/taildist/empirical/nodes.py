"""Node functions for the empirical checks graph.

The sieve runs once and stores its counts; each requested check reads them
from the state. A check that raises is logged and recorded as a failure so
that the other checks still report.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from fractions import Fraction
from typing import Any

from taildist.config import get_settings
from taildist.empirical.checks import (
    bridge_certificate,
    chernoff_check,
    dedekind_check,
    dedekind_threshold,
    pointwise_abundancy_check,
)
from taildist.empirical.sieve import build_tail, count_tails, parse_threshold, parse_thresholds
from taildist.empirical.state import CheckOutcome, EmpiricalState
from taildist.errors import Failure, failure_record

logger = logging.getLogger(__name__)

POINTWISE_LIMIT = 10**5


def _per_threshold(
    node: str,
    state: EmpiricalState,
    check: Callable[[Fraction], CheckOutcome | None],
) -> dict[str, Any]:
    outcomes: list[CheckOutcome] = []
    failures: list[Failure] = []
    for label in state["thresholds"]:
        try:
            outcome = check(parse_threshold(label))
        except Exception as exc:
            logger.exception("%s failed at t=%s", node, label)
            failures.append(failure_record(node, exc))
            continue
        if outcome is not None:
            outcomes.append(outcome)
    return {"outcomes": outcomes, "failures": failures}


def sieve_node(state: EmpiricalState) -> dict[str, Any]:
    """Count every threshold the requested checks will read, in one sieve pass."""
    settings = state.get("settings") or get_settings()
    exact = parse_thresholds(state["thresholds"])
    wanted = set(exact)
    if "dedekind" in state.get("checks", []):
        wanted |= {dedekind_threshold(t) for t in exact}
    counts = count_tails(state["N"], wanted, settings)
    return {"counts": counts, "tail": build_tail(state["N"], state["thresholds"], counts)}


def chernoff_node(state: EmpiricalState) -> dict[str, Any]:
    settings = state.get("settings") or get_settings()

    def check(t: Fraction) -> CheckOutcome:
        result = chernoff_check(state["N"], t, state["counts"], settings)
        return {
            "check": "chernoff", "t": result.t, "passed": result.passed,
            "detail": result.model_dump(),
        }

    return _per_threshold("chernoff_node", state, check)


def dedekind_node(state: EmpiricalState) -> dict[str, Any]:
    settings = state.get("settings") or get_settings()

    def check(t: Fraction) -> CheckOutcome:
        result = dedekind_check(state["N"], t, state["counts"], settings)
        return {
            "check": "dedekind", "t": result.t, "passed": result.holds,
            "detail": result.model_dump(),
        }

    return _per_threshold("dedekind_node", state, check)


def bridge_node(state: EmpiricalState) -> dict[str, Any]:
    """Bridge certificates at every threshold >= 2, sampling n <= min(N, max samples)."""
    settings = state.get("settings") or get_settings()
    limit = state.get("sample_limit") or min(state["N"], settings.bridge_max_samples)

    def check(t: Fraction) -> CheckOutcome | None:
        if t < 2:
            return None
        cert = bridge_certificate(float(t), limit, settings)
        return {
            "check": "bridge", "t": cert.t, "passed": cert.all_passed,
            "detail": cert.model_dump(),
        }

    return _per_threshold("bridge_node", state, check)


def pointwise_node(state: EmpiricalState) -> dict[str, Any]:
    limit = min(state["N"], POINTWISE_LIMIT)
    try:
        passed = limit < 2 or pointwise_abundancy_check(limit)
    except Exception as exc:
        logger.exception("pointwise_node failed")
        return {"failures": [failure_record("pointwise_node", exc)]}
    outcome: CheckOutcome = {
        "check": "pointwise", "t": None, "passed": passed, "detail": {"limit": limit},
    }
    return {"outcomes": [outcome]}


def summary_node(state: EmpiricalState) -> dict[str, Any]:
    """Verify the count invariants and fold every outcome into one verdict."""
    tail = state["tail"]
    ordered = all(a <= b for a, b in zip(tail.counts_A, tail.counts_B))
    for counts in (tail.counts_A, tail.counts_B, tail.counts_D):
        ordered = ordered and all(x >= y for x, y in zip(counts, counts[1:]))
    for i, t in enumerate(tail.thresholds):
        if t == 1.0:
            ordered = ordered and tail.counts_A[i] == tail.counts_B[i] == tail.N
    invariant: CheckOutcome = {
        "check": "ordering", "t": None, "passed": ordered, "detail": {"N": tail.N},
    }
    outcomes = [*state.get("outcomes", []), invariant]
    failures = state.get("failures", [])
    all_passed = not failures and all(o["passed"] for o in outcomes)

    lines = [f"Empirical checks up to N={tail.N}: {'PASS' if all_passed else 'FAIL'}"]
    for o in outcomes:
        marker = "    " if o["passed"] else ">>> "
        where = "" if o["t"] is None else f" at t={o['t']!r}"
        lines.append(f"{marker}{o['check']}{where}: {'pass' if o['passed'] else 'FAIL'}")
    for f in failures:
        lines.append(f">>> {f['node']} raised {f['error']}: {f['message']}")
    if not ordered:
        logger.warning("Count invariants violated up to N=%d", tail.N)
    return {"outcomes": [invariant], "all_passed": all_passed, "summary": "\n".join(lines)}
