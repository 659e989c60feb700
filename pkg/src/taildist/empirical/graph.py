"""LangGraph definition of the empirical checks pipeline."""

from __future__ import annotations

from collections.abc import Sequence

from langgraph.graph import END, START, StateGraph

from taildist.config import Settings
from taildist.empirical.nodes import (
    bridge_node,
    chernoff_node,
    dedekind_node,
    pointwise_node,
    sieve_node,
    summary_node,
)
from taildist.empirical.sieve import ThresholdLike
from taildist.empirical.state import CHECKS, EmpiricalReport, EmpiricalState
from taildist.errors import DomainError

_CHECK_NODES = {
    "chernoff": ("chernoff_node", chernoff_node),
    "dedekind": ("dedekind_node", dedekind_node),
    "bridge": ("bridge_node", bridge_node),
    "pointwise": ("pointwise_node", pointwise_node),
}


def route_checks(state: EmpiricalState) -> list[str]:
    """Fan out to the requested checks, or go straight to the summary."""
    targets = [_CHECK_NODES[name][0] for name in state.get("checks", [])]
    return targets or ["summary_node"]


def build_empirical_graph():
    """Build and compile the empirical checks graph.

    Flow:
        START -> sieve_node -> [chernoff_node, dedekind_node, bridge_node,
              pointwise_node] (only those requested) -> summary_node -> END
    """
    builder = StateGraph(EmpiricalState)

    builder.add_node("sieve_node", sieve_node)
    for name, node in _CHECK_NODES.values():
        builder.add_node(name, node)
    builder.add_node("summary_node", summary_node)

    builder.add_edge(START, "sieve_node")

    # conditional fan-out
    builder.add_conditional_edges(
        "sieve_node",
        route_checks,
        [name for name, _ in _CHECK_NODES.values()] + ["summary_node"],
    )

    # fan-in
    for name, _ in _CHECK_NODES.values():
        builder.add_edge(name, "summary_node")

    builder.add_edge("summary_node", END)

    return builder.compile()


def run_empirical(
    N: int,
    thresholds: Sequence[ThresholdLike],
    checks: Sequence[str] = (),
    sample_limit: int | None = None,
    settings: Settings | None = None,
) -> EmpiricalReport:
    """Sieve once, run the requested checks and summarize."""
    unknown = sorted(set(checks) - set(CHECKS))
    if unknown:
        raise DomainError(f"unknown checks: {', '.join(unknown)}")
    state: EmpiricalState = {
        "N": N,
        "thresholds": [str(t) for t in thresholds],
        "checks": list(dict.fromkeys(checks)),
        "sample_limit": sample_limit,
        "outcomes": [],
        "failures": [],
    }
    if settings is not None:
        state["settings"] = settings
    final = build_empirical_graph().invoke(state)
    return EmpiricalReport(
        tail=final["tail"],
        outcomes=[dict(o) for o in final["outcomes"]],
        failures=[dict(f) for f in final["failures"]],
        all_passed=final["all_passed"],
        summary=final["summary"],
    )
