"""LangGraph definition of the estimate comparison graph."""

from __future__ import annotations

import math
from collections.abc import Sequence

from langgraph.graph import END, START, StateGraph

from taildist.config import Settings
from taildist.errors import DomainError
from taildist.estimate.nodes import (
    aggregator,
    baseline_node,
    dispatcher,
    saddle_node,
    thm1_node,
    thm2_node,
)
from taildist.estimate.state import METHODS, EstimateReport, EstimateState
from taildist.saddle import y_of_t

_METHOD_NODES = {
    "baseline": ("baseline_node", baseline_node),
    "thm1": ("thm1_node", thm1_node),
    "saddle": ("saddle_node", saddle_node),
    "thm2": ("thm2_node", thm2_node),
}


def route_methods(state: EstimateState) -> list[str]:
    return [_METHOD_NODES[method][0] for method in state["methods"]]


def build_estimate_graph():
    """Build and compile the estimate comparison graph.

    Flow:
        START -> dispatcher -> [baseline_node, thm1_node, saddle_node,
              thm2_node] (only those requested) -> aggregator -> END
    """
    builder = StateGraph(EstimateState)

    # Add nodes
    builder.add_node("dispatcher", dispatcher)
    for name, node in _METHOD_NODES.values():
        builder.add_node(name, node)
    builder.add_node("aggregator", aggregator)

    builder.add_edge(START, "dispatcher")

    # dispatcher -> fan-out to the requested methods
    builder.add_conditional_edges(
        "dispatcher", route_methods, [name for name, _ in _METHOD_NODES.values()]
    )

    # all methods -> aggregator (fan-in)
    for name, _ in _METHOD_NODES.values():
        builder.add_edge(name, "aggregator")

    builder.add_edge("aggregator", END)

    return builder.compile()


def run_estimates(
    t: float,
    methods: Sequence[str] = METHODS,
    m: int = 4,
    tol: float | None = None,
    settings: Settings | None = None,
) -> EstimateReport:
    """Every requested estimate of log B(t) side by side."""
    chosen = list(dict.fromkeys(methods))
    unknown = sorted(set(chosen) - set(METHODS))
    if unknown:
        raise DomainError(f"unknown methods: {', '.join(unknown)}")
    if not chosen:
        raise DomainError("at least one method is required")
    if y_of_t(t) < math.e * (1 - 1e-12):
        raise DomainError(f"t={t} is below e^gamma")
    if m < 2:
        raise DomainError(f"expansion order must be >= 2, got {m}")
    state: EstimateState = {
        "t": t, "m": m, "tol": tol, "methods": chosen, "estimates": [], "failures": [],
    }
    if settings is not None:
        state["settings"] = settings
    final = build_estimate_graph().invoke(state)
    order = {method: i for i, method in enumerate(METHODS)}
    return EstimateReport(
        t=t,
        y=final["y"],
        m=m,
        estimates=sorted(final["estimates"], key=lambda e: order[e.method]),
        saddle=final.get("saddle"),
        integral=final.get("integral"),
        comparison=final["comparison"],
        failures=[dict(f) for f in final["failures"]],
    )
