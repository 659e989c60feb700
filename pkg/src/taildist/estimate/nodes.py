"""Node functions for the estimate comparison graph.

Each method node computes one log-scale estimate of the tail at t. A
method that raises is logged and recorded on the ``failures`` channel, so
the aggregator compares whatever did answer.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from typing import Any

from taildist.coeffs import compute_chain
from taildist.config import get_settings
from taildist.errors import failure_record
from taildist.estimate.state import Comparison, EstimateState
from taildist.integral import thm2_estimate
from taildist.saddle import (
    TailEstimate,
    baseline_estimate,
    comparison_scale,
    minimize_chernoff,
    thm1_estimate,
    y_of_t,
)

logger = logging.getLogger(__name__)


def _guarded(name: str, run: Callable[[EstimateState], dict[str, Any]]):
    """Wrap a method so that an exception becomes a failure record."""

    def node(state: EstimateState) -> dict[str, Any]:
        try:
            return run(state)
        except Exception as exc:
            logger.exception("%s failed for t=%g", name, state["t"])
            return {"failures": [failure_record(name, exc)]}

    node.__name__ = name
    return node


def dispatcher(state: EstimateState) -> dict[str, Any]:
    """Record y = exp(t e^-gamma) before fan-out."""
    return {"y": y_of_t(state["t"])}


def _baseline(state: EstimateState) -> dict[str, Any]:
    return {"estimates": [baseline_estimate(state["t"])]}


def _thm1(state: EstimateState) -> dict[str, Any]:
    coeffs = compute_chain(state["m"])
    return {"estimates": [thm1_estimate(state["t"], state["m"], coeffs)]}


def _saddle(state: EstimateState) -> dict[str, Any]:
    settings = state.get("settings") or get_settings()
    result = minimize_chernoff(state["t"], state.get("tol"), settings)
    estimate = TailEstimate(t=state["t"], y=result.y, method="saddle", log_value=result.log_min)
    return {"estimates": [estimate], "saddle": result}


def _thm2(state: EstimateState) -> dict[str, Any]:
    settings = state.get("settings") or get_settings()
    result = thm2_estimate(state["t"], state.get("tol"), settings)
    estimate = TailEstimate(t=state["t"], y=result.y, method="thm2", log_value=result.log_value)
    return {"estimates": [estimate], "integral": result}


baseline_node = _guarded("baseline_node", _baseline)
thm1_node = _guarded("thm1_node", _thm1)
saddle_node = _guarded("saddle_node", _saddle)
thm2_node = _guarded("thm2_node", _thm2)


def aggregator(state: EstimateState) -> dict[str, Any]:
    """Compare the estimates that came back.

    ``spread`` is the largest gap between non-baseline log-values; they are
    called consistent when it stays within ``comparison_scale(y)``, i.e.
    y / (log y)^2 plus a sqrt(y) allowance for prime fluctuations. The baseline
    differs from the rest by about (pi^2/6) y / (log y)^2 and is left out.
    """
    y = state["y"]
    log_values = {e.method: e.log_value for e in state.get("estimates", [])}
    refined = [v for method, v in log_values.items() if method != "baseline"]
    spread = max(refined) - min(refined) if refined else 0.0
    scale = comparison_scale(y)
    consistent = spread <= scale
    if not consistent:
        logger.warning("Estimates for t=%g spread by %.4g (scale %.4g)", state["t"], spread, scale)
    comparison = Comparison(
        log_values=log_values, spread=spread, scale=scale, consistent=consistent
    )
    return {"comparison": comparison}
