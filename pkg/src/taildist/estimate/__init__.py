from taildist.estimate.graph import build_estimate_graph, run_estimates
from taildist.estimate.state import METHODS, Comparison, EstimateReport, EstimateState

__all__ = [
    "METHODS",
    "Comparison",
    "EstimateReport",
    "EstimateState",
    "build_estimate_graph",
    "run_estimates",
]
