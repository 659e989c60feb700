from taildist.coeffs.graph import build_coefficient_graph, coefficient_hash, compute_chain
from taildist.coeffs.nodes import compute_b, compute_qj, compute_rj
from taildist.coeffs.smooth import smooth_expansion, smooth_saddle_min
from taildist.coeffs.state import CoefficientSet, CoeffState

__all__ = [
    "CoeffState",
    "CoefficientSet",
    "build_coefficient_graph",
    "coefficient_hash",
    "compute_b",
    "compute_chain",
    "compute_qj",
    "compute_rj",
    "smooth_expansion",
    "smooth_saddle_min",
]
