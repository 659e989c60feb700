"""LangGraph definition of the coefficient pipeline."""

from __future__ import annotations

from functools import lru_cache

from langgraph.graph import END, START, StateGraph

from taildist.coeffs.nodes import (
    alpha_node,
    alternating_sums,
    beta_node,
    delta_node,
    gamma_node,
    inversion_node,
    lambda_node,
    mu_node,
    product_node,
    q_recursion,
    r_recursion,
)
from taildist.coeffs.state import CoefficientSet, CoeffState
from taildist.errors import DomainError

_CHAIN = [
    ("alternating_sums", alternating_sums),
    ("alpha_node", alpha_node),
    ("beta_node", beta_node),
    ("delta_node", delta_node),
    ("inversion_node", inversion_node),
    ("lambda_node", lambda_node),
    ("mu_node", mu_node),
    ("product_node", product_node),
    ("gamma_node", gamma_node),
]


def build_coefficient_graph():
    """Build and compile the coefficient graph.

    Node names must differ from state keys.

    Flow:
        START -> [q_recursion, r_recursion] -> alternating_sums
              -> alpha_node -> beta_node -> delta_node -> inversion_node
              -> lambda_node -> mu_node -> product_node -> gamma_node -> END
    """
    builder = StateGraph(CoeffState)

    builder.add_node("q_recursion", q_recursion)
    builder.add_node("r_recursion", r_recursion)
    for name, node in _CHAIN:
        builder.add_node(name, node)

    # fan-out: both recursions run in parallel
    builder.add_edge(START, "q_recursion")
    builder.add_edge(START, "r_recursion")

    # fan-in
    builder.add_edge(["q_recursion", "r_recursion"], "alternating_sums")

    for (src, _), (dst, _) in zip(_CHAIN, _CHAIN[1:]):
        builder.add_edge(src, dst)
    builder.add_edge(_CHAIN[-1][0], END)

    return builder.compile()


@lru_cache(maxsize=16)
def compute_chain(m: int) -> CoefficientSet:
    """Run the full pipeline for orders 2..m."""
    if m < 2:
        raise DomainError(f"expansion order must be >= 2, got {m}")
    final = build_coefficient_graph().invoke({"m": m, "steps": []})
    return CoefficientSet(
        m=m,
        q=final["q"],
        r=final["r"],
        theta=final["theta"],
        rho=final["rho"],
        b=final["b"],
        alpha=final["alpha"],
        beta=final["beta"],
        delta=final["delta"],
        eta_chain=final["eta_chain"],
        lambda_=final["lambda_"],
        mu=final["mu"],
        c=final["c"],
        a=final["a"],
    )


def coefficient_hash(m: int) -> str:
    return compute_chain(m).coefficient_hash()
