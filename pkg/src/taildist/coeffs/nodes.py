"""Node functions of the coefficient pipeline.

The two integration-by-parts recursions produce q_j(k) and r_j(k); their
alternating sums give b_j; the remaining nodes push b through the series
chain alpha -> beta -> delta -> eta -> lambda -> mu -> c -> a. Every node
takes the graph state and returns a partial update.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Callable
from typing import Any

import sympy

from taildist.coeffs.state import CoeffState, ZetaFamily
from taildist.errors import ConsistencyError, DomainError
from taildist.zetaring import (
    K,
    FormalSeries,
    RationalFunc,
    ZetaExpr,
    alternating_sum,
    series_compose,
    series_exp,
    series_mul,
    series_reciprocal,
    series_revert,
)

logger = logging.getLogger(__name__)

FactorFn = Callable[[int], sympy.Poly]


def _poly(expr: Any) -> sympy.Poly:
    return sympy.Poly(expr, K, domain="QQ")


# ── integration-by-parts recursions ────────────────────────────────
def _expand_recursion(
    m: int, same_order: FactorFn, next_order: FactorFn
) -> dict[int, RationalFunc]:
    """Unroll a recursion of the shape X(n, b) -> X(n+1, b), X(n+1, b+1).

    A state (n, b) with polynomial weight C(k) contributes C(k)/k^(n+1) to
    the coefficient of z/(log z)^(b+1+n). The child (n+1, b) lands one order
    higher and (n+1, b+1) two orders higher; each is kept only while its
    order stays <= m.
    """
    if m < 2:
        raise DomainError(f"expansion order must be >= 2, got {m}")
    out: dict[int, RationalFunc] = {j: RationalFunc(0) for j in range(2, m + 1)}
    level: dict[tuple[int, int], sympy.Poly] = {(0, 1): _poly(1)}
    while level:
        children: dict[tuple[int, int], sympy.Poly] = defaultdict(lambda: _poly(0))
        for (n, b), weight in level.items():
            j = b + 1 + n
            out[j] = out[j] + RationalFunc(weight, K ** (n + 1))
            if j + 1 <= m:
                children[(n + 1, b)] = children[(n + 1, b)] + weight * same_order(n)
            if j + 2 <= m:
                children[(n + 1, b + 1)] = children[(n + 1, b + 1)] + weight * next_order(b)
        level = {key: w for key, w in children.items() if not w.is_zero}
    for j, f in out.items():
        if not f.is_proper():
            raise ConsistencyError(f"coefficient {j} = {f} is not O(1/k)")
    return out


def compute_qj(m: int) -> dict[int, RationalFunc]:
    """q_2..q_m from I_k(a, b) with a = k + n."""
    return _expand_recursion(
        m,
        same_order=lambda n: _poly(-(K + n + 2)),
        next_order=lambda b: _poly(b),
    )


def compute_rj(m: int) -> dict[int, RationalFunc]:
    """r_2..r_m from J_k(a, b) with a = k - n."""
    return _expand_recursion(
        m,
        same_order=lambda n: _poly(2 - K + n),
        next_order=lambda b: _poly(-b),
    )


def alternating_families(
    q: dict[int, RationalFunc], r: dict[int, RationalFunc]
) -> tuple[ZetaFamily, ZetaFamily, ZetaFamily]:
    theta = {j: alternating_sum(f) for j, f in q.items()}
    rho = {j: alternating_sum(f) for j, f in r.items()}
    b = {j: theta[j] + rho[j] for j in theta}
    return theta, rho, b


def compute_b(m: int) -> ZetaFamily:
    """b_2..b_m exactly, as combinations of eta values."""
    return alternating_families(compute_qj(m), compute_rj(m))[2]


# ── helpers ────────────────────────────────────────────────────────
def _series_order(m: int) -> int:
    return m + 2


def _series_from(family: ZetaFamily, order: int, shift: int = 0) -> FormalSeries:
    """Place family[k] at eps^(k + shift)."""
    coeffs: list[ZetaExpr | int] = [0] * (order + 1)
    for k, value in family.items():
        if k + shift <= order:
            coeffs[k + shift] = value
    return FormalSeries(coeffs, order)


# ── graph nodes ────────────────────────────────────────────────────
def q_recursion(state: CoeffState) -> dict[str, Any]:
    q = compute_qj(state["m"])
    logger.info("Unrolled I-recursion to q_%d", state["m"])
    return {"q": q, "steps": ["q"]}


def r_recursion(state: CoeffState) -> dict[str, Any]:
    r = compute_rj(state["m"])
    logger.info("Unrolled J-recursion to r_%d", state["m"])
    return {"r": r, "steps": ["r"]}


def alternating_sums(state: CoeffState) -> dict[str, Any]:
    theta, rho, b = alternating_families(state["q"], state["r"])
    return {"theta": theta, "rho": rho, "b": b, "steps": ["b"]}


def alpha_node(state: CoeffState) -> dict[str, Any]:
    m, b = state["m"], state["b"]
    alpha = {2: b[2]}
    for k in range(3, m + 1):
        alpha[k] = b[k] - b[k - 1] * (k - 1)
    alpha[m + 1] = b[m] * (-m)
    return {"alpha": alpha, "steps": ["alpha"]}


def beta_node(state: CoeffState) -> dict[str, Any]:
    """beta = alpha / (1 + eps) over indices 2..m."""
    m, alpha = state["m"], state["alpha"]
    beta = {2: alpha[2]}
    for k in range(3, m + 1):
        beta[k] = alpha[k] - beta[k - 1]
    return {"beta": beta, "steps": ["beta"]}


def delta_node(state: CoeffState) -> dict[str, Any]:
    """D(eps) = exp(sum beta_k eps^(k+1)); delta_k is the eps^(k+1) coefficient."""
    m = state["m"]
    d = series_exp(_series_from(state["beta"], _series_order(m), shift=1))
    delta = {k: d[k + 1] for k in range(2, m + 1)}
    return {"delta": delta, "delta_series": d, "steps": ["delta"]}


def inversion_node(state: CoeffState) -> dict[str, Any]:
    """Invert w = eps / D(eps); eta_k is the w^(k+1) coefficient of w / eps(w)."""
    m, d = state["m"], state["delta_series"]
    order = _series_order(m)
    forward = series_mul(FormalSeries.variable(order), series_reciprocal(d))
    inverse = series_revert(forward)
    ratio = series_reciprocal(inverse.shift_down())
    eta = {k: ratio[k + 1] for k in range(2, m + 1)}
    return {"eta_chain": eta, "inverse_series": inverse, "steps": ["eta"]}


def lambda_node(state: CoeffState) -> dict[str, Any]:
    m = state["m"]
    lam = series_exp(_series_from(state["eta_chain"], m))
    return {"lambda_": {k: lam[k] for k in range(2, m + 1)}, "steps": ["lambda"]}


def mu_node(state: CoeffState) -> dict[str, Any]:
    """Re-expand sum (b_k - beta_k) eps^k in powers of w through eps = eps(w)."""
    m, b, beta = state["m"], state["b"], state["beta"]
    order = _series_order(m)
    gap = _series_from({k: b[k] - beta[k] for k in range(2, m + 1)}, order)
    mu_series = series_compose(gap, state["inverse_series"])
    if not mu_series[1].is_zero() or not mu_series[2].is_zero():
        raise ConsistencyError(f"mu_2 must vanish, got {mu_series[2]}")
    return {"mu": {k: mu_series[k] for k in range(2, m + 1)}, "steps": ["mu"]}


def product_node(state: CoeffState) -> dict[str, Any]:
    """c_k from (1 + sum lambda_k w^k)(-1 + sum mu_k w^k)."""
    m = state["m"]
    lam = _series_from(state["lambda_"], m) + FormalSeries.one(m)
    mu = _series_from(state["mu"], m) - FormalSeries.one(m)
    product = series_mul(lam, mu)
    if product[0] != -1 or not product[1].is_zero():
        raise ConsistencyError("leading terms of the minimum expansion must be -1 + 0*w")
    return {"c": {k: product[k] for k in range(2, m + 1)}, "steps": ["c"]}


def gamma_node(state: CoeffState) -> dict[str, Any]:
    a = {k: (-c).with_gamma(k) for k, c in state["c"].items()}
    logger.info("Coefficient chain complete through order %d", state["m"])
    return {"a": a, "steps": ["a"]}
