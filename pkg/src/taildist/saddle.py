"""Chernoff bound for the tail of n/phi(n) and the log-scale tail estimates.

B(t) <= W(s)/t^s for every s >= 0, so the best bound is the minimum of the
convex function g(s) - s log t. It is found by safeguarded Newton on
g'(s) = log t inside a bisection bracket, with one prime cutoff fixed for the
whole solve so that g stays a single smooth function.
"""

from __future__ import annotations

import logging
import math
from typing import Literal

from pydantic import BaseModel, ConfigDict

from taildist.coeffs import CoefficientSet
from taildist.config import Settings, get_settings
from taildist.errors import BracketError, DomainError
from taildist.wfunc import EULER_GAMMA, choose_cutoff, log_w, log_w_d1, log_w_d2

logger = logging.getLogger(__name__)

_MAX_BRACKET_DOUBLINGS = 40
# Multiple of sqrt(y) allowed for prime-count fluctuations when a prime sum
# is compared with its smooth counterpart (measured offsets stay near 2.2).
PRIME_FLUCTUATION = 4.0

Method = Literal["baseline", "thm1", "saddle", "thm2"]


def y_of_t(t: float) -> float:
    """y = exp(t e^-gamma), the natural tail scale."""
    return math.exp(t * math.exp(-EULER_GAMMA))


def comparison_scale(y: float) -> float:
    """y / (log y)^2 + PRIME_FLUCTUATION sqrt(y).

    Prime sums and their smooth counterparts differ by roughly 2 sqrt(y),
    the size of pi(x) - li(x) near the saddle, on top of the truncation of
    the 1/t expansion.
    """
    return y / math.log(y) ** 2 + PRIME_FLUCTUATION * math.sqrt(y)


class SaddleResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: float
    y: float
    s_star: float
    log_min: float
    grad_residual: float
    iterations: int
    cutoff: float
    log_lower: float | None = None


class TailEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: float
    y: float
    method: Method
    m: int | None = None
    log_value: float
    terms: list[float] | None = None


def minimize_chernoff(
    t: float, tol: float | None = None, settings: Settings | None = None
) -> SaddleResult:
    """min_{s>=0} g(s) - s log t."""
    if t <= 0:
        raise DomainError(f"t must be > 0, got {t}")
    settings = settings or get_settings()
    tol = settings.saddle_tol if tol is None else tol
    log_t = math.log(t)
    y = y_of_t(t)

    hi = max(4.0 * y * math.log(y), 4.0)
    cutoff, _ = choose_cutoff(hi, settings.w_rel_tol * hi, settings)

    def grad(s: float) -> float:
        return log_w_d1(s, cutoff=cutoff, settings=settings) - log_t

    g0 = grad(0.0)
    if g0 >= 0.0:
        logger.info("Chernoff minimum for t=%g sits at the boundary s=0", t)
        return SaddleResult(
            t=t, y=y, s_star=0.0, log_min=0.0, grad_residual=0.0,
            iterations=0, cutoff=cutoff, log_lower=None,
        )

    for _ in range(_MAX_BRACKET_DOUBLINGS):
        if grad(hi) > 0.0:
            break
        hi *= 2.0
        cutoff, _ = choose_cutoff(hi, settings.w_rel_tol * hi, settings)
    else:
        raise BracketError(f"could not bracket the saddle for t={t}")

    lo = 0.0
    s = min(y * math.log(y), 0.5 * hi)
    h = grad(s)
    iterations = 0
    for iterations in range(1, settings.saddle_max_iter + 1):
        if abs(h) <= tol:
            break
        if h > 0:
            hi = s
        else:
            lo = s
        step = h / log_w_d2(s, cutoff=cutoff, settings=settings)
        candidate = s - step
        if not lo < candidate < hi:
            logger.debug("Newton step left the bracket at s=%g; bisecting", s)
            candidate = 0.5 * (lo + hi)
        if hi - lo <= 1e-15 * max(1.0, hi):
            break
        s = candidate
        h = grad(s)
    else:
        logger.warning("Saddle solve for t=%g stopped after %d iterations", t, iterations)

    value = log_w(s, cutoff=cutoff, settings=settings).value
    log_min = value - s * log_t
    log_lower = log_min - math.log(3.0 * s) if s >= 1.0 else None
    logger.info("Saddle for t=%g converged at s*=%.10g in %d steps", t, s, iterations)
    return SaddleResult(
        t=t, y=y, s_star=s, log_min=log_min, grad_residual=abs(h),
        iterations=iterations, cutoff=cutoff, log_lower=log_lower,
    )


def saddle_estimate(t: float, settings: Settings | None = None) -> TailEstimate:
    result = minimize_chernoff(t, settings=settings)
    return TailEstimate(t=t, y=result.y, method="saddle", log_value=result.log_min)


def baseline_estimate(t: float) -> TailEstimate:
    """Leading behaviour -y of the tail exponent."""
    if t <= 0:
        raise DomainError(f"t must be > 0, got {t}")
    y = y_of_t(t)
    return TailEstimate(t=t, y=y, method="baseline", log_value=-y)


def thm1_estimate(t: float, m: int, coeffs: CoefficientSet) -> TailEstimate:
    """-y (1 + sum_{j=2}^m a_j / t^j), with each -y a_j / t^j kept in ``terms``."""
    if t < 2:
        raise DomainError(f"the expansion is only evaluated for t >= 2, got {t}")
    if m < 2 or m > coeffs.m:
        raise DomainError(f"order {m} outside 2..{coeffs.m}")
    y = y_of_t(t)
    a = coeffs.numeric("a")
    terms = [-y * a[j] / t**j for j in range(2, m + 1)]
    return TailEstimate(
        t=t, y=y, method="thm1", m=m, log_value=math.fsum([-y, *terms]), terms=terms
    )


def sylogy_check(t: float, settings: Settings | None = None) -> float:
    """|s* - y log y| / y."""
    if t < 5:
        raise DomainError(f"sylogy_check needs t >= 5, got {t}")
    result = minimize_chernoff(t, settings=settings)
    return abs(result.s_star - result.y * math.log(result.y)) / result.y
