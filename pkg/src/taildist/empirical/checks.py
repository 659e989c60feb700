"""Finite-N checks of the inequalities that hold for every n or every N.

All decisions are exact where the underlying claim is exact: count
comparisons are integer comparisons, and the bridge inequality compares
rationals built from the factorization of n m.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction

import numpy as np
import sympy
from pydantic import BaseModel, ConfigDict

from taildist.config import Settings, get_settings
from taildist.empirical.sieve import count_tails, multiplicative_table, parse_threshold
from taildist.errors import DomainError
from taildist.primes import primes_upto
from taildist.saddle import minimize_chernoff, y_of_t
from taildist.wfunc import EULER_GAMMA

logger = logging.getLogger(__name__)

# Rational lower bound for pi^2, so 6 t / PI_SQUARED_LOW >= t / zeta(2).
PI_SQUARED_LOW = Fraction(98696044, 10**7)
CHERNOFF_REL_SLACK = 0.05
CHERNOFF_ABS_SLACK = 10.0
# Relative and absolute inflation of the float bridge bound before the exact comparison.
_BRIDGE_GUARD = 1e-12

Counts = dict[Fraction, tuple[int, int, int]]


class ChernoffCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    N: int
    t: float
    density: float
    log_bound: float
    gap: float
    passed: bool


class DedekindCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    N: int
    t: float
    d_threshold: float
    count_B: int
    count_D: int
    holds: bool


class BridgeCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: float
    y: float
    m: int
    factorization: dict[int, int]
    log_m: float
    log_m_bound: float
    p_lower: float
    p_target: float
    p_bound_holds: bool
    samples_checked: int
    all_passed: bool
    witness: int | None = None


def dedekind_threshold(t: Fraction) -> Fraction:
    return 6 * t / PI_SQUARED_LOW


def _counts_for(
    N: int, thresholds: list[Fraction], counts: Counts | None, settings: Settings | None
) -> Counts:
    if counts is not None and all(t in counts for t in thresholds):
        return counts
    return count_tails(N, thresholds, settings)


# ── Chernoff bound ─────────────────────────────────────────────────
def chernoff_check(
    N: int, t: float | Fraction, counts: Counts | None = None, settings: Settings | None = None
) -> ChernoffCheck:
    """Empirical density of n/phi(n) >= t against the Chernoff bound.

    Passes when density <= (1 + CHERNOFF_REL_SLACK) bound + CHERNOFF_ABS_SLACK / N.
    """
    settings = settings or get_settings()
    if N < settings.min_chernoff_n:
        raise DomainError(f"the Chernoff check needs N >= {settings.min_chernoff_n}, got {N}")
    if t < 1:
        raise DomainError(f"t must be >= 1, got {t}")
    exact = parse_threshold(t)
    counts = _counts_for(N, [exact], counts, settings)
    density = counts[exact][1] / N
    log_bound = minimize_chernoff(float(t), settings=settings).log_min
    bound = math.exp(log_bound)
    passed = density <= (1.0 + CHERNOFF_REL_SLACK) * bound + CHERNOFF_ABS_SLACK / N
    if not passed:
        logger.warning(
            "Chernoff check failed at t=%g: density %.6g vs bound %.6g", t, density, bound
        )
    return ChernoffCheck(
        N=N, t=float(t), density=density, log_bound=log_bound, gap=density - bound, passed=passed
    )


def chernoff_gap(
    N: int, t: float | Fraction, counts: Counts | None = None, settings: Settings | None = None
) -> float:
    """count_B(t)/N - exp(min_s log W(s) - s log t)."""
    return chernoff_check(N, t, counts, settings).gap


# ── Dedekind comparison ────────────────────────────────────────────
def dedekind_check(
    N: int, t: float | Fraction, counts: Counts | None = None, settings: Settings | None = None
) -> DedekindCheck:
    """#{n <= N : psi(n)/n >= t/zeta(2)} >= #{n <= N : n/phi(n) >= t}.

    The D side is counted at 6t/pi_low^2, which is at least t/zeta(2), so
    a pass proves the inequality at the true threshold as well.
    """
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    if t < 1:
        raise DomainError(f"t must be >= 1, got {t}")
    exact = parse_threshold(t)
    r = dedekind_threshold(exact)
    counts = _counts_for(N, [exact, r], counts, settings)
    count_b, count_d = counts[exact][1], counts[r][2]
    return DedekindCheck(
        N=N, t=float(t), d_threshold=float(r), count_B=count_b, count_D=count_d,
        holds=count_d >= count_b,
    )


def pointwise_abundancy_check(limit: int) -> bool:
    """sigma(n) phi(n) < n^2 for every 2 <= n <= limit."""
    if limit < 2:
        raise DomainError(f"limit must be >= 2, got {limit}")
    table = multiplicative_table(2, limit + 1)
    n, sigma, phi = table.n, table.sigma, table.phi
    if limit > 1 << 30:
        n, sigma, phi = n.astype(object), sigma.astype(object), phi.astype(object)
    bad = np.flatnonzero(sigma * phi >= n * n)
    if bad.size:
        logger.warning("sigma(n) phi(n) >= n^2 at n=%d", int(table.n[bad[0]]))
    return bad.size == 0


# ── bridge between A and B ─────────────────────────────────────────
def bridge_multiplier(t: float) -> tuple[int, dict[int, int]]:
    """m(t) = prod_{p <= sqrt(y)} p^h with h the largest exponent keeping p^h <= y."""
    y = y_of_t(t)
    factorization: dict[int, int] = {}
    for p in primes_upto(math.sqrt(y)).tolist():
        h, power = 0, p
        while power <= y:
            h += 1
            power *= p
        factorization[p] = h
    return math.prod(p**h for p, h in factorization.items()), factorization


def _p_lower(y: float) -> float:
    """(1 - 1/y)^pi(sqrt y) * prod_{p > sqrt y} (1 - 1/p^2)."""
    small = primes_upto(math.sqrt(y)).astype(np.float64)
    log_head = small.size * math.log1p(-1.0 / y)
    log_tail = math.log(6.0 / math.pi**2) - math.fsum(np.log1p(-1.0 / small**2))
    return math.exp(log_head + log_tail)


def _abundancy(factorization: dict[int, int]) -> Fraction:
    ratio = Fraction(1)
    for p, e in factorization.items():
        ratio *= Fraction(p ** (e + 1) - 1, p**e * (p - 1))
    return ratio


def bridge_certificate(
    t: float, sample_limit: int, settings: Settings | None = None
) -> BridgeCertificate:
    """Check the multiplier construction behind A(t - O(1/sqrt y)) >= B(t)/m.

    Every n <= sample_limit with n/phi(n) >= t must satisfy
    sigma(nm)/(nm) >= t - 5 e^gamma / sqrt(y).
    """
    settings = settings or get_settings()
    if t < 2:
        raise DomainError(f"the bridge needs t >= 2, got {t}")
    if sample_limit < 1 or sample_limit > settings.bridge_max_samples:
        raise DomainError(f"sample_limit must lie in 1..{settings.bridge_max_samples}")
    y = y_of_t(t)
    m, factorization = bridge_multiplier(t)
    log_m = math.fsum(h * math.log(p) for p, h in factorization.items())
    log_m_bound = 3.0 * math.sqrt(y)
    p_lower = _p_lower(y)
    p_target = 1.0 - 5.0 / (math.sqrt(y) * math.log(y))

    target = t - 5.0 * math.exp(EULER_GAMMA) / math.sqrt(y)
    target = Fraction(target * (1.0 + _BRIDGE_GUARD) + _BRIDGE_GUARD)
    exact_t = parse_threshold(t)
    table = multiplicative_table(1, sample_limit + 1)
    hits = table.n[table.n * exact_t.denominator >= table.phi * exact_t.numerator]

    witness = None
    for n in hits.tolist():
        merged = dict(factorization)
        for p, e in sympy.factorint(n).items():
            merged[p] = merged.get(p, 0) + e
        if _abundancy(merged) < target:
            witness = n
            logger.warning("Bridge inequality fails at t=%g for n=%d", t, n)
            break

    logger.info("Bridge at t=%g: m=%d, %d samples up to %d", t, m, hits.size, sample_limit)
    return BridgeCertificate(
        t=float(t), y=y, m=m, factorization=factorization, log_m=log_m,
        log_m_bound=log_m_bound, p_lower=p_lower, p_target=p_target,
        p_bound_holds=p_lower >= p_target, samples_checked=int(hits.size),
        all_passed=witness is None and log_m < log_m_bound, witness=witness,
    )
