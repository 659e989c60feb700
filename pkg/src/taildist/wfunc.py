"""Evaluation of g(s) = log W(s) and its approximate product forms.

W(s) = prod_p (1 + ((1 - 1/p)^(-s) - 1)/p). Terms are evaluated per prime in
numpy with a regime split on A = -s log(1 - 1/p) so that huge powers like
2^s never overflow. Primes up to the cutoff v are summed exactly with
``math.fsum``; the contribution of p > v is replaced by its smooth
counterpart sum_n s^n/n! E1(n log v) (prime density 1/log x), and
``tail_bound`` estimates what that replacement misses.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.special import exp1

from taildist.coeffs import CoefficientSet
from taildist.config import Settings, get_settings
from taildist.errors import DomainError
from taildist.primes import log_mertens, log_primorial, primes_upto

logger = logging.getLogger(__name__)

EULER_GAMMA = 0.57721566490153286060651209
_TAIL_SERIES_MAX = 400


class LogWValue(BaseModel):
    model_config = ConfigDict(frozen=True)

    s: float
    value: float
    cutoff: float
    tail_bound: float
    tail_estimate: float


# ── cutoff and tail ────────────────────────────────────────────────
def tail_bound(s: float, v: float) -> float:
    """Estimated error of the smooth tail beyond v.

    Prime-count fluctuations of size sqrt(x) log x / (8 pi) give the first
    term; the gap between (1 - 1/p)^-s and e^(s/p) gives the second.
    """
    lv = math.log(v)
    return s * lv / (2.0 * math.pi * v**1.5) + s * (1.0 + s / v) / (v * v * lv)


def _log_exp1(x: float) -> float:
    if x < 700.0:
        return math.log(float(exp1(x)))
    return -x - math.log(x) + math.log1p(-1.0 / x)


def _tail_series(s: float, v: float, derivative: int) -> float:
    """d^k/ds^k of sum_{n>=1} s^n/n! E1(n log v)."""
    lv = math.log(v)
    terms: list[float] = []
    for n in range(max(1, derivative), _TAIL_SERIES_MAX):
        k = n - derivative
        if k and s == 0.0:
            break
        log_weight = k * math.log(s) - math.lgamma(k + 1) if k else 0.0
        term = math.exp(log_weight + _log_exp1(n * lv))
        terms.append(term)
        if term < 1e-18 * terms[0]:
            break
    return math.fsum(terms)


def choose_cutoff(s: float, tol: float, settings: Settings | None = None) -> tuple[float, float]:
    """Smallest power-of-two cutoff whose tail bound is below ``tol``.

    Starts at max(w_cutoff_factor * s, min_w_cutoff) and doubles up to
    ``max_w_cutoff``; returns (cutoff, tail_bound).
    """
    settings = settings or get_settings()
    start = max(settings.w_cutoff_factor * s, float(settings.min_w_cutoff))
    v = float(1 << max(1, math.ceil(math.log2(start))))
    bound = tail_bound(s, v)
    while bound > tol and v < settings.max_w_cutoff:
        v *= 2.0
        bound = tail_bound(s, v)
    if bound > tol:
        logger.warning(
            "Cutoff ceiling %d reached for s=%g: tail bound %.3g exceeds tol %.3g",
            settings.max_w_cutoff, s, bound, tol,
        )
    return v, bound


def _resolve(
    s: float, tol: float | None, cutoff: float | None, settings: Settings | None
) -> tuple[float, float]:
    if s < 0:
        raise DomainError(f"s must be >= 0, got {s}")
    settings = settings or get_settings()
    if cutoff is not None:
        if cutoff < 2:
            raise DomainError("cutoff must be >= 2")
        return float(cutoff), tail_bound(s, cutoff)
    if tol is None:
        tol = settings.w_rel_tol * max(1.0, s)
    if tol <= 0:
        raise DomainError("tol must be > 0")
    return choose_cutoff(s, tol, settings)


# ── per-prime terms ────────────────────────────────────────────────
def _exponents(s: float, p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = -np.log1p(-1.0 / p)
    return a, s * a


def log_w_terms(s: float, p: np.ndarray, regime_switch: float = 30.0) -> np.ndarray:
    """log(1 + ((1 - 1/p)^-s - 1)/p) for each prime in ``p``."""
    p = p.astype(np.float64)
    _, big_a = _exponents(s, p)
    out = np.empty_like(big_a)
    small = big_a <= regime_switch
    out[small] = np.log1p(np.expm1(big_a[small]) / p[small])
    large = ~small
    pl, al = p[large], big_a[large]
    out[large] = al - np.log(pl) + np.log1p((pl - 1.0) * np.exp(-al))
    return out


def _d1_terms(s: float, p: np.ndarray) -> np.ndarray:
    p = p.astype(np.float64)
    a, big_a = _exponents(s, p)
    return a / (1.0 + (p - 1.0) * np.exp(-big_a))


def _d2_terms(s: float, p: np.ndarray) -> np.ndarray:
    p = p.astype(np.float64)
    a, big_a = _exponents(s, p)
    x = (p - 1.0) * np.exp(-big_a)
    return a * a * x / ((1.0 + x) ** 2)


# ── g, g', g'' ─────────────────────────────────────────────────────
def log_w(
    s: float,
    tol: float | None = None,
    *,
    cutoff: float | None = None,
    settings: Settings | None = None,
) -> LogWValue:
    """g(s) = log W(s); ``tol`` is the absolute tail tolerance."""
    settings = settings or get_settings()
    v, bound = _resolve(s, tol, cutoff, settings)
    primes = primes_upto(v)
    head = math.fsum(log_w_terms(s, primes, settings.regime_switch))
    tail = _tail_series(s, v, 0)
    return LogWValue(s=s, value=head + tail, cutoff=v, tail_bound=bound, tail_estimate=tail)


def log_w_d1(
    s: float,
    tol: float | None = None,
    *,
    cutoff: float | None = None,
    settings: Settings | None = None,
) -> float:
    """g'(s) = sum_p a_p / (1 + (p - 1) e^(-s a_p)), a_p = -log(1 - 1/p)."""
    v, _ = _resolve(s, tol, cutoff, settings)
    return math.fsum(_d1_terms(s, primes_upto(v))) + _tail_series(s, v, 1)


def log_w_d2(
    s: float,
    tol: float | None = None,
    *,
    cutoff: float | None = None,
    settings: Settings | None = None,
) -> float:
    v, _ = _resolve(s, tol, cutoff, settings)
    return math.fsum(_d2_terms(s, primes_upto(v))) + _tail_series(s, v, 2)


# ── product forms ──────────────────────────────────────────────────
def _check_range(u: float, v: float) -> None:
    if u < 2:
        raise DomainError(f"u must be >= 2, got {u}")
    if u > v:
        raise DomainError(f"u={u} exceeds v={v}")


def _split(u: float, v: float) -> tuple[np.ndarray, np.ndarray]:
    primes = primes_upto(v).astype(np.float64)
    k = int(np.searchsorted(primes, math.floor(u), side="right"))
    return primes[:k], primes[k:]


def log_w_wf(s: float, u: float, v: float) -> float:
    """Exact rearrangement of the product truncated at v, split at u.

    s log t_u + log(t_u / (t_v P_u)) + sum_{p<=u} log(1 + p (1-1/p)^(s+1))
    + sum_{u<p<=v} log(1 + (1-1/p)^(-s-1) / p).
    """
    if s < 0:
        raise DomainError(f"s must be >= 0, got {s}")
    _check_range(u, v)
    low, high = _split(u, v)
    lm_u, lm_v = log_mertens(u), log_mertens(v)
    head = s * lm_u + lm_u - lm_v - log_primorial(u)
    log_keep = (s + 1.0) * np.log1p(-1.0 / low)
    low_sum = math.fsum(np.logaddexp(0.0, np.log(low) + log_keep))
    log_grow = -(s + 1.0) * np.log1p(-1.0 / high)
    high_sum = math.fsum(np.logaddexp(0.0, log_grow - np.log(high)))
    return head + low_sum + high_sum


def log_w_we(
    s: float,
    u: float,
    v: float,
    settings: Settings | None = None,
    *,
    check_cutoff: bool = True,
) -> float:
    """Approximate product form with (1 - 1/p)^(s+1) replaced by e^(-s/p).

    ``check_cutoff=False`` skips the v >= we_cutoff_factor * s requirement, for
    callers that fix v independently of s.
    """
    settings = settings or get_settings()
    if s < 0:
        raise DomainError(f"s must be >= 0, got {s}")
    _check_range(u, v)
    if check_cutoff and v < settings.we_cutoff_factor * s:
        raise DomainError(f"v={v} is below {settings.we_cutoff_factor} * s")
    low, high = _split(u, v)
    lm_u, lm_v = log_mertens(u), log_mertens(v)
    head = s * lm_u + lm_u - lm_v - log_primorial(u)
    low_sum = math.fsum(np.logaddexp(0.0, np.log(low) - s / low))
    high_sum = math.fsum(np.logaddexp(0.0, s / high - np.log(high)))
    return head + low_sum + high_sum


# ── expansion in 1/log z ───────────────────────────────────────────
def solve_z(s: float, settings: Settings | None = None) -> float:
    """The z >= 1 with z log z = s, by Newton from s / max(1, log s)."""
    if s < 0:
        raise DomainError(f"s must be >= 0, got {s}")
    if s == 0:
        return 1.0
    settings = settings or get_settings()
    z = s / max(1.0, math.log(s))
    for _ in range(settings.newton_max_iter):
        step = (z * math.log(z) - s) / (math.log(z) + 1.0)
        z_next = max(z - step, 1.0)
        if abs(z_next - z) <= 1e-15 * z_next:
            return z_next
        z = z_next
    logger.warning("solve_z(%g) did not settle in %d steps", s, settings.newton_max_iter)
    return z


def log_w_wz(
    s: float, m: int, coeffs: CoefficientSet, settings: Settings | None = None
) -> float:
    """s (gamma + log log z) - z + z sum_{j=2}^m b_j / (log z)^j."""
    if s < math.e:
        raise DomainError(f"the expansion needs s >= e, got {s}")
    if m < 2 or m > coeffs.m:
        raise DomainError(f"order {m} outside 2..{coeffs.m}")
    z = solve_z(s, settings)
    lz = math.log(z)
    b = coeffs.numeric("b")
    correction = math.fsum(b[j] / lz**j for j in range(2, m + 1))
    return s * (EULER_GAMMA + math.log(lz)) - z + z * correction
