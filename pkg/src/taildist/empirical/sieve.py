"""Segmented sieve of sigma(n), phi(n), psi(n) and exact tail counting.

Each segment [lo, hi) is factored by the primes <= sqrt(N): those primes
update phi and psi directly and build the sigma factor 1 + p + ... + p^k by
adding p^k on the multiples of p^k, while a running cofactor tracks what is
left. Whatever remains above 1 is a single prime > sqrt(N).

Threshold comparisons are exact: a threshold t = a/b counts n when
sigma(n) b >= a n (and likewise for the other two ratios).
"""

from __future__ import annotations

import csv
import logging
import math
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import NamedTuple, TextIO, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from taildist.config import Settings, get_settings
from taildist.errors import DomainError, ResourceError
from taildist.primes import primes_upto

logger = logging.getLogger(__name__)

ThresholdLike = Union[str, int, float, Fraction]

_INT64_SAFE = 1 << 62
CSV_HEADER = ("threshold", "count_A", "count_B", "count_D", "N")


class MultiplicativeTable(NamedTuple):
    n: np.ndarray
    sigma: np.ndarray
    phi: np.ndarray
    psi: np.ndarray


class EmpiricalTail(BaseModel):
    model_config = ConfigDict(frozen=True)

    N: int
    thresholds: list[float]
    labels: list[str]
    counts_A: list[int]
    counts_B: list[int]
    counts_D: list[int]

    def rows(self) -> Iterator[tuple[str, int, int, int, int]]:
        for i, label in enumerate(self.labels):
            yield label, self.counts_A[i], self.counts_B[i], self.counts_D[i], self.N


def parse_threshold(value: ThresholdLike) -> Fraction:
    """Exact rational form of a threshold; decimals are read as written."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(str(value).strip())


def multiplicative_table(
    lo: int, hi: int, small_primes: np.ndarray | None = None
) -> MultiplicativeTable:
    """sigma, phi and psi for lo <= n < hi (lo >= 1)."""
    if lo < 1 or hi < lo:
        raise DomainError(f"bad range [{lo}, {hi})")
    n = np.arange(lo, hi, dtype=np.int64)
    rem = n.copy()
    sigma = np.ones_like(n)
    phi = n.copy()
    psi = n.copy()
    if hi - lo == 0:
        return MultiplicativeTable(n, sigma, phi, psi)
    top = math.isqrt(hi - 1)
    if small_primes is None:
        small_primes = primes_upto(top)
    for p in small_primes.tolist():
        if p > top:
            break
        start = -(-lo // p) * p
        if start >= hi:
            continue
        multiples = slice(start - lo, None, p)
        phi[multiples] = phi[multiples] // p * (p - 1)
        psi[multiples] = psi[multiples] // p * (p + 1)
        factor = np.ones(len(range(start, hi, p)), dtype=np.int64)
        pk = p
        while True:
            start_k = -(-lo // pk) * pk
            if start_k >= hi:
                break
            factor[(start_k - start) // p :: pk // p] += pk
            rem[start_k - lo :: pk] //= p
            if pk > (hi - 1) // p:
                break
            pk *= p
        sigma[multiples] *= factor
    big = rem > 1
    q = rem[big]
    sigma[big] *= q + 1
    phi[big] = phi[big] // q * (q - 1)
    psi[big] = psi[big] // q * (q + 1)
    return MultiplicativeTable(n, sigma, phi, psi)


def _ge_count(lhs: np.ndarray, rhs: np.ndarray, t: Fraction) -> int:
    """#{i : lhs_i / rhs_i >= t} with exact integer arithmetic."""
    a, b = t.numerator, t.denominator
    if lhs.size == 0:
        return 0
    if int(lhs.max()) * b >= _INT64_SAFE or int(rhs.max()) * a >= _INT64_SAFE:
        lhs, rhs = lhs.astype(object), rhs.astype(object)
    return int(np.count_nonzero(lhs * b >= rhs * a))


def _segment_counts(
    lo: int, hi: int, small_primes: np.ndarray, thresholds: list[Fraction]
) -> np.ndarray:
    table = multiplicative_table(lo, hi, small_primes)
    out = np.zeros((len(thresholds), 3), dtype=np.int64)
    for i, t in enumerate(thresholds):
        out[i, 0] = _ge_count(table.sigma, table.n, t)
        out[i, 1] = _ge_count(table.n, table.phi, t)
        out[i, 2] = _ge_count(table.psi, table.n, t)
    return out


def count_tails(
    N: int, thresholds: Iterable[Fraction], settings: Settings | None = None
) -> dict[Fraction, tuple[int, int, int]]:
    """(count_A, count_B, count_D) at every threshold, for n <= N."""
    settings = settings or get_settings()
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    if N > settings.max_empirical_n:
        raise ResourceError(f"N={N} exceeds the configured maximum {settings.max_empirical_n}")
    ts = sorted(set(thresholds))
    small_primes = primes_upto(math.isqrt(N))
    step = settings.segment_size
    bounds = [(lo, min(lo + step, N + 1)) for lo in range(1, N + 1, step)]
    logger.info("Sieving n <= %d in %d segments on %d threads", N, len(bounds), settings.threads)
    with ThreadPoolExecutor(max_workers=settings.threads) as pool:
        parts = list(pool.map(lambda b: _segment_counts(b[0], b[1], small_primes, ts), bounds))
    total = np.sum(parts, axis=0) if parts else np.zeros((len(ts), 3), dtype=np.int64)
    return {t: (int(total[i, 0]), int(total[i, 1]), int(total[i, 2])) for i, t in enumerate(ts)}


def parse_thresholds(thresholds: Sequence[ThresholdLike]) -> list[Fraction]:
    """Exact thresholds, each >= 1 and strictly ascending."""
    exact = [parse_threshold(t) for t in thresholds]
    if any(t < 1 for t in exact):
        raise DomainError("thresholds must be >= 1")
    if any(b <= a for a, b in zip(exact, exact[1:])):
        raise DomainError("thresholds must be strictly ascending")
    return exact


def build_tail(
    N: int,
    thresholds: Sequence[ThresholdLike],
    counts: dict[Fraction, tuple[int, int, int]],
) -> EmpiricalTail:
    exact = parse_thresholds(thresholds)
    labels = [t if isinstance(t, str) else str(t) for t in thresholds]
    return EmpiricalTail(
        N=N,
        thresholds=[float(t) for t in exact],
        labels=[label.strip() for label in labels],
        counts_A=[counts[t][0] for t in exact],
        counts_B=[counts[t][1] for t in exact],
        counts_D=[counts[t][2] for t in exact],
    )


def sieve_tails(
    N: int, thresholds: Sequence[ThresholdLike], settings: Settings | None = None
) -> EmpiricalTail:
    """Exact counts of n <= N with sigma(n)/n, n/phi(n), psi(n)/n >= t."""
    return build_tail(N, thresholds, count_tails(N, parse_thresholds(thresholds), settings))


def write_csv(tail: EmpiricalTail, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(tail.rows())
