"""Prime generation and exact prime sums.

The sieve is a segmented sieve of Eratosthenes over numpy boolean masks. Sums
over primes (log t_u, log P_u) are exact sums over the sieve, reduced with
``math.fsum`` in ascending prime order so results do not depend on how the
primes were segmented.
"""

from __future__ import annotations

import logging
import math
import threading
from collections.abc import Iterator
from functools import lru_cache
from itertools import chain

import numpy as np

from taildist.config import Settings, get_settings
from taildist.errors import DomainError, ResourceError

logger = logging.getLogger(__name__)


def _simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit from a single unsegmented mask."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _sieve_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Primes in [lo, hi), given every prime <= sqrt(hi - 1)."""
    mask = np.ones(hi - lo, dtype=bool)
    if lo < 2:
        mask[: 2 - lo] = False
    for p in base.tolist():
        p2 = p * p
        if p2 >= hi:
            break
        start = max(p2, -(-lo // p) * p)
        mask[start - lo :: p] = False
    return (np.flatnonzero(mask) + lo).astype(np.int64)


class PrimeTable:
    """All primes <= ``limit``, streamed in segments of ``segment_size`` numbers.

    The table is immutable. ``primes`` materializes the full ascending array on
    first access (guarded by a lock so concurrent readers build it once).
    """

    def __init__(self, limit: int, segment_size: int, max_materialized: int) -> None:
        self.limit = limit
        self.segment_size = segment_size
        self._max_materialized = max_materialized
        self._base = _simple_sieve(math.isqrt(max(limit, 0)))
        self._primes: np.ndarray | None = None
        self._lock = threading.Lock()

    def segments(self) -> Iterator[np.ndarray]:
        """Yield ascending prime arrays, one per sieve segment."""
        if self._primes is not None:
            yield self._primes
            return
        lo = 0
        while lo <= self.limit:
            hi = min(lo + self.segment_size, self.limit + 1)
            yield _sieve_segment(lo, hi, self._base)
            lo = hi

    @property
    def primes(self) -> np.ndarray:
        if self._primes is None:
            if self.limit > self._max_materialized:
                raise ResourceError(
                    f"refusing to materialize primes up to {self.limit}; "
                    f"stream them with segments() instead"
                )
            with self._lock:
                if self._primes is None:
                    parts = list(self.segments())
                    merged = np.concatenate(parts) if parts else np.array([], dtype=np.int64)
                    merged.flags.writeable = False
                    self._primes = merged
        return self._primes

    def __len__(self) -> int:
        return sum(int(seg.size) for seg in self.segments())

    def _upto(self, u: float) -> Iterator[np.ndarray]:
        if u > self.limit:
            raise DomainError(f"u={u} exceeds the table limit {self.limit}")
        bound = math.floor(u)
        for seg in self.segments():
            if seg.size == 0:
                continue
            if seg[-1] <= bound:
                yield seg
            else:
                yield seg[: np.searchsorted(seg, bound, side="right")]
                return

    def log_mertens(self, u: float) -> float:
        """log t_u = -sum_{p<=u} log(1 - 1/p)."""
        if u < 2:
            raise DomainError("log_mertens needs u >= 2")
        return math.fsum(chain.from_iterable(-np.log1p(-1.0 / seg) for seg in self._upto(u)))

    def log_primorial(self, u: float) -> float:
        """log P_u = theta(u) = sum_{p<=u} log p."""
        if u < 2:
            raise DomainError("log_primorial needs u >= 2")
        return math.fsum(chain.from_iterable(np.log(seg) for seg in self._upto(u)))


def sieve_primes(limit: int, settings: Settings | None = None) -> PrimeTable:
    """Build the table of all primes <= limit."""
    settings = settings or get_settings()
    if limit < 0:
        raise DomainError("limit must be >= 0")
    if limit > settings.max_sieve_limit:
        raise ResourceError(
            f"sieve limit {limit} exceeds the configured budget {settings.max_sieve_limit}"
        )
    logger.debug("Sieving primes up to %d (segment size %d)", limit, settings.segment_size)
    return PrimeTable(limit, settings.segment_size, settings.max_materialized_limit)


@lru_cache(maxsize=8)
def _primes_pow2(exponent: int) -> np.ndarray:
    table = sieve_primes(1 << exponent)
    logger.info("Cached %d primes up to 2^%d", table.primes.size, exponent)
    return table.primes


def primes_upto(limit: float) -> np.ndarray:
    """Read-only ascending array of the primes <= limit.

    Backed by a small cache of tables whose limits are powers of two, so the
    many evaluations of one Euler product reuse a single sieve.
    """
    bound = math.floor(limit)
    if bound < 2:
        return np.array([], dtype=np.int64)
    primes = _primes_pow2(max(bound - 1, 1).bit_length())
    return primes[: np.searchsorted(primes, bound, side="right")]


def prime_count(u: float) -> int:
    return int(primes_upto(u).size)


def log_mertens(u: float) -> float:
    """log t_u with t_u = prod_{p<=u} (1 - 1/p)^{-1}, summed exactly over the primes."""
    if u < 2:
        raise DomainError("log_mertens needs u >= 2")
    return math.fsum(-np.log1p(-1.0 / primes_upto(u)))


def log_primorial(u: float) -> float:
    """log P_u, i.e. Chebyshev's theta(u)."""
    if u < 2:
        raise DomainError("log_primorial needs u >= 2")
    return math.fsum(np.log(primes_upto(u)))
