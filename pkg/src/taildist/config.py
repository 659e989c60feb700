"""Runtime settings.

Every tunable lives on one frozen pydantic model. ``get_settings()`` returns
the process-wide instance built from the environment; tests build their own
``Settings(...)`` and pass it explicitly where a function accepts one.
"""

from __future__ import annotations

import logging
import os
from functools import lru_cache

from pydantic import BaseModel, ConfigDict, Field, field_validator

logger = logging.getLogger(__name__)

THREADS_ENV = "TDL_THREADS"


def _default_threads() -> int:
    return os.cpu_count() or 1


class Settings(BaseModel):
    model_config = ConfigDict(frozen=True)

    threads: int = Field(default_factory=_default_threads, ge=1)

    # ── primes ──
    segment_size: int = Field(default=1 << 20, ge=1 << 10)
    max_sieve_limit: int = 10**10
    max_materialized_limit: int = 1 << 28

    # ── Euler product ──
    min_w_cutoff: int = 10_000
    max_w_cutoff: int = 1 << 27
    w_cutoff_factor: float = 4.0
    w_rel_tol: float = 1e-7
    regime_switch: float = 30.0
    newton_max_iter: int = 60
    we_cutoff_factor: float = 1.0

    # ── saddle ──
    saddle_tol: float = 1e-10
    saddle_max_iter: int = 200
    sylogy_window: float = 6.0

    # ── integral ──
    quad_tol: float = 1e-9
    quad_limit: int = 400
    audit_points: int = 64
    line_search_xtol: float = 1e-6

    # ── empirical ──
    max_empirical_n: int = 10**9
    min_chernoff_n: int = 10**6
    bridge_max_samples: int = 10**6

    # ── cli ──
    max_cli_m: int = 10

    @field_validator("regime_switch", "w_cutoff_factor", "we_cutoff_factor")
    @classmethod
    def _at_least_one(cls, value: float) -> float:
        if value < 1.0:
            raise ValueError("must be >= 1")
        return value

    @classmethod
    def from_env(cls) -> Settings:
        """Build settings, honouring ``TDL_THREADS`` when it is set."""
        overrides: dict[str, int] = {}
        raw = os.environ.get(THREADS_ENV, "").strip()
        if raw:
            try:
                overrides["threads"] = max(1, int(raw))
            except ValueError:
                logger.warning("Ignoring %s=%r (not an integer)", THREADS_ENV, raw)
        return cls(**overrides)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()
