"""State definitions for the estimate comparison graph."""

from __future__ import annotations

import operator
from typing import Annotated, TypedDict

from pydantic import BaseModel, ConfigDict

from taildist.config import Settings
from taildist.errors import Failure
from taildist.integral import IntegralEstimate
from taildist.saddle import SaddleResult, TailEstimate

METHODS = ("baseline", "thm1", "saddle", "thm2")


class Comparison(BaseModel):
    """Side-by-side log-scale values; ``spread`` ignores the baseline."""

    model_config = ConfigDict(frozen=True)

    log_values: dict[str, float]
    spread: float
    scale: float
    consistent: bool


class EstimateState(TypedDict, total=False):
    t: float
    m: int
    tol: float | None
    methods: list[str]
    settings: Settings
    y: float
    estimates: Annotated[list[TailEstimate], operator.add]
    failures: Annotated[list[Failure], operator.add]
    saddle: SaddleResult
    integral: IntegralEstimate
    comparison: Comparison


class EstimateReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: float
    y: float
    m: int
    estimates: list[TailEstimate]
    saddle: SaddleResult | None = None
    integral: IntegralEstimate | None = None
    comparison: Comparison
    failures: list[dict[str, str]]
