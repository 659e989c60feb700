"""State definitions for the empirical checks graph."""

from __future__ import annotations

import operator
from typing import Annotated, Any, TypedDict

from pydantic import BaseModel, ConfigDict

from taildist.config import Settings
from taildist.empirical.checks import Counts
from taildist.empirical.sieve import EmpiricalTail
from taildist.errors import Failure

CHECKS = ("chernoff", "dedekind", "bridge", "pointwise")


class CheckOutcome(TypedDict):
    check: str
    t: float | None
    passed: bool
    detail: dict[str, Any]


class EmpiricalState(TypedDict, total=False):
    N: int
    thresholds: list[str]
    checks: list[str]
    sample_limit: int | None
    settings: Settings
    counts: Counts
    tail: EmpiricalTail
    outcomes: Annotated[list[CheckOutcome], operator.add]
    failures: Annotated[list[Failure], operator.add]
    all_passed: bool
    summary: str


class EmpiricalReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    tail: EmpiricalTail
    outcomes: list[dict[str, Any]]
    failures: list[dict[str, str]]
    all_passed: bool
    summary: str
