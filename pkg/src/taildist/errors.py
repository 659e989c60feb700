"""Exception hierarchy shared by every taildist module."""

from __future__ import annotations

from typing import Any, TypedDict


class TailDistError(Exception):
    """Base class for all taildist failures."""


class DomainError(TailDistError, ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceError(TailDistError):
    """A size or memory budget from the settings would be exceeded."""


class BracketError(TailDistError):
    """A root bracket could not be established."""


class ConsistencyError(TailDistError):
    """An identity that must hold by construction failed."""


class PipelineError(TailDistError):
    """The coefficient pipeline met a rational function it cannot sum exactly.

    ``offending`` is the rational function whose partial fractions are not
    pure powers of 1/k; ``numeric_estimate`` is the accelerated numeric value
    of its alternating sum, so callers can still report something.
    """

    def __init__(self, message: str, offending: Any = None, numeric_estimate: Any = None) -> None:
        super().__init__(message)
        self.offending = offending
        self.numeric_estimate = numeric_estimate


class Failure(TypedDict):
    """A graph node's caught exception, kept on a reducer channel."""

    node: str
    error: str
    message: str


def failure_record(node: str, exc: BaseException) -> Failure:
    return {"node": node, "error": type(exc).__name__, "message": str(exc)}
