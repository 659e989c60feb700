"""State and result types for the coefficient pipeline graph."""

from __future__ import annotations

import hashlib
import json
import operator
from typing import Annotated, Any, TypedDict

from pydantic import BaseModel, ConfigDict, Field

from taildist.zetaring import FormalSeries, RationalFunc, ZetaExpr

ZetaFamily = dict[int, ZetaExpr]

# Families in the order they are produced, as (field name, JSON key).
FAMILIES: tuple[tuple[str, str], ...] = (
    ("theta", "theta"),
    ("rho", "rho"),
    ("b", "b"),
    ("alpha", "alpha"),
    ("beta", "beta"),
    ("delta", "delta"),
    ("eta_chain", "eta"),
    ("lambda_", "lambda"),
    ("mu", "mu"),
    ("c", "c"),
    ("a", "a"),
)


class CoefficientSet(BaseModel):
    """Every coefficient family of the expansion, indexed by order.

    ``alpha`` runs to m + 1; the others run over 2..m.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True, populate_by_name=True)

    m: int
    q: dict[int, RationalFunc]
    r: dict[int, RationalFunc]
    theta: ZetaFamily
    rho: ZetaFamily
    b: ZetaFamily
    alpha: ZetaFamily
    beta: ZetaFamily
    delta: ZetaFamily
    eta_chain: ZetaFamily
    lambda_: ZetaFamily = Field(alias="lambda")
    mu: ZetaFamily
    c: ZetaFamily
    a: ZetaFamily

    def family(self, name: str) -> ZetaFamily:
        for field, key in FAMILIES:
            if name in (field, key):
                return getattr(self, field)
        raise KeyError(name)

    def numeric(self, name: str, precision: int = 30) -> dict[int, float]:
        return {j: float(x.numeric(precision)) for j, x in self.family(name).items()}

    def to_json(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "m": self.m,
            "q": {str(j): f.to_text() for j, f in self.q.items()},
            "r": {str(j): f.to_text() for j, f in self.r.items()},
        }
        for field, key in FAMILIES:
            payload[key] = {
                str(j): {"text": x.to_text(), "exact": x.to_json(), "value": float(x.numeric())}
                for j, x in getattr(self, field).items()
            }
        return payload

    def text_lines(self) -> list[str]:
        lines = [f"q_{j} = {f}" for j, f in self.q.items()]
        lines += [f"r_{j} = {f}" for j, f in self.r.items()]
        for field, key in FAMILIES:
            lines += [f"{key}_{j} = {x}" for j, x in getattr(self, field).items()]
        return lines

    def coefficient_hash(self) -> str:
        """sha256 over the canonical exact form of every family."""
        canonical = {
            "m": self.m,
            "q": {str(j): f.to_text() for j, f in self.q.items()},
            "r": {str(j): f.to_text() for j, f in self.r.items()},
        }
        for field, key in FAMILIES:
            canonical[key] = {str(j): x.to_json() for j, x in getattr(self, field).items()}
        blob = json.dumps(canonical, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


class CoeffState(TypedDict, total=False):
    m: int
    q: dict[int, RationalFunc]
    r: dict[int, RationalFunc]
    theta: ZetaFamily
    rho: ZetaFamily
    b: ZetaFamily
    alpha: ZetaFamily
    beta: ZetaFamily
    delta: ZetaFamily
    delta_series: FormalSeries
    eta_chain: ZetaFamily
    inverse_series: FormalSeries
    lambda_: ZetaFamily
    mu: ZetaFamily
    c: ZetaFamily
    a: ZetaFamily
    steps: Annotated[list[str], operator.add]
