"""Exact rational functions of the summation index k, plus alternating-sum helpers."""

from __future__ import annotations

from collections.abc import Callable
from fractions import Fraction
from typing import Any

import mpmath
import sympy

from taildist.errors import DomainError, PipelineError
from taildist.zetaring.ring import ZetaExpr, eta_value, sum_exprs

K = sympy.Symbol("k", positive=True, integer=True)


def _to_fraction(value: Any) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


class RationalFunc:
    """numerator(k) / denominator(k) over QQ, reduced, with a monic denominator."""

    __slots__ = ("_num", "_den")

    def __init__(self, numerator: sympy.Poly | Any, denominator: sympy.Poly | Any = 1) -> None:
        num = sympy.Poly(numerator, K, domain="QQ")
        den = sympy.Poly(denominator, K, domain="QQ")
        if den.is_zero:
            raise DomainError("rational function with zero denominator")
        num, den = num.cancel(den, include=True)
        lc = den.LC()
        self._num = num.quo_ground(lc)
        self._den = den.quo_ground(lc)

    @classmethod
    def from_expr(cls, expr: str | sympy.Expr) -> RationalFunc:
        """Parse e.g. ``"1/k**2 + (k+2)*(k+3)/k**3"``."""
        parsed = sympy.together(sympy.sympify(expr, locals={"k": K}))
        num, den = sympy.fraction(parsed)
        return cls(num, den)

    @classmethod
    def inverse_power(cls, n: int) -> RationalFunc:
        return cls(1, K**n)

    # ── accessors ───────────────────────────────────────────────────
    @property
    def numerator(self) -> sympy.Poly:
        return self._num

    @property
    def denominator(self) -> sympy.Poly:
        return self._den

    def is_zero(self) -> bool:
        return self._num.is_zero

    def is_proper(self) -> bool:
        """Numerator degree below denominator degree, i.e. the function is O(1/k)."""
        return self.is_zero() or self._num.degree() < self._den.degree()

    def is_pure_power_denominator(self) -> bool:
        return self._den.is_monomial

    def expr(self) -> sympy.Expr:
        return self._num.as_expr() / self._den.as_expr()

    # ── arithmetic ──────────────────────────────────────────────────
    def __add__(self, other: RationalFunc) -> RationalFunc:
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return RationalFunc(
            self._num * other._den + other._num * self._den, self._den * other._den
        )

    def __neg__(self) -> RationalFunc:
        return RationalFunc(-self._num, self._den)

    def __sub__(self, other: RationalFunc) -> RationalFunc:
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: RationalFunc | int | Fraction) -> RationalFunc:
        if isinstance(other, (int, Fraction)):
            factor = sympy.Rational(other.numerator, other.denominator)
            return RationalFunc(self._num * factor, self._den)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return RationalFunc(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        return hash((tuple(self._num.all_coeffs()), tuple(self._den.all_coeffs())))

    # ── evaluation ──────────────────────────────────────────────────
    def inverse_power_terms(self) -> dict[int, Fraction]:
        """Coefficients c_nu of the expansion sum_nu c_nu / k^nu.

        Only defined when the denominator is a pure power of k.
        """
        if not self.is_pure_power_denominator():
            raise DomainError(f"denominator of {self} is not a pure power of k")
        d = self._den.degree()
        terms: dict[int, Fraction] = {}
        for (i,), coef in self._num.terms():
            terms[d - i] = terms.get(d - i, Fraction(0)) + _to_fraction(coef)
        return {nu: c for nu, c in sorted(terms.items()) if c}

    def divided_by_k(self) -> RationalFunc:
        return RationalFunc(self._num, self._den * sympy.Poly(K, K, domain="QQ"))

    def numeric_callable(self) -> Callable[[Any], Any]:
        return sympy.lambdify(K, self.expr(), modules="mpmath")

    def to_text(self) -> str:
        return str(sympy.sstr(self.expr())).replace("**", "^")

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"RationalFunc({self.to_text()!r})"


def alternating_sum_numeric(f: Callable[[Any], Any], precision: int = 30) -> mpmath.mpf:
    """sum_{k>=1} (-1)^{k+1} f(k)/k, accelerated with ``mpmath.nsum``."""
    with mpmath.workdps(precision + 5):
        value = mpmath.nsum(lambda k: (-1) ** (int(k) + 1) * f(k) / k, [1, mpmath.inf])
        return +value


def alternating_sum(q: RationalFunc) -> ZetaExpr:
    """Exact sum_{k>=1} (-1)^{k+1} q(k)/k as a combination of eta values.

    Raises ``PipelineError`` (carrying a numeric estimate) when q(k)/k has a
    denominator factor other than k.
    """
    term = q.divided_by_k()
    if not term.is_pure_power_denominator():
        estimate = alternating_sum_numeric(q.numeric_callable())
        raise PipelineError(
            f"partial fractions of {term} are not pure powers of 1/k",
            offending=q,
            numeric_estimate=estimate,
        )
    pieces = []
    for nu, coef in term.inverse_power_terms().items():
        if nu < 2:
            raise DomainError(f"alternating sum of {term} has a 1/k^{nu} term")
        pieces.append(eta_value(nu) * coef)
    return sum_exprs(pieces)
