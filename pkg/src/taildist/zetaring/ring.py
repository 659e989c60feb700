"""The exact constant ring: rational combinations of pi powers and odd zeta values.

A ``ZetaExpr`` is a finite map monomial -> Fraction, where a monomial is
``(pi_power, odd_zetas)`` with ``odd_zetas`` a sorted tuple of odd integers
>= 3 (a multiset). Even zeta values never appear as generators: they are
rewritten as rational multiples of pi powers via Bernoulli numbers on
construction, so equality is plain term-map equality.

Each element also carries ``gamma_power``, the exponent of e^gamma. Products
add the exponents; sums require equal exponents (zero is neutral).
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from fractions import Fraction
from functools import lru_cache
from typing import Any, Union

import mpmath
import sympy

from taildist.errors import DomainError

Monomial = tuple[int, tuple[int, ...]]
Scalar = Union[int, Fraction]

_ONE: Monomial = (0, ())


@lru_cache(maxsize=None)
def _even_zeta_coefficient(r: int) -> Fraction:
    """Rational c with zeta(r) = c * pi^r for even r >= 2."""
    n = r // 2
    b = sympy.bernoulli(r)
    value = (-1) ** (n + 1) * b * sympy.Integer(2) ** r / (2 * sympy.factorial(r))
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return (a[0] + b[0], tuple(sorted(a[1] + b[1])))


def _mono_text(mono: Monomial) -> str:
    parts: list[str] = []
    pi_power, zetas = mono
    if pi_power == 1:
        parts.append("pi")
    elif pi_power:
        parts.append(f"pi^{pi_power}")
    for arg in sorted(set(zetas)):
        count = zetas.count(arg)
        parts.append(f"zeta({arg})" if count == 1 else f"zeta({arg})^{count}")
    return "*".join(parts)


class ZetaExpr:
    """Immutable element of Q[pi^2, zeta(3), zeta(5), ...] tagged with a power of e^gamma."""

    __slots__ = ("_terms", "_gamma_power", "_hash")

    def __init__(
        self, terms: Mapping[Monomial, Scalar] | None = None, gamma_power: int = 0
    ) -> None:
        if gamma_power < 0:
            raise DomainError("gamma_power must be nonnegative")
        cleaned: dict[Monomial, Fraction] = {}
        for (pi_power, zetas), coef in (terms or {}).items():
            coef = Fraction(coef)
            if coef == 0:
                continue
            if pi_power < 0 or pi_power % 2:
                raise DomainError(f"pi power must be even and nonnegative, got {pi_power}")
            if any(z < 3 or z % 2 == 0 for z in zetas):
                raise DomainError(f"zeta generators must be odd and >= 3, got {zetas}")
            key = (pi_power, tuple(sorted(zetas)))
            total = cleaned.get(key, Fraction(0)) + coef
            if total:
                cleaned[key] = total
            else:
                cleaned.pop(key, None)
        self._terms = dict(sorted(cleaned.items()))
        self._gamma_power = gamma_power
        self._hash: int | None = None

    # ── constructors ────────────────────────────────────────────────
    @classmethod
    def zero(cls) -> ZetaExpr:
        return cls()

    @classmethod
    def one(cls) -> ZetaExpr:
        return cls({_ONE: 1})

    @classmethod
    def rational(cls, value: Scalar) -> ZetaExpr:
        return cls({_ONE: value})

    @classmethod
    def pi_power(cls, power: int, coef: Scalar = 1) -> ZetaExpr:
        return cls({(power, ()): coef})

    @classmethod
    def zeta(cls, r: int) -> ZetaExpr:
        """zeta(r) in canonical form (even r becomes a pi power)."""
        if r < 2:
            raise DomainError(f"zeta({r}) is not a finite constant of the ring")
        if r % 2 == 0:
            return cls({(r, ()): _even_zeta_coefficient(r)})
        return cls({(0, (r,)): 1})

    def with_gamma(self, power: int) -> ZetaExpr:
        return ZetaExpr(self._terms, gamma_power=power)

    # ── accessors ───────────────────────────────────────────────────
    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    @property
    def gamma_power(self) -> int:
        return self._gamma_power

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return self._gamma_power == 0 and all(mono == _ONE for mono in self._terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self} is not a rational constant")
        return self._terms.get(_ONE, Fraction(0))

    # ── arithmetic ──────────────────────────────────────────────────
    @staticmethod
    def _coerce(other: Any) -> ZetaExpr | None:
        if isinstance(other, ZetaExpr):
            return other
        if isinstance(other, (int, Fraction)):
            return ZetaExpr.rational(other)
        return None

    def _sum_gamma(self, other: ZetaExpr) -> int:
        if self.is_zero():
            return other._gamma_power
        if other.is_zero() or self._gamma_power == other._gamma_power:
            return self._gamma_power
        raise DomainError(
            f"cannot add terms tagged e^({self._gamma_power} gamma) "
            f"and e^({other._gamma_power} gamma)"
        )

    def __add__(self, other: Any) -> ZetaExpr:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms = dict(self._terms)
        for mono, coef in rhs._terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + coef
        return ZetaExpr(terms, self._sum_gamma(rhs))

    __radd__ = __add__

    def __neg__(self) -> ZetaExpr:
        return ZetaExpr({mono: -coef for mono, coef in self._terms.items()}, self._gamma_power)

    def __sub__(self, other: Any) -> ZetaExpr:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: Any) -> ZetaExpr:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: Any) -> ZetaExpr:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in rhs._terms.items():
                key = _mono_mul(m1, m2)
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return ZetaExpr(terms, self._gamma_power + rhs._gamma_power)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> ZetaExpr:
        if isinstance(other, ZetaExpr):
            other = other.rational_value()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division of a ZetaExpr by zero")
        inv = 1 / Fraction(other)
        return ZetaExpr({mono: coef * inv for mono, coef in self._terms.items()}, self._gamma_power)

    def __pow__(self, exponent: int) -> ZetaExpr:
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = ZetaExpr.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if self.is_zero() and rhs.is_zero():
            return True
        return self._terms == rhs._terms and self._gamma_power == rhs._gamma_power

    def __hash__(self) -> int:
        if self._hash is None:
            key = () if self.is_zero() else (tuple(self._terms.items()), self._gamma_power)
            self._hash = hash(key)
        return self._hash

    # ── serialization ───────────────────────────────────────────────
    def to_text(self) -> str:
        """Canonical text, e.g. ``-(1/6)*pi^2*egamma^2`` or ``pi^2/6 + 7*pi^4/60``."""
        if self.is_zero():
            return "0"
        items = list(self._terms.items())
        gamma = "" if self._gamma_power == 0 else (
            "*egamma" if self._gamma_power == 1 else f"*egamma^{self._gamma_power}"
        )
        if len(items) == 1:
            mono, coef = items[0]
            sign = "-" if coef < 0 else ""
            body = _single_term_text(mono, abs(coef))
            return f"{sign}{body}{gamma}"
        negate = items[0][1] < 0
        if negate:
            items = [(mono, -coef) for mono, coef in items]
        pieces: list[str] = []
        for i, (mono, coef) in enumerate(items):
            term = _sum_term_text(mono, abs(coef))
            if i == 0:
                pieces.append(term)
            else:
                pieces.append(f" {'-' if coef < 0 else '+'} {term}")
        body = "".join(pieces)
        if negate:
            return f"-({body}){gamma}"
        return f"({body}){gamma}" if gamma else body

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"ZetaExpr({self.to_text()!r})"

    def to_json(self) -> dict[str, Any]:
        return {
            "terms": [
                {"pi": pi_power, "zeta": list(zetas), "coef": str(coef)}
                for (pi_power, zetas), coef in self._terms.items()
            ],
            "gamma": self._gamma_power,
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, payload: Mapping[str, Any]) -> ZetaExpr:
        terms: dict[Monomial, Fraction] = {}
        for item in payload.get("terms", []):
            terms[(int(item["pi"]), tuple(int(z) for z in item["zeta"]))] = Fraction(item["coef"])
        return cls(terms, int(payload.get("gamma", 0)))

    def numeric(self, precision: int = 30) -> mpmath.mpf:
        return numeric_eval(self, precision)


def _coef_fraction_text(coef: Fraction) -> str:
    if coef.denominator == 1:
        return str(coef.numerator)
    return f"({coef.numerator}/{coef.denominator})"


def _single_term_text(mono: Monomial, coef: Fraction) -> str:
    mono_text = _mono_text(mono)
    if not mono_text:
        return _coef_fraction_text(coef)
    if coef == 1:
        return mono_text
    return f"{_coef_fraction_text(coef)}*{mono_text}"


def _sum_term_text(mono: Monomial, coef: Fraction) -> str:
    mono_text = _mono_text(mono)
    if not mono_text:
        return str(coef)
    head = mono_text if coef.numerator == 1 else f"{coef.numerator}*{mono_text}"
    return head if coef.denominator == 1 else f"{head}/{coef.denominator}"


def eta_value(r: int) -> ZetaExpr:
    """Dirichlet eta value sum_{k>=1} (-1)^{k+1}/k^r = (1 - 2^{1-r}) zeta(r)."""
    if r < 2:
        raise DomainError(f"eta({r}) is outside the supported range r >= 2")
    return ZetaExpr.zeta(r) * Fraction(2 ** (r - 1) - 1, 2 ** (r - 1))


def numeric_eval(x: ZetaExpr, precision: int = 30) -> mpmath.mpf:
    """Evaluate ``x`` with pi, zeta(odd) and gamma to ``precision`` decimal digits."""
    if precision < 15:
        raise DomainError("precision below 15 significant digits is not supported")
    with mpmath.workdps(precision + 5):
        total = mpmath.mpf(0)
        for (pi_power, zetas), coef in x.terms.items():
            term = mpmath.mpf(coef.numerator) / coef.denominator * mpmath.pi**pi_power
            for arg in zetas:
                term *= mpmath.zeta(arg)
            total += term
        if x.gamma_power:
            total *= mpmath.exp(x.gamma_power * mpmath.euler)
        return +total


def sum_exprs(values: Iterable[ZetaExpr]) -> ZetaExpr:
    total = ZetaExpr.zero()
    for value in values:
        total = total + value
    return total
