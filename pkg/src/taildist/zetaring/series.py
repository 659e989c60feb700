"""Truncated power series in one formal small variable with ZetaExpr coefficients."""

from __future__ import annotations

from collections.abc import Sequence

from taildist.errors import DomainError
from taildist.zetaring.ring import Scalar, ZetaExpr


def _as_expr(value: ZetaExpr | Scalar) -> ZetaExpr:
    return value if isinstance(value, ZetaExpr) else ZetaExpr.rational(value)


class FormalSeries:
    """c_0 + c_1 eps + ... + c_m eps^m, truncated at ``order`` m."""

    __slots__ = ("_coefficients",)

    def __init__(self, coefficients: Sequence[ZetaExpr | Scalar], order: int | None = None) -> None:
        coeffs = [_as_expr(c) for c in coefficients]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise DomainError("series order must be >= 0")
        coeffs = coeffs[: order + 1]
        coeffs.extend(ZetaExpr.zero() for _ in range(order + 1 - len(coeffs)))
        self._coefficients = tuple(coeffs)

    @classmethod
    def zero(cls, order: int) -> FormalSeries:
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> FormalSeries:
        return cls([1], order)

    @classmethod
    def variable(cls, order: int) -> FormalSeries:
        """The series eps itself."""
        return cls([0, 1], order)

    @property
    def order(self) -> int:
        return len(self._coefficients) - 1

    @property
    def coefficients(self) -> tuple[ZetaExpr, ...]:
        return self._coefficients

    def __getitem__(self, index: int) -> ZetaExpr:
        if 0 <= index <= self.order:
            return self._coefficients[index]
        return ZetaExpr.zero()

    def __len__(self) -> int:
        return len(self._coefficients)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self._coefficients == other._coefficients

    def __hash__(self) -> int:
        return hash(self._coefficients)

    def __repr__(self) -> str:
        body = " + ".join(
            f"({c})*eps^{i}" for i, c in enumerate(self._coefficients) if not c.is_zero()
        )
        return f"FormalSeries({body or '0'}; order={self.order})"

    def truncate(self, order: int) -> FormalSeries:
        return FormalSeries(self._coefficients, order)

    def shift_down(self) -> FormalSeries:
        """Divide by eps; the constant term must vanish."""
        if not self[0].is_zero():
            raise DomainError("cannot divide a series with nonzero constant term by eps")
        return FormalSeries(self._coefficients[1:], self.order - 1)

    def __add__(self, other: FormalSeries) -> FormalSeries:
        return series_add(self, other)

    def __sub__(self, other: FormalSeries) -> FormalSeries:
        return series_sub(self, other)

    def __mul__(self, other: FormalSeries) -> FormalSeries:
        return series_mul(self, other)


def _check_orders(a: FormalSeries, b: FormalSeries) -> int:
    if a.order != b.order:
        raise DomainError(f"series orders differ: {a.order} vs {b.order}")
    return a.order


def series_add(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    order = _check_orders(a, b)
    return FormalSeries([a[i] + b[i] for i in range(order + 1)], order)


def series_sub(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    order = _check_orders(a, b)
    return FormalSeries([a[i] - b[i] for i in range(order + 1)], order)


def series_scale(a: FormalSeries, factor: ZetaExpr | Scalar) -> FormalSeries:
    factor = _as_expr(factor)
    return FormalSeries([c * factor for c in a.coefficients], a.order)


def series_mul(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    order = _check_orders(a, b)
    out: list[ZetaExpr] = []
    for n in range(order + 1):
        acc = ZetaExpr.zero()
        for i in range(n + 1):
            if a[i].is_zero() or b[n - i].is_zero():
                continue
            acc = acc + a[i] * b[n - i]
        out.append(acc)
    return FormalSeries(out, order)


def series_exp(a: FormalSeries) -> FormalSeries:
    """exp(a) for a series with vanishing constant term.

    Uses e' = a' e, i.e. n e_n = sum_{k=1}^n k a_k e_{n-k}.
    """
    if not a[0].is_zero():
        raise DomainError("series_exp needs a zero constant term")
    e = [ZetaExpr.one()]
    for n in range(1, a.order + 1):
        acc = ZetaExpr.zero()
        for k in range(1, n + 1):
            if a[k].is_zero() or e[n - k].is_zero():
                continue
            acc = acc + a[k] * e[n - k] * k
        e.append(acc / n)
    return FormalSeries(e, a.order)


def series_reciprocal(a: FormalSeries) -> FormalSeries:
    """1/a; the constant term must be a nonzero rational."""
    a0 = a[0]
    if a0.is_zero() or not a0.is_rational():
        raise DomainError("series_reciprocal needs a nonzero rational constant term")
    inv0 = 1 / a0.rational_value()
    out = [ZetaExpr.rational(inv0)]
    for n in range(1, a.order + 1):
        acc = ZetaExpr.zero()
        for k in range(1, n + 1):
            if a[k].is_zero() or out[n - k].is_zero():
                continue
            acc = acc + a[k] * out[n - k]
        out.append(-acc * inv0)
    return FormalSeries(out, a.order)


def series_compose(outer: FormalSeries, inner: FormalSeries) -> FormalSeries:
    """outer(inner(eps)); inner must have a zero constant term."""
    order = _check_orders(outer, inner)
    if not inner[0].is_zero():
        raise DomainError("series_compose needs an inner series with zero constant term")
    result = FormalSeries([outer[order]], order)
    for i in range(order - 1, -1, -1):
        result = series_mul(result, inner)
        result = FormalSeries([result[0] + outer[i], *result.coefficients[1:]], order)
    return result


def series_revert(a: FormalSeries) -> FormalSeries:
    """Compositional inverse of eps + (higher terms).

    Writes a = eps + h and iterates g <- eps - h(g); each pass fixes one more
    coefficient, so ``order`` passes are exact.
    """
    if not a[0].is_zero() or a[1] != 1:
        raise DomainError("series_revert needs a[0] = 0 and a[1] = 1")
    order = a.order
    eps = FormalSeries.variable(order)
    h = series_sub(a, eps)
    g = eps
    for _ in range(order):
        g = series_sub(eps, series_compose(h, g))
    return g
