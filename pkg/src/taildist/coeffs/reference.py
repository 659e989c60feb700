"""Published closed forms of the order-2..4 coefficients, used by selftest."""

from __future__ import annotations

from fractions import Fraction

from taildist.zetaring import RationalFunc, ZetaExpr


def _pi(c2: Fraction | int, c4: Fraction | int = 0, gamma: int = 0) -> ZetaExpr:
    value = ZetaExpr.pi_power(2, c2) + ZetaExpr.pi_power(4, c4)
    return value.with_gamma(gamma) if gamma else value


def reference_rational() -> dict[str, dict[int, RationalFunc]]:
    return {
        "q": {
            2: RationalFunc.from_expr("1/k"),
            3: RationalFunc.from_expr("-(k + 2)/k**2"),
            4: RationalFunc.from_expr("1/k**2 + (k + 2)*(k + 3)/k**3"),
        },
        "r": {
            2: RationalFunc.from_expr("1/k"),
            3: RationalFunc.from_expr("(2 - k)/k**2"),
            4: RationalFunc.from_expr("(2 - k)*(3 - k)/k**3 - 1/k**2"),
        },
    }


def reference_families() -> dict[str, dict[int, ZetaExpr]]:
    sixth = Fraction(1, 6)
    return {
        "b": {2: _pi(sixth), 3: _pi(-sixth), 4: _pi(sixth, Fraction(7, 60))},
        "alpha": {
            2: _pi(sixth),
            3: _pi(Fraction(-1, 2)),
            4: _pi(Fraction(2, 3), Fraction(7, 60)),
        },
        "beta": {
            2: _pi(sixth),
            3: _pi(Fraction(-2, 3)),
            4: _pi(Fraction(4, 3), Fraction(7, 60)),
        },
        "delta": {
            2: _pi(sixth),
            3: _pi(Fraction(-2, 3)),
            4: _pi(Fraction(4, 3), Fraction(7, 60)),
        },
        "eta": {
            2: _pi(-sixth),
            3: _pi(Fraction(2, 3)),
            4: _pi(Fraction(-4, 3), Fraction(-7, 60)),
        },
        "lambda": {
            2: _pi(-sixth),
            3: _pi(Fraction(2, 3)),
            4: _pi(Fraction(-4, 3), Fraction(-37, 360)),
        },
        "mu": {2: ZetaExpr.zero(), 3: _pi(Fraction(1, 2)), 4: _pi(Fraction(-7, 6))},
        "c": {2: _pi(sixth), 3: _pi(-sixth), 4: _pi(sixth, Fraction(37, 360))},
        "a": {
            2: _pi(-sixth, gamma=2),
            3: _pi(sixth, gamma=3),
            4: _pi(-sixth, Fraction(-37, 360), gamma=4),
        },
    }
