import math
from fractions import Fraction

import mpmath
import pytest

from taildist.errors import DomainError, PipelineError
from taildist.wfunc import EULER_GAMMA
from taildist.zetaring import (
    FormalSeries,
    RationalFunc,
    ZetaExpr,
    alternating_sum,
    alternating_sum_numeric,
    eta_value,
    numeric_eval,
    series_compose,
    series_exp,
    series_mul,
    series_reciprocal,
    series_revert,
)

PI2_6 = ZetaExpr.pi_power(2, Fraction(1, 6))


# ── ZetaExpr ───────────────────────────────────────────────────────
def test_eta_values():
    assert eta_value(2) == ZetaExpr.pi_power(2, Fraction(1, 12))
    assert eta_value(3) == ZetaExpr.zeta(3) * Fraction(3, 4)
    assert eta_value(4) == ZetaExpr.pi_power(4, Fraction(7, 720))


def test_eta_four_matches_direct_sum():
    direct = mpmath.nsum(lambda k: (-1) ** (int(k) + 1) / k**4, [1, mpmath.inf])
    assert float(eta_value(4).numeric(30)) == pytest.approx(float(direct), rel=1e-12)


def test_eta_rejects_r_below_two():
    with pytest.raises(DomainError):
        eta_value(1)


def test_even_zeta_canonical_form():
    assert ZetaExpr.zeta(2) * ZetaExpr.zeta(2) == ZetaExpr.pi_power(4, Fraction(1, 36))
    assert ZetaExpr.zeta(4) == ZetaExpr.pi_power(4, Fraction(1, 90))
    assert ZetaExpr.zeta(6) == ZetaExpr.pi_power(6, Fraction(1, 945))


def test_ring_identities():
    x = PI2_6 + ZetaExpr.zeta(3)
    y = ZetaExpr.pi_power(4, Fraction(-7, 60)) + 2
    z = ZetaExpr.zeta(5) * Fraction(1, 3)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == ZetaExpr.zero()
    assert (x**2).terms == (x * x).terms


def test_gamma_tags():
    a2 = (-PI2_6).with_gamma(2)
    assert a2.gamma_power == 2
    assert (a2 * ZetaExpr.one().with_gamma(1)).gamma_power == 3
    assert a2 + ZetaExpr.zero() == a2
    with pytest.raises(DomainError):
        _ = a2 + PI2_6


def test_invalid_monomials():
    with pytest.raises(DomainError):
        ZetaExpr({(3, ()): 1})
    with pytest.raises(DomainError):
        ZetaExpr({(0, (4,)): 1})


def test_text_and_json_forms():
    a2 = (-PI2_6).with_gamma(2)
    assert a2.to_text() == "-(1/6)*pi^2*egamma^2"
    assert a2.to_json() == {"terms": [{"pi": 2, "zeta": [], "coef": "-1/6"}], "gamma": 2}
    b4 = PI2_6 + ZetaExpr.pi_power(4, Fraction(7, 60))
    assert b4.to_text() == "pi^2/6 + 7*pi^4/60"
    assert ZetaExpr.from_json(b4.to_json()) == b4


def test_numeric_eval():
    assert float(numeric_eval(PI2_6)) == pytest.approx(math.pi**2 / 6, rel=1e-15)
    a2 = (-PI2_6).with_gamma(2)
    expected = -(math.pi**2 / 6) * math.exp(2 * EULER_GAMMA)
    assert float(a2.numeric()) == pytest.approx(expected, rel=1e-12)
    assert float(numeric_eval(ZetaExpr.zero())) == 0.0
    with pytest.raises(DomainError):
        numeric_eval(PI2_6, precision=10)


# ── formal series ──────────────────────────────────────────────────
def test_series_exp():
    expected = FormalSeries([1, 1, Fraction(1, 2), Fraction(1, 6)])
    assert series_exp(FormalSeries.variable(3)) == expected
    with pytest.raises(DomainError):
        series_exp(FormalSeries([1, 1]))


def test_series_revert():
    assert series_revert(FormalSeries([0, 1, 1, 0])) == FormalSeries([0, 1, -1, 2])
    with pytest.raises(DomainError):
        series_revert(FormalSeries([0, 2, 1]))


def test_series_mul_and_reciprocal():
    product = series_mul(FormalSeries([1, 1, 0]), FormalSeries([1, -1, 0]))
    assert product == FormalSeries([1, 0, -1])
    a = FormalSeries([1, PI2_6, 0, ZetaExpr.zeta(3)])
    assert series_mul(a, series_reciprocal(a)) == FormalSeries.one(3)
    with pytest.raises(DomainError):
        series_mul(FormalSeries([1, 1]), FormalSeries([1, 1, 1]))


def test_revert_then_compose_is_identity():
    a = FormalSeries([0, 1, Fraction(1, 2), Fraction(-1, 3), 2, 0, 1, -1, 3])
    identity = FormalSeries.variable(8)
    assert series_compose(a, series_revert(a)) == identity
    assert series_compose(series_revert(a), a) == identity


def test_series_with_constant_coefficients():
    a = FormalSeries([0, 1, PI2_6, 0])
    inverse = series_revert(a)
    assert inverse[2] == -PI2_6
    assert inverse[3] == PI2_6 * PI2_6 * 2


# ── rational functions ─────────────────────────────────────────────
def test_rational_function_canonical_form():
    left = RationalFunc.from_expr("1/k**2 + (k+2)*(k+3)/k**3")
    right = RationalFunc.from_expr("(k**2 + 6*k + 6)/k**3")
    assert left == right
    assert left.is_proper()
    assert left.is_pure_power_denominator()
    assert left.inverse_power_terms() == {1: 1, 2: 6, 3: 6}


def test_alternating_sum_exact():
    assert alternating_sum(RationalFunc.from_expr("1/k")) == eta_value(2)
    assert alternating_sum(RationalFunc.from_expr("-(k+2)/k**2")) == -(
        eta_value(2) + eta_value(3) * 2
    )


def test_alternating_sum_fallback():
    q = RationalFunc.from_expr("1/(k+1)")
    with pytest.raises(PipelineError) as info:
        alternating_sum(q)
    assert info.value.offending == q
    assert float(info.value.numeric_estimate) == pytest.approx(2 * math.log(2) - 1, rel=1e-12)


def test_alternating_sum_numeric_matches_exact():
    f = RationalFunc.from_expr("(2-k)/k**2")
    exact = alternating_sum(f)
    assert float(alternating_sum_numeric(f.numeric_callable())) == pytest.approx(
        float(exact.numeric()), rel=1e-12
    )
