import math

import pytest

from taildist.errors import DomainError
from taildist.saddle import (
    baseline_estimate,
    comparison_scale,
    minimize_chernoff,
    saddle_estimate,
    sylogy_check,
    thm1_estimate,
    y_of_t,
)
from taildist.wfunc import EULER_GAMMA, log_w, log_w_d2


def test_y_of_t():
    assert y_of_t(10.0) == pytest.approx(274.2, rel=1e-3)
    assert y_of_t(math.exp(EULER_GAMMA)) == pytest.approx(math.e)


@pytest.mark.parametrize("t", [1.0, 1.5])
def test_minimum_on_boundary_for_small_t(t):
    result = minimize_chernoff(t)
    assert result.s_star == 0.0
    assert result.log_min == 0.0
    assert result.log_lower is None


def test_saddle_at_ten():
    result = minimize_chernoff(10.0)
    y = result.y
    assert abs(result.s_star - y * math.log(y)) <= 6 * y
    assert result.grad_residual <= 1e-8
    assert result.log_min < 0
    assert result.log_lower == pytest.approx(result.log_min - math.log(3 * result.s_star))


def test_saddle_is_a_strict_minimum():
    result = minimize_chernoff(10.0)
    log_t = math.log(10.0)
    for s in (result.s_star / 2, 2 * result.s_star):
        value = log_w(s, cutoff=result.cutoff).value - s * log_t
        assert value > result.log_min
    assert log_w_d2(result.s_star, cutoff=result.cutoff) > 0


def test_saddle_estimate_wraps_minimum():
    estimate = saddle_estimate(6.0)
    assert estimate.method == "saddle"
    assert estimate.log_value == minimize_chernoff(6.0).log_min


def test_baseline():
    estimate = baseline_estimate(10.0)
    assert estimate.log_value == -y_of_t(10.0)
    with pytest.raises(DomainError):
        baseline_estimate(0.0)


def test_thm1_second_order_arithmetic(coeffs4):
    t = 12.0
    y = y_of_t(t)
    a2 = -(math.pi**2 / 6) * math.exp(2 * EULER_GAMMA)
    estimate = thm1_estimate(t, 2, coeffs4)
    assert estimate.m == 2
    assert estimate.terms == pytest.approx([-y * a2 / t**2])
    assert estimate.log_value == pytest.approx(-y * (1 + a2 / t**2), rel=1e-12)


def test_thm1_domain(coeffs4):
    with pytest.raises(DomainError):
        thm1_estimate(1.5, 2, coeffs4)
    with pytest.raises(DomainError):
        thm1_estimate(10.0, 5, coeffs4)


@pytest.mark.parametrize("t", [10.0, 20.0])
def test_saddle_near_y_log_y(t):
    assert sylogy_check(t) <= 6


def test_sylogy_needs_large_t():
    with pytest.raises(DomainError):
        sylogy_check(4.0)


def test_log_min_decreases_in_t():
    values = [minimize_chernoff(t).log_min for t in (2.0, 3.0, 5.0, 8.0)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_minimize_rejects_nonpositive_t():
    with pytest.raises(DomainError):
        minimize_chernoff(0.0)


@pytest.mark.slow
@pytest.mark.parametrize("t", [8.0, 10.0, 12.0, 15.0, 20.0])
def test_expansion_residual_is_bounded(coeffs4, t):
    """thm1(m) stays within comparison_scale(y) of the prime-sum minimum.

    The gap is dominated by prime fluctuations and does not shrink with m;
    the decrease in m is checked on the smooth model in test_coeffs.
    """
    log_min = minimize_chernoff(t).log_min
    y = y_of_t(t)
    residuals = [abs(log_min - thm1_estimate(t, m, coeffs4).log_value) for m in (2, 3, 4)]
    assert max(residuals) <= comparison_scale(y)
