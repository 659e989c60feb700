import math

import numpy as np
import pytest
from scipy.special import zeta

from taildist.errors import DomainError
from taildist.primes import primes_upto
from taildist.saddle import PRIME_FLUCTUATION
from taildist.wfunc import (
    choose_cutoff,
    log_w,
    log_w_d1,
    log_w_d2,
    log_w_terms,
    log_w_we,
    log_w_wf,
    log_w_wz,
    solve_z,
    tail_bound,
)

CUTOFF = float(1 << 16)


# ── g(s) ───────────────────────────────────────────────────────────
def test_log_w_at_zero_is_exactly_zero():
    assert log_w(0.0).value == 0.0


def test_log_w_at_one_is_mean_of_n_over_phi():
    expected = math.log(zeta(2) * zeta(3) / zeta(6))
    assert log_w(1.0).value == pytest.approx(expected, abs=1e-6)


def test_large_s_does_not_overflow():
    value = log_w(500.0, 1e-9)
    assert math.isfinite(value.value)
    assert value.value > 0
    assert value.tail_bound <= 1e-9 or value.cutoff >= 1 << 27


def test_large_exponent_regime_matches_direct_form():
    p = np.array([2, 3, 5, 7], dtype=np.int64)
    s = 20.0
    direct = np.log1p(((1.0 - 1.0 / p) ** (-s) - 1.0) / p)
    assert log_w_terms(s, p, regime_switch=0.0) == pytest.approx(direct, rel=1e-12)
    assert log_w_terms(s, p, regime_switch=1e9) == pytest.approx(direct, rel=1e-12)


def test_cutoff_grows_with_tighter_tolerance():
    loose, _ = choose_cutoff(100.0, 1e-3)
    tight, bound = choose_cutoff(100.0, 1e-8)
    assert tight >= loose
    assert bound <= 1e-8
    assert tail_bound(100.0, tight) == bound


@pytest.mark.parametrize("s", [10.0, 100.0, 1000.0, 1e4])
def test_doubling_cutoff_stays_within_tail_bound(s):
    base = log_w(s)
    doubled = log_w(s, cutoff=2 * base.cutoff)
    assert abs(doubled.value - base.value) <= base.tail_bound


# ── derivatives ────────────────────────────────────────────────────
@pytest.mark.parametrize("s", [5.0, 50.0, 500.0])
def test_first_derivative_matches_central_difference(s):
    h = 1e-3
    plus = log_w(s + h, cutoff=CUTOFF).value
    minus = log_w(s - h, cutoff=CUTOFF).value
    assert log_w_d1(s, cutoff=CUTOFF) == pytest.approx((plus - minus) / (2 * h), rel=1e-6)


@pytest.mark.parametrize("s", [10.0, 100.0, 1000.0, 1e4, 1e5])
def test_second_derivative_scale(s):
    d2 = log_w_d2(s)
    assert d2 > 0
    assert 0.05 <= d2 * s * math.log(s) <= 20


def test_first_derivative_increases():
    values = [log_w_d1(s, cutoff=CUTOFF) for s in (0.0, 1.0, 10.0, 100.0)]
    assert all(v > 0 for v in values)
    assert values == sorted(values)


# ── product forms ──────────────────────────────────────────────────
@pytest.mark.parametrize("s,u,v", [(3.0, 10.0, 1000.0), (200.0, 50.0, 5000.0), (50.0, 97.0, 97.0)])
def test_split_form_is_exact_rearrangement(s, u, v):
    truncated = math.fsum(log_w_terms(s, primes_upto(v)))
    assert log_w_wf(s, u, v) == pytest.approx(truncated, rel=1e-10, abs=1e-10)


@pytest.mark.parametrize("u", [50.0, 200.0, 800.0])
def test_exponential_form_close_to_exact_form(u):
    # error is not monotone in u: about 8e-5, 7e-7 and 2e-6 relative
    s = v = u * math.log(u)
    exact = log_w_wf(s, u, v)
    assert log_w_we(s, u, v) == pytest.approx(exact, rel=2e-4)


def test_exponential_form_requires_large_cutoff():
    with pytest.raises(DomainError):
        log_w_we(1000.0, 10.0, 100.0)
    assert math.isfinite(log_w_we(1000.0, 10.0, 100.0, check_cutoff=False))


@pytest.mark.parametrize("u,v", [(1.0, 100.0), (50.0, 10.0)])
def test_product_forms_reject_bad_ranges(u, v):
    with pytest.raises(DomainError):
        log_w_wf(1.0, u, v)


# ── expansion in 1/log z ───────────────────────────────────────────
def test_solve_z():
    assert solve_z(0.0) == 1.0
    assert solve_z(math.e) == pytest.approx(math.e, rel=1e-14)
    z = solve_z(1e6)
    assert z * math.log(z) == pytest.approx(1e6, rel=1e-13)


@pytest.mark.parametrize("s", [1e3, 1e4, 1e5])
@pytest.mark.parametrize("m", [2, 3, 4])
def test_expansion_residual_is_prime_fluctuation_sized(coeffs4, s, m):
    # the prime sum carries a sqrt(z) offset that no order of the expansion removes
    z = solve_z(s)
    residual = abs(log_w(s).value - log_w_wz(s, m, coeffs4))
    assert residual <= PRIME_FLUCTUATION * math.sqrt(z) + 10 * z / math.log(z) ** 5


def test_expansion_domain(coeffs4):
    with pytest.raises(DomainError):
        log_w_wz(2.0, 4, coeffs4)
    with pytest.raises(DomainError):
        log_w_wz(100.0, 5, coeffs4)


def test_negative_s_rejected():
    with pytest.raises(DomainError):
        log_w(-1.0)
    with pytest.raises(DomainError):
        solve_z(-1.0)
