import math

import mpmath
import pytest

from taildist.coeffs import (
    coefficient_hash,
    compute_b,
    compute_chain,
    compute_qj,
    compute_rj,
    smooth_expansion,
    smooth_saddle_min,
)
from taildist.coeffs.reference import reference_families, reference_rational
from taildist.errors import DomainError
from taildist.zetaring import ZetaExpr, alternating_sum_numeric


# ── rational stage ─────────────────────────────────────────────────
def test_q_and_r_match_closed_forms(coeffs4):
    expected = reference_rational()
    assert coeffs4.q == expected["q"]
    assert coeffs4.r == expected["r"]


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_recursions_at_every_order(m):
    q, r = compute_qj(m), compute_rj(m)
    assert set(q) == set(r) == set(range(2, m + 1))
    expected = reference_rational()
    for j in range(2, min(m, 4) + 1):
        assert q[j] == expected["q"][j]
        assert r[j] == expected["r"][j]


def test_rational_coefficients_are_proper():
    for f in [*compute_qj(6).values(), *compute_rj(6).values()]:
        assert f.is_proper()


def test_b_matches_direct_alternating_sums():
    q, r = compute_qj(5), compute_rj(5)
    b = compute_b(5)
    for j in range(2, 6):
        direct = alternating_sum_numeric(q[j].numeric_callable()) + alternating_sum_numeric(
            r[j].numeric_callable()
        )
        assert float(b[j].numeric(30)) == pytest.approx(float(direct), rel=1e-12, abs=1e-14)


# ── exact chain ────────────────────────────────────────────────────
@pytest.mark.parametrize("family", ["b", "alpha", "beta", "delta", "eta", "lambda", "mu", "c", "a"])
def test_chain_matches_closed_forms(coeffs4, family):
    computed = coeffs4.family(family)
    for j, expected in reference_families()[family].items():
        assert computed[j] == expected, f"{family}_{j}"


def test_alpha_runs_one_order_past_m(coeffs4):
    assert set(coeffs4.alpha) == {2, 3, 4, 5}
    assert coeffs4.alpha[5] == coeffs4.b[4] * (-4)


def test_mu_two_vanishes(coeffs4):
    assert coeffs4.mu[2].is_zero()


def test_higher_order_extends_lower(coeffs4):
    coeffs5 = compute_chain(5)
    for family in ("b", "beta", "delta", "eta", "lambda", "mu", "c", "a"):
        lower, higher = coeffs4.family(family), coeffs5.family(family)
        for j in range(2, 5):
            assert higher[j] == lower[j]
    assert 5 in coeffs5.c


def test_a_carries_gamma_power(coeffs4):
    for j, value in coeffs4.a.items():
        assert value.gamma_power == j
        assert value == (-coeffs4.c[j]).with_gamma(j)


def test_text_lines(coeffs4):
    lines = coeffs4.text_lines()
    assert "b_4 = pi^2/6 + 7*pi^4/60" in lines
    assert "c_4 = pi^2/6 + 37*pi^4/360" in lines
    assert "a_4 = -(pi^2/6 + 37*pi^4/360)*egamma^4" in lines


def test_json_payload_round_trips_exact_values(coeffs4):
    payload = coeffs4.to_json()
    assert payload["m"] == 4
    entry = payload["c"]["4"]
    assert ZetaExpr.from_json(entry["exact"]) == coeffs4.c[4]
    assert entry["value"] == pytest.approx(math.pi**2 / 6 + 37 * math.pi**4 / 360)


def test_numeric_values(coeffs4):
    c = coeffs4.numeric("c")
    assert c[2] == pytest.approx(math.pi**2 / 6)
    assert c[3] == pytest.approx(-math.pi**2 / 6)


def test_hash_is_stable(coeffs4):
    assert coefficient_hash(4) == coeffs4.coefficient_hash()
    assert coefficient_hash(4) == compute_chain(4).coefficient_hash()
    assert coefficient_hash(4) != coefficient_hash(5)


def test_order_below_two_rejected():
    with pytest.raises(DomainError):
        compute_chain(1)


def test_unknown_family():
    with pytest.raises(KeyError):
        compute_chain(4).family("omega")


# ── smooth saddle model ────────────────────────────────────────────
def test_smooth_model_minimum_matches_expansion(coeffs8):
    """The residual after m terms shrinks like y / (log y)^(m+1)."""
    t = 200.0
    _, minimum = smooth_saddle_min(t, 8, coeffs8, precision=50)
    with mpmath.workdps(50):
        ell = mpmath.mpf(t) * mpmath.exp(-mpmath.euler)
        y = mpmath.exp(ell)
        residuals = [
            abs(minimum - smooth_expansion(t, m, coeffs8, precision=50)) for m in (2, 3, 4)
        ]
        assert residuals[0] > residuals[1] > residuals[2]
        for m, residual in zip((2, 3, 4), residuals):
            assert residual * ell ** (m + 1) / y < 1e3


def test_smooth_model_rejects_bad_order(coeffs4):
    with pytest.raises(DomainError):
        smooth_saddle_min(200.0, 5, coeffs4)
