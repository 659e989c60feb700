import io
import math
from fractions import Fraction

import pytest
import sympy

from taildist.config import Settings
from taildist.empirical import (
    CSV_HEADER,
    bridge_certificate,
    bridge_multiplier,
    build_empirical_graph,
    chernoff_check,
    dedekind_check,
    multiplicative_table,
    pointwise_abundancy_check,
    run_empirical,
    sieve_tails,
    write_csv,
)
from taildist.errors import DomainError, ResourceError


def _naive_counts(N: int, t: Fraction) -> tuple[int, int, int]:
    a = b = d = 0
    for n in range(1, N + 1):
        factors = sympy.factorint(n)
        sigma = int(sympy.divisor_sigma(n))
        phi = int(sympy.totient(n))
        psi = n
        for p in factors:
            psi = psi // p * (p + 1)
        a += sigma * t.denominator >= t.numerator * n
        b += n * t.denominator >= t.numerator * phi
        d += psi * t.denominator >= t.numerator * n
    return a, b, d


# ── sieve ──────────────────────────────────────────────────────────
def test_multiplicative_table_small_values():
    table = multiplicative_table(1, 13)
    assert table.sigma.tolist() == [1, 3, 4, 7, 6, 12, 8, 15, 13, 18, 12, 28]
    assert table.phi.tolist() == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    assert table.psi.tolist() == [1, 3, 4, 6, 6, 12, 8, 12, 12, 18, 12, 24]


def test_counts_at_hundred(small_settings):
    tail = sieve_tails(100, ["1", "2"], small_settings)
    assert tail.counts_A == [100, 24]
    assert tail.counts_B == [100, 50]
    assert tail.counts_D == [100, 17]
    assert tail.labels == ["1", "2"]


def test_counts_match_naive_enumeration(small_settings):
    thresholds = ["1.5", "2", "2.5", "3"]
    tail = sieve_tails(10**4, thresholds, small_settings)
    for i, label in enumerate(thresholds):
        expected = _naive_counts(10**4, Fraction(label))
        assert (tail.counts_A[i], tail.counts_B[i], tail.counts_D[i]) == expected


def test_counts_are_ordered(small_settings):
    tail = sieve_tails(10**5, ["1", "1.5", "2", "2.5", "3"], small_settings)
    assert all(a <= b for a, b in zip(tail.counts_A, tail.counts_B))
    for counts in (tail.counts_A, tail.counts_B, tail.counts_D):
        assert counts == sorted(counts, reverse=True)
    assert tail.counts_A[0] == tail.counts_B[0] == tail.counts_D[0] == 10**5


def test_counts_do_not_depend_on_threads_or_segments():
    single = sieve_tails(5 * 10**4, ["2", "3"], Settings(threads=1, segment_size=1 << 16))
    many = sieve_tails(5 * 10**4, ["2", "3"], Settings(threads=4, segment_size=1 << 10))
    assert single == many


def test_write_csv(small_settings):
    stream = io.StringIO()
    write_csv(sieve_tails(100, ["1", "2"], small_settings), stream)
    assert stream.getvalue().splitlines() == [
        ",".join(CSV_HEADER),
        "1,100,100,100,100",
        "2,24,50,17,100",
    ]


@pytest.mark.parametrize("thresholds", [["0.5"], ["2", "1"], ["2", "2"]])
def test_bad_thresholds(thresholds):
    with pytest.raises(DomainError):
        sieve_tails(100, thresholds)


def test_sieve_limits():
    with pytest.raises(DomainError):
        sieve_tails(0, ["1"])
    with pytest.raises(ResourceError):
        sieve_tails(10**6, ["1"], Settings(max_empirical_n=10**5))


# ── checks ─────────────────────────────────────────────────────────
def test_pointwise_abundancy():
    assert pointwise_abundancy_check(10**4)
    with pytest.raises(DomainError):
        pointwise_abundancy_check(1)


@pytest.mark.parametrize("t", ["1.5", "2", "3"])
def test_chernoff_bound_holds(small_settings, t):
    result = chernoff_check(10**4, Fraction(t), settings=small_settings)
    assert result.passed
    assert result.density <= 1.0


def test_chernoff_at_one_is_trivial(small_settings):
    result = chernoff_check(10**4, 1, settings=small_settings)
    assert result.log_bound == 0.0
    assert result.gap <= 0.0


def test_chernoff_needs_large_n(small_settings):
    with pytest.raises(DomainError):
        chernoff_check(100, 2, settings=small_settings)


@pytest.mark.parametrize("t", ["1.5", "2", "3"])
def test_dedekind_inequality(small_settings, t):
    result = dedekind_check(10**4, Fraction(t), settings=small_settings)
    assert result.holds
    assert result.d_threshold > float(t) * 6 / math.pi**2


def test_bridge_multiplier():
    assert bridge_multiplier(2.0) == (1, {})
    m, factorization = bridge_multiplier(6.0)
    assert factorization == {2: 4, 3: 3, 5: 2}
    assert m == 10800


@pytest.mark.parametrize("t", [4.0, 6.0, 8.0])
def test_bridge_certificate(t):
    cert = bridge_certificate(t, 10**5)
    assert cert.all_passed
    assert cert.witness is None
    assert cert.log_m < 3 * math.sqrt(cert.y)
    assert cert.p_bound_holds
    assert cert.p_lower >= 1 - 5 / (math.sqrt(cert.y) * math.log(cert.y))


def test_bridge_domain():
    with pytest.raises(DomainError):
        bridge_certificate(1.5, 100)
    with pytest.raises(DomainError):
        bridge_certificate(4.0, 0)


# ── graph ──────────────────────────────────────────────────────────
def test_graph_compiles():
    graph = build_empirical_graph()
    assert "sieve_node" in graph.get_graph().nodes


def test_run_empirical_all_checks(small_settings):
    report = run_empirical(
        10**4, ["1", "2", "3"], ["chernoff", "dedekind", "bridge", "pointwise"],
        settings=small_settings,
    )
    assert report.all_passed
    assert not report.failures
    checks = {o["check"] for o in report.outcomes}
    assert checks == {"chernoff", "dedekind", "bridge", "pointwise", "ordering"}
    bridge_ts = sorted(o["t"] for o in report.outcomes if o["check"] == "bridge")
    assert bridge_ts == [2.0, 3.0]
    assert report.summary.startswith("Empirical checks up to N=10000: PASS")


def test_run_empirical_records_failures(small_settings):
    report = run_empirical(1000, ["2"], ["chernoff"], settings=small_settings)
    assert not report.all_passed
    assert report.failures[0]["node"] == "chernoff_node"
    assert report.failures[0]["error"] == "DomainError"
    assert ">>> chernoff_node raised DomainError" in report.summary


def test_run_empirical_rejects_unknown_check():
    with pytest.raises(DomainError):
        run_empirical(100, ["2"], ["lucky"])


@pytest.mark.slow
def test_inequalities_at_ten_million():
    report = run_empirical(
        10**7, ["1.5", "2", "2.5", "3", "3.5", "4"], ["chernoff", "dedekind", "pointwise"]
    )
    assert report.all_passed, report.summary
    assert all(a <= b for a, b in zip(report.tail.counts_A, report.tail.counts_B))
