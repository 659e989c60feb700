import pytest

from taildist.errors import DomainError
from taildist.estimate import METHODS, build_estimate_graph, run_estimates
from taildist.saddle import comparison_scale


def test_graph_compiles():
    nodes = build_estimate_graph().get_graph().nodes
    for name in ("dispatcher", "baseline_node", "thm1_node", "saddle_node", "thm2_node"):
        assert name in nodes


def test_all_methods_at_ten():
    report = run_estimates(10.0)
    y = report.y
    assert [e.method for e in report.estimates] == list(METHODS)
    assert not report.failures
    values = report.comparison.log_values
    assert values["baseline"] == -y
    assert abs(values["saddle"] - values["thm2"]) <= comparison_scale(y)
    assert report.saddle is not None and report.saddle.log_min == values["saddle"]
    assert report.integral is not None and report.integral.log_value == values["thm2"]
    assert report.comparison.scale == pytest.approx(comparison_scale(y))
    assert report.comparison.consistent


def test_failed_method_is_recorded():
    report = run_estimates(1.9, ["baseline", "thm1"])
    assert [e.method for e in report.estimates] == ["baseline"]
    assert report.failures == [
        {"node": "thm1_node", "error": "DomainError", "message": report.failures[0]["message"]}
    ]
    assert report.comparison.spread == 0.0


def test_duplicate_methods_run_once():
    report = run_estimates(6.0, ["baseline", "baseline"])
    assert len(report.estimates) == 1


@pytest.mark.parametrize(
    "kwargs",
    [
        {"t": 10.0, "methods": ["oracle"]},
        {"t": 10.0, "methods": []},
        {"t": 1.0, "methods": ["baseline"]},
        {"t": 10.0, "methods": ["thm1"], "m": 1},
    ],
)
def test_bad_requests(kwargs):
    with pytest.raises(DomainError):
        run_estimates(**kwargs)
