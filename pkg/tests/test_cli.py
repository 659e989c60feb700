import json

import pytest

from taildist import __version__
from taildist.cli import EXIT_OK, EXIT_USAGE, main


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_coeffs_text(capsys):
    assert main(["coeffs", "--m", "4", "--format", "text"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert "c_4 = pi^2/6 + 37*pi^4/360" in lines
    assert "mu_2 = 0" in lines


def test_coeffs_json(capsys):
    assert main(["coeffs", "--m", "3"]) == EXIT_OK
    report = _json(capsys)
    assert report["command"] == "coeffs"
    assert report["parameters"] == {"m": 3}
    assert report["results"]["b"]["2"]["text"] == "(1/6)*pi^2"
    assert report["versions"]["taildist"] == __version__


@pytest.mark.parametrize("m", ["1", "11"])
def test_coeffs_order_out_of_range(m, capsys):
    assert main(["coeffs", "--m", m]) == EXIT_USAGE
    assert "usage:" in capsys.readouterr().err


def test_empirical_csv(capsys):
    assert main(["empirical", "--n", "100", "--thresholds", "1,2"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [
        "threshold,count_A,count_B,count_D,N",
        "1,100,100,100,100",
        "2,24,50,17,100",
    ]


def test_empirical_json(capsys):
    assert main(["empirical", "--n", "100", "--thresholds", "2", "--format", "json"]) == EXIT_OK
    report = _json(capsys)
    assert report["results"]["counts_B"] == [50]


def test_empirical_output_file(tmp_path):
    out = tmp_path / "tail.csv"
    assert main(["empirical", "--n", "100", "--thresholds", "2", "--out", str(out)]) == EXIT_OK
    assert out.read_text().splitlines()[1] == "2,24,50,17,100"


@pytest.mark.parametrize(
    "argv",
    [
        ["empirical", "--n", "0"],
        ["empirical", "--n", "100", "--thresholds", "2,1"],
        ["empirical", "--n", "100", "--checks", "chernoff"],
        ["estimate", "--t", "10", "--methods", "guess"],
        ["estimate", "--t", "1.2"],
        ["bridge", "--t", "1.5"],
    ],
)
def test_usage_errors(argv):
    assert main(argv) == EXIT_USAGE


def test_estimate_text(capsys):
    assert main(["estimate", "--t", "6", "--methods", "baseline,thm1", "--format", "text"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [line.split("\t")[0] for line in lines] == ["baseline", "thm1"]


def test_estimate_output_is_reproducible(capsys):
    argv = ["estimate", "--t", "6", "--methods", "baseline,thm1"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    second = capsys.readouterr().out
    assert json.loads(first)["results"] == json.loads(second)["results"]
    raw = json.loads(first, parse_float=str)["results"]["estimates"]
    for estimate in raw:
        text = estimate["log_value"]
        assert repr(float(text)) == text


def test_bridge_report(capsys):
    assert main(["bridge", "--t", "6", "--n", "1000"]) == EXIT_OK
    report = _json(capsys)
    assert report["parameters"] == {"t": 6.0, "n": 1000}
    assert report["results"]["m"] == 10800
    assert report["results"]["all_passed"] is True


def test_selftest(capsys):
    assert main(["selftest"]) == EXIT_OK
    results = _json(capsys)["results"]
    assert results and all(results.values())
