"""
Command-line tests: JSON reports on stdout and exit codes
"""

import json

import pytest

from app.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report_of(out):
    return json.loads(out)


def artifact(report, name):
    return next(a["value"] for a in report["artifacts"] if a["name"] == name)


def test_absfactor(capsys):
    code, out, _ = run(capsys, "absfactor", "t^2 - x")
    assert code == 0
    report = report_of(out)
    assert report["status"] == "solved"
    assert report["case"] == "factored"
    assert artifact(report, "p") == 2
    assert artifact(report, "factors") == ["1"]
    assert artifact(report, "section") == "t - 2*x"


def test_factor(capsys):
    code, out, _ = run(capsys, "factor", "t^2 - (x+1)*t + x", "--order", "1", "--filter", "none")
    assert code == 0
    assert artifact(report_of(out), "factors") == ["t - 1"]


def test_factor_needs_extension(capsys):
    code, out, _ = run(capsys, "factor", "@fibonacci", "--order", "1")
    assert code == 3
    assert report_of(out)["status"] == "requires-extension"


def test_sympow_with_timings(capsys):
    code, out, _ = run(capsys, "sympow", "t^2 - t - 1", "--d", "2", "--timings")
    assert code == 0
    report = report_of(out)
    assert artifact(report, "order") == 3
    assert artifact(report, "lower_than_expected") is False
    assert set(report["timings"]) == {"parse", "run"}


def test_symprod(capsys):
    code, out, _ = run(capsys, "symprod", "t - 2", "t - 3")
    assert code == 0
    assert artifact(report_of(out), "operator") == "t - 6"


def test_parse_error(capsys):
    code, out, err = run(capsys, "absfactor", "t^")
    assert code == 4
    assert out == ""
    assert "parse error" in err
    assert "^" in err


@pytest.mark.parametrize("argv", [[], ["factor", "t - 1"], ["unknown", "t"], ["section", "t^2 - x"]])
def test_usage_errors(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 4
    assert out == ""


def test_engine_precondition(capsys):
    code, _, err = run(capsys, "factor", "t^2 - x", "--order", "2")
    assert code == 4
    assert "error" in err


def test_unknown_corpus_entry(capsys):
    code, _, _ = run(capsys, "verify", "no-such-entry")
    assert code == 4


def test_verify(capsys):
    """Oracle residuals vanish on the first 30 valid points"""
    code, out, _ = run(capsys, "verify", "a227845", "--terms", "30")
    assert code == 0
    report = report_of(out)
    assert artifact(report, "valid_points") == 30
    assert artifact(report, "det_matches") is True


def test_check(capsys):
    code, out, err = run(capsys, "check", "central_trinomial")
    assert code == 0
    assert "mismatch" not in err
    assert report_of(out)["command"] == "factor"


def test_corpus_listing(capsys):
    code, out, _ = run(capsys, "corpus")
    assert code == 0
    assert "a227845" in out
    assert "fibonacci" in out
