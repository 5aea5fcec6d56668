import json

import pytest

from cycform.cli import (
    EXIT_BAD_DEGREES,
    EXIT_BAD_GRAPH,
    EXIT_CACHE,
    EXIT_CHECK_FAILED,
    EXIT_OK,
    main,
)


def run(argv, capsys):
    rc = main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_enumerate(capsys):
    rc, out, _ = run(["enumerate", "--n", "0", "--m", "1", "--central-degree", "2",
                      "--json"], capsys)
    assert rc == EXIT_OK
    payload = json.loads(out)
    assert payload["graphs"] == ["0,1;0>0b,0>1b"]


def test_enumerate_bad_degrees(capsys):
    rc, _, err = run(["enumerate", "--n", "2", "--m", "0", "--central-degree", "1",
                      "--aerial-degrees", "1"], capsys)
    assert rc == EXIT_BAD_DEGREES
    assert "degree" in err


def test_weight_command(capsys):
    rc, out, _ = run(["weight", "--graph", "0,2;0>1b,0>2b", "--samples", "20000",
                      "--json"], capsys)
    assert rc == EXIT_OK
    payload = json.loads(out)
    assert payload["value"] == pytest.approx(0.25, abs=1e-9)


def test_weight_spec_example(capsys):
    # the closed form for this graph is exactly zero (edge into 0bar)
    rc, out, _ = run(["weight", "--graph", "0,2;0>0b,0>1b", "--samples", "1000",
                      "--seed", "42", "--json"], capsys)
    assert rc == EXIT_OK
    payload = json.loads(out)
    assert payload["value"] == 0.0 and payload["stderr"] == 0.0


def test_weight_bad_encoding(capsys):
    rc, _, err = run(["weight", "--graph", "0;2junk"], capsys)
    assert rc == EXIT_BAD_GRAPH
    assert "error" in err


def test_table(capsys, tmp_path):
    rc, out, _ = run(["table", "--n", "0", "--m", "2", "--central-degree", "2",
                      "--samples", "5000", "--cache", str(tmp_path / "c.txt"),
                      "--json"], capsys)
    assert rc == EXIT_OK
    rows = json.loads(out)["rows"]
    assert len(rows) == 3  # central pairs from {0b, 1b, 2b}
    values = {r["graph"]: r["value"] for r in rows}
    assert values["0,2;0>1b,0>2b"] == pytest.approx(0.25, abs=1e-9)
    assert values["0,2;0>0b,0>1b"] == 0.0


def test_check_exit_code_on_failure(capsys, tmp_path):
    # an unreachable floor plus sigma=0 cannot fail on exact checks, so
    # force a failure through an impossible tolerance on a noisy suite
    rc, out, _ = run(["check", "lemma33", "--samples", "2000", "--seed", "1",
                      "--nsigma", "0.000001", "--floor", "0", "--json",
                      "--cache", str(tmp_path / "c.txt")], capsys)
    assert rc == EXIT_CHECK_FAILED
    assert json.loads(out)["passed"] is False


def test_check_cache_error(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("not a record\n")
    rc, _, err = run(["check", "weights", "--samples", "1000",
                      "--cache", str(bad)], capsys)
    assert rc == EXIT_CACHE
    assert "line 1" in err


def test_check_algebra_passes(capsys):
    rc, out, _ = run(["check", "algebra", "--trials", "10", "--seed", "7", "--json"],
                     capsys)
    assert rc == EXIT_OK
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["suites"][0]["suite"] == "algebra"


def test_check_all_small(capsys, tmp_path):
    rc, out, _ = run(["check", "all", "--trials", "10", "--samples", "50000",
                      "--cache", str(tmp_path / "c.txt"), "--jobs", "2", "--json"],
                     capsys)
    assert rc == EXIT_OK
    payload = json.loads(out)
    assert payload["passed"] is True
    assert [s["suite"] for s in payload["suites"]] == [
        "algebra", "lemma33", "mixed", "theorem34", "weights",
    ]
