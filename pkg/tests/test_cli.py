import json

import pytest
from click.testing import CliRunner

from attractors.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def fig_files(tmp_path):
    text = tmp_path / "fig1.txt"
    text.write_bytes(b"BBBABA")
    good = tmp_path / "fig1a.gamma"
    good.write_text("2\n5\n6\n")
    pair = tmp_path / "fig1b.gamma"
    pair.write_text("3\n4\n")
    bad = tmp_path / "bad.gamma"
    bad.write_text("2\n5\n")
    return text, good, pair, bad


def test_verify_valid(runner, fig_files):
    text, good, pair, bad = fig_files
    for gam in (good, pair):
        res = runner.invoke(main, ["verify", str(text), str(gam), "6"])
        assert res.exit_code == 0, res.output
        assert "# valid" in res.output


def test_verify_invalid_reports_witness(runner, fig_files):
    text, _, _, bad = fig_files
    res = runner.invoke(main, ["verify", str(text), str(bad), "6"])
    assert res.exit_code == 1
    assert "witness = A" in res.output


def test_verify_json_output(runner, fig_files):
    text, good, _, _ = fig_files
    res = runner.invoke(main, ["verify", str(text), str(good), "6", "--format", "json"])
    assert res.exit_code == 0
    record = json.loads(res.output)
    assert set(record) == {"n", "sigma", "k", "universe", "candidates",
                           "graph_edges", "size", "positions", "ms"}
    assert record["n"] == 6 and record["positions"] == [2, 5, 6]


def test_verify_usage_errors(runner, fig_files):
    text, good, _, _ = fig_files
    assert runner.invoke(main, ["verify", str(text), str(good), "0"]).exit_code == 2
    assert runner.invoke(main, ["verify", str(text), str(good), "7"]).exit_code == 2
    assert runner.invoke(main, ["verify", "/nonexistent", str(good), "2"]).exit_code == 2


def test_minimum_reference(runner, fig_files, tmp_path):
    text, *_ = fig_files
    res = runner.invoke(main, ["minimum", str(text), "6", "--format", "json"])
    assert res.exit_code == 0
    record = json.loads(res.output)
    assert record["size"] == 2 and len(record["positions"]) == 2
    assert record["universe"] == 8


def test_solver_roundtrip_through_verify(runner, fig_files, tmp_path):
    text, *_ = fig_files
    for cmd in ("minimum", "minimal", "greedy"):
        res = runner.invoke(main, [cmd, str(text), "6"])
        assert res.exit_code == 0, res.output
        out = tmp_path / f"{cmd}.gamma"
        out.write_text(res.output)  # '#' summary lines are ignored on re-read
        check = runner.invoke(main, ["verify", str(text), str(out), "6"])
        assert check.exit_code == 0, check.output


def test_sharp2_roundtrip(runner, tmp_path):
    text = tmp_path / "t.txt"
    text.write_bytes(b"ABCDEABCDE")
    res = runner.invoke(main, ["sharp2", str(text)])
    assert res.exit_code == 0, res.output
    out = tmp_path / "sharp.gamma"
    out.write_text(res.output)
    check = runner.invoke(main, ["verify", str(text), str(out), "2", "--sharp"])
    assert check.exit_code == 0, check.output


def test_determinism(runner, fig_files):
    text, *_ = fig_files
    a = runner.invoke(main, ["greedy", str(text), "4"])
    b = runner.invoke(main, ["greedy", str(text), "4"])
    pos = lambda out: [l for l in out.splitlines() if not l.startswith("#")]
    assert pos(a.output) == pos(b.output)


def test_minimal_check(runner, fig_files):
    text, good, _, bad = fig_files
    assert runner.invoke(main, ["minimal-check", str(text), str(good), "6"]).exit_code == 0
    res = runner.invoke(main, ["minimal-check", str(text), str(bad), "6"])
    assert res.exit_code == 1
    assert "not_attractor" in res.output


def test_greedy_unary(runner, tmp_path):
    text = tmp_path / "u.txt"
    text.write_bytes(b"AAAAAA")
    res = runner.invoke(main, ["greedy", str(text), "3", "--format", "json"])
    assert json.loads(res.output)["size"] == 1


def test_stats_unary(runner, tmp_path):
    text = tmp_path / "u.txt"
    text.write_bytes(b"AAAAA")
    res = runner.invoke(main, ["stats", str(text), "2", "--format", "json"])
    assert res.exit_code == 0
    assert json.loads(res.output)["candidates"] == 3


def test_occurrences(runner, fig_files):
    text, good, _, _ = fig_files
    res = runner.invoke(main, ["occurrences", str(text), str(good), "4", "5", "--format", "json"])
    assert res.exit_code == 0
    record = json.loads(res.output)
    # occurrences of "AB" straddling {2,5,6}: position 4 only
    assert record["positions"] == [4]


def test_budget_exit_code(runner, tmp_path):
    text = tmp_path / "t.txt"
    text.write_bytes(b"ABABBABBAABABA")
    res = runner.invoke(main, ["minimum", str(text), "5", "--budget", "2"])
    assert res.exit_code == 3
    assert "instance too large" in res.output


def test_integers_input(runner, tmp_path):
    text = tmp_path / "t.ints"
    text.write_text("300\n300\n7\n300\n")
    res = runner.invoke(main, ["greedy", str(text), "2", "--integers", "--format", "json"])
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["sigma"] == 2


def test_gadget_command(runner, tmp_path):
    inst = tmp_path / "cover.sc"
    inst.write_text("3 2 3\n1 2\n2 3\n")
    res = runner.invoke(main, ["gadget", str(inst), "--chosen", "1,2"])
    assert res.exit_code == 0, res.output
    gadget_text = tmp_path / "cover.gadget"
    legend = tmp_path / "cover.gadget.legend"
    assert gadget_text.exists() and legend.exists()
    # round trip: the printed attractor verifies sharp-valid on the gadget
    gam = tmp_path / "g.gamma"
    gam.write_text("\n".join(l for l in res.output.splitlines() if not l.startswith("#")))
    check = runner.invoke(main, ["verify", str(gadget_text), str(gam), "3",
                                 "--sharp", "--integers"])
    assert check.exit_code == 0, check.output
