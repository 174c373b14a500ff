import json

import pytest

from matchgame.cli import canonical_json, main

FIVE_EDGELIST = """5 5
1 2 2
2 3 1
3 4 1
4 5 1
1 5 2
"""

FOUR_CYCLE_JSON = canonical_json(
    {
        "nodes": ["a", "b", "c", "d"],
        "edges": [
            {"u": 0, "v": 1, "w": "1"},
            {"u": 1, "v": 2, "w": "1"},
            {"u": 2, "v": 3, "w": "1"},
            {"u": 0, "v": 3, "w": "1"},
        ],
    }
)


@pytest.fixture
def five_file(tmp_path):
    p = tmp_path / "five.txt"
    p.write_text(FIVE_EDGELIST)
    return str(p)


@pytest.fixture
def cycle_file(tmp_path):
    p = tmp_path / "cycle.json"
    p.write_text(FOUR_CYCLE_JSON)
    return str(p)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_solve_compact_json(capsys, five_file):
    code, out = _run(capsys, ["solve", "--method", "compact", five_file])
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "solve"
    assert report["result"]["allocation"] == {
        "1": "7/5",
        "2": "2/5",
        "3": "2/5",
        "4": "2/5",
        "5": "2/5",
    }
    assert report["result"]["epsilons"][0] == "-2/5"
    assert report["result"]["method"] == "compact"
    assert len(report["input_digest"]) == 64
    assert canonical_json(report) == out.strip()


def test_solve_with_oracle_check(capsys, five_file):
    code, out = _run(capsys, ["solve", "--method", "compact", "--check", five_file])
    assert code == 0
    assert json.loads(out)["checks_passed"] == ["oracle-match"]


def test_solve_auto_on_json_input(capsys, cycle_file):
    code, out = _run(capsys, ["solve", cycle_file])
    assert code == 0
    report = json.loads(out)
    assert report["result"]["allocation"] == {k: "1/2" for k in "abcd"}
    assert report["result"]["method"] == "nonempty-core"


def test_input_format_override(capsys, tmp_path):
    # a file whose name suggests nothing; force edgelist parsing
    p = tmp_path / "data"
    p.write_text("2 1\n1 2 3\n")
    code, out = _run(capsys, ["--input-format", "edgelist", "solve", str(p)])
    assert code == 0
    assert json.loads(out)["result"]["allocation"] == {"1": "3/2", "2": "3/2"}


def test_text_format(capsys, five_file):
    code, out = _run(capsys, ["--format", "text", "solve", five_file])
    assert code == 0
    assert "allocation:" in out and "7/5" in out


def test_leastcore_command(capsys, five_file):
    code, out = _run(capsys, ["leastcore", five_file])
    assert code == 0
    report = json.loads(out)
    assert report["result"]["epsilon1"] == "-2/5"
    assert report["result"]["core_empty"] is True


def test_decompose_command(capsys, five_file):
    code, out = _run(capsys, ["decompose", five_file])
    assert code == 0
    result = json.loads(out)["result"]
    assert result["representatives"] == ["1"]
    assert result["m_star"] == [["2", "3"], ["4", "5"]]
    assert result["e_plus"] == []
    assert len(result["e_star"]) == 5
    assert sorted(result["x_star"]) == list("12345")


def test_decompose_nonempty_core_exits_4(capsys, cycle_file):
    code, _ = _run(capsys, ["decompose", cycle_file])
    assert code == 4


def test_oracle_command(capsys, five_file):
    code, out = _run(capsys, ["oracle", five_file])
    assert code == 0
    result = json.loads(out)["result"]
    assert result["method"] == "bruteforce"
    assert result["theta_head"][0] == "-2/5"
    assert len(result["theta_head"]) == 20


def test_missing_file_exits_1(capsys, tmp_path):
    code = main(["solve", str(tmp_path / "nope.txt")])
    assert code == 1


def test_malformed_input_exits_1(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("not a game\n")
    code = main(["solve", str(p)])
    assert code == 1


def test_dump_lp_logs_to_stderr(capsys, five_file):
    from matchgame import lp

    try:
        code = main(["--dump-lp", "leastcore", five_file])
        err = capsys.readouterr().err
        assert code == 0
        assert "[lp 1]" in err
    finally:
        lp.dump_hook = None


def test_byte_identical_reruns(capsys, five_file):
    _, first = _run(capsys, ["solve", "--method", "compact", five_file])
    _, second = _run(capsys, ["solve", "--method", "compact", five_file])
    a, b = json.loads(first), json.loads(second)
    del a["timing_ms"], b["timing_ms"]
    assert canonical_json(a) == canonical_json(b)
