"""Command-line behaviour and exit codes."""

from __future__ import annotations

import json

import pytest

from multisoliton.cli import main
from multisoliton.graphs import format_graph, parse_graph


@pytest.fixture
def path_file(tmp_path, path_graph):
    p = tmp_path / "path.graph"
    p.write_text(format_graph(path_graph))
    return str(p)


@pytest.fixture
def c4_file(tmp_path, c4_chestnut):
    p = tmp_path / "c4.graph"
    p.write_text(format_graph(c4_chestnut))
    return str(p)


def write_bursts(tmp_path, *lines):
    p = tmp_path / "bursts.txt"
    p.write_text("\n".join(lines) + "\n")
    return str(p)


def test_validate_ok(path_file, capsys):
    assert main(["validate", path_file]) == 0
    assert "ok" in capsys.readouterr().out


def test_validate_violation(tmp_path, capsys):
    p = tmp_path / "bad.graph"
    p.write_text("edge 1 a 1\nedge a b 1\nedge b 2 1\n")
    assert main(["validate", str(p)]) == 1
    assert "violation[interior-weight]" in capsys.readouterr().out


def test_validate_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.graph"
    p.write_text("edge x x 1\n")
    assert main(["validate", str(p)]) == 2
    assert "self-loop" in capsys.readouterr().err


def test_validate_missing_file(tmp_path):
    with pytest.raises(SystemExit):
        assert main(["validate", str(tmp_path / "absent.graph")])


def test_trails_path(path_file, capsys):
    assert main(["trails", path_file, "(1,2)!", "--perfect-only"]) == 0
    out = capsys.readouterr().out
    assert "trail 1" in out
    assert "soliton 1: 1,a,b,2" in out


def test_trails_requires_limit_without_perfect_only(path_file, capsys):
    assert main(["trails", path_file, "(1,2)!"]) == 2


def test_trails_chase_perfect_only(c4_file, capsys):
    assert main(["trails", c4_file, "(1,1)|1(1,1)!", "--perfect-only"]) == 0
    out = capsys.readouterr().out
    assert out.count("trail ") == 1
    assert "soliton 2: 1,a,b,c,d,a,1" in out


def test_trails_truncation_notice(c4_file, capsys):
    assert main(["trails", c4_file, "(1,1)|1(1,1)!", "--limit", "5"]) == 0
    out = capsys.readouterr().out
    assert out.count("trail ") == 5
    assert "truncated" in out


def test_trails_trace_format(path_file, capsys):
    assert main(["trails", path_file, "(1,2)!", "--perfect-only", "--trace"]) == 0
    out = capsys.readouterr().out
    assert "t=0 pos=(1) flips=" in out
    assert "t=1 pos=(a) flips=1-a" in out


def test_trails_unbound_burst(path_file, capsys):
    assert main(["trails", path_file, "(9,2)!", "--limit", "1"]) == 2


def test_analyze_degree(tmp_path, capsys):
    from multisoliton.families import gen_gg

    g = tmp_path / "gg3.graph"
    g.write_text(format_graph(gen_gg(3)))
    bursts = write_bursts(tmp_path, "(1,2)!")
    assert main(["analyze", str(g), bursts, "--check", "degree"]) == 0
    assert capsys.readouterr().out.strip() == "3"


def test_analyze_strong_verdicts(c4_file, tmp_path, capsys):
    single = write_bursts(tmp_path, "(1,1)!")
    assert main(["analyze", c4_file, single, "--check", "strong"]) == 0
    chase = write_bursts(tmp_path, "(1,1)|1(1,1)!")
    assert main(["analyze", c4_file, chase, "--check", "strong"]) == 1
    assert main(["analyze", c4_file, chase, "--check", "perfect"]) == 0


def test_analyze_json_round_trips(c4_file, tmp_path, capsys):
    from multisoliton.automaton import DeterminismReport

    chase = write_bursts(tmp_path, "(1,1)|1(1,1)!")
    assert main(["analyze", c4_file, chase, "--check", "strong", "--json"]) == 1
    report = DeterminismReport.from_json(capsys.readouterr().out)
    assert not report.strongly_deterministic
    assert report.perfectly_deterministic


def test_automaton_json_and_dot(path_file, tmp_path, capsys):
    bursts = write_bursts(tmp_path, "(1,2)!")
    dot = tmp_path / "auto.dot"
    assert main(["automaton", path_file, bursts, "--json", "--dot", str(dot)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["states"]) == 2
    assert payload["alphabet"] == ["(1,2)!"]
    assert dot.read_text().startswith("digraph {")


def test_classify_json(c4_file, capsys):
    assert main(["classify", c4_file, "--max-burst-length", "1", "--max-gap", "0", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["is_chestnut"] and not payload["is_tree"]
    assert payload["complete"]


def test_gen_gg_round_trips(tmp_path, capsys):
    assert main(["gen", "gg", "2"]) == 0
    text = capsys.readouterr().out
    g = parse_graph(text)
    assert len(g.nodes) == 7


def test_gen_tree_records_seed(tmp_path, capsys):
    out = tmp_path / "tree.graph"
    assert main(["gen", "tree", "6", "--seed", "9", "-o", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("# seed 9")
    parse_graph(text)


def test_gen_chestnut(capsys):
    assert main(["gen", "chestnut", "4", "0:1", "2:1"]) == 0
    g = parse_graph(capsys.readouterr().out)
    assert len(g.nodes) == 6


def test_gen_chestnut_parity_error(capsys):
    assert main(["gen", "chestnut", "4", "0:1", "1:1"]) == 2
    assert "even" in capsys.readouterr().err
