import json

import pytest

from twomaxsat.cli import main

from conftest import SMALL_CNF, SMALL_DNF


@pytest.fixture
def files(tmp_path):
    (tmp_path / "small_cnf.cnf").write_text(SMALL_CNF)
    (tmp_path / "small_dnf.dnf").write_text(SMALL_DNF)
    (tmp_path / "empty.cnf").write_text("p cnf 2 1\n0\n")
    return tmp_path


def test_solve_cnf(files, capsys):
    assert main(["solve", "--format", "cnf", str(files / "small_cnf.cnf")]) == 0
    out = capsys.readouterr().out
    assert "3 of 3 clauses" in out and "assignment: 1 1 1" in out


def test_solve_dnf_explicit_order(files, capsys):
    assert main(["solve", "--format", "dnf", str(files / "small_dnf.dnf"),
                 "--order", "explicit:2,3,1,4,5,6", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["satisfied_ids"] == [1, 3, 5]
    assert report["instance"] == {"vars": 6, "clauses": 6, "format": "dnf"}
    assert "elapsed" not in report["stats"]


def test_solve_json_is_deterministic(files, capsys):
    main(["solve", str(files / "small_cnf.cnf"), "--json"])
    first = capsys.readouterr().out
    main(["solve", str(files / "small_cnf.cnf"), "--json"])
    assert capsys.readouterr().out == first


def test_parse_error_exit_1(files, capsys):
    assert main(["solve", str(files / "empty.cnf")]) == 1
    assert "empty clause" in capsys.readouterr().err


def test_missing_file_exit_1(files):
    assert main(["solve", str(files / "nope.cnf")]) == 1


def test_cap_exit_3(files, capsys):
    assert main(["solve", str(files / "small_cnf.cnf"), "--work-budget", "1"]) == 3


def test_oracle_and_reduce(files, capsys):
    assert main(["oracle", str(files / "small_cnf.cnf")]) == 0
    assert capsys.readouterr().out.startswith("3 of 3 clauses")
    assert main(["reduce", str(files / "small_cnf.cnf")]) == 0
    assert "p dnf 6 6\n1 4 0\n2 -4 0" in capsys.readouterr().out
    assert main(["solve", "--algorithm", "oracle", "--format", "dnf", str(files / "small_dnf.dnf"), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["best_size"] == 3


def test_trace_file(files, tmp_path):
    trace = tmp_path / "trace.jsonl"
    main(["solve", "--format", "dnf", str(files / "small_dnf.dnf"), "--order", "explicit:2,3,1,4,5,6",
          "--prune", "count", "--trace", str(trace)])
    events = [json.loads(line) for line in trace.read_text().splitlines()]
    assert events and all("case" in e for e in events)


def test_gen_is_reproducible(capsys):
    main(["gen", "--vars", "3", "--clauses", "3", "--seed", "1"])
    first = capsys.readouterr().out
    main(["gen", "--vars", "3", "--clauses", "3", "--seed", "1"])
    assert capsys.readouterr().out == first
    assert "p cnf 3 3" in first


def test_diff(capsys, tmp_path):
    assert main(["diff", "--vars", "4", "--clauses", "5", "--count", "20", "--seed", "7",
                 "--out", str(tmp_path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["instances_run"] == 20
    assert report["agreements"] + len(report["shortfalls"]) == 20


def test_diff_empty(capsys):
    assert main(["diff", "--count", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["instances_run"] == 0


def test_diff_replay(tmp_path, capsys):
    from twomaxsat.oracle import fixture_text
    from twomaxsat.formula import parse_cnf
    path = tmp_path / "fx.cnf"
    path.write_text(fixture_text(parse_cnf(SMALL_CNF), 3, 3))
    assert main(["diff", "--replay", str(path)]) == 0
    assert json.loads(capsys.readouterr().out)["replay"][str(path)]["reproduced"]


def test_bench_single_point(capsys):
    assert main(["bench", "--clauses", "4", "--vars", "3", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["rows"]) == 1 and "median_seconds" not in data["rows"][0]


def test_dot(files, capsys):
    for what in ("trie", "pstar", "layered"):
        assert main(["dot", "--format", "dnf", str(files / "small_dnf.dnf"), "--what", what,
                     "--order", "explicit:2,3,1,4,5,6"]) == 0
        assert capsys.readouterr().out.startswith("digraph")


def test_bad_order_rejected(files):
    with pytest.raises(SystemExit):
        main(["solve", str(files / "small_cnf.cnf"), "--order", "explicit:a,b"])
