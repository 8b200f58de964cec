import json

import pytest

from pcgroups.cli import main
from pcgroups.fileformat import serialize_pcp
from pcgroups.families import builtin_family
from pcgroups.runner import (RunOptions, load_corpus, run_suite,
                             write_builtin_corpus)

MINI = ("heis(3)", "elab(3,2)", "dihedral(16)")


@pytest.fixture()
def mini_corpus_dir(tmp_path):
    d = tmp_path / "corpus"
    d.mkdir()
    (d / "heis3.pcg").write_text(serialize_pcp(builtin_family("heis", 3)))
    (d / "elab32.pcg").write_text(serialize_pcp(builtin_family("elab", 3, 2)))
    (d / "d16.pcg").write_text(serialize_pcp(builtin_family("dihedral", 16)))
    return d


def test_load_corpus_records_errors(mini_corpus_dir):
    (mini_corpus_dir / "broken.pcg").write_text("pcgroup v1\np 4\nn 1\n")
    entries = load_corpus(mini_corpus_dir)
    assert len(entries) == 4
    broken = [e for e in entries if e.error]
    assert len(broken) == 1 and broken[0].id == "broken"
    assert all(e.presentation is not None for e in entries if not e.error)


def test_run_suite_and_totals(mini_corpus_dir):
    entries = load_corpus(mini_corpus_dir)
    report = run_suite(entries, RunOptions(r_values=(2,), seed=3))
    totals = report.totals()
    assert totals["entries"] == 3
    assert totals["load_errors"] == 0
    assert totals["theorem_failures"] == 0
    assert totals["lemma_failures"] == 0
    assert report.ok()


def test_run_suite_empty_corpus(tmp_path):
    d = tmp_path / "empty"
    d.mkdir()
    report = run_suite(load_corpus(d), RunOptions(r_values=(2,)))
    assert report.entries == [] and report.ok()


def test_run_suite_continues_past_bad_entry(mini_corpus_dir):
    (mini_corpus_dir / "broken.pcg").write_text("pcgroup v1\np 3\n")
    entries = load_corpus(mini_corpus_dir)
    report = run_suite(entries, RunOptions(r_values=(2,), seed=3))
    totals = report.totals()
    assert totals["load_errors"] == 1
    assert totals["theorem_verified"] >= 3
    assert not report.ok()


def test_report_json_deterministic(mini_corpus_dir):
    entries = load_corpus(mini_corpus_dir)
    opts = RunOptions(r_values=(2, 3), seed=11)
    one = run_suite(entries, opts).to_json()
    two = run_suite(load_corpus(mini_corpus_dir), opts).to_json()
    assert one == two
    payload = json.loads(one)
    assert payload["schema"] == "report v1"
    assert payload["seed"] == 11


def test_run_suite_parallel_matches_serial(mini_corpus_dir):
    entries = load_corpus(mini_corpus_dir)
    serial = run_suite(entries, RunOptions(r_values=(2,), seed=5)).to_json()
    parallel = run_suite(entries, RunOptions(r_values=(2,), seed=5,
                                             jobs=3)).to_json()
    assert serial == parallel


def test_write_builtin_corpus_loads_back(tmp_path):
    paths = write_builtin_corpus(tmp_path / "builtin")
    assert len(paths) == 19
    entries = load_corpus(tmp_path / "builtin")
    assert all(e.error is None for e in entries)


# -- CLI ---------------------------------------------------------------------


def test_cli_validate_and_series(mini_corpus_dir, capsys):
    assert main(["validate", str(mini_corpus_dir / "heis3.pcg")]) == 0
    out = capsys.readouterr().out
    assert "consistent: True" in out
    assert main(["series", str(mini_corpus_dir / "heis3.pcg")]) == 0
    out = capsys.readouterr().out
    assert "gamma_2: order 3" in out


def test_cli_validate_inconsistent(tmp_path, capsys):
    path = tmp_path / "bad.pcg"
    path.write_text("pcgroup v1\np 2\nn 4\ncomm 2 1 : 3^1\ncomm 3 1 : 4^1\n")
    assert main(["validate", str(path)]) == 1
    assert "consistent: False" in capsys.readouterr().out


def test_cli_load_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.pcg"
    path.write_text("pcgroup v1\np 4\nn 1\n")
    assert main(["validate", str(path)]) == 2
    assert main(["series", str(tmp_path / "missing.pcg")]) == 2


def test_cli_values_and_witness(mini_corpus_dir, capsys):
    assert main(["values", str(mini_corpus_dir / "heis3.pcg"),
                 "--word", "gamma2"]) == 0
    out = capsys.readouterr().out
    assert "[0,0,1]" in out and "3 values" in out
    assert main(["values", str(mini_corpus_dir / "heis3.pcg"),
                 "--word", "[[1,2],[3,4]]"]) == 0
    capsys.readouterr()
    assert main(["witness", str(mini_corpus_dir / "d16.pcg"), "-r", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["equality_holds"] is True


def test_cli_verify(mini_corpus_dir, capsys):
    assert main(["verify", str(mini_corpus_dir / "heis3.pcg"), "-r", "2",
                 "--lemma", "power-bracket"]) == 0
    out = capsys.readouterr().out
    assert "power-bracket: pass" in out


def test_cli_corpus_run_writes_report(mini_corpus_dir, tmp_path, capsys):
    report_path = tmp_path / "report.json"
    code = main(["corpus", "run", str(mini_corpus_dir), "-r", "2..3",
                 "--seed", "4", "--report", str(report_path)])
    assert code == 0
    payload = json.loads(report_path.read_text())
    assert payload["totals"]["theorem_failures"] == 0
    assert payload["r_values"] == [2, 3]


def test_cli_corpus_run_missing_dir(tmp_path, capsys):
    assert main(["corpus", "run", str(tmp_path / "nope"), "-r", "2"]) == 2
