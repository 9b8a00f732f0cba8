"""Front-door behavior: exit codes, report shape, determinism.

Most cases drive main() in-process and read the JSON report from
capsys; one subprocess case checks the real entry point.  Expected
values are frozen from the module-level oracles elsewhere in the
suite (code of x=x, the micro-catalogue bound table, the first few
sentences of the enumeration stream).
"""

import json
import subprocess
import sys

import pytest

from selfref.cli import main


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


# -- basics -------------------------------------------------------------------

def test_parse_echoes_canonical_rendering(capsys):
    code, report = _run(capsys, ["parse", "∀x[x=x]"])
    assert code == 0
    assert report["command"] == "parse"
    assert report["outputs"]["canonical"] == "∀x(x=x)"
    assert report["outputs"]["length"] == 7
    assert report["outputs"]["sentence"] is True
    assert report["outputs"]["free_variables"] == []


def test_parse_rejects_garbage_with_usage_exit(capsys):
    assert main(["parse", "x=+"]) == 2
    assert capsys.readouterr().out == ""  # no report on usage errors


def test_encode_formula_code_is_pinned(capsys):
    code, report = _run(capsys, ["encode", "x=x"])
    assert code == 0
    assert report["outputs"]["kind"] == "formula"
    assert report["outputs"]["code"] == {
        "base24_digits": 3, "decimal": "9929", "hex": "0x26c9"}


def test_encode_accepts_terms(capsys):
    code, report = _run(capsys, ["encode", "1+(1)"])
    assert code == 0
    assert report["outputs"]["kind"] == "term"


def test_decode_roundtrip(capsys):
    code, report = _run(capsys, ["decode", "9929"])
    assert code == 0
    assert report["outputs"] == {
        "compact": "x=x", "decodes": True, "kind": "formula"}
    code, report = _run(capsys, ["decode", "0x26c9"])
    assert code == 0
    assert report["outputs"]["compact"] == "x=x"


def test_decode_non_code_is_verdict_failure(capsys):
    code, report = _run(capsys, ["decode", "8083"])
    assert code == 1
    assert report["verdict_failure"]["decodes"] is False


def test_decode_bad_literal_is_usage_error(capsys):
    assert main(["decode", "ninety"]) == 2
    capsys.readouterr()
    assert main(["decode", "-4"]) == 2


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


# -- experiments --------------------------------------------------------------

def test_prove_not_found_from_synopsis(capsys):
    code, report = _run(capsys, ["prove", "--goal", "0≠0",
                                 "--budget", "1000"])
    assert code == 0
    out = report["outputs"]
    assert out["outcome"] == "not-found"
    assert out["reason"] == "frontier exhausted"
    assert 0 < out["nodes_used"] <= 1000


def test_prove_finds_double_negation(capsys):
    code, report = _run(capsys, ["prove", "--goal", "¬(¬(0=0))",
                                 "--budget", "100"])
    assert code == 0
    out = report["outputs"]
    assert out["outcome"] == "proved"
    assert out["nodes_used"] == 16
    assert len(out["steps"]) == 3
    assert out["steps"][-1].endswith("mp 0 1")


def test_refute_truth_presets(capsys):
    code, report = _run(capsys, ["refute-truth", "--preset", "parity"])
    assert code == 0
    out = report["outputs"]
    assert out["refuted"] is True
    assert out["sentence_truth"] == "TRUE"
    assert out["candidate_at_code"] == "FALSE"
    code, report = _run(capsys,
                        ["refute-truth", "--preset", "everything-true"])
    assert code == 0
    assert report["outputs"]["sentence_truth"] == "FALSE"
    assert report["outputs"]["candidate_at_code"] == "TRUE"


def test_refute_truth_requires_exactly_one_source(capsys):
    assert main(["refute-truth"]) == 2
    capsys.readouterr()
    assert main(["refute-truth", "--preset", "parity",
                 "--candidate", "x=x"]) == 2


def test_dominate_pinned_values(capsys):
    code, report = _run(capsys, ["dominate", "--x", "4"])
    assert code == 0
    assert report["outputs"]["value"] == 17
    assert report["outputs"]["variant"] == "fixed-input"
    assert len(report["outputs"]["catalogue"]) == 3


def test_dominate_undecided_then_decided_with_budget(capsys):
    code, report = _run(capsys, ["dominate", "--x", "9", "--kotlarski"])
    assert code == 0
    assert report["outputs"]["value"] is None
    assert "undecided" in report["outputs"]["note"]
    code, report = _run(capsys, ["dominate", "--x", "9", "--kotlarski",
                                 "--witness-bound", "128"])
    assert code == 0
    assert report["outputs"]["value"] == 82


def test_tb_first_biconditionals(capsys):
    code, report = _run(capsys, ["tb", "--psi", "∃x′′[x′′+(x′′)=x]",
                                 "--count", "3"])
    assert code == 0
    rows = report["outputs"]["biconditionals"]
    assert [r["verdict"] for r in rows] == ["FALSE", "FALSE", "TRUE"]
    assert rows[0]["biconditional"].endswith("↔(0=0)")


def test_selftest_exit_codes_via_stub(capsys, monkeypatch):
    from selfref import cli
    from selfref.acceptance import CriterionResult
    good = CriterionResult(1, "stub", True, "fine", 0.01, None)
    bad = CriterionResult(2, "stub", False, "broken", 0.01, 1.0)
    monkeypatch.setattr(cli, "run_all", lambda: [good])
    assert cli.main(["selftest"]) == 0
    capsys.readouterr()
    monkeypatch.setattr(cli, "run_all", lambda: [good, bad])
    assert cli.main(["selftest"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["verdict_failure"]["failed"] == [2]


# -- report plumbing ----------------------------------------------------------

def test_reports_are_deterministic_modulo_wall_time(capsys):
    argv = ["refute-truth", "--preset", "parity"]
    _, first = _run(capsys, argv)
    _, second = _run(capsys, argv)
    first.pop("wall_time_s")
    second.pop("wall_time_s")
    assert first == second


def test_json_flag_duplicates_stdout(capsys, tmp_path):
    target = tmp_path / "report.json"
    code = main(["encode", "x=x", "--json", str(target)])
    out = capsys.readouterr().out
    assert code == 0
    assert target.read_text(encoding="utf-8") == out


def test_report_keys_are_sorted(capsys):
    _, report = _run(capsys, ["parse", "0=0"])
    assert list(report) == sorted(report)
    assert list(report["outputs"]) == sorted(report["outputs"])
    assert set(report) == {"budgets", "command", "inputs", "outputs",
                           "version", "wall_time_s"}


def test_budget_profile_env_and_flag_precedence(capsys, monkeypatch):
    monkeypatch.setenv("SELFREF_BUDGET_PROFILE",
                       "witness-bound=9,node-budget=1234")
    _, report = _run(capsys, ["parse", "0=0"])
    assert report["budgets"]["witness_bound"] == 9
    assert report["budgets"]["node_budget"] == 1234
    _, report = _run(capsys, ["parse", "0=0", "--witness-bound", "33"])
    assert report["budgets"]["witness_bound"] == 33
    assert report["budgets"]["node_budget"] == 1234


def test_bad_budget_profile_is_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("SELFREF_BUDGET_PROFILE", "bogus=1")
    assert main(["parse", "0=0"]) == 2


def test_entry_point_subprocess():
    done = subprocess.run(
        [sys.executable, "-m", "selfref.cli", "parse", "0=0"],
        capture_output=True, text=True, timeout=60)
    assert done.returncode == 0
    report = json.loads(done.stdout)
    assert report["outputs"]["canonical"] == "0=0"
