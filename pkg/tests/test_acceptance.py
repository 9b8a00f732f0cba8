"""Release criteria, one test per criterion.

Each test prints the one-line verdict before asserting so a full run
reads as a checklist (pytest -v -s shows the lines; plain -v still
gives one pass/fail row per criterion).  Wall-clock caps are enforced
inside the criterion functions themselves.
"""

import pytest

from selfref.acceptance import (
    ALL_CRITERIA, criterion_01, criterion_02, criterion_03, criterion_04,
    criterion_05, criterion_06, criterion_07, criterion_08, criterion_09,
    criterion_10, criterion_11, criterion_12, criterion_13, criterion_14,
)


def _require(result):
    print(result.line())
    assert result.ok, result.line()


def test_criterion_01_numeral_length_law():
    _require(criterion_01())


def test_criterion_02_enumeration_recount():
    _require(criterion_02())


def test_criterion_03_coding_roundtrip():
    _require(criterion_03())


def test_criterion_04_tautology_step():
    _require(criterion_04())


def test_criterion_05_fixed_point_corpus():
    _require(criterion_05())


def test_criterion_06_truth_definition_refutation():
    _require(criterion_06())


def test_criterion_07_berry_length_bound():
    _require(criterion_07())


def test_criterion_08_micro_berry_experiment():
    _require(criterion_08())


def test_criterion_09_pigeonhole():
    _require(criterion_09())


def test_criterion_10_proof_system():
    _require(criterion_10())


def test_criterion_11_rosser_shape_and_searches():
    _require(criterion_11())


def test_criterion_12_refutable_shortcut():
    _require(criterion_12())


def test_criterion_13_domination():
    _require(criterion_13())


def test_criterion_14_substitution_lemma():
    _require(criterion_14())


def test_criteria_are_complete_and_ordered():
    numbers = [fn().number for fn in (criterion_01, criterion_02)]
    assert numbers == [1, 2]
    assert len(ALL_CRITERIA) == 14
    assert [fn.__name__ for fn in ALL_CRITERIA] == [
        f"criterion_{i:02d}" for i in range(1, 15)]
