"""Round trips and input conveniences of the parser."""

from __future__ import annotations

import random

import pytest

from selfref.parser import ParseError, parse, parse_formula, parse_term
from selfref.syntax import (
    Add, And, Eq, Exists, Forall, Lt, Mul, Not, Num, One, Or, Var, Zero,
    numeral, render, NUMERAL_EXPLICIT_MAX,
)
from .test_syntax import _random_formula, _random_term


def test_roundtrip_simple():
    for text in ["x=x", "0=0", "x+(1)=0·(x′)", "¬(0=0)",
                 "∀x(∃x′(x<x′))", "x=x∧(x<x′∨(x′=x′))",
                 "prf(x,neg(x))", "Formula(len(x))",
                 "0=0→(0=0↔(1=1))"]:
        assert render(parse_formula(text)) == text


def test_roundtrip_random_trees():
    rng = random.Random(77)
    for _ in range(300):
        phi = _random_formula(rng, 4)
        assert parse_formula(render(phi)) == phi
    for _ in range(300):
        t = _random_term(rng, 4)
        assert parse_term(render(t)) == t


def test_ascii_aliases():
    assert parse_formula("~[0=0]") == Not(Eq(Zero(), Zero()))
    assert parse_formula("Ax(Ex'(x<x'))") == \
        Forall(Var(0), Exists(Var(1), Lt(Var(0), Var(1))))
    assert parse_formula("0=0 & (1=1 | (0<1))") == \
        And(Eq(Zero(), Zero()),
            Or(Eq(One(), One()), Lt(Zero(), One())))
    assert parse_formula("0=0 -> (0=0 <-> (1=1))") is not None
    assert parse_term("x*(1)") == Mul(Var(0), One())


def test_left_fold_shape():
    phi = parse_formula("0=0∧(1=1)∧(0<1)")
    assert phi == And(And(Eq(Zero(), Zero()), Eq(One(), One())),
                      Lt(Zero(), One()))


def test_numeral_chains_parse_and_canonicalize():
    assert parse_term("1+(1+(1))") == numeral(3)
    long = render(numeral(NUMERAL_EXPLICIT_MAX))
    assert parse_term(long) == numeral(NUMERAL_EXPLICIT_MAX)
    # one past the explicit cutoff folds into a lazy numeral
    longer = "1+(" + long + ")"
    out = parse_term(longer)
    assert out == Num(NUMERAL_EXPLICIT_MAX + 1)
    # a hash literal means the same thing
    assert parse_term(f"#{NUMERAL_EXPLICIT_MAX + 1}") == out
    assert parse_term("#7") == numeral(7)


def test_very_long_numeral_string():
    m = 5000
    text = "1+(" * (m - 1) + "1" + ")" * (m - 1)
    assert parse_term(text) == numeral(m)


def test_non_numeral_chains_keep_their_shape():
    t = parse_term("0+(1)+(x)")
    assert t == Add(Add(Zero(), One()), Var(0))
    t2 = parse_term("1+(1+(0))")
    assert t2 == Add(One(), Add(One(), Zero()))


def test_error_positions():
    with pytest.raises(ParseError) as err:
        parse_formula("x=")
    assert "position" in str(err.value)
    with pytest.raises(ParseError):
        parse_formula("x=x∧0=0")
    with pytest.raises(ParseError):
        parse_formula("2=2")
    with pytest.raises(ParseError):
        parse_term("len(x")
    with pytest.raises(ParseError):
        parse_formula("zebra(x)")


def test_parse_auto_detects():
    assert parse("x=x") == Eq(Var(0), Var(0))
    assert parse("x+(1)") == Add(Var(0), One())


def test_not_equal_sugar():
    # accepted on input only; the canonical grammar spells the negation
    assert parse_formula("0≠0") == Not(Eq(Zero(), Zero()))
    assert parse_formula("∀x[x≠x]") == Forall(Var(0), Not(Eq(Var(0), Var(0))))
    assert render(parse_formula("0≠1")) == "¬(0=1)"
