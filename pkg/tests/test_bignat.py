"""Run-form arithmetic must agree with plain integer arithmetic."""

from __future__ import annotations

import random

import pytest

from selfref.bignat import BASE, BigNat, BigNatError


def _random_runform(rng: random.Random) -> tuple[BigNat, int]:
    """A run-form value together with its exact integer meaning."""
    runs = []
    for _ in range(rng.randint(1, 5)):
        plen = rng.randint(1, 4)
        pattern = tuple(rng.randrange(BASE) for _ in range(plen))
        runs.append((pattern, rng.randint(1, 40)))
    value = 0
    for pattern, count in runs:
        for _ in range(count):
            for d in pattern:
                value = value * BASE + d
    return BigNat.from_runs(runs), value


def test_roundtrip_int():
    for n in [0, 1, 23, 24, 25, 24**5, 10**30, 7**40]:
        assert BigNat.from_int(n).to_int() == n


def test_from_runs_matches_direct_value():
    rng = random.Random(11)
    for _ in range(200):
        big, value = _random_runform(rng)
        assert big.to_int() == value
        assert big == BigNat.from_int(value)


def test_power24():
    for e in [0, 1, 2, 7, 100]:
        assert BigNat.power24(e).to_int() == BASE**e
    huge = BigNat.power24(10**40)
    assert huge.digits24 == 10**40 + 1
    assert huge.mod_int(23) == 1


def test_add_sub_against_ints():
    rng = random.Random(5)
    for _ in range(150):
        a_big, a = _random_runform(rng)
        b_big, b = _random_runform(rng)
        assert (a_big + b_big).to_int() == a + b
        hi, lo = (a_big, b_big) if a >= b else (b_big, a_big)
        assert hi.sub(lo).to_int() == abs(a - b)


def test_sub_negative_raises():
    with pytest.raises(BigNatError):
        BigNat.from_int(3).sub(BigNat.from_int(5))


def test_mul_variants():
    rng = random.Random(7)
    for _ in range(100):
        a_big, a = _random_runform(rng)
        m = rng.randint(0, 10**6)
        assert (a_big * BigNat.from_int(m)).to_int() == a * m
        k = rng.randint(0, 50)
        assert a_big.shift24(k).to_int() == a * BASE**k
        assert (a_big * BigNat.power24(k)).to_int() == a * BASE**k


def test_divmod_and_mod():
    rng = random.Random(13)
    for _ in range(150):
        a_big, a = _random_runform(rng)
        m = rng.randint(1, 10**6)
        q, r = a_big.divmod_int(m)
        assert (q.to_int(), r) == divmod(a, m)
        assert a_big.mod_int(m) == a % m


def test_compare():
    rng = random.Random(17)
    vals = [_random_runform(rng) for _ in range(60)]
    for a_big, a in vals:
        for b_big, b in vals[:20]:
            assert (a_big < b_big) == (a < b)
            assert (a_big == b_big) == (a == b)
            assert (a_big >= b_big) == (a >= b)


def test_huge_structured_identities():
    # values this large never materialize, so check algebraic laws instead
    c = 10**50 + 7
    w = BigNat.power24(c - 1)
    u = BigNat.from_runs([((2, 3, 14), c - 1)])
    v = BigNat.from_runs([((15,), c - 1)])
    # u spelled digitwise equals 1238 * (24**(3(c-1)) - 1) / (24**3 - 1)
    assert u * 13823 == BigNat.from_runs([((2, 3, 14), c - 1), ((0, 0, 0), 1)]).sub(u)
    # v * 23 == 15 * (w - 1)
    left = v * 23
    right = BigNat.from_runs([((23,), c - 1)]) * 15
    assert left == right
    # n = u*24*w + 2*w + v  joins the three digit regions exactly
    n = (u * 24) * w + (w * 2) + v
    direct = BigNat.from_runs([((2, 3, 14), c - 1), ((2,), 1), ((15,), c - 1)])
    assert n == direct
    # parity comes from the last digit only (24 is even)
    assert n.mod_int(2) == 15 % 2
    half, rem = direct.divmod_int(2)
    assert rem == 1
    assert half * 2 + 1 == direct


def test_small_numeral_segment_identity():
    # same identity as above but small enough to verify against ints
    for c in range(2, 40):
        w = BASE ** (c - 1)
        u = sum(1238 * BASE ** (3 * i) for i in range(c - 1))
        v = sum(15 * BASE**i for i in range(c - 1))
        n = u * 24 * w + 2 * w + v
        direct = BigNat.from_runs([((2, 3, 14), c - 1), ((2,), 1), ((15,), c - 1)])
        assert direct.to_int() == n


def _random_big_runform(rng: random.Random) -> tuple[BigNat, int]:
    """Like _random_runform but too long to collapse into a plain int."""
    runs = []
    for _ in range(rng.randint(1, 4)):
        plen = rng.randint(1, 3)
        pattern = tuple(rng.randrange(BASE) for _ in range(plen))
        runs.append((pattern, rng.randint(600, 4000)))
    big = BigNat.from_runs(runs)
    return big, big.to_int()


def test_engine_fuzz_on_genuine_runforms():
    # values here exceed the int-collapse threshold, so every operation
    # goes through the run-length streaming path
    rng = random.Random(101)
    for _ in range(40):
        a_big, a = _random_big_runform(rng)
        b_big, b = _random_big_runform(rng)
        assert a_big._runs is not None or a_big.to_int() == a
        assert (a_big + b_big).to_int() == a + b
        hi, lo = (a_big, b_big) if a >= b else (b_big, a_big)
        assert hi.sub(lo).to_int() == abs(a - b)
        m = rng.randint(1, 13822)
        assert (a_big * BigNat.from_int(m)).to_int() == a * m
        d = rng.randint(1, 10**6)
        q, r = a_big.divmod_int(d)
        assert (q.to_int(), r) == divmod(a, d)
        assert a_big.mod_int(d) == a % d
        assert (a_big < b_big) == (a < b)
        assert (a_big == b_big) == (a == b)


def test_engine_fuzz_boundary_alignment():
    # runs of equal total length with different boundary structure
    rng = random.Random(202)
    for _ in range(30):
        plen = rng.randint(1, 3)
        count = rng.randint(2000, 5000)
        pattern = tuple(rng.randrange(BASE) for _ in range(plen))
        a_big = BigNat.from_runs([(pattern, count)])
        b_big = BigNat.from_runs([(pattern * 2, count // 2),
                                  (pattern, count % 2)])
        assert a_big == b_big
        assert (a_big + 1).sub(1) == b_big
        assert a_big.sub(b_big) == 0


def test_json_roundtrip():
    rng = random.Random(23)
    for _ in range(30):
        a_big, a = _random_runform(rng)
        again = BigNat.from_json(a_big.to_json())
        assert again == a_big
    huge = BigNat.from_runs([((1, 0, 5), 10**30)])
    assert BigNat.from_json(huge.to_json()) == huge


def test_unsupported_product_raises():
    a = BigNat.from_runs([((1, 2), 10**30)])
    b = BigNat.from_runs([((3, 4), 10**30)])
    with pytest.raises(BigNatError):
        _ = a * b
