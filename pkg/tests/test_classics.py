import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from aperiodic.classics import (
    CFParseError, ContinuedFraction, DepthExceeded, PrecisionExhausted, badness_at,
    badness_profile, convergent_minimum, convergents, enclosure, find_square,
    is_Fc_aperiodic_at_zero, morse_thue_blocks, morse_thue_symbol, morse_thue_window,
)
from aperiodic.profiles import Linear
from aperiodic.words import verify_phi_aperiodic

GOLDEN = ContinuedFraction.parse("1;(1)")


def test_morse_thue_values():
    assert str(morse_thue_window(0, 15)) == "0110100110010110"
    assert str(morse_thue_window(-4, -1)) == "0110"
    assert morse_thue_symbol(5) == 0 and morse_thue_symbol(-1) == 0 and morse_thue_symbol(-3) == 1


def test_morse_thue_blocks_agree_with_digit_sums():
    a, b = morse_thue_blocks(12)
    assert a == str(morse_thue_window(0, 2 ** 12 - 1))
    assert b == "".join("1" if c == "0" else "0" for c in a)


def test_morse_thue_mirror():
    w = morse_thue_window(-64, 63)
    s = str(w)
    # w(-n) = w(n-1): the left half is the reversed right half
    assert s[:64] == s[64:][::-1]


def test_morse_thue_is_overlap_free_prefix():
    w = morse_thue_window(0, 511)
    assert verify_phi_aperiodic(w, Linear()).ok


@pytest.mark.parametrize("n", range(2, 11))
def test_squares_with_power_of_two_halves(n):
    w = morse_thue_window(0, 2 ** (n + 2))
    pos = find_square(w, 2 ** n - 1, offset=0)
    assert pos is not None
    x = str(w)
    half = x[pos:pos + 2 ** n]
    assert x[pos + 2 ** n:pos + 2 ** (n + 1)] == half


def test_cf_parsing():
    assert str(ContinuedFraction.parse("1;(1)")) == "1;(1)"
    cf = ContinuedFraction.parse("0;1,2,3...")
    assert not cf.exact and cf.available() == 4
    assert str(cf) == "0;1,2,3..."
    assert ContinuedFraction.parse("3").terms == (3,)
    for bad in ("", "1;a", "1;(0)", "1;2(3)..."):
        with pytest.raises(CFParseError):
            ContinuedFraction.parse(bad)
    with pytest.raises(DepthExceeded):
        convergents(ContinuedFraction.parse("0;1,2"), 5)


@settings(max_examples=100, deadline=None)
@given(st.integers(-5, 5), st.lists(st.integers(1, 50), min_size=1, max_size=12))
def test_convergents_evaluate_the_fraction(a0, rest):
    cf = ContinuedFraction((a0, *rest))
    p, q = convergents(cf, len(rest) + 1)[-1]
    x = Fraction(rest[-1])
    for a in reversed(rest[:-1]):
        x = a + 1 / x
    x = a0 + 1 / x
    assert Fraction(p, q) == x
    centre, radius = enclosure(cf, len(rest) + 1)
    assert centre == x and radius == 0


def test_enclosure_contains_golden_ratio():
    phi = (1 + 5 ** 0.5) / 2
    for d in range(2, 30):
        c, r = enclosure(GOLDEN, d)
        assert abs(float(c) - phi) <= float(r) + 1e-15


def test_golden_badness():
    b = badness_profile(GOLDEN, 10 ** 5)
    assert b.q == 1
    assert Fraction(3819, 10000) <= b.lo <= b.hi <= Fraction(3820, 10000)
    assert b.value == pytest.approx((3 - math.sqrt(5)) / 2, abs=1e-12)
    v, q = convergent_minimum(GOLDEN, 10 ** 5)
    assert q == 1 and v == pytest.approx(b.value, abs=1e-12)


def test_rotation_verdicts():
    assert is_Fc_aperiodic_at_zero(GOLDEN, Fraction(7, 20), 10 ** 5).ok
    v = is_Fc_aperiodic_at_zero(GOLDEN, Fraction(2, 5), 10)
    assert not v and v.witness_q == 1


def test_fibonacci_denominators_approach_hurwitz():
    fib = [1, 2]
    while fib[-1] < 10 ** 5:
        fib.append(fib[-1] + fib[-2])
    for q in fib:
        if 10 ** 4 <= q <= 10 ** 5:
            lo, hi = badness_at(GOLDEN, q)
            assert abs(float(lo) - 1 / math.sqrt(5)) < 1e-4


def test_partial_quotient_spike():
    cf = ContinuedFraction.parse("0;1,2,3,1000,(1)")
    b = badness_profile(cf, 10 ** 4)
    v, q = convergent_minimum(cf, 10 ** 4)
    assert b.q == q == 10
    assert b.value == pytest.approx(v, rel=1e-9)
    assert b.value < 1e-3


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 9), min_size=1, max_size=4))
def test_badness_minimum_matches_convergent_oracle(period):
    # the minimum of q||q alpha|| is attained at a convergent denominator
    cf = ContinuedFraction((0,), tuple(period))
    b = badness_profile(cf, 2000)
    v, _ = convergent_minimum(cf, 2000)
    assert b.value == pytest.approx(v, rel=1e-9, abs=1e-12)


def test_truncated_expansion_runs_out():
    cf = ContinuedFraction.parse("0;1,1,1,1...")
    with pytest.raises(PrecisionExhausted):
        badness_profile(cf, 1000)
