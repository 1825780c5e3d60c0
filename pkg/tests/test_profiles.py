import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from aperiodic.profiles import (
    BoundedProfile, ExponentialBase, Linear, NoTailBound, PowerOfTwo, ProfileParseError,
    RightInverse, Table, Thresholded, dominance_start, floor_eval, growth_threshold,
    increment_series, iroot, parse_profile, power_bounds, power_lt, right_inverse,
)


def brute_ell(profile, s, limit=10_000):
    for j in range(limit):
        if profile.floor(j) >= s:
            return j
    return None


@pytest.mark.parametrize("profile,l,expected", [
    (ExponentialBase(2, Fraction(1, 2)), 4, 4),
    (ExponentialBase(3, Fraction(1, 2)), 3, 5),
    (Thresholded(ExponentialBase(2, Fraction(1, 2)), 2), 2, 0),
    (Linear(), 17, 17),
    (PowerOfTwo(), 10, 1024),
    (Table((0, 0, 2, 9)), 7, 9),
    (Table((0, 1), Fraction(1, 2)), 4, 2),
])
def test_floor_values(profile, l, expected):
    assert floor_eval(profile, l) == expected


def test_exponential_floor_is_exact_near_perfect_powers():
    # 4**(l/2) = 2**l exactly, so no rounding slack is allowed
    p = ExponentialBase(4, Fraction(1, 2))
    assert [p.floor(l) for l in range(12)] == [2 ** l for l in range(12)]
    # and against a high precision float for an irrational base
    import mpmath
    q = ExponentialBase(5, Fraction(3, 7))
    with mpmath.workdps(80):
        for l in range(0, 200, 7):
            assert q.floor(l) == int(mpmath.floor(mpmath.mpf(5) ** (mpmath.mpf(3) / 7 * l)))


def test_iroot_and_power_bounds():
    assert iroot(10 ** 30 + 5, 3) == 10 ** 10
    lo, hi = power_bounds(2, Fraction(1, 2))
    assert lo < Fraction(141421356237309504880, 10 ** 20) < hi
    assert hi - lo < Fraction(1, 2 ** 60)
    assert power_lt(2, Fraction(1, 2), Fraction(3, 2))
    assert not power_lt(4, Fraction(1, 2), 2)


@pytest.mark.parametrize("profile,s,expected", [
    (Linear(), 7, 7),
    (PowerOfTwo(), 5, 3),
    (Table((0, 0, 2, 9), 1), 3, 3),
    (Linear(), 0, 0),
])
def test_right_inverse_values(profile, s, expected):
    assert right_inverse(profile, s) == expected


def test_right_inverse_bounded():
    t = Table((0, 1, 3))
    assert right_inverse(t, 3) == 2
    with pytest.raises(BoundedProfile):
        right_inverse(t, 4)
    ell = RightInverse(t)
    assert ell(4) is None
    with pytest.raises(BoundedProfile):
        ell.strict(4)


tables = st.builds(
    lambda inc, step: Table(tuple(_cumsum(inc)), step),
    st.lists(st.integers(0, 5), min_size=1, max_size=12),
    st.fractions(Fraction(1, 8), 4, max_denominator=8),
)


def _cumsum(xs):
    out, t = [], 0
    for x in xs:
        t += x
        out.append(t)
    return out


@settings(max_examples=200, deadline=None)
@given(tables, st.integers(1, 60), st.integers(0, 80))
def test_right_inverse_laws(profile, s, l):
    ell = right_inverse(profile, s)
    assert ell == brute_ell(profile, s)
    assert profile.floor(ell) >= s
    assert (l < ell) == (profile.floor(l) < s)
    assert (l >= ell) == (profile.floor(l) >= s)


@pytest.mark.parametrize("text", [
    "linear", "pow2", "exp:k=4,delta=3/10", "thresh:l0=5;exp:k=2,delta=1/2",
    "table:0,0,2,9", "table:0,1/2,3;step=3/2", "thresh:l0=2;thresh:l0=4;linear",
])
def test_parse_round_trip(text):
    p = parse_profile(text)
    assert parse_profile(p.to_text()) == p
    assert p.to_text() == text


@pytest.mark.parametrize("text,pos", [
    ("lin", 0), ("exp:k=4", 4), ("exp:k=4,delta=x", 14), ("table:", 6),
    ("table:3,1", 6), ("thresh:l0=a;linear", 10),
])
def test_parse_errors_are_positioned(text, pos):
    with pytest.raises(ProfileParseError) as info:
        parse_profile(text)
    assert info.value.position == pos


@given(st.integers(2, 9), st.fractions(Fraction(1, 10), Fraction(9, 10), max_denominator=12))
@settings(max_examples=40, deadline=None)
def test_exponential_text_round_trip(k, d):
    p = ExponentialBase(k, d)
    assert parse_profile(p.to_text()) == p


# ---------------------------------------------------------------------------
# weighted increment series, compared with direct summation

def direct_series(profile, c, start=1, n=400):
    import mpmath
    with mpmath.workdps(50):
        cc = mpmath.mpf(c.numerator) / c.denominator
        return sum(mpmath.mpf(profile.floor(l) - profile.floor(l - 1)) / cc ** l
                   for l in range(start, n))


@pytest.mark.parametrize("profile,c", [
    (Linear(), Fraction(2)),
    (PowerOfTwo(), Fraction(3)),
    (Table((0, 0, 2, 9), Fraction(3, 2)), Fraction(5, 2)),
    (ExponentialBase(4, Fraction(1, 2)), Fraction(3)),
    (ExponentialBase(3, Fraction(1, 2)), Fraction(5, 2)),
    (ExponentialBase(4, Fraction(3, 10)), Fraction(108519, 39304)),
    (Thresholded(ExponentialBase(5, Fraction(1, 3)), 3), Fraction(4)),
])
def test_increment_series_encloses_direct_sum(profile, c):
    b = increment_series(profile, c)
    ref = direct_series(profile, c)
    assert not b.diverges
    assert float(b.lo) - 1e-12 <= ref <= float(b.hi) + 1e-12
    if b.exact:
        assert float(b.lo) == pytest.approx(float(ref), rel=1e-12)


def test_increment_series_closed_forms():
    assert increment_series(Linear(), 2).lo == 1
    assert increment_series(PowerOfTwo(), 3).lo == 1
    assert increment_series(PowerOfTwo(), 2).diverges
    # sqrt(3) > 173/100, so the terms grow
    assert increment_series(ExponentialBase(3, Fraction(1, 2)), Fraction(173, 100)).diverges
    with pytest.raises(NoTailBound):
        increment_series(ExponentialBase(3, Fraction(1, 2)), _sqrt3_bracket())


def _sqrt3_bracket():
    # too close to sqrt(3) for the 96-bit bracket used by the series
    lo, hi = power_bounds(3, Fraction(1, 2), 96)
    return (lo + hi) / 2


def test_dominance_and_growth_thresholds():
    assert dominance_start(ExponentialBase(4, Fraction(3, 10)), 4, Fraction(303, 1000)) == 0
    # l <= 2**(l/2) fails only at l = 3
    assert dominance_start(Linear(), 2, Fraction(1, 2)) == 4
    assert dominance_start(PowerOfTwo(), 2, Fraction(1, 2)) is None
    assert dominance_start(PowerOfTwo(), 4, Fraction(1, 2)) == 0
    assert growth_threshold(PowerOfTwo()) == 0
    assert growth_threshold(Linear()) is None
    assert growth_threshold(Table((0, 1, 2))) is None
    p = ExponentialBase(2, Fraction(1, 2))
    L = growth_threshold(p)
    assert p.floor(L - 1) <= L - 1
    assert all(p.floor(l) > l for l in range(L, 400))


def test_thresholded_tail_starts_past_cutoff():
    p = Thresholded(Table((0, 1), Fraction(1, 3)), 7)
    t = p.tail()
    assert t.start >= 8
    assert (t.start - (len(p.inner.values) - 1)) % 3 == 0
    assert all(p.floor(l) == 0 for l in range(8))
    assert math.isclose(float(p.exact(20)), 1 + 19 / 3)
