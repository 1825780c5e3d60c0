import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aperiodic.counting import all_words, naive_good_mask
from aperiodic.profiles import ExponentialBase, Linear, PowerOfTwo, Table, Thresholded
from aperiodic.words import (
    Alphabet, FiniteWord, OutOfBounds, UnequalRadii, WordParseError, agreement_radius,
    format_word_file, min_recurrence_time, overlap_recurrence, parse_word_file,
    recurrence_time_at, verify_phi_aperiodic, word_metric,
)
from fractions import Fraction


def test_alphabet_limits():
    assert Alphabet(36).k == 36
    for bad in (1, 37):
        with pytest.raises(ValueError):
            Alphabet(bad)


def test_word_basics():
    w = FiniteWord.from_string("0120a", k=11)
    assert len(w) == 5 and w[1] == 0 and w[5] == 10
    assert str(w) == "0120a"
    assert str(w.prefix(3)) == "012"
    assert w.window(2, 2) == (1, 2, 0)
    with pytest.raises(OutOfBounds):
        w[0]
    with pytest.raises(OutOfBounds):
        w.window(4, 2)
    assert not w.array.flags.writeable


def test_word_file_round_trip():
    w = FiniteWord.from_string("0110100110010110", k=2)
    assert parse_word_file(format_word_file(w)) == w
    assert parse_word_file("# k=3\n012\n# trailing note\n").k == 3
    with pytest.raises(WordParseError):
        parse_word_file("# k=2\n012\n")
    with pytest.raises(WordParseError):
        parse_word_file("# k=3\n012\n", k=4)
    with pytest.raises(WordParseError):
        FiniteWord.from_string("01!", k=3)
    assert len(parse_word_file("# k=2\n")) == 0


def brute_recurrence(x, l):
    best = None
    m = len(x)
    for i in range(m):
        for s in range(1, m - i - l):
            if x[i:i + l + 1] == x[i + s:i + s + l + 1]:
                best = s if best is None else min(best, s)
                break
    return best


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=40))
def test_min_recurrence_matches_brute_force(xs):
    w = FiniteWord.of(3, xs)
    tab = min_recurrence_time(w, len(xs) - 1)
    for l, r in enumerate(tab.values):
        assert r == brute_recurrence(xs, l)
    for l, r in tab.attained():
        assert r is not None


def test_recurrence_time_at():
    w = FiniteWord.from_string("0101101", k=2)
    assert recurrence_time_at(w, 1, 1) == 2
    assert recurrence_time_at(w, 1, 6) is None
    assert overlap_recurrence(FiniteWord.from_string("0100101", k=2), 2) == 3
    assert overlap_recurrence(FiniteWord.from_string("01010", k=2), 2) is None


def test_metric():
    u = [0, 1, 1, 0, 1]
    assert agreement_radius(u, u) is None
    assert agreement_radius(u, [0, 1, 0, 0, 1]) == -1
    assert agreement_radius(u, [1, 1, 1, 0, 0]) == 1
    assert word_metric(u, [1, 1, 1, 0, 0]).value == Fraction(1, 2)
    with pytest.raises(UnequalRadii):
        agreement_radius([0, 1, 0], u)


def test_verdict_witnesses():
    v = verify_phi_aperiodic(FiniteWord.from_string("aaa"), Linear())
    assert not v and v.witness == (1, 1, 1)
    v = verify_phi_aperiodic(FiniteWord.from_string("0110100110010110", k=2), Linear())
    assert v.ok and v.witness is None
    assert verify_phi_aperiodic(FiniteWord.of(2, []), Linear()).ok


PROFILES = [Linear(), PowerOfTwo(), ExponentialBase(2, Fraction(1, 2)),
            Table((0, 1, 1, 3), Fraction(1, 2)), Table((0, 2, 3)),
            Thresholded(ExponentialBase(3, Fraction(1, 2)), 2)]


@pytest.mark.parametrize("profile", PROFILES, ids=lambda p: p.to_text())
def test_fast_verifier_agrees_with_mask_oracle(profile):
    # every word over k=2 up to length 12 and k=3 up to length 9
    for k, top in ((2, 12), (3, 9)):
        for m in range(1, top + 1):
            words = all_words(k, m)
            mask = naive_good_mask(k, profile, m)
            fast = np.array([verify_phi_aperiodic(FiniteWord.of(k, r.tolist()), profile).ok
                             for r in words])
            assert np.array_equal(mask, fast), (k, m)


@pytest.mark.parametrize("profile", PROFILES, ids=lambda p: p.to_text())
def test_fast_verifier_witness_matches_triple_loop(profile):
    for k, top in ((2, 9), (3, 6)):
        for m in range(1, top + 1):
            for xs in itertools.product(range(k), repeat=m):
                w = FiniteWord.of(k, xs)
                assert verify_phi_aperiodic(w, profile) == verify_phi_aperiodic(w, profile, method="naive")


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=0, max_size=60),
       st.sampled_from(PROFILES))
def test_fast_verifier_on_longer_words(xs, profile):
    w = FiniteWord.of(4, xs)
    assert verify_phi_aperiodic(w, profile) == verify_phi_aperiodic(w, profile, method="naive")


def has_overlap(x):
    # a W a W a: some window of 2p+1 symbols has period p
    m = len(x)
    for p in range(1, m // 2 + 1):
        for i in range(m - 2 * p):
            if all(x[j] == x[j + p] for j in range(i, i + p + 1)):
                return True
    return False


def test_linear_gauge_means_overlap_free():
    for m in range(1, 15):
        for xs in itertools.product((0, 1), repeat=m):
            ok = verify_phi_aperiodic(FiniteWord.of(2, xs), Linear()).ok
            assert ok == (not has_overlap(xs)), xs
