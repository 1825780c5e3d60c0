"""
Counting good words
===================

Exact counts of words that satisfy a gauge, the recursive lower bound,
and a long word whose recurrence beats an exponential.
"""

import time
from fractions import Fraction

from aperiodic.counting import (
    construct_word, count_good_words, derive_recurrence_constants, lower_bound_ledger,
    sufficiency_condition,
)
from aperiodic.profiles import ExponentialBase, Linear, PowerOfTwo
from aperiodic.words import min_recurrence_time

# the sufficiency margin is exact when the increments have a closed form
print(sufficiency_condition(4, Linear(), 2).to_json())
print("k=5, pow2, c=3 margin:", sufficiency_condition(5, PowerOfTwo(), 3).margin)
print("k=2, linear, c=3/2:", sufficiency_condition(2, Linear(), Fraction(3, 2)).status)

t0 = time.perf_counter()
led = count_good_words(4, Linear(), 12).merge(lower_bound_ledger(4, Linear(), 12, 2))
print(f"counted in {time.perf_counter() - t0:.2f}s")
print(led.to_csv())

# constants for recurrence faster than 4^(0.3 l)
consts = derive_recurrence_constants(4, Fraction(3, 10))
print("c =", consts.c, " l0 =", consts.l0, " surrogate:", consts.surrogate.to_text())

w = construct_word(4, consts.surrogate, 1024)
phi = ExponentialBase(4, Fraction(3, 10))
for l, r in min_recurrence_time(w, 40).attained():
    print(f"l={l:2d}  R={r:4d}  floor(4^(0.3 l))={phi.floor(l)}")
