"""
Words, gauges and recurrence
============================

A gauge phi says how fast a window may come back: a window of l+1
symbols seen again after s steps needs s > phi(l).
"""

from fractions import Fraction

from aperiodic.classics import find_square, morse_thue_window
from aperiodic.profiles import ExponentialBase, Linear, RightInverse, parse_profile
from aperiodic.words import FiniteWord, min_recurrence_time, verify_phi_aperiodic

# gauges have a short textual form
for text in ("linear", "pow2", "exp:k=4,delta=3/10", "thresh:l0=3;pow2", "table:0,0,2,9;step=1"):
    p = parse_profile(text)
    print(f"{text:24s}", [p.floor(l) for l in range(8)])

# ell(s) is the shortest window length at which the gauge reaches s
ell = RightInverse(ExponentialBase(2, Fraction(1, 2)))
print("ell(s), s = 1..12:", [ell(s) for s in range(1, 13)])

# a bad word and its witness (i, s, l), 1-based
# 01010 is an overlap: 0 1 0 comes back after 2 steps
v = verify_phi_aperiodic(FiniteWord.from_string("01010", k=2), Linear())
print("01010 ->", v.ok, v.witness)

# the Morse-Thue word is overlap free, which is phi(l) = l
mt = morse_thue_window(0, 1023)
print("Morse-Thue prefix passes phi(l) = l:", verify_phi_aperiodic(mt, Linear()).ok)

# its recurrence times, with the blocks of 2^n symbols that repeat at once
tab = min_recurrence_time(mt, 31)
for l, r in enumerate(tab.values):
    if (l + 1) & l == 0:
        print(f"l={l:2d}  R={r:3d}  square of 2^n symbols at {find_square(mt, l, offset=0)}")
