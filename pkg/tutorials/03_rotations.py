"""
Circle rotations
================

The orbit of 0 under x -> x + alpha returns within eps after q steps when
||q alpha|| < eps, so q ||q alpha|| measures how slow the returns are.
"""

import math
from fractions import Fraction

from aperiodic.classics import (
    ContinuedFraction, badness_at, badness_profile, convergents, is_Fc_aperiodic_at_zero,
)

golden = ContinuedFraction.parse("1;(1)")
print("convergents:", convergents(golden, 10))

b = badness_profile(golden, 10 ** 5)
print(f"min over q <= 1e5: {b.value:.9f} at q={b.q}   ((3 - sqrt 5)/2 = {(3 - math.sqrt(5)) / 2:.9f})")

for c in (Fraction(7, 20), Fraction(2, 5)):
    v = is_Fc_aperiodic_at_zero(golden, c, 10 ** 5)
    print(f"c={c}: {v.ok}, first violating q={v.witness_q}")

# along the Fibonacci numbers the value settles at 1/sqrt 5
for q in (89, 987, 10946, 75025):
    lo, hi = badness_at(golden, q)
    print(f"q={q:6d}  {float(lo):.12f}   1/sqrt5={1 / math.sqrt(5):.12f}")

# one large partial quotient makes a very good approximation
spiky = ContinuedFraction.parse("0;1,2,3,1000,(1)")
s = badness_profile(spiky, 10 ** 4)
print(f"{spiky}: min {s.value:.6g} at q={s.q}")
