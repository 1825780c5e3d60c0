"""
Parameters for exponential gauges on hyperbolic manifolds
=========================================================

All constants below are interval enclosures at 256 bits, and integer
ceilings are flagged when an enclosure straddles an integer.
"""

import math
from fractions import Fraction

from aperiodic.hyperbolic import (
    GeometryConstants, HyperbolicParams, geodesic_parameter_chain, rough_cbar_bound,
)
from aperiodic.profiles import ExponentialBase, RightInverse, growth_threshold

rep = geodesic_parameter_chain(2, Fraction(1, 2), "1.5", "0.25")
print(rep.to_json())
print("search evaluations:", rep.search.evaluations, " widest enclosure:", rep.max_width())

# the shift-dependent constant against the shift-free bound
ln2 = math.log(2)
for n in (2, 3):
    phibar = ExponentialBase(2, Fraction(5, 8) * (n - 1))
    s = max(growth_threshold(phibar), 2)
    for im in (0.8, 1.5, 3.0):
        p = HyperbolicParams(n, str(im), repr(ln2 + 2 * (im - ln2) / 3), repr(ln2 + (im - ln2) / 3))
        sharp = GeometryConstants(p, RightInverse(phibar)).cbar(s)
        print(f"n={n} i_M={im}: sharp {sharp:7d}   rough {rough_cbar_bound(n, str(im)).value:7d}")
