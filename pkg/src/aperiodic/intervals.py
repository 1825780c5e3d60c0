"""Thin helpers over mpmath's interval context.

mpmath's ``iv`` lacks the hyperbolic functions, so they are assembled here
from ``exp``/``log``.  Functions that are monotone on the relevant range are
evaluated at the two endpoints and hulled, which keeps enclosures tight.
"""

from __future__ import annotations

import math
import threading
from contextlib import contextmanager
from fractions import Fraction

import mpmath
from mpmath import iv

DEFAULT_PREC = 256
_lock = threading.RLock()


@contextmanager
def precision(bits: int = DEFAULT_PREC):
    # the real context is raised too so endpoint arithmetic is not rounded to 53 bits
    with _lock:
        old, old_mp = iv.prec, mpmath.mp.prec
        iv.prec = max(bits, old)
        mpmath.mp.prec = iv.prec + 16
        try:
            yield
        finally:
            iv.prec, mpmath.mp.prec = old, old_mp


def to_iv(x):
    """Interval enclosing ``x`` (int, Fraction, float, decimal string or interval)."""
    if isinstance(x, type(iv.mpf(0))):
        return x
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / x.denominator
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, float, str)):
        return iv.mpf(x)
    if isinstance(x, mpmath.mpf):
        return iv.mpf(x)
    raise TypeError(f"cannot enclose {x!r}")


def lo(x) -> mpmath.mpf:
    with mpmath.workprec(max(iv.prec, mpmath.mp.prec) + 16):
        return mpmath.mpf(x.a)


def hi(x) -> mpmath.mpf:
    with mpmath.workprec(max(iv.prec, mpmath.mp.prec) + 16):
        return mpmath.mpf(x.b)


def width(x) -> mpmath.mpf:
    return hi(x) - lo(x)


def point(v):
    return iv.mpf(v)


def hull(a, b):
    return iv.mpf([min(lo(a), lo(b)), max(hi(a), hi(b))])


def _endpoints(f, x):
    """Enclosure of a non-decreasing ``f`` over ``x`` from its endpoint values."""
    return hull(f(point(x.a)), f(point(x.b)))


def sinh(x):
    return (iv.exp(x) - iv.exp(-x)) / 2


def cosh(x):
    a, b = lo(x), hi(x)
    near = 0 if a <= 0 <= b else min(abs(a), abs(b))
    far = max(abs(a), abs(b))
    f = lambda t: (iv.exp(t) + iv.exp(-t)) / 2
    return hull(f(point(near)), f(point(far)))


def asinh(x):
    def f(t):
        if lo(t) < 0:
            return -f(-t)
        return iv.log(t + iv.sqrt(t * t + 1))
    return _endpoints(f, x)


def sinh_power_integral(n: int, r):
    """``V(r) = int_0^r sinh(t)**(n-1) dt`` for ``r >= 0``, up to the sphere-area factor.

    Uses ``I_m = sinh^{m-1} cosh / m - (m-1)/m * I_{m-2}`` with
    ``I_0 = r`` and ``I_1 = cosh r - 1``; ``V`` is increasing in ``r``.
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")

    def f(t):
        s = sinh(t)
        c = (iv.exp(t) + iv.exp(-t)) / 2
        I = [t, c - 1]
        for m in range(2, n):
            I.append(s ** (m - 1) * c / m - iv.mpf(m - 1) / m * I[m - 2])
        return I[n - 1]
    if lo(r) < 0:
        raise ValueError("radius must be non-negative")
    return _endpoints(f, r)


def ceil_upper(x) -> tuple[int, bool]:
    """``ceil`` of the upper end, and whether the interval straddles an integer boundary."""
    up = int(mpmath.ceil(hi(x)))
    down = int(mpmath.ceil(lo(x)))
    return up, up != down


def floor_lower(x) -> tuple[int, bool]:
    d = int(mpmath.floor(lo(x)))
    u = int(mpmath.floor(hi(x)))
    return d, d != u


def certainly_lt(a, b) -> bool:
    return hi(a) < lo(b)


def certainly_gt(a, b) -> bool:
    return lo(a) > hi(b)


def as_json(x, formula: str, digits: int = 40) -> dict:
    return {"lo": mpmath.nstr(lo(x), digits), "hi": mpmath.nstr(hi(x), digits),
            "formula": formula}


def mid_float(x) -> float:
    return float((lo(x) + hi(x)) / 2)


def log2_bound(x) -> float:
    # rough size indicator for reports
    return float(mpmath.log(hi(x), 2)) if hi(x) > 0 else -math.inf
