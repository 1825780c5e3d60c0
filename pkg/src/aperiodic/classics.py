"""Two classical sources of aperiodic behaviour.

The Morse-Thue word: ``w(i)`` is the parity of the binary digit sum of ``i``
for ``i >= 0``, mirrored to negative indices by ``w(-n) = w(n-1)``.

Circle rotations by ``alpha``: the orbit of 0 returns ``eps``-close after ``q``
steps exactly when ``||q alpha|| < eps``, so the quantity ``q ||q alpha||``
decides whether returns are slower than ``c / eps``.  ``alpha`` is given by a
continued fraction and every comparison is decided from certified enclosures.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .words import FiniteWord


class DepthExceeded(ValueError):
    pass


class PrecisionExhausted(RuntimeError):
    pass


class CFParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Morse-Thue

def morse_thue_symbol(i: int) -> int:
    if i < 0:
        i = -i - 1
    return bin(i).count("1") & 1


def morse_thue_window(start: int, stop: int) -> FiniteWord:
    """Symbols ``w(start) ... w(stop)`` of the two-sided Morse-Thue word (inclusive)."""
    if start > stop:
        raise ValueError("start must not exceed stop")
    idx = np.arange(start, stop + 1, dtype=np.int64)
    idx = np.where(idx < 0, -idx - 1, idx)
    par = np.zeros(len(idx), dtype=np.int64)
    while idx.any():
        par ^= idx & 1
        idx >>= 1
    return FiniteWord.of(2, par.tolist())


def morse_thue_blocks(n: int) -> tuple[str, str]:
    """``(a_n, b_n)`` from ``a_0 = 0, b_0 = 1`` and ``a_{j+1} = a_j b_j, b_{j+1} = b_j a_j``."""
    a, b = "0", "1"
    for _ in range(n):
        a, b = a + b, b + a
    return a, b


def find_square(w: FiniteWord, l: int, offset: int = 1) -> Optional[int]:
    """First position ``i`` (reported in the caller's indexing) with ``[w(i)..w(i+l)] = [w(i+l+1)..w(i+2l+1)]``.

    The word ``W = [w(i)..w(i+l)]`` has ``l + 1`` symbols and is followed by a
    copy of itself.  ``offset`` is the index of the first symbol of ``w``.
    """
    a = w.array
    n = l + 1
    if 2 * n > len(a):
        return None
    eq = a[:-n] == a[n:]
    # need n consecutive agreements starting at p
    csum = np.concatenate(([0], np.cumsum(eq)))
    runs = csum[n:] - csum[:-n]
    hits = np.flatnonzero(runs == n)
    return int(hits[0]) + offset if hits.size else None


# ---------------------------------------------------------------------------
# continued fractions

@dataclass(frozen=True)
class ContinuedFraction:
    """``[a0; a1, a2, ...]`` with an optional repeating tail.

    ``exact=False`` marks a finite list that is only the beginning of the
    expansion of some unknown number.
    """
    terms: tuple
    period: tuple = ()
    exact: bool = True

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(x) for x in self.terms))
        object.__setattr__(self, "period", tuple(int(x) for x in self.period))
        if not self.terms and not self.period:
            raise ValueError("empty continued fraction")
        if any(x < 1 for x in self.terms[1:]) or any(x < 1 for x in self.period):
            raise ValueError("partial quotients after the first must be positive")

    @classmethod
    def parse(cls, text: str) -> "ContinuedFraction":
        """``"a0;a1,a2,...(p1,p2)"``; a trailing ``...`` marks a truncated expansion."""
        m = re.fullmatch(r"\s*(-?\d+)\s*(?:;\s*([\d,\s]*?)\s*(?:\(([\d,\s]+)\))?\s*(\.\.\.)?)?\s*", text)
        if not m:
            raise CFParseError(f"cannot parse continued fraction {text!r}")
        a0, body, per, dots = m.groups()
        split = lambda s: [int(x) for x in s.split(",") if x.strip()] if s else []
        terms = [int(a0)] + split(body)
        period = split(per)
        if dots and period:
            raise CFParseError("a periodic expansion cannot also be truncated")
        try:
            return cls(tuple(terms), tuple(period), exact=not dots)
        except ValueError as exc:
            raise CFParseError(str(exc)) from None

    def __str__(self) -> str:
        s = str(self.terms[0])
        rest = ",".join(map(str, self.terms[1:]))
        if rest or self.period:
            s += ";" + rest
        if self.period:
            s += ("," if rest else "") + "(" + ",".join(map(str, self.period)) + ")"
        elif not self.exact:
            s += "..."
        return s

    @property
    def infinite(self) -> bool:
        return bool(self.period)

    def available(self) -> Optional[int]:
        return None if self.period else len(self.terms)

    def term(self, n: int) -> int:
        if n < len(self.terms):
            return self.terms[n]
        if not self.period:
            raise DepthExceeded(f"only {len(self.terms)} partial quotients available")
        return self.period[(n - len(self.terms)) % len(self.period)]


def convergents(cf: ContinuedFraction, depth: int) -> list:
    """The first ``depth`` convergents ``(p_n, q_n)``."""
    avail = cf.available()
    if avail is not None and depth > avail:
        raise DepthExceeded(f"depth {depth} exceeds the {avail} available partial quotients")
    out = []
    p0, q0, p1, q1 = 1, 0, 0, 1     # p_{-1}, q_{-1}, p_{-2}, q_{-2}
    for n in range(depth):
        a = cf.term(n)
        p, q = a * p0 + p1, a * q0 + q1
        out.append((p, q))
        p0, q0, p1, q1 = p, q, p0, q0
    return out


def enclosure(cf: ContinuedFraction, depth: int) -> tuple[Fraction, Fraction]:
    """Centre ``p/q`` and radius of an interval certainly containing ``alpha``."""
    avail = cf.available()
    if avail is not None and depth >= avail:
        conv = convergents(cf, avail)
        p, q = conv[-1]
        if cf.exact:
            return Fraction(p, q), Fraction(0)
        pp, qq = conv[-2] if len(conv) > 1 else (1, 0)
        # the unknown tail puts alpha between p/q and (p + pp)/(q + qq)
        return Fraction(p, q), Fraction(1, q * (q + qq))
    conv = convergents(cf, depth + 1)
    (p, q), (_, q2) = conv[-2], conv[-1]
    return Fraction(p, q), Fraction(1, q * q2)


# ---------------------------------------------------------------------------
# q ||q alpha||

@dataclass(frozen=True)
class Badness:
    """The minimum of ``q ||q alpha||`` over ``1 <= q <= Q``, bracketed."""
    lo: Fraction
    hi: Fraction
    q: int
    Q: int

    @property
    def value(self) -> float:
        return float((self.lo + self.hi) / 2)

    def to_dict(self) -> dict:
        return {"min": self.value, "lo": str(self.lo), "hi": str(self.hi),
                "argmin_q": self.q, "horizon_Q": self.Q}


def _scan(cf: ContinuedFraction, Q: int, depth: int):
    """Values ``q ||q a||`` at the rational centre ``a = P/D`` as integers over ``D``, plus the error bound."""
    centre, radius = enclosure(cf, depth)
    P, D = centre.numerator % centre.denominator, centre.denominator
    err = Fraction(Q * Q) * radius
    if Q * D < 2 ** 62:
        q = np.arange(1, Q + 1, dtype=np.int64)
        r = (q * P) % D
    else:
        q = np.arange(1, Q + 1, dtype=object)
        r = np.array([(int(x) * P) % D for x in q], dtype=object)
    dist = np.minimum(r, D - r)
    return q * dist, D, err


def _depth_for(cf: ContinuedFraction, Q: int) -> int:
    # enough depth that the enclosure is far finer than 1/Q**2
    avail = cf.available()
    n = 1
    while True:
        if avail is not None and n >= avail:
            return avail
        conv = convergents(cf, n + 1)
        if conv[-2][1] > Q and conv[-2][1] * conv[-1][1] > Q * Q * 2 ** 30:
            return n
        n += 1


def badness_profile(cf: ContinuedFraction, Q: int, max_depth: int = 400) -> Badness:
    """The minimum of ``q ||q alpha||`` over ``q <= Q`` with its argmin, decided exactly."""
    if Q < 1:
        raise ValueError("Q must be at least 1")
    depth = _depth_for(cf, Q)
    while True:
        vals, D, err = _scan(cf, Q, depth)
        j = int(np.argmin(vals))
        best = Fraction(int(vals[j]), D)
        if err == 0:
            return Badness(best, best, j + 1, Q)
        # all competitors must be certainly larger
        others = np.delete(vals, j)
        second = Fraction(int(others.min()), D) if len(others) else None
        if second is None or second - err > best + err:
            # the minimiser is settled; tighten its value on its own
            lo, hi = badness_at(cf, j + 1)
            return Badness(max(best - err, lo), min(best + err, hi), j + 1, Q)
        avail = cf.available()
        if (avail is not None and depth >= avail) or depth >= max_depth:
            raise PrecisionExhausted(
                f"{cf} does not determine the minimiser among q <= {Q}")
        depth += 4


def badness_at(cf: ContinuedFraction, q: int, bits: int = 80) -> tuple[Fraction, Fraction]:
    """Enclosure of ``q ||q alpha||`` for one ``q``."""
    depth = 1
    avail = cf.available()
    while True:
        centre, radius = enclosure(cf, depth)
        if radius * q * q * 2 ** bits < 1 or radius == 0 or (avail is not None and depth >= avail):
            break
        depth += 1
    x = q * centre
    d = min(x - (x.numerator // x.denominator), (x.numerator // x.denominator) + 1 - x)
    v = q * d
    e = q * q * radius
    return max(v - e, Fraction(0)), v + e


@dataclass(frozen=True)
class RotationVerdict:
    ok: bool
    c: Fraction
    Q: int
    witness_q: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"aperiodic_up_to_Q": self.ok, "c": str(self.c), "horizon_Q": self.Q,
                "witness_q": self.witness_q}


def is_Fc_aperiodic_at_zero(cf: ContinuedFraction, c, Q: int, max_depth: int = 400) -> RotationVerdict:
    """Whether ``q ||q alpha|| >= c`` for every ``q <= Q``.

    This only looks at the horizon ``Q``: True is evidence, False comes with
    the least violating ``q`` and is a proof.
    """
    c = Fraction(c)
    depth = _depth_for(cf, Q)
    while True:
        vals, D, err = _scan(cf, Q, depth)
        lo_c, hi_c = (c - err) * D, (c + err) * D
        sure = np.flatnonzero(vals < lo_c)             # certainly below c
        unsure = np.flatnonzero((vals >= lo_c) & (vals < hi_c))
        first_sure = int(sure[0]) if sure.size else None
        first_unsure = int(unsure[0]) if unsure.size else None
        if first_unsure is None or (first_sure is not None and first_sure < first_unsure):
            if first_sure is None:
                return RotationVerdict(True, c, Q)
            return RotationVerdict(False, c, Q, first_sure + 1)
        avail = cf.available()
        if (avail is not None and depth >= avail) or depth >= max_depth:
            raise PrecisionExhausted(f"{cf} does not decide q={first_unsure + 1} against c={c}")
        depth += 4


def convergent_minimum(cf: ContinuedFraction, Q: int, dps: int = 60):
    """Independent check: the minimum over convergent denominators ``q_n <= Q`` in high precision."""
    import mpmath
    with mpmath.workdps(dps):
        n = 1
        while True:
            conv = convergents(cf, n)
            if conv[-1][1] > Q or (cf.available() is not None and n >= cf.available()):
                break
            n += 1
        deep = convergents(cf, min(n + 60, cf.available() or n + 60))
        alpha = mpmath.mpf(deep[-1][0]) / deep[-1][1]
        best = None
        for _, q in convergents(cf, n):
            if q > Q or q == 0:
                continue
            x = q * alpha
            v = q * abs(x - mpmath.nint(x))
            if best is None or v < best[0]:
                best = (v, q)
        return float(best[0]), best[1]
