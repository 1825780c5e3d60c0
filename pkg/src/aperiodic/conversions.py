"""Translating between window gauges and return-distance bounds.

A distance bound ``F`` says an orbit may not come back ``eps``-close before
time ``F(eps)``.  For symbolic words at distance ``2**-a`` the two notions are
linked by doubling the window radius:

    F(eps) = floor(phi(-2 * ceil(log2(eps))))   for eps <= 1, else 0
    phi(l) = F(2 ** -(floor(l/2) - 1))
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .profiles import Profile, RightInverse, Table
from .words import FiniteWord, Verdict, _run_lengths


class WindowTooSmall(ValueError):
    pass


def ceil_log2(eps) -> int:
    """Exact ``ceil(log2(eps))`` for a positive rational."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    p, q = eps.numerator, eps.denominator
    # smallest t with 2**t >= p/q
    t = p.bit_length() - q.bit_length()
    while _pow2_ge(t - 1, p, q):
        t -= 1
    while not _pow2_ge(t, p, q):
        t += 1
    return t


def _pow2_ge(t: int, p: int, q: int) -> bool:
    return (q << t) >= p if t >= 0 else q >= (p << -t)


@dataclass(frozen=True)
class AperiodicityBound:
    """A non-increasing map ``eps -> F(eps)``.

    Built either from a gauge (``from_profile``) or from breakpoints
    ``[(e_1, v_1), ...]`` with ``e`` increasing and ``v`` non-increasing, meaning
    ``F(eps) = v_j`` for the least ``e_j >= eps`` and 0 beyond the last.
    """
    profile: Optional[Profile] = None
    breakpoints: tuple = ()
    func: Optional[Callable] = field(default=None, compare=False)

    @classmethod
    def from_profile(cls, profile: Profile) -> "AperiodicityBound":
        return cls(profile=profile)

    @classmethod
    def from_breakpoints(cls, pairs: Sequence) -> "AperiodicityBound":
        pts = tuple((Fraction(e), Fraction(v)) for e, v in pairs)
        for (e1, v1), (e2, v2) in zip(pts, pts[1:]):
            if not (e1 < e2 and v1 >= v2):
                raise ValueError("breakpoints must increase in eps and not increase in value")
        return cls(breakpoints=pts)

    @classmethod
    def from_function(cls, f: Callable) -> "AperiodicityBound":
        return cls(func=f)

    def __call__(self, eps) -> Fraction:
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        if self.profile is not None:
            if eps > 1:
                return Fraction(0)
            return Fraction(self.profile.floor(-2 * ceil_log2(eps)))
        if self.func is not None:
            return Fraction(self.func(eps))
        for e, v in self.breakpoints:
            if e >= eps:
                return v
        return Fraction(0)


def phi_to_F(profile: Profile) -> AperiodicityBound:
    return AperiodicityBound.from_profile(profile)


def F_to_phi(bound: AperiodicityBound, l_max: int = 64) -> Table:
    """Tabulate ``phi(l) = F(2 ** -(floor(l/2) - 1))`` for ``l <= l_max`` (constant afterwards)."""
    vals = [bound(Fraction(2) ** -(l // 2 - 1)) for l in range(l_max + 1)]
    return Table(tuple(vals))


# ---------------------------------------------------------------------------
# returns of a word to itself

def dyadic_return_check(w: FiniteWord, profile: Profile, l_max: int = 20) -> dict:
    """Compare every return of ``w`` to itself with the distance bound of ``profile``.

    For each time ``i`` and shift ``s`` the centred windows of radius
    ``l_max // 2`` around ``i`` and ``i + s`` give ``d = 2**-a``; any ``eps`` in
    ``(d, 2d]`` then has ``d < eps``, and the bound demands ``s > F(eps)``.
    Returns the number of coincidences inspected and the violations found.
    """
    F = phi_to_F(profile)
    R = l_max // 2
    # F is constant on (2**-a, 2**-(a-1)], so one sample per radius suffices
    lim = np.array([int(F(Fraction(3, 2) / 2 ** a)) for a in range(R + 1)], dtype=np.int64)
    arr = w.array
    m = len(arr)
    checked = 0
    violations = []
    for s in range(1, m - 2 * R):
        eq = arr[:m - s] == arr[s:]
        fwd = _run_lengths(eq)
        bwd = _run_lengths(eq[::-1])[::-1]
        centres = np.arange(R, m - s - R)       # 0-based, both windows inside the word
        if centres.size == 0:
            break
        a = np.minimum(np.minimum(fwd[centres], bwd[centres]) - 1, R)
        close = a >= 0
        checked += int(close.sum())
        bad = close & (s <= lim[np.clip(a, 0, R)])
        for p in centres[bad][:10]:
            violations.append((int(p) + 1, s, int(min(fwd[p], bwd[p]) - 1)))
    return {"checked": checked, "violations": violations}


def best_periodic_radius(w: FiniteWord, i: int, s: int, r: int) -> int:
    """Largest ``a <= r`` such that some word of period ``s`` agrees with ``w`` on ``[i-a, i+a]``.

    Windows of at most ``s`` symbols always match, so the result is at least ``(s - 1) // 2``.
    """
    arr = w.array
    best = 0
    for a in range(1, r + 1):
        lo, hi = i - a - 1, i + a - 1          # 0-based window
        if hi - lo + 1 > s:
            seg = arr[lo:hi + 1]
            if not np.array_equal(seg[:-s], seg[s:]):
                break
        best = a
    return best


def periodic_distance_check(w: FiniteWord, s: int, profile: Profile,
                            sample_times: Optional[Sequence[int]] = None) -> Verdict:
    """Check ``d(T^i w, u) > 2**(-(s + ell(s))/2)`` for every word ``u`` of period ``s``.

    The distance is ``2**-a`` with ``a`` the agreement radius at time ``i``,
    so the check is that the best periodic approximation agrees on a radius
    below ``(s + ell(s))/2``.  The first failing time is the witness.
    """
    if s < 1:
        raise ValueError("period must be positive")
    L = RightInverse(profile).strict(s)
    r = (s + L) // 2 + 1
    m = len(w)
    if sample_times is None:
        sample_times = range(r + 1, m - r + 1)
    for i in sample_times:
        if i - r < 1 or i + r > m:
            raise WindowTooSmall(f"time {i} needs radius {r} inside 1..{m}")
        a = best_periodic_radius(w, i, s, r)
        if 2 * a >= s + L:
            return Verdict(False, (i, s, a), {"threshold_exponent": Fraction(s + L, 2)})
    return Verdict(True, None, {"threshold_exponent": Fraction(s + L, 2)})
