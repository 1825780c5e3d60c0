"""Counting good words, the recursive lower bound, and word construction.

A word of length ``m`` is *good* when none of the conditions ``(i, s)`` with
``i + s + ell(s) <= m`` is violated, i.e. the windows of ``ell(s)+1`` symbols
at ``i`` and ``i+s`` differ.  Goodness is inherited by prefixes, so the good
words of length ``m+1`` are found by extending the good words of length ``m``
and testing only the conditions that complete at ``m+1``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .profiles import (
    ExponentialBase, NoTailBound, Profile, RightInverse, Thresholded,
    dominance_start, increment_series, power_bounds, power_lt,
)
from .words import FiniteWord, verify_phi_aperiodic

DEFAULT_NODE_CAP = 10 ** 8


class COutOfRange(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class Exhausted(RuntimeError):
    pass


class CertificateInvalid(ValueError):
    pass


def frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# the sufficiency condition  k - F(0) - sum_l (F(l) - F(l-1)) / c**l >= c

@dataclass(frozen=True)
class ConditionReport:
    k: int
    profile: Profile
    c: Fraction
    margin_lo: Optional[Fraction]     # None: minus infinity (divergent series)
    margin_hi: Optional[Fraction]
    tail_treatment: str               # "closed-form" or "truncated"
    terms: int = 0
    tail_upper: Fraction = Fraction(0)

    @property
    def exact(self) -> bool:
        return self.margin_lo is not None and self.margin_lo == self.margin_hi

    @property
    def margin(self) -> Optional[Fraction]:
        return self.margin_lo if self.exact else None

    @property
    def lhs(self) -> Optional[Fraction]:
        return None if self.margin_lo is None else self.margin_lo + self.c

    @property
    def status(self) -> str:
        if self.margin_lo is not None and self.margin_lo >= 0:
            return "satisfied"
        if self.margin_hi is None or self.margin_hi < 0:
            return "unsatisfied"
        return "unknown"

    @property
    def satisfied(self) -> bool:
        return self.status == "satisfied"

    def to_dict(self) -> dict:
        fmt = lambda x: None if x is None else frac_str(x)
        d = {"k": self.k, "profile": self.profile.to_text(), "c": frac_str(self.c),
             "status": self.status, "margin_lo": fmt(self.margin_lo),
             "margin_hi": fmt(self.margin_hi)}
        if self.tail_treatment == "closed-form":
            d["tail"] = {"kind": "closed-form"}
        else:
            d["tail"] = {"kind": "truncated", "terms": self.terms,
                         "tail_upper": frac_str(self.tail_upper)}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def sufficiency_condition(k: int, profile: Profile, c, terms: int = 64,
                          max_terms: int = 4096) -> ConditionReport:
    """Evaluate the margin ``k - F(0) - sum (F(l)-F(l-1))/c**l - c`` exactly or with a certified bracket."""
    c = Fraction(c)
    if k < 2:
        raise COutOfRange("k must be at least 2")
    if not 1 < c < k:
        raise COutOfRange(f"c={c} is not inside (1, {k})")
    base = k - profile.floor(0) - c
    while True:
        sb = increment_series(profile, c, 1, terms)
        if sb.diverges:
            return ConditionReport(k, profile, c, None, None,
                                   "closed-form" if sb.exact else "truncated", sb.terms)
        lo, hi = base - sb.hi, base - sb.lo
        if sb.exact:
            return ConditionReport(k, profile, c, lo, hi, "closed-form")
        rep = ConditionReport(k, profile, c, lo, hi, "truncated", sb.terms, sb.tail_upper)
        if rep.status != "unknown" or terms >= max_terms:
            return rep
        terms *= 2


def exists_threshold_for_exponential(k: int, delta, c, limit: int = 10_000) -> int:
    """Least ``l0`` for which the exponential gauge cut off at ``l0`` meets the condition with this ``c``."""
    delta, c = Fraction(delta), Fraction(c)
    if not (power_lt(k, delta, c) and c < k):
        raise COutOfRange(f"need {k}**{delta} < c < {k}, got c={c}")
    inner = ExponentialBase(k, delta)

    def ok(l0: int) -> bool:
        return sufficiency_condition(k, Thresholded(inner, l0), c).satisfied

    # the series equals (1 - 1/c) sum_{l > l0} phi(l)/c**l, which shrinks as l0 grows
    if ok(0):
        return 0
    lo, hi = 0, 1
    while not ok(hi):
        if hi > limit:
            raise RuntimeError(f"no threshold found up to {limit}")
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------------------
# conditions completing at a given length

def completing_conditions(ell: RightInverse, n: int) -> list:
    """Triples ``(i, s, L)`` with ``i + s + L = n``, ``L = ell(s)``, ``i >= 1``."""
    out = []
    for s in range(1, n):
        L = ell(s)
        if L is None or s + L + 1 > n:
            break
        out.append((n - s - L, s, L))
    return out


def first_condition_length(ell: RightInverse) -> Optional[int]:
    """``m0 = 2 + ell(1)``; None when the gauge never reaches 1."""
    L = ell(1)
    return None if L is None else 2 + L


def _extend(block: np.ndarray, k: int, conds: list) -> np.ndarray:
    n, m = block.shape
    ext = np.empty((n * k, m + 1), dtype=np.uint8)
    ext[:, :m] = np.repeat(block, k, axis=0)
    ext[:, m] = np.tile(np.arange(k, dtype=np.uint8), n)
    keep = np.ones(n * k, dtype=bool)
    for i, s, L in conds:
        same = np.all(ext[:, i - 1:i + L] == ext[:, i + s - 1:i + s + L], axis=1)
        keep &= ~same
    return ext[keep]


# ---------------------------------------------------------------------------
# ledgers

@dataclass
class CountLedger:
    k: int
    profile: Profile
    m_max: int
    m0: Optional[int]
    exact: Optional[list] = None          # exact[m] for m = 0..m_max (None beyond a partial run)
    bound: Optional[list] = None          # B(m)
    c: Optional[Fraction] = None
    step_ok: Optional[list] = None        # B(m) >= c * B(m-1)
    partial: bool = False
    condition: Optional[ConditionReport] = None

    @property
    def c_pow(self) -> Optional[list]:
        if self.c is None:
            return None
        return [self.c ** m for m in range(self.m_max + 1)]

    def rows(self) -> list:
        cp = self.c_pow
        out = []
        for m in range(self.m_max + 1):
            ex = self.exact[m] if self.exact is not None and m < len(self.exact) else None
            b = self.bound[m] if self.bound is not None else None
            out.append((m, ex, b, None if cp is None else cp[m]))
        return out

    def merge(self, other: "CountLedger") -> "CountLedger":
        """Combine an exact-count ledger with a bound ledger for the same configuration."""
        a, b = (self, other) if self.exact is not None else (other, self)
        return CountLedger(self.k, self.profile, min(self.m_max, other.m_max), self.m0,
                           a.exact, b.bound, b.c, b.step_ok, a.partial or b.partial,
                           self.condition or other.condition)

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["m", "exact", "bound", "c_pow_m"])
        for m, ex, b, cp in self.rows():
            wr.writerow([m, "" if ex is None else ex, "" if b is None else b,
                         "" if cp is None else frac_str(cp)])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "k": self.k, "profile": self.profile.to_text(), "m_max": self.m_max, "m0": self.m0,
            "c": None if self.c is None else frac_str(self.c), "partial": self.partial,
            "condition": None if self.condition is None else self.condition.to_dict(),
            "rows": [{"m": m, "exact": ex, "bound": b,
                      "c_pow_m": None if cp is None else frac_str(cp),
                      "step_ok": None if self.step_ok is None else self.step_ok[m]}
                     for m, ex, b, cp in self.rows()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def good_words(k: int, profile: Profile, m: int, threads: int = 1,
               node_cap: int = DEFAULT_NODE_CAP, chunk: int = 1 << 18,
               _counts: Optional[list] = None) -> np.ndarray:
    """All good words of length ``m`` as rows of a ``uint8`` array (lexicographic order)."""
    ell = RightInverse(profile)
    frontier = np.zeros((1, 0), dtype=np.uint8)
    visited = 1
    if _counts is not None:
        _counts.append(1)
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for n in range(1, m + 1):
            est = len(frontier) * k
            if visited + est > node_cap:
                raise BudgetExceeded(
                    f"level {n} could reach {est} words; node cap {node_cap} exceeded")
            conds = completing_conditions(ell, n)
            blocks = [frontier[j:j + chunk] for j in range(0, max(len(frontier), 1), chunk)]
            if pool is not None and len(blocks) > 1:
                parts = list(pool.map(lambda b: _extend(b, k, conds), blocks))
            else:
                parts = [_extend(b, k, conds) for b in blocks]
            frontier = np.concatenate(parts) if len(parts) > 1 else parts[0]
            visited += len(frontier)
            if _counts is not None:
                _counts.append(len(frontier))
    finally:
        if pool is not None:
            pool.shutdown()
    return frontier


def count_good_words(k: int, profile: Profile, m_max: int, threads: int = 1,
                     node_cap: int = DEFAULT_NODE_CAP) -> CountLedger:
    """Exact ``|W^g(m)|`` for ``m = 0..m_max`` by pruned extension of good prefixes."""
    ell = RightInverse(profile)
    counts: list = []
    try:
        good_words(k, profile, m_max, threads=threads, node_cap=node_cap, _counts=counts)
    except BudgetExceeded as exc:
        led = CountLedger(k, profile, m_max, first_condition_length(ell), exact=counts, partial=True)
        raise BudgetExceeded(str(exc), led) from None
    return CountLedger(k, profile, m_max, first_condition_length(ell), exact=counts)


def naive_good_mask(k: int, profile: Profile, m: int) -> np.ndarray:
    """Filter all ``k**m`` words through the definition directly; returns a boolean mask.

    Row ``r`` of the implied word array is the base-``k`` expansion of ``r``.
    """
    words = all_words(k, m)
    n = len(words)
    bad = np.zeros(n, dtype=bool)
    for s in range(1, m):
        eq = words[:, :m - s] == words[:, s:]        # eq[:, p]: w(p+1) == w(p+1+s)
        for i in range(1, m - s + 1):
            run = np.ones(n, dtype=bool)
            for l in range(0, m - s - i + 1):
                run &= eq[:, i - 1 + l]
                if s <= profile.floor(l):
                    bad |= run
    return ~bad


def all_words(k: int, m: int) -> np.ndarray:
    if m == 0:
        return np.zeros((1, 0), dtype=np.uint8)
    idx = np.arange(k ** m, dtype=np.int64)
    cols = [(idx // k ** (m - 1 - j)) % k for j in range(m)]
    return np.stack(cols, axis=1).astype(np.uint8)


def naive_count(k: int, profile: Profile, m: int) -> int:
    return int(naive_good_mask(k, profile, m).sum())


def lower_bound_ledger(k: int, profile: Profile, m_max: int, c=None) -> CountLedger:
    """The recursive lower bound ``B(m)``.

    ``B(m) = k**m`` below the first condition length ``m0``; afterwards
    ``B(m+1) = max(0, (k - F(0)) B(m) - sum_{j=1}^{m} (F(j) - F(j-1)) B(m-j))``.
    With ``c`` given, ``c**m`` and the per-step flags ``B(m) >= c B(m-1)`` are
    recorded, and the condition report is attached.
    """
    ell = RightInverse(profile)
    m0 = first_condition_length(ell)
    F = [profile.floor(j) for j in range(m_max + 1)]
    B = []
    for m in range(m_max + 1):
        if m0 is None or m < m0:
            B.append(k ** m)
            continue
        prev = m - 1
        v = (k - F[0]) * B[prev] - sum((F[j] - F[j - 1]) * B[prev - j] for j in range(1, prev + 1))
        B.append(max(0, v))
    led = CountLedger(k, profile, m_max, m0, bound=B)
    if c is not None:
        c = Fraction(c)
        led.c = c
        led.step_ok = [True] + [B[m] >= c * B[m - 1] for m in range(1, m_max + 1)]
        try:
            led.condition = sufficiency_condition(k, profile, c)
        except (COutOfRange, NoTailBound):
            led.condition = None
    return led


# ---------------------------------------------------------------------------
# construction

def construct_word(k: int, profile: Profile, target_len: int, order: str = "lex",
                   seed: Optional[int] = None, node_cap: int = 10 ** 7) -> FiniteWord:
    """Depth-first search for a good word of the requested length.

    ``order`` is ``"lex"`` (symbols tried 0, 1, ...) or ``"random"`` (a fresh
    seeded permutation at every node).  Raises Exhausted when the search
    space is empty.
    """
    if order not in ("lex", "random"):
        raise ValueError(f"unknown order {order!r}")
    rng = random.Random(seed)
    ell = RightInverse(profile)
    conds_at: dict[int, list] = {}
    w: list[int] = []
    stack: list[list[int]] = []

    def choices() -> list:
        syms = list(range(k))
        if order == "random":
            rng.shuffle(syms)
        syms.reverse()              # pop() takes from the end
        return syms

    if target_len > 0:
        stack.append(choices())
    nodes = 0
    while len(w) < target_len:
        if not stack:
            raise Exhausted(f"no good word of length {target_len} over {k} symbols")
        opts = stack[-1]
        if not opts:
            stack.pop()
            if w:
                w.pop()
            continue
        x = opts.pop()
        nodes += 1
        if nodes > node_cap:
            raise BudgetExceeded(f"search visited more than {node_cap} nodes")
        w.append(x)
        n = len(w)
        conds = conds_at.get(n)
        if conds is None:
            conds = conds_at[n] = completing_conditions(ell, n)
        if any(w[i - 1:i + L] == w[i + s - 1:n] for i, s, L in conds):
            w.pop()
            continue
        if n < target_len:
            stack.append(choices())
    word = FiniteWord.of(k, w)
    verdict = verify_phi_aperiodic(word, profile, ell=ell)
    if not verdict:
        raise AssertionError(f"constructed word failed verification at {verdict.witness}")
    return word


# ---------------------------------------------------------------------------
# uniqueness of violating extensions, behind the recursive bound

def extension_uniqueness_check(k: int, profile: Profile, m: int, i: int, s: int) -> dict:
    """Count the one-symbol extensions of good words of length ``m`` that violate ``(i, s)``.

    ``(i, s)`` must complete at ``m + 1``.  Groups the violating extensions by
    their prefix of length ``i+s-1`` and reports the largest group (at most 1
    by the uniqueness argument) together with both sides of the counting bound.
    """
    ell = RightInverse(profile)
    L = ell(s)
    if L is None or i + s + L != m + 1 or i < 1:
        raise ValueError(f"({i}, {s}) does not complete at length {m + 1}")
    good = good_words(k, profile, m)
    ext = _extend(good, k, [])
    viol = np.all(ext[:, i - 1:i + L] == ext[:, i + s - 1:i + s + L], axis=1)
    bad = ext[viol]
    prefixes = ext[:, :i + s - 1]
    q_all = {bytes(r) for r in prefixes}
    groups: dict[bytes, int] = {}
    for r in bad[:, :i + s - 1]:
        key = bytes(r)
        groups[key] = groups.get(key, 0) + 1
    return {
        "violating": int(viol.sum()),
        "max_per_prefix": max(groups.values(), default=0),
        "Q": len(q_all),
        "good_prefix_count": len(good_words(k, profile, i + s - 1)),
    }


# ---------------------------------------------------------------------------
# constants for words avoiding fast recurrence

@dataclass(frozen=True)
class RecurrenceConstants:
    k: int
    delta: Fraction
    delta_tilde: Fraction
    c: Fraction
    l1: int
    l2: int
    l0: int
    surrogate: Profile
    report: ConditionReport


def derive_recurrence_constants(k: int, delta, phi: Optional[Profile] = None,
                                eps0=Fraction(1, 100), l1: Optional[int] = None) -> RecurrenceConstants:
    """Constants for a word whose recurrence beats ``phi`` from ``l0`` on.

    With ``dt = (1 + eps0) * delta < 1`` and ``phi(l) <= k**(dt*l)`` for
    ``l >= l1``, pick a rational ``c`` strictly between ``k**dt`` and ``k``, the
    least cut-off ``l2`` that makes the exponential gauge meet the sufficiency
    condition with this ``c``, and ``l0 = max(l1, l2) + 1``.  Every word that is
    aperiodic for the surrogate (the exponential cut off at ``l0 - 1``) has
    ``R(l) > phi(l)`` for ``l >= l0``.
    """
    delta, eps0 = Fraction(delta), Fraction(eps0)
    if not 0 < delta < 1:
        raise CertificateInvalid("delta must lie in (0, 1)")
    if eps0 <= 0:
        raise CertificateInvalid("eps0 must be positive")
    dt = (1 + eps0) * delta
    if dt >= 1:
        raise CertificateInvalid(f"(1 + eps0) * delta = {dt} is not below 1")
    phi = phi if phi is not None else ExponentialBase(k, delta)
    start = dominance_start(phi, k, dt)
    if start is None:
        raise CertificateInvalid(f"{phi.to_text()} is not dominated by {k}**({dt} l)")
    if l1 is None:
        l1 = start
    elif l1 < start:
        raise CertificateInvalid(f"domination only holds from l = {start}, not {l1}")

    lo, hi = power_bounds(k, dt, 64)
    c = ((k + hi) / 2).limit_denominator(1 << 16)
    if not (power_lt(k, dt, c) and c < k):
        c = (k + hi) / 2
    l2 = exists_threshold_for_exponential(k, dt, c)
    l0 = max(l1, l2) + 1
    surrogate = Thresholded(ExponentialBase(k, dt), l0 - 1)
    report = sufficiency_condition(k, surrogate, c)
    if not report.satisfied:
        raise CertificateInvalid("surrogate gauge fails the sufficiency condition")
    return RecurrenceConstants(k, delta, dt, c, l1, l2, l0, surrogate, report)
