"""Finite words, recurrence times and the aperiodicity verifier.

Positions are 1-based throughout the public API: a word of length ``m`` has
symbols ``w(1), ..., w(m)``.  Internally the symbols live in a numpy array.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .profiles import Profile, RightInverse

DIGITS = string.digits + string.ascii_lowercase


class OutOfBounds(IndexError):
    pass


class UnequalRadii(ValueError):
    pass


class WordParseError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    k: int

    def __post_init__(self):
        if not isinstance(self.k, (int, np.integer)) or self.k < 2:
            raise ValueError(f"alphabet needs k >= 2, got {self.k!r}")
        if self.k > len(DIGITS):
            raise ValueError(f"at most {len(DIGITS)} symbols can be rendered")


@dataclass(frozen=True, eq=False)
class FiniteWord:
    alphabet: Alphabet
    symbols: tuple

    def __post_init__(self):
        syms = tuple(int(x) for x in self.symbols)
        k = self.alphabet.k
        for pos, x in enumerate(syms, 1):
            if not 0 <= x < k:
                raise ValueError(f"symbol {x} at position {pos} is outside [0, {k})")
        object.__setattr__(self, "symbols", syms)
        arr = np.array(syms, dtype=np.int16)
        arr.setflags(write=False)
        object.__setattr__(self, "_array", arr)

    @classmethod
    def of(cls, k: int, symbols: Iterable[int]) -> "FiniteWord":
        return cls(Alphabet(k), tuple(symbols))

    @classmethod
    def from_string(cls, text: str, k: Optional[int] = None) -> "FiniteWord":
        """Parse ``0-9a-z`` characters; letters in a word like ``"abab"`` need an explicit k."""
        syms = []
        for pos, ch in enumerate(text, 1):
            v = DIGITS.find(ch.lower())
            if v < 0:
                raise WordParseError(f"bad symbol {ch!r} at position {pos}")
            syms.append(v)
        if k is None:
            k = max(2, max(syms, default=0) + 1)
        if syms and max(syms) >= k:
            bad = next(p for p, x in enumerate(syms, 1) if x >= k)
            raise WordParseError(f"symbol {text[bad - 1]!r} at position {bad} is not below k={k}")
        return cls(Alphabet(k), tuple(syms))

    @property
    def k(self) -> int:
        return self.alphabet.k

    @property
    def array(self) -> np.ndarray:
        return self._array

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i: int) -> int:
        """1-based symbol access."""
        if not 1 <= i <= len(self.symbols):
            raise OutOfBounds(f"position {i} outside 1..{len(self.symbols)}")
        return self.symbols[i - 1]

    def __eq__(self, other) -> bool:
        return (isinstance(other, FiniteWord) and self.k == other.k
                and self.symbols == other.symbols)

    def __hash__(self) -> int:
        return hash((self.k, self.symbols))

    def __str__(self) -> str:
        return "".join(DIGITS[x] for x in self.symbols)

    def __repr__(self) -> str:
        s = str(self)
        if len(s) > 40:
            s = s[:37] + "..."
        return f"FiniteWord(k={self.k}, {s!r})"

    def prefix(self, n: int) -> "FiniteWord":
        return FiniteWord(self.alphabet, self.symbols[:n])

    def window(self, i: int, l: int) -> tuple:
        """``[w(i) ... w(i+l)]``."""
        if i < 1 or i + l > len(self):
            raise OutOfBounds(f"window [{i}, {i + l}] outside 1..{len(self)}")
        return self.symbols[i - 1:i + l]


# ---------------------------------------------------------------------------
# file format

def read_word(path, k: Optional[int] = None) -> FiniteWord:
    with open(path, encoding="utf-8") as fh:
        return parse_word_file(fh.read(), k)


def parse_word_file(text: str, k: Optional[int] = None) -> FiniteWord:
    header_k = None
    body = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, val = line[1:].strip().partition("=")
            if key.strip() == "k":
                try:
                    header_k = int(val)
                except ValueError:
                    raise WordParseError(f"bad header {line!r}") from None
            continue
        body.append(line)
    if len(body) > 1:
        raise WordParseError("word files hold a single line of symbols")
    if k is not None and header_k is not None and k != header_k:
        raise WordParseError(f"header says k={header_k} but k={k} was requested")
    return FiniteWord.from_string(body[0] if body else "", k if k is not None else header_k)


def format_word_file(w: FiniteWord) -> str:
    return f"# k={w.k}\n{w}\n"


# ---------------------------------------------------------------------------
# recurrence

def recurrence_time_at(w: FiniteWord, i: int, l: int) -> Optional[int]:
    """Least ``s >= 1`` with ``[w(i+s)...w(i+s+l)] = [w(i)...w(i+l)]``; None if not attained."""
    m = len(w)
    if l < 0 or i < 1 or i + l > m:
        raise OutOfBounds(f"window [{i}, {i + l}] outside 1..{m}")
    a = w.array
    base = a[i - 1:i + l]
    for s in range(1, m - i - l + 1):
        if np.array_equal(a[i - 1 + s:i + s + l], base):
            return s
    return None


def _run_lengths(eq: np.ndarray) -> np.ndarray:
    """For a boolean array, the length of the run of True starting at each index."""
    n = len(eq)
    idx = np.arange(n)
    stop = np.where(eq, n, idx)
    nxt = np.minimum.accumulate(stop[::-1])[::-1]
    return nxt - idx


@dataclass(frozen=True)
class RecurrenceTable:
    """``R(l)`` for ``l = 0..l_max``; None marks lengths whose windows never recur in the word."""
    values: tuple

    def __getitem__(self, l: int) -> Optional[int]:
        return self.values[l]

    def __len__(self) -> int:
        return len(self.values)

    def attained(self):
        return [(l, r) for l, r in enumerate(self.values) if r is not None]


def min_recurrence_time(w: FiniteWord, l_max: int) -> RecurrenceTable:
    """``R(l) = min_i R^i(l)`` restricted to the finite word, for every ``l <= l_max``.

    For each shift ``s`` the longest run of agreeing positions
    ``w(p) = w(p+s)`` gives every ``l`` with a window recurring after ``s``.
    """
    m = len(w)
    if l_max < 0 or l_max >= max(m, 1):
        raise OutOfBounds(f"l_max={l_max} needs a word longer than {l_max}")
    a = w.array
    out: list[Optional[int]] = [None] * (l_max + 1)
    filled = -1         # R(l) known for all l <= filled (smallest s wins)
    for s in range(1, m):
        if filled >= l_max:
            break
        eq = a[:-s] == a[s:]
        if not eq.any():
            continue
        best = int(_run_lengths(eq).max())    # windows of l+1 symbols with l < best
        top = min(best - 1, l_max)
        if top > filled:
            for l in range(filled + 1, top + 1):
                out[l] = s
            filled = top
    return RecurrenceTable(tuple(out))


def overlap_recurrence(w: FiniteWord, l: int) -> Optional[int]:
    """Least ``s > l`` with the window of ``l+1`` symbols at the first position recurring after ``s``."""
    m = len(w)
    if l < 0 or l + 1 > m:
        raise OutOfBounds(f"window of {l + 1} symbols does not fit in length {m}")
    a = w.array
    base = a[:l + 1]
    for s in range(l + 1, m - l):
        if np.array_equal(a[s:s + l + 1], base):
            return s
    return None


# ---------------------------------------------------------------------------
# word metric

@dataclass(frozen=True)
class Distance:
    value: Fraction
    resolution: Optional[Fraction] = None   # set when the windows agree everywhere

    @property
    def exact(self) -> bool:
        return self.resolution is None


def agreement_radius(u: Sequence[int], v: Sequence[int]) -> Optional[int]:
    """Largest ``a`` with agreement on ``|j| <= a`` for centered windows; -1 if the centers differ.

    None means the windows agree completely.
    """
    if len(u) != len(v):
        raise UnequalRadii(f"window lengths {len(u)} and {len(v)} differ")
    if len(u) % 2 == 0:
        raise UnequalRadii("centered windows have odd length")
    r = len(u) // 2
    for a in range(r + 1):
        if u[r - a] != v[r - a] or u[r + a] != v[r + a]:
            return a - 1
    return None


def word_metric(u: Sequence[int], v: Sequence[int]) -> Distance:
    """``2**-a`` where ``a`` is the agreement radius around the centre.

    Windows are given as odd-length sequences ``x(-r) ... x(r)``.  Windows that
    differ at the centre are at distance 1; identical windows give 0 with
    resolution ``2**-r``.
    """
    if isinstance(u, FiniteWord):
        u = u.symbols
    if isinstance(v, FiniteWord):
        v = v.symbols
    a = agreement_radius(u, v)
    if a is None:
        return Distance(Fraction(0), Fraction(1, 2 ** (len(u) // 2)))
    if a < 0:
        return Distance(Fraction(1))
    return Distance(Fraction(1, 2 ** a))


# ---------------------------------------------------------------------------
# aperiodicity verification

@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: Optional[tuple] = None     # (i, s, l)
    detail: dict = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return self.ok


def verify_phi_aperiodic(w: FiniteWord, profile: Profile, method: str = "lce",
                         ell: Optional[RightInverse] = None) -> Verdict:
    """Check that every recurrence of a window of ``l+1`` symbols after shift ``s`` has ``s > phi(l)``.

    On failure the witness ``(i, s, l)`` minimises ``i+s+l``, then ``i``, then ``s``.
    """
    if method == "naive":
        return _verify_naive(w, profile)
    if method != "lce":
        raise ValueError(f"unknown method {method!r}")
    ell = ell or RightInverse(profile)
    m = len(w)
    a = w.array
    best = None
    for s in range(1, m):
        L = ell(s)
        if L is None:
            # the gauge stays below s: no constraint here, nor for larger s
            break
        if best is not None and 1 + s + L > best[0]:
            break
        if s + L + 1 > m:
            # ell is non-decreasing, so larger shifts do not fit either
            break
        eq = a[:-s] == a[s:]
        runs = _run_lengths(eq[:m - s])
        hits = np.flatnonzero(runs >= L + 1)
        if hits.size:
            i = int(hits[0]) + 1
            key = (i + s + L, i, s)
            if best is None or key < best:
                best = key
    if best is None:
        return Verdict(True)
    total, i, s = best
    return Verdict(False, (i, s, total - i - s))


def _verify_naive(w: FiniteWord, profile: Profile) -> Verdict:
    """Direct loop over all triples (test oracle)."""
    x = w.symbols
    m = len(x)
    best = None
    for i in range(1, m + 1):
        for s in range(1, m - i + 1):
            for l in range(0, m - i - s + 1):
                if x[i - 1 + l] != x[i - 1 + s + l]:
                    break
                # windows of l+1 symbols agree
                if s <= profile.floor(l):
                    key = (i + s + l, i, s)
                    if best is None or key < best:
                        best = key
                    break
    if best is None:
        return Verdict(True)
    total, i, s = best
    return Verdict(False, (i, s, total - i - s))
