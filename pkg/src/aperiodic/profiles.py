"""Aperiodicity gauges and their exact integer machinery.

A gauge (profile) is a non-decreasing map from window lengths ``l >= 0`` to
non-negative reals.  Everything downstream only ever needs ``floor(phi(l))``
and the right inverse ``ell(s) = min{j : phi(j) >= s}``, so both are computed
in exact integer arithmetic.  Irrational gauges ``k**(delta*l)`` use integer
q-th roots and never touch floating point.

Textual form (shared with the command line)::

    linear                      phi(l) = l
    pow2                        phi(l) = 2**l
    exp:k=4,delta=3/10          phi(l) = 4**(3/10 * l)
    thresh:l0=5;<profile>       0 for l <= 5, <profile> above
    table:0,0,2,9               table, then constant
    table:0,0,2,9;step=3/2      table, then grows by 3/2 per step
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

import gmpy2

Rational = Union[int, Fraction]


class BoundedProfile(ValueError):
    """The gauge never reaches the requested level."""


class NoTailBound(ValueError):
    """No closed form or dominating envelope is known for the gauge tail."""


class ProfileParseError(ValueError):
    def __init__(self, text: str, position: int, message: str):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}\n"
                         f"{' ' * (position + len(message) + 16 + len(str(position)))}^")


# ---------------------------------------------------------------------------
# integer helpers

def iroot(n: int, q: int) -> int:
    """Floor of the q-th root of a non-negative integer."""
    if n < 0 or q < 1:
        raise ValueError("iroot needs n >= 0 and q >= 1")
    return int(gmpy2.iroot(gmpy2.mpz(n), q)[0])


def power_bounds(k: int, e: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational (lower, upper) bounds on ``k**e`` with gap ``2**-bits``."""
    e = Fraction(e)
    if e < 0:
        raise ValueError("negative exponent")
    scale = 1 << bits
    r = iroot(k ** e.numerator * scale ** e.denominator, e.denominator)
    lo = Fraction(r, scale)
    exact = r ** e.denominator == k ** e.numerator * scale ** e.denominator
    return lo, lo if exact else lo + Fraction(1, scale)


def power_lt(k: int, e: Fraction, x: Rational) -> bool:
    """Exact test ``k**e < x`` for rational ``x``."""
    x = Fraction(x)
    if x <= 0:
        return False
    e = Fraction(e)
    # k**(p/q) < a/b  <=>  k**p * b**q < a**q
    return k ** e.numerator * x.denominator ** e.denominator < x.numerator ** e.denominator


def exact_perfect_power(k: int, e: Fraction) -> Optional[int]:
    """Return ``k**e`` if it is an integer, else None."""
    e = Fraction(e)
    n = k ** e.numerator
    r = iroot(n, e.denominator)
    return r if r ** e.denominator == n else None


# ---------------------------------------------------------------------------
# tail descriptions of the floor-increment sequence d(l) = F(l) - F(l-1)

@dataclass(frozen=True)
class Periodic:
    """For l > start, d(l) = increments[(l - start - 1) % len(increments)]."""
    start: int
    increments: tuple[int, ...]

    def moved_to(self, start: int) -> "Periodic":
        shift = (start - self.start) % len(self.increments)
        inc = self.increments[shift:] + self.increments[:shift]
        return Periodic(start, inc)


@dataclass(frozen=True)
class Geometric:
    """For l > start, d(l) = first * ratio**(l - start - 1)."""
    start: int
    first: Fraction
    ratio: Fraction

    def moved_to(self, start: int) -> "Geometric":
        return Geometric(start, self.first * self.ratio ** (start - self.start), self.ratio)


@dataclass(frozen=True)
class Envelope:
    """phi(l) <= scale * (base**exponent)**l for every l."""
    start: int
    scale: Fraction
    base: int
    exponent: Fraction

    def moved_to(self, start: int) -> "Envelope":
        return Envelope(start, self.scale, self.base, self.exponent)


# ---------------------------------------------------------------------------
# profiles

class Profile:
    """Base class.  Subclasses are frozen dataclasses and hence hashable."""

    def floor(self, l: int) -> int:
        raise NotImplementedError

    def exact(self, l: int) -> Optional[Fraction]:
        """phi(l) as an exact rational, or None when irrational."""
        raise NotImplementedError

    def sup_floor(self) -> Optional[int]:
        """floor(sup phi) for bounded gauges, None when unbounded."""
        return None

    @property
    def bounded(self) -> bool:
        return self.sup_floor() is not None

    def tail(self):
        raise NoTailBound(f"no tail description for {self!r}")

    def to_text(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Linear(Profile):
    def floor(self, l: int) -> int:
        return l

    def exact(self, l: int) -> Fraction:
        return Fraction(l)

    def tail(self) -> Periodic:
        return Periodic(0, (1,))

    def to_text(self) -> str:
        return "linear"


@dataclass(frozen=True)
class PowerOfTwo(Profile):
    def floor(self, l: int) -> int:
        return 1 << l

    def exact(self, l: int) -> Fraction:
        return Fraction(1 << l)

    def tail(self) -> Geometric:
        return Geometric(0, Fraction(1), Fraction(2))

    def to_text(self) -> str:
        return "pow2"


@dataclass(frozen=True)
class ExponentialBase(Profile):
    """phi(l) = k**(delta*l) with rational delta > 0."""
    k: int
    delta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.k < 2:
            raise ValueError("base must be at least 2")
        if self.delta <= 0:
            raise ValueError("delta must be positive")

    def floor(self, l: int) -> int:
        return _exp_floor(self.k, self.delta.numerator, self.delta.denominator, l)

    def exact(self, l: int) -> Optional[Fraction]:
        v = exact_perfect_power(self.k, self.delta * l)
        return None if v is None else Fraction(v)

    def tail(self):
        b = exact_perfect_power(self.k, self.delta)
        if b is not None:
            return Geometric(0, Fraction(b - 1), Fraction(b))
        return Envelope(0, Fraction(1), self.k, self.delta)

    def to_text(self) -> str:
        return f"exp:k={self.k},delta={_fmt(self.delta)}"


@lru_cache(maxsize=1 << 16)
def _exp_floor(k: int, p: int, q: int, l: int) -> int:
    return iroot(k ** (p * l), q)


@dataclass(frozen=True)
class Table(Profile):
    """Explicit values for l < len(values); afterwards values[-1] + step*(l - len + 1)."""
    values: tuple[Fraction, ...]
    step: Fraction = Fraction(0)

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "step", Fraction(self.step))
        if not vals:
            raise ValueError("table needs at least one value")
        if vals[0] < 0 or any(b < a for a, b in zip(vals, vals[1:])):
            raise ValueError("table values must be non-negative and non-decreasing")
        if self.step < 0:
            raise ValueError("step must be non-negative")

    def exact(self, l: int) -> Fraction:
        n = len(self.values)
        if l < n:
            return self.values[l]
        return self.values[-1] + self.step * (l - n + 1)

    def floor(self, l: int) -> int:
        return math.floor(self.exact(l))

    def sup_floor(self) -> Optional[int]:
        return math.floor(self.values[-1]) if self.step == 0 else None

    def tail(self) -> Periodic:
        start = len(self.values) - 1
        period = self.step.denominator
        inc = tuple(self.floor(start + j) - self.floor(start + j - 1) for j in range(1, period + 1))
        return Periodic(start, inc)

    def to_text(self) -> str:
        body = ",".join(_fmt(v) for v in self.values)
        return f"table:{body}" + (f";step={_fmt(self.step)}" if self.step else "")


@dataclass(frozen=True)
class Thresholded(Profile):
    """0 for l <= l0 and inner(l) for l > l0."""
    inner: Profile
    l0: int

    def floor(self, l: int) -> int:
        return 0 if l <= self.l0 else self.inner.floor(l)

    def exact(self, l: int) -> Optional[Fraction]:
        return Fraction(0) if l <= self.l0 else self.inner.exact(l)

    def sup_floor(self) -> Optional[int]:
        return self.inner.sup_floor()

    def tail(self):
        t = self.inner.tail()
        if t.start >= self.l0 + 1:
            return t
        if isinstance(t, Periodic):
            p = len(t.increments)
            start = t.start + p * -(-(self.l0 + 1 - t.start) // p)
            return t.moved_to(start)
        return t.moved_to(self.l0 + 1)

    def to_text(self) -> str:
        return f"thresh:l0={self.l0};{self.inner.to_text()}"


def _fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def floor_eval(profile: Profile, l: int) -> int:
    """Exact ``floor(phi(l))``."""
    if l < 0:
        raise ValueError("window length must be non-negative")
    return profile.floor(l)


# ---------------------------------------------------------------------------
# right inverse

def right_inverse(profile: Profile, s: int) -> int:
    """``ell(s) = min{j >= 0 : phi(j) >= s}`` for integer ``s``."""
    if s <= 0:
        return 0
    sup = profile.sup_floor()
    if sup is not None and sup < s:
        raise BoundedProfile(f"{profile.to_text()} stays below {s}")
    if profile.floor(0) >= s:
        return 0
    lo, hi = 0, 1
    while profile.floor(hi) < s:
        lo, hi = hi, hi * 2
    # invariant: floor(lo) < s <= floor(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if profile.floor(mid) >= s:
            hi = mid
        else:
            lo = mid
    return hi


class RightInverse:
    """Memoised ``ell`` for one profile; ``ell(s)`` is None beyond a bounded gauge."""

    def __init__(self, profile: Profile):
        self.profile = profile
        self._cache: dict[int, Optional[int]] = {}

    def __call__(self, s: int) -> Optional[int]:
        try:
            return self._cache[s]
        except KeyError:
            pass
        try:
            v = right_inverse(self.profile, s)
        except BoundedProfile:
            v = None
        self._cache[s] = v
        return v

    def strict(self, s: int) -> int:
        v = self(s)
        if v is None:
            raise BoundedProfile(f"{self.profile.to_text()} stays below {s}")
        return v


# ---------------------------------------------------------------------------
# weighted increment series  sum_{l >= start} (F(l) - F(l-1)) / c**l

@dataclass(frozen=True)
class SeriesBound:
    lo: Fraction
    hi: Optional[Fraction]      # None: the series diverges
    exact: bool
    terms: int                  # explicit terms summed (0 for closed forms)
    tail_upper: Fraction        # certified bound on the discarded tail

    @property
    def diverges(self) -> bool:
        return self.hi is None


def increment_series(profile: Profile, c: Rational, start: int = 1,
                     terms: int = 64, bits: int = 96) -> SeriesBound:
    """Enclose ``sum_{l>=start} (floor(phi(l)) - floor(phi(l-1))) / c**l``.

    Eventually periodic or geometric increments are summed in closed form.
    Gauges only known through ``phi(l) <= K*a**l`` are truncated after
    ``terms`` explicit terms and the remainder bounded by summation by parts.
    """
    c = Fraction(c)
    if c <= 1:
        raise ValueError("c must exceed 1")
    start = max(start, 1)
    form = profile.tail()
    F = profile.floor

    def partial(a: int, b: int) -> Fraction:
        # sum over a <= l <= b, common denominator c.numerator**b
        if b < a:
            return Fraction(0)
        num = 0
        p, q = c.numerator, c.denominator
        for l in range(a, b + 1):
            d = F(l) - F(l - 1)
            if d:
                num += d * q ** l * p ** (b - l)
        return Fraction(num, p ** b)

    if isinstance(form, (Periodic, Geometric)):
        T = max(form.start, start - 1)
        form = form.moved_to(T)
        head = partial(start, T)
        if isinstance(form, Periodic):
            per = len(form.increments)
            block = sum(Fraction(d) / c ** (T + j + 1) for j, d in enumerate(form.increments))
            tail = block / (1 - c ** -per)
        else:
            if form.first == 0:
                tail = Fraction(0)
            elif form.ratio >= c:
                return SeriesBound(head, None, True, 0, Fraction(0))
            else:
                tail = form.first / c ** (T + 1) / (1 - form.ratio / c)
        total = head + tail
        return SeriesBound(total, total, True, 0, Fraction(0))

    if isinstance(form, Envelope):
        a_lo, a_hi = power_bounds(form.base, form.exponent, bits)
        L = max(start - 1, form.start) + terms
        head = partial(start, L)
        head_lo, head_hi = _round_down(head, bits), _round_up(head, bits)
        if a_lo > c:
            # F(l)/c**l is unbounded, so the positive series diverges
            return SeriesBound(head_lo, None, False, L - start + 1, Fraction(0))
        if a_hi >= c:
            raise NoTailBound(f"envelope base is not certifiably below c={c}")
        r = _round_up(a_hi / c, bits)
        if r >= 1:
            raise NoTailBound(f"envelope base is not certifiably below c={c}")
        tail = (-Fraction(F(L)) / c ** (L + 1)
                + (1 - 1 / c) * form.scale * r ** (L + 1) / (1 - r))
        tail = _round_up(max(tail, Fraction(0)), bits)
        return SeriesBound(head_lo, head_hi + tail, False, L - start + 1, tail)

    raise NoTailBound(f"no tail description for {profile!r}")


def _round_down(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.floor(x * (1 << bits)), 1 << bits)


def _round_up(x: Fraction, bits: int) -> Fraction:
    return Fraction(math.ceil(x * (1 << bits)), 1 << bits)


# ---------------------------------------------------------------------------
# exact comparisons against an exponential

def leq_exponential(profile: Profile, l: int, k: int, e: Fraction) -> bool:
    """Exact test ``phi(l) <= k**(e*l)``."""
    e = Fraction(e)
    if isinstance(profile, Thresholded):
        return True if l <= profile.l0 else leq_exponential(profile.inner, l, k, e)
    if isinstance(profile, ExponentialBase):
        # k1**(d1*l) <= k**(e*l)  <=>  k1**(d1*l*Q) <= k**(e*l*Q) for a common denominator Q
        if l == 0:
            return True
        Q = profile.delta.denominator * e.denominator
        return (profile.k ** (profile.delta * Q * l).numerator
                <= k ** (e * Q * l).numerator)
    x = profile.exact(l)
    if x is None:
        raise NoTailBound(f"cannot compare {profile!r} exactly")
    if x <= 0:
        return True
    el = e * l
    return x.numerator ** el.denominator <= x.denominator ** el.denominator * k ** el.numerator


def _exp_growth_start(base_k: int, e: Fraction, target_at, slope: Fraction, limit: int) -> Optional[int]:
    """Least T (by doubling) with a**T >= target_at(T) and a**T*(a-1) >= slope, a = base_k**e.

    From such a T on, a**l - (affine target with the given slope) stays >= 0
    by induction, which certifies a tail.
    """
    a_lo, _ = power_bounds(base_k, e)
    if a_lo <= 1:
        return None
    T = 1
    while T <= limit:
        v = _exp_floor(base_k, e.numerator, e.denominator, T)
        if v >= target_at(T) and v * (a_lo - 1) >= slope:
            return T
        T *= 2
    return None


def dominance_start(profile: Profile, k: int, e: Fraction, limit: int = 1 << 20) -> Optional[int]:
    """Least ``l1`` with ``phi(l) <= k**(e*l)`` for all ``l >= l1``; None if there is none."""
    e = Fraction(e)
    inner, l0 = (profile.inner, profile.l0) if isinstance(profile, Thresholded) else (profile, -1)

    if isinstance(inner, ExponentialBase):
        T = 0 if leq_exponential(inner, 1, k, e) else None
    elif isinstance(inner, PowerOfTwo):
        T = None if power_lt(k, e, 2) else 0
    elif isinstance(inner, Linear):
        T = _exp_growth_start(k, e, lambda t: t, Fraction(1), limit)
    elif isinstance(inner, Table):
        n = len(inner.values)
        T = _exp_growth_start(k, e, lambda t: math.ceil(inner.exact(max(t, n - 1) + 0)),
                              inner.step, limit)
        if T is not None:
            T = max(T, n - 1)
            while not (_exp_floor(k, e.numerator, e.denominator, T) >= math.ceil(inner.exact(T))):
                T += 1
    else:
        raise NoTailBound(f"no dominance certificate for {profile!r}")
    if T is None:
        return None
    T = max(T, 0)
    for l in range(T - 1, -1, -1):
        if not leq_exponential(profile, l, k, e):
            return l + 1
    return 0


def growth_threshold(profile: Profile, limit: int = 1 << 20) -> Optional[int]:
    """Least ``L`` with ``floor(phi(l)) > l`` for every ``l >= L``; None if it never settles."""
    inner, l0 = (profile.inner, profile.l0) if isinstance(profile, Thresholded) else (profile, -1)
    if isinstance(inner, Linear):
        return None
    if inner.bounded:
        return None
    if isinstance(inner, PowerOfTwo):
        T = 0
    elif isinstance(inner, ExponentialBase):
        T = _exp_growth_start(inner.k, inner.delta, lambda t: t + 1, Fraction(1), limit)
    elif isinstance(inner, Table):
        n = len(inner.values)
        if inner.step < 1:
            return None
        T = n - 1
        while inner.floor(T) <= T:
            if inner.step == 1 or T > limit:
                return None
            T += 1
    else:
        raise NoTailBound(f"no growth certificate for {profile!r}")
    if T is None:
        return None
    T = max(T, l0 + 1)
    for l in range(T - 1, -1, -1):
        if profile.floor(l) <= l:
            return l + 1
    return 0


# ---------------------------------------------------------------------------
# textual form

GRAMMAR = ("linear | pow2 | exp:k=K,delta=P/Q | thresh:l0=L;<gauge> | "
           "table:V0,V1,...[;step=P/Q]")


def parse_profile(text: str) -> Profile:
    """Parse ``GRAMMAR``; ``to_text()`` produces the inverse."""
    return _parse(text, 0)


def _parse(text: str, offset: int) -> Profile:
    full = text
    t = text.strip()
    pad = offset + (len(text) - len(text.lstrip()))
    if t == "linear":
        return Linear()
    if t == "pow2":
        return PowerOfTwo()
    head, sep, body = t.partition(":")
    if not sep:
        raise ProfileParseError(full, pad, "unknown profile kind")
    base = pad + len(head) + 1
    if head == "exp":
        opts = _options(body, base, full, required=("k", "delta"))
        k = _int(opts["k"], full)
        delta = _frac(opts["delta"], full)
        if not 0 < delta[0]:
            raise ProfileParseError(full, opts["delta"][1], "delta must be positive")
        if k < 2:
            raise ProfileParseError(full, opts["k"][1], "k must be at least 2")
        return ExponentialBase(k, delta[0])
    if head == "thresh":
        first, semi, rest = body.partition(";")
        if not semi:
            raise ProfileParseError(full, base + len(body), "expected ';<profile>'")
        opts = _options(first, base, full, required=("l0",))
        l0 = _int(opts["l0"], full)
        return Thresholded(_parse(rest, base + len(first) + 1), l0)
    if head == "table":
        vals, semi, rest = body.partition(";")
        values = []
        pos = base
        for item in vals.split(","):
            values.append(_frac((item, pos), full)[0])
            pos += len(item) + 1
        step = Fraction(0)
        if semi:
            opts = _options(rest, base + len(vals) + 1, full, required=("step",))
            step = _frac(opts["step"], full)[0]
        try:
            return Table(tuple(values), step)
        except ValueError as exc:
            raise ProfileParseError(full, base, str(exc)) from None
    raise ProfileParseError(full, pad, f"unknown profile kind {head!r}")


def _options(body: str, base: int, full: str, required=()) -> dict:
    out = {}
    pos = base
    for item in body.split(","):
        key, eq, val = item.partition("=")
        if not eq:
            raise ProfileParseError(full, pos, "expected key=value")
        out[key.strip()] = (val.strip(), pos + len(key) + 1)
        pos += len(item) + 1
    for key in required:
        if key not in out:
            raise ProfileParseError(full, base, f"missing {key}=")
    return out


def _int(item, full: str) -> int:
    val, pos = item
    try:
        return int(val)
    except ValueError:
        raise ProfileParseError(full, pos, "expected an integer") from None


def _frac(item, full: str) -> tuple[Fraction, int]:
    val, pos = item
    try:
        x = Fraction(val.strip())
    except (ValueError, ZeroDivisionError):
        raise ProfileParseError(full, pos, "expected a rational number") from None
    return x, pos
