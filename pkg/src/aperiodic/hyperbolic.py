"""Certified constants for aperiodic geodesics on closed hyperbolic manifolds.

Nothing geometric is built here.  The functions evaluate, with interval
arithmetic, the quantities a counting argument over horospherical cubes needs:
chord lengths on horospheres, the multiplicity constants ``c1(s)``, ``c2(s)``
and their product, the feasibility conditions for a discrete gauge, the
passage between discrete and continuous gauges, and the full parameter chain
that produces a minimal length ``l0`` for the gauge ``exp(delta (n-1) l)``.

Conventions: ``n`` is the manifold dimension, ``i_M`` the injectivity radius,
``r0`` the time step between samples, ``eps_bar0`` the discrete closeness
threshold, ``s_bar0`` the minimal discrete shift and ``R`` the edge length of
the reference cubes (1 by default).  Ceilings are taken of interval upper
ends, which can only enlarge a constant that multiplies a subtracted sum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import mpmath
from mpmath import iv

from . import intervals as I
from .profiles import (
    ExponentialBase, Linear, PowerOfTwo, Profile, RightInverse, Table, Thresholded,
    growth_threshold, increment_series, power_bounds, power_lt,
)

PREC = 256
SCHEMA = "aperiodic.hyperbolic/1"


class ParameterOrderViolated(ValueError):
    pass


class ShiftTooSmall(ValueError):
    pass


class COutOfRange(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    pass


class Infeasible(ValueError):
    pass


def _ln2():
    return iv.log(iv.mpf(2))


# ---------------------------------------------------------------------------
# horosphere formulas

def horosphere_scale(t):
    """Factor by which horospherical lengths grow when moving the horosphere by ``t``."""
    with I.precision(PREC):
        return iv.exp(I.to_iv(t))


def horo_chord(d):
    """Horospherical distance ``2 sinh(d/2)`` between points at hyperbolic distance ``d``."""
    with I.precision(PREC):
        d = I.to_iv(d)
        if I.lo(d) < 0:
            raise ValueError("distance must be non-negative")
        return 2 * I.sinh(d / 2)


def horo_chord_inverse(h):
    """Hyperbolic distance ``2 asinh(h/2)`` for a horospherical distance ``h``."""
    with I.precision(PREC):
        h = I.to_iv(h)
        if I.lo(h) < 0:
            raise ValueError("distance must be non-negative")
        return 2 * I.asinh(h / 2)


# ---------------------------------------------------------------------------
# parameters

@dataclass(frozen=True)
class HyperbolicParams:
    n: int
    i_M: object
    eps_bar0: object
    r0: object
    delta: Fraction = Fraction(1, 2)
    R: object = 1
    s_bar0: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.n < 2:
            raise ValueError("dimension must be at least 2")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        with I.precision(PREC):
            chain = [_ln2(), self.iv("r0"), self.iv("eps_bar0"), self.iv("i_M")]
            names = ["ln 2", "r0", "eps_bar0", "i_M"]
            for (a, na), (b, nb) in zip(zip(chain, names), zip(chain[1:], names[1:])):
                if not I.certainly_lt(a, b):
                    raise ParameterOrderViolated(f"need {na} < {nb}")
            if I.lo(self.iv("R")) <= 0:
                raise ValueError("R must be positive")

    def iv(self, name: str):
        return I.to_iv(getattr(self, name))

    @property
    def eps0(self):
        """Continuous closeness threshold ``eps_bar0 - r0``."""
        with I.precision(PREC):
            return self.iv("eps_bar0") - self.iv("r0")

    @property
    def s0(self):
        """Continuous minimal shift ``(s_bar0 + 1) r0``."""
        if self.s_bar0 is None:
            raise ValueError("s_bar0 is not set")
        with I.precision(PREC):
            return (self.s_bar0 + 1) * self.iv("r0")

    def with_shift(self, s_bar0: int) -> "HyperbolicParams":
        return HyperbolicParams(self.n, self.i_M, self.eps_bar0, self.r0, self.delta, self.R, s_bar0)


# ---------------------------------------------------------------------------
# multiplicity constants

@dataclass(frozen=True)
class CeilValue:
    value: int
    interval: object
    straddles: bool     # the enclosure contains an integer boundary; value is the safe upper one
    formula: str

    def to_dict(self) -> dict:
        d = I.as_json(self.interval, self.formula)
        d.update({"ceil": self.value, "straddles": self.straddles})
        return d


class GeometryConstants:
    """``r1(s), r2(s), c1(s), c2(s)`` and ``cbar(s_bar0) = c1(s_bar0+1) c2(s_bar0+1)``."""

    def __init__(self, p: HyperbolicParams, ell_bar: RightInverse):
        self.p = p
        self.ell = ell_bar
        with I.precision(PREC):
            n = p.n
            self._R = p.iv("R")
            self._root = iv.sqrt(iv.mpf(n - 1)) * self._R
            self._r0 = p.iv("r0")
            self._eb = p.iv("eps_bar0")
            self._vol_half = I.sinh_power_integral(n, p.iv("i_M") / 2)
            self._outer0 = 2 * I.asinh(iv.exp(self._r0) * self._root / 4)
        self._cache: dict = {}

    def _gap(self, s: int) -> int:
        L = self.ell(s)
        if L is None or L >= s:
            raise ShiftTooSmall(f"ell({s}) = {L} is not below {s}")
        return s - 1 - L

    def r1(self, s: int):
        with I.precision(PREC):
            x = iv.exp(-self._gap(s) * self._r0) * self._root / 2
            return 2 * I.sinh(self._eb + I.asinh(x))

    def r2(self, s: int):
        with I.precision(PREC):
            x = iv.exp(-(s - 1) * self._r0) * self._root / 4
            return 2 * I.asinh(x)

    def c1(self, s: int) -> CeilValue:
        key = ("c1", s)
        if key not in self._cache:
            with I.precision(PREC):
                v = ((self.r1(s) + self._root) / self._R) ** (self.p.n - 1)
                up, st = I.ceil_upper(v)
            self._cache[key] = CeilValue(up, v, st, "ceil(((r1(s) + sqrt(n-1) R) / R)^(n-1))")
        return self._cache[key]

    def c2(self, s: int) -> CeilValue:
        key = ("c2", s)
        if key not in self._cache:
            with I.precision(PREC):
                radius = self._outer0 + self.r2(s) + self._eb
                v = I.sinh_power_integral(self.p.n, radius) / self._vol_half
                up, st = I.ceil_upper(v)
            self._cache[key] = CeilValue(
                up, v, st, "ceil(V(2 asinh(e^r0 sqrt(n-1) R/4) + r2(s) + eps_bar0) / V(i_M/2))")
        return self._cache[key]

    def cbar(self, s_bar0: int) -> int:
        s = s_bar0 + 1
        return self.c1(s).value * self.c2(s).value

    def rough(self) -> CeilValue:
        return rough_cbar_bound(self.p.n, self.p.i_M)


def rough_cbar_bound(n: int, i_M) -> CeilValue:
    """The shift-independent upper bound for ``cbar``, a product of two ceilings."""
    with I.precision(PREC):
        im = I.to_iv(i_M)
        if I.lo(im) <= 0:
            raise ValueError("i_M must be positive")
        first = (3 * I.cosh(im) * iv.sqrt(iv.mpf(n + 1))) ** (n - 1)
        f_up, f_st = I.ceil_upper(first)
        top = iv.sqrt(5 * im + 4 * iv.log(iv.sqrt(iv.mpf(n + 1)) / 2))
        ratio = I.sinh_power_integral(n, top) / I.sinh_power_integral(n, im / 2)
        r_up, r_st = I.ceil_upper(ratio)
        return CeilValue(f_up * r_up, first * ratio, f_st or r_st,
                         "ceil((3 cosh(i_M) sqrt(n+1))^(n-1)) * "
                         "ceil(V(sqrt(5 i_M + 4 ln(sqrt(n+1)/2))) / V(i_M/2))")


# ---------------------------------------------------------------------------
# feasibility of a discrete gauge

@dataclass(frozen=True)
class FeasibilityReport:
    s_bar0: int
    growth_ok: bool
    failing_l: Optional[int]          # first l >= s_bar0 with floor(phibar(l)) <= l
    ell_at_shift: int
    cbar: int
    margin_lo: Optional[Fraction]     # 2^(n-1) - cbar * sum - c
    margin_hi: Optional[Fraction]

    @property
    def status(self) -> str:
        if not self.growth_ok:
            return "unsatisfied"
        if self.margin_lo is not None and self.margin_lo >= 0:
            return "satisfied"
        if self.margin_hi is None or self.margin_hi < 0:
            return "unsatisfied"
        return "unknown"

    @property
    def satisfied(self) -> bool:
        return self.status == "satisfied"


def _first_small_l(phibar: Profile, start: int, threshold: Optional[int]) -> Optional[int]:
    """First ``l >= start`` with ``floor(phibar(l)) <= l``; None if there is none."""
    if threshold is None:
        # the gauge never settles above the diagonal; search a bounded stretch
        for l in range(start, start + 4096):
            if phibar.floor(l) <= l:
                return l
        return None
    for l in range(start, max(start, threshold)):
        if phibar.floor(l) <= l:
            return l
    return None


def check_feasibility(p: HyperbolicParams, phibar: Profile, c, cbar: int,
                      s_bar0: Optional[int] = None, terms: int = 64) -> FeasibilityReport:
    """Both feasibility conditions at the shift ``s_bar0``.

    The first asks ``floor(phibar(l)) > l`` for every ``l >= s_bar0`` (certified
    by an induction on the closed form) and ``ell(s_bar0) >= 1``.  The second asks
    ``2^(n-1) - cbar * sum_{l >= ell(s_bar0)} (F(l) - F(l-1)) / c^l >= c``.
    """
    c = Fraction(c)
    top = 2 ** (p.n - 1)
    if not 1 < c < top:
        raise COutOfRange(f"c={c} is not inside (1, {top})")
    s_bar0 = p.s_bar0 if s_bar0 is None else s_bar0
    if s_bar0 is None:
        raise ValueError("s_bar0 is required")
    ell = RightInverse(phibar)
    threshold = growth_threshold(phibar)
    failing = _first_small_l(phibar, s_bar0, threshold)
    L = ell(s_bar0)
    if L is None:
        raise ValueError("the gauge must be unbounded")
    growth_ok = failing is None and L >= 1
    if not growth_ok:
        return FeasibilityReport(s_bar0, False, failing, L, cbar, None, None)
    sb = increment_series(phibar, c, start=L, terms=terms)
    if sb.diverges:
        return FeasibilityReport(s_bar0, True, None, L, cbar, None, None)
    lo = top - cbar * sb.hi - c
    hi = top - cbar * sb.lo - c
    return FeasibilityReport(s_bar0, True, None, L, cbar, lo, hi)


@dataclass(frozen=True)
class ShiftSearch:
    s_bar0: int
    cbar: int
    report: FeasibilityReport
    evaluations: int
    lower: int                  # least shift allowed by the growth condition


def minimal_shift_search(p: HyperbolicParams, phibar: Profile, c,
                         cbar_fn: Optional[Callable[[int], int]] = None,
                         cap: int = 1 << 80) -> ShiftSearch:
    """Least ``s_bar0`` meeting both feasibility conditions.

    Feasibility only improves with the shift (the tail sum shrinks and
    ``cbar`` does not grow), so the search gallops upward from the least shift
    allowed by the growth condition and then bisects.  The bracket is
    re-checked at the end.
    """
    c = Fraction(c)
    if cbar_fn is None:
        g = GeometryConstants(p, RightInverse(phibar))
        cbar_fn = g.cbar
    threshold = growth_threshold(phibar)
    if threshold is None:
        raise Infeasible(f"floor({phibar.to_text()}(l)) > l fails for arbitrarily large l")
    ell = RightInverse(phibar)
    lower = max(threshold, phibar.floor(0) + 1)      # ell(s) >= 1 iff s > floor(phibar(0))
    while ell(lower) < 1:
        lower += 1
    evals = 0
    memo: dict = {}

    def test(s: int) -> FeasibilityReport:
        nonlocal evals
        if s not in memo:
            evals += 1
            memo[s] = check_feasibility(p, phibar, c, cbar_fn(s), s_bar0=s)
        return memo[s]

    if test(lower).satisfied:
        best = lower
    else:
        lo, step = lower, 1
        while True:
            hi = lower + step
            if hi > cap:
                raise SearchBudgetExceeded(f"no feasible shift up to {cap}")
            if test(hi).satisfied:
                break
            lo, step = hi, step * 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if test(mid).satisfied:
                hi = mid
            else:
                lo = mid
        best = hi
    rep = test(best)
    assert rep.satisfied and (best == lower or not test(best - 1).satisfied)
    return ShiftSearch(best, rep.cbar, rep, evals, lower)


# ---------------------------------------------------------------------------
# discrete <-> continuous gauges

def profile_value(profile: Profile, x):
    """Enclosure of ``phi(x)`` at a real argument ``x >= 0``.

    Tables are read as step functions, ``phi(x) = phi(floor(x))``.
    """
    x = I.to_iv(x)
    if isinstance(profile, Linear):
        return x
    if isinstance(profile, PowerOfTwo):
        return iv.exp(x * _ln2())
    if isinstance(profile, ExponentialBase):
        return iv.exp(x * I.to_iv(profile.delta) * iv.log(iv.mpf(profile.k)))
    if isinstance(profile, Table):
        a, b = I.floor_lower(x)
        fa = I.to_iv(profile.exact(max(a, 0)))
        if not b:
            return fa
        return I.hull(fa, I.to_iv(profile.exact(int(mpmath.floor(I.hi(x))))))
    if isinstance(profile, Thresholded):
        l0 = iv.mpf(profile.l0)
        if I.hi(x) <= I.lo(l0):
            return iv.mpf(0)
        inner = profile_value(profile.inner, x)
        if I.lo(x) > I.hi(l0):
            return inner
        return I.hull(iv.mpf(0), inner)
    raise TypeError(f"no real extension for {profile!r}")


@dataclass(frozen=True)
class ContinuousGauge:
    """``phi(l) = max(0, r0 * phibar((l - r0)/r0) - r0)`` for ``l >= r0``."""
    phibar: Profile
    r0: object
    s0: object
    eps0: object

    def __call__(self, l):
        with I.precision(PREC):
            r0 = I.to_iv(self.r0)
            l = I.to_iv(l)
            if I.lo(l) < I.lo(r0) and I.hi(l) < I.hi(r0):
                raise ValueError("the continuous gauge is defined for l >= r0")
            x = (l - r0) / r0
            if I.lo(x) < 0:
                x = iv.mpf([0, I.hi(x)])
            v = r0 * profile_value(self.phibar, x) - r0
            return iv.mpf([max(I.lo(v), 0), max(I.hi(v), 0)])


@dataclass(frozen=True)
class DiscreteGauge:
    """``phibar(l) = phi(l r0) / r0`` on integers."""
    phi: Callable
    r0: object
    s_bar0: int
    eps_bar0: object

    def __call__(self, l: int):
        with I.precision(PREC):
            r0 = I.to_iv(self.r0)
            return self.phi(l * r0) / r0


def discrete_to_continuous(phibar: Profile, s_bar0: int, eps_bar0, r0) -> ContinuousGauge:
    """Discrete gauge and parameters to the continuous gauge, ``s0 = (s_bar0 + 1) r0``, ``eps0 = eps_bar0 - r0``."""
    with I.precision(PREC):
        r = I.to_iv(r0)
        e = I.to_iv(eps_bar0)
        if not I.certainly_lt(r, e):
            raise ParameterOrderViolated("need r0 < eps_bar0")
        return ContinuousGauge(phibar, r, (s_bar0 + 1) * r, e - r)


def continuous_to_discrete(phi: Callable, s0, eps0, r0) -> DiscreteGauge:
    """Continuous gauge to the discrete one, with parameters ``(ceil(s0/r0), eps0, r0)``."""
    with I.precision(PREC):
        r = I.to_iv(r0)
        e = I.to_iv(eps0)
        if not I.certainly_lt(r, e):
            raise ParameterOrderViolated("need r0 < eps0")
        sb, _ = I.ceil_upper(I.to_iv(s0) / r)
        return DiscreteGauge(phi, r, sb, e)


# ---------------------------------------------------------------------------
# the full parameter chain

@dataclass
class GeodesicReport:
    n: int
    delta: Fraction
    i_M: object
    eps0: object
    delta_bar: Fraction
    delta_tilde: object
    r0: object
    c: Fraction
    s_bar0: int
    cbar: int
    cbar_rough: int
    s0: object
    N: int
    s_prime: object
    l1: int
    psi_A: object            # c(dt, l) = A - B exp(-dt (n-1) l)
    psi_B: object
    c_l1: object
    ln_c0: object
    c0: object
    l0: object
    l0_tilde: int
    flags: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    search: Optional[ShiftSearch] = None

    def c_of(self, l):
        """``c(dt, l)``, the coefficient in ``psi(l) = c(dt, l) exp(dt (n-1) l)``."""
        with I.precision(PREC):
            return self.psi_A - self.psi_B * iv.exp(-self.delta_tilde * (self.n - 1) * I.to_iv(l))

    def max_width(self) -> float:
        with I.precision(PREC):
            ws = [I.width(x) for x in (self.delta_tilde, self.r0, self.s0, self.psi_A,
                                       self.c_l1, self.ln_c0, self.c0, self.l0)]
            return float(max(ws))

    def to_dict(self) -> dict:
        f = lambda x: str(x)
        with I.precision(PREC):
            result = {
                "delta_bar": {"value": f(self.delta_bar), "formula": "least dyadic grid point in [delta, 1) meeting both constraints"},
                "delta_tilde": I.as_json(self.delta_tilde, "delta_bar ln 2 / ln(3 - delta_bar)"),
                "r0": I.as_json(self.r0, "ln(3 - delta_bar)"),
                "eps_bar0": I.as_json(self.r0 + I.to_iv(self.eps0), "r0 + eps0"),
                "c": {"value": f(self.c), "formula": "rational inside (2^(delta_bar (n-1)), 2^(n-1)) near the midpoint"},
                "s_bar0": {"value": self.s_bar0, "formula": "least shift meeting both feasibility conditions"},
                "cbar": {"value": self.cbar, "formula": "c1(s_bar0 + 1) * c2(s_bar0 + 1)"},
                "cbar_rough": {"value": self.cbar_rough, "formula": "shift-independent bound"},
                "s0": I.as_json(self.s0, "(s_bar0 + 1) r0"),
                "N": {"value": self.N, "formula": "ceil(s0 / (2 i_M))"},
                "s_prime": I.as_json(self.s_prime, "2 i_M"),
                "l1": {"value": self.l1, "formula": "least integer l > ln(3 - delta_tilde) with c(delta_tilde, l) > 0"},
                "psi_A": I.as_json(self.psi_A, "ln(3 - delta_bar) / 2^(delta_bar (n-1))"),
                "psi_B": I.as_json(self.psi_B, "ln(3 - delta_bar)"),
                "c_l1": I.as_json(self.c_l1, "A - B exp(-delta_tilde (n-1) l1)"),
                "ln_c0": I.as_json(self.ln_c0, "ln c(delta_tilde, l1) - delta_tilde (n-1)(2 s' + 2 N s0)"),
                "c0": I.as_json(self.c0, "exp(ln_c0)"),
                "l0": I.as_json(self.l0, "max(l1, 3 N s0 + 2 i_M)"),
                "l0_tilde": {"value": self.l0_tilde, "formula": "max(l0, ceil(-ln c0 / ((delta_tilde - delta)(n-1))))"},
            }
        return {"schema": SCHEMA,
                "inputs": {"n": self.n, "delta": str(self.delta), "i_M": str(self.i_M), "eps0": str(self.eps0)},
                "result": result, "checks": self.checks, "flags": self.flags}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _grid(delta: Fraction, K: int) -> list:
    step = (1 - delta) / 2 ** K
    return [delta + j * step for j in range(2 ** K)]


def geodesic_parameter_chain(n: int, delta, i_M, eps0, K: int = 5, R=1,
                             search_cap: int = 1 << 80) -> GeodesicReport:
    """Run the parameter chain from ``(n, delta, i_M, eps0)`` to ``l0``."""
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    flags: list = []
    with I.precision(PREC):
        ln2 = _ln2()
        im, e0 = I.to_iv(i_M), I.to_iv(eps0)
        if not I.certainly_gt(im, ln2):
            raise Infeasible("need i_M > ln 2")
        if not (I.lo(e0) > 0 and I.certainly_lt(ln2 + e0, im)):
            raise Infeasible("need eps0 > 0 and ln 2 + eps0 < i_M")

        def ok(db: Fraction) -> bool:
            r0 = iv.log(3 - I.to_iv(db))
            dt = I.to_iv(db) * ln2 / r0
            return I.certainly_lt(r0 + e0, im) and I.certainly_gt(dt, I.to_iv(delta))

        grid = _grid(delta, K)
        # both constraints improve as delta_bar grows, so bisect for the first good grid point
        if not ok(grid[-1]):
            raise Infeasible(f"no grid point in [{delta}, 1) meets both constraints")
        a, b = -1, len(grid) - 1
        while b - a > 1:
            mid = (a + b) // 2
            if ok(grid[mid]):
                b = mid
            else:
                a = mid
        db = grid[b]
        r0 = iv.log(3 - I.to_iv(db))
        dt = I.to_iv(db) * ln2 / r0
        e_bar = r0 + e0

        top = 2 ** (n - 1)
        expo = db * (n - 1)
        _, a_hi = power_bounds(2, expo, 64)
        c = ((top + a_hi) / 2).limit_denominator(1 << 16)
        if not (power_lt(2, expo, c) and c < top):
            c = (top + a_hi) / 2
        phibar = ExponentialBase(2, expo)

        p = HyperbolicParams(n, im, e_bar, r0, delta, R)
        geo = GeometryConstants(p, RightInverse(phibar))
    search = minimal_shift_search(p, phibar, c, geo.cbar, cap=search_cap)
    sb = search.s_bar0
    rough = rough_cbar_bound(n, im)
    with I.precision(PREC + 2 * sb.bit_length()):
        for which in (geo.c1(sb + 1), geo.c2(sb + 1)):
            if which.straddles:
                flags.append(f"ceiling straddles an integer: {which.formula}")
        s0 = (sb + 1) * r0
        N, st = I.ceil_upper(s0 / (2 * im))
        if st:
            flags.append("N = ceil(s0 / (2 i_M)) straddles an integer; upper value used")
        s_prime = 2 * im
        A = r0 / iv.exp(I.to_iv(expo) * ln2)
        B = r0
        coef = lambda l: A - B * iv.exp(-dt * (n - 1) * iv.mpf(l))
        l1 = 1
        while not (I.certainly_gt(iv.mpf(l1), iv.log(3 - dt)) and I.lo(coef(l1)) > 0):
            l1 += 1
        c_l1 = coef(l1)
        ln_c0 = iv.log(c_l1) - dt * (n - 1) * (2 * s_prime + 2 * N * s0)
        c0 = iv.exp(ln_c0)
        big = 3 * N * s0 + 2 * im
        l0 = big if I.lo(big) > l1 else I.hull(big, iv.mpf(l1))
        need = -ln_c0 / ((dt - I.to_iv(delta)) * (n - 1))
        need_up, _ = I.ceil_upper(need)
        l0_up, _ = I.ceil_upper(l0)
        l0_tilde = max(l0_up, need_up)

        checks = {
            "r0 + eps0 < i_M": I.certainly_lt(r0 + e0, im),
            "delta < delta_tilde < 1": I.certainly_gt(dt, I.to_iv(delta)) and I.certainly_lt(dt, iv.mpf(1)),
            "2^(delta_bar (n-1)) < c < 2^(n-1)": power_lt(2, expo, c) and c < top,
            "ln 2 < r0 < eps_bar0 < i_M": (I.certainly_gt(r0, ln2) and I.certainly_lt(r0, e_bar)
                                           and I.certainly_lt(e_bar, im)),
            "c(delta_tilde, l) increasing": all(I.certainly_lt(coef(l), coef(l + 1)) for l in range(l1, l1 + 8)),
            "l0 >= l1": I.lo(l0) >= l1,
            "cbar <= cbar_rough": search.cbar <= rough.value,
        }
    return GeodesicReport(n, delta, i_M, eps0, db, dt, r0, c, sb, search.cbar, rough.value,
                          s0, N, s_prime, l1, A, B, c_l1, ln_c0, c0, l0, l0_tilde,
                          flags, checks, search)
