"""Continued-fraction bookkeeping and certified exact comparison.

A slope is an irrational number in (0, 1) given purely by its partial
quotients, either eventually periodic (exact, unbounded depth) or as a
finite truncation (every answer is then only valid to the stated depth).
Quantities derived from the slope -- distances to the nearest integer,
interval lengths on the circle -- are kept as integer linear forms
q*alpha - p and compared through rational enclosures built from
convergents.  No floating point is used anywhere: a comparison either
returns a certified answer or raises.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache

DEFAULT_DEPTH_LIMIT = 64
_DEPTH_ENV = "STURM_DEPTH_LIMIT"


class SlopeSyntaxError(ValueError):
    """Raised when a slope string does not match the slope grammar."""


class DepthError(Exception):
    """Base class for failures caused by a too-shallow expansion."""


class DepthExceededError(DepthError):
    """A partial quotient beyond the available truncation was requested."""


class UndecidedError(DepthError):
    """A comparison could not be certified within the allowed depth."""


def depth_limit() -> int:
    """Expansion depth cap: STURM_DEPTH_LIMIT if set, else 64."""
    raw = os.environ.get(_DEPTH_ENV)
    if raw is None:
        return DEFAULT_DEPTH_LIMIT
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{_DEPTH_ENV} must be an integer, got {raw!r}") from exc
    if value < 2:
        raise ValueError(f"{_DEPTH_ENV} must be at least 2, got {value}")
    return value


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class ContinuedFraction:
    """Slope alpha = [0; a_1, a_2, ...] as preperiod plus optional period.

    An empty period means the expansion is a finite truncation: queries
    beyond len(preperiod) raise DepthExceededError instead of guessing.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for a in self.preperiod + self.period:
            if not isinstance(a, int) or a < 1:
                raise ValueError(f"partial quotients must be positive integers, got {a!r}")
        if not self.preperiod and not self.period:
            raise ValueError("empty continued fraction expansion")

    @property
    def is_periodic(self) -> bool:
        return bool(self.period)

    @property
    def truncation_depth(self) -> int | None:
        """Last trustworthy quotient index, or None for periodic slopes."""
        return None if self.period else len(self.preperiod)

    def quotient(self, k: int) -> int:
        """Partial quotient a_k, k >= 1."""
        if k < 1:
            raise ValueError(f"partial quotient index must be >= 1, got {k}")
        if k <= len(self.preperiod):
            return self.preperiod[k - 1]
        if not self.period:
            raise DepthExceededError(
                f"quotient a_{k} requested but expansion is only valid to depth "
                f"{len(self.preperiod)}"
            )
        return self.period[(k - len(self.preperiod) - 1) % len(self.period)]

    def max_depth(self, cap: int | None = None) -> int:
        """Deepest usable quotient index under cap (default env/64)."""
        if cap is None:
            cap = depth_limit()
        if self.period:
            return cap
        return min(cap, len(self.preperiod))

    def __str__(self) -> str:
        parts = [str(a) for a in self.preperiod]
        if self.period:
            parts.append("(" + ",".join(str(a) for a in self.period) + ")")
        return "[0;" + ",".join(parts) + "]"


@dataclass(frozen=True)
class Convergent:
    """Convergent p_k / q_k of the slope."""

    k: int
    p: int
    q: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.p, self.q)


@dataclass(frozen=True)
class LinearForm:
    """Exact value q*alpha - p with integer q and p."""

    q: int
    p: int

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.q + other.q, self.p + other.p)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.q - other.q, self.p - other.p)

    def __neg__(self) -> "LinearForm":
        return LinearForm(-self.q, -self.p)

    def __mul__(self, n: int) -> "LinearForm":
        return LinearForm(self.q * n, self.p * n)

    __rmul__ = __mul__

    def shift(self, n: int) -> "LinearForm":
        """The form for (value + n)."""
        return LinearForm(self.q, self.p - n)

    @property
    def is_zero(self) -> bool:
        return self.q == 0 and self.p == 0

    def __str__(self) -> str:
        if self.q == 0:
            return str(-self.p)
        head = f"{self.q}a" if self.q != 1 else "a"
        if self.p == 0:
            return head
        return f"{head}{-self.p:+d}"


ZERO = LinearForm(0, 0)
ONE = LinearForm(0, -1)
ALPHA = LinearForm(1, 0)


@dataclass(frozen=True)
class CertifiedEnclosure:
    """Rational interval guaranteed to contain the value of a form."""

    lo: Fraction
    hi: Fraction
    depth: int

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x: object) -> bool:
        return self.lo <= x <= self.hi  # type: ignore[operator]


# ------------------------------------------------------------------
# slope parsing and normalization
# ------------------------------------------------------------------

def parse_slope(text: str) -> ContinuedFraction:
    """Parse a slope string like "[0;2,(1,2)]" into a ContinuedFraction.

    Grammar: '[0;' then comma-separated positive integers, where the last
    element may be a parenthesized comma-separated period.  Whitespace is
    insignificant.  The result is returned un-normalized (a_1 = 1 allowed).
    """
    s = text.strip()
    if not s.startswith("[") or not s.endswith("]"):
        raise SlopeSyntaxError(f"slope must look like [0;...], got {text!r}")
    inner = s[1:-1].strip()
    head, sep, body = inner.partition(";")
    if not sep or head.strip() != "0":
        raise SlopeSyntaxError(f"slope must start with '[0;', got {text!r}")
    body = body.strip()
    if not body:
        raise SlopeSyntaxError("empty continued fraction expansion")

    period: tuple[int, ...] = ()
    open_idx = body.find("(")
    if open_idx != -1:
        if not body.endswith(")"):
            raise SlopeSyntaxError(f"period must be the final element in {text!r}")
        period = _parse_int_list(body[open_idx + 1:-1], text)
        if not period:
            raise SlopeSyntaxError(f"empty period in {text!r}")
        prefix = body[:open_idx].strip()
        if prefix and not prefix.endswith(","):
            raise SlopeSyntaxError(f"missing comma before period in {text!r}")
        body = prefix[:-1] if prefix else ""
    preperiod = _parse_int_list(body, text) if body.strip() else ()
    return ContinuedFraction(preperiod, period)


def _parse_int_list(body: str, original: str) -> tuple[int, ...]:
    if not body.strip():
        return ()
    values = []
    for chunk in body.split(","):
        chunk = chunk.strip()
        if not chunk or not chunk.isdigit():
            raise SlopeSyntaxError(f"bad partial quotient {chunk!r} in {original!r}")
        value = int(chunk)
        if value < 1:
            raise SlopeSyntaxError(f"partial quotient must be >= 1, got {value} in {original!r}")
        values.append(value)
    return tuple(values)


def normalize_slope(cf: ContinuedFraction) -> tuple[ContinuedFraction, bool]:
    """Ensure a_1 >= 2, rewriting [0;1,a_2,...] as [0;a_2+1,...].

    Returns (normalized, swap).  swap=True signals that words emitted for
    the normalized slope describe the original one with letters 0 and 1
    exchanged.
    """
    if cf.quotient(1) != 1:
        return cf, False
    pre, per = cf.preperiod, cf.period
    if len(pre) >= 2:
        return ContinuedFraction((pre[1] + 1,) + pre[2:], per), True
    if not per:
        raise DepthExceededError("cannot normalize [0;1]: a_2 unknown in a depth-1 truncation")
    if pre == (1,):
        # a_2 is the first period element; unrolled, the tail is per again.
        return ContinuedFraction((per[0] + 1,) + per[1:], per), True
    # No preperiod: a_1 = per[0] = 1; a_2 is the next element cyclically.
    return ContinuedFraction((per[1 % len(per)] + 1,) + per[2:], per), True


# ------------------------------------------------------------------
# convergents and enclosures
# ------------------------------------------------------------------

class _Ctx:
    """Per-slope cache of convergent pairs (p_k, q_k)."""

    def __init__(self, cf: ContinuedFraction) -> None:
        self.cf = cf
        # Index k: pairs[0] = (p_0, q_0) = (0, 1) with a_0 = 0.
        self.pairs: list[tuple[int, int]] = [(0, 1)]

    def pair(self, k: int) -> tuple[int, int]:
        if k == -1:
            return (1, 0)
        while len(self.pairs) <= k:
            j = len(self.pairs)
            a = self.cf.quotient(j)
            if j == 1:
                self.pairs.append((1, a))
            else:
                p1, q1 = self.pairs[j - 1]
                p2, q2 = self.pairs[j - 2]
                self.pairs.append((a * p1 + p2, a * q1 + q2))
        return self.pairs[k]


@lru_cache(maxsize=None)
def _ctx(cf: ContinuedFraction) -> _Ctx:
    return _Ctx(cf)


def convergent(cf: ContinuedFraction, k: int) -> Convergent:
    """Exact convergent (p_k, q_k); raises DepthExceededError on truncations."""
    if k < 0:
        raise ValueError(f"convergent index must be >= 0, got {k}")
    p, q = _ctx(cf).pair(k)
    return Convergent(k, p, q)


def semiconvergent_den(cf: ContinuedFraction, k: int, l: int) -> int:
    """Denominator q_{k,l} = l*q_{k-1} + q_{k-2} for k >= 2 and 0 <= l <= a_k."""
    p, q = _semiconvergent_pair(cf, k, l)
    return q


def _semiconvergent_pair(cf: ContinuedFraction, k: int, l: int) -> tuple[int, int]:
    if k < 2:
        raise ValueError(f"semiconvergent index k must be >= 2, got {k}")
    a_k = cf.quotient(k)
    if not 0 <= l <= a_k:
        raise ValueError(f"semiconvergent offset l must satisfy 0 <= l <= a_{k} = {a_k}, got {l}")
    ctx = _ctx(cf)
    p1, q1 = ctx.pair(k - 1)
    p2, q2 = ctx.pair(k - 2)
    return (l * p1 + p2, l * q1 + q2)


@lru_cache(maxsize=None)
def alpha_bounds(cf: ContinuedFraction, d: int) -> tuple[Fraction, Fraction]:
    """Certified rational bounds lo < alpha < hi at convergent depth d.

    For periodic slopes any d >= 1 works.  For a truncation of depth m the
    deepest usable d is m; there the bound is the cylinder of all reals
    whose expansion starts with the known quotients.
    """
    if d < 1:
        raise ValueError(f"enclosure depth must be >= 1, got {d}")
    ctx = _ctx(cf)
    m = cf.truncation_depth
    if m is not None and d > m:
        raise DepthExceededError(f"enclosure depth {d} exceeds truncation depth {m}")
    if m is not None and d == m:
        p1, q1 = ctx.pair(d)
        p2, q2 = ctx.pair(d - 1)
        a, b = Fraction(p1, q1), Fraction(p1 + p2, q1 + q2)
    else:
        p1, q1 = ctx.pair(d)
        p2, q2 = ctx.pair(d + 1)
        a, b = Fraction(p1, q1), Fraction(p2, q2)
    return (a, b) if a < b else (b, a)


def enclosure(cf: ContinuedFraction, form: LinearForm, d: int) -> CertifiedEnclosure:
    """Enclosure of the value of form at convergent depth d."""
    lo_a, hi_a = alpha_bounds(cf, d)
    if form.q >= 0:
        lo, hi = form.q * lo_a - form.p, form.q * hi_a - form.p
    else:
        lo, hi = form.q * hi_a - form.p, form.q * lo_a - form.p
    return CertifiedEnclosure(lo, hi, d)


def _depth_schedule(cf: ContinuedFraction, cap: int | None) -> list[int]:
    top = cf.max_depth(cap)
    ds, d = [], 4
    while d < top:
        ds.append(d)
        d *= 2
    ds.append(top)
    return ds


def sign(cf: ContinuedFraction, form: LinearForm, cap: int | None = None) -> int:
    """Certified sign of q*alpha - p; 0 only for the identically zero form.

    A nonzero form always separates from 0 eventually because alpha is
    irrational; on a finite truncation the search may instead exhaust the
    available depth and raise UndecidedError.
    """
    if form.q == 0:
        return 0 if form.p == 0 else (-1 if form.p > 0 else 1)
    for d in _depth_schedule(cf, cap):
        lo_a, hi_a = alpha_bounds(cf, d)
        # Integer cross products avoid Fraction churn in hot loops.  The
        # alpha bounds are strict, so equality at an endpoint decides too.
        lo_n = form.q * (lo_a if form.q > 0 else hi_a).numerator
        lo_d = (lo_a if form.q > 0 else hi_a).denominator
        hi_n = form.q * (hi_a if form.q > 0 else lo_a).numerator
        hi_d = (hi_a if form.q > 0 else lo_a).denominator
        if lo_n - form.p * lo_d >= 0:
            return 1
        if hi_n - form.p * hi_d <= 0:
            return -1
    raise UndecidedError(
        f"sign of {form} undecided within depth {cf.max_depth(cap)} for slope {cf}"
    )


def compare(cf: ContinuedFraction, a: LinearForm, b: LinearForm,
            cap: int | None = None) -> Ordering:
    """Certified ordering of two forms; EQ only for syntactically equal forms."""
    return Ordering(sign(cf, a - b, cap))


# ------------------------------------------------------------------
# distances ||n*alpha||
# ------------------------------------------------------------------

def nearest_integer(cf: ContinuedFraction, n: int) -> int:
    """The integer closest to n*alpha (unique: alpha irrational)."""
    if n == 0:
        return 0
    for d in _depth_schedule(cf, None):
        lo_a, hi_a = alpha_bounds(cf, d)
        if n > 0:
            lo, hi = n * lo_a, n * hi_a
        else:
            lo, hi = n * hi_a, n * lo_a
        p_lo = (2 * lo.numerator + lo.denominator) // (2 * lo.denominator)
        p_hi = (2 * hi.numerator + hi.denominator) // (2 * hi.denominator)
        if p_lo == p_hi:
            return p_lo
    raise UndecidedError(f"nearest integer to {n}*alpha undecided for slope {cf}")


def distance(cf: ContinuedFraction, n: int) -> LinearForm:
    """||n*alpha|| as a nonnegative LinearForm +-(n*alpha - p), p nearest."""
    if n < 1:
        raise ValueError(f"distance needs n >= 1, got {n}")
    p = nearest_integer(cf, n)
    s = sign(cf, LinearForm(n, p))
    return LinearForm(s * n, s * p)


def semiconvergent_distance(cf: ContinuedFraction, k: int, l: int) -> LinearForm:
    """||q_{k,l}*alpha|| built from the recurrences: (-1)^k (q_{k,l} a - p_{k,l}).

    Also valid at the boundaries l = 0 (gives ||q_{k-2} alpha||) and
    l = a_k (gives ||q_k alpha||).
    """
    p, q = _semiconvergent_pair(cf, k, l)
    s = -1 if k % 2 else 1
    return LinearForm(s * q, s * p)


def convergent_distance(cf: ContinuedFraction, k: int) -> LinearForm:
    """||q_k*alpha|| for k >= -1 with the conventions ||q_-1 a|| = 1, ||q_0 a|| = alpha."""
    if k == -1:
        return ONE
    if k == 0:
        return ALPHA
    p, q = _ctx(cf).pair(k)
    s = -1 if k % 2 else 1
    return LinearForm(s * q, s * p)


def floor_ratio(cf: ContinuedFraction, num: LinearForm, den: LinearForm,
                cap: int | None = None) -> int:
    """floor(num/den) for two forms with certified positive values."""
    for d in _depth_schedule(cf, cap):
        n_enc = enclosure(cf, num, d)
        d_enc = enclosure(cf, den, d)
        if d_enc.lo <= 0 or n_enc.lo < 0:
            continue
        m_lo = n_enc.lo // d_enc.hi
        m_hi = n_enc.hi // d_enc.lo
        if m_lo == m_hi:
            return int(m_lo)
        if m_hi == m_lo + 1:
            # Boundary case: decide num - m_hi*den exactly (0 means an exact multiple).
            s = sign(cf, num - int(m_hi) * den, cap)
            return int(m_hi) if s >= 0 else int(m_lo)
    raise UndecidedError(f"floor({num}/{den}) undecided for slope {cf}")


def recover_quotient(cf: ContinuedFraction, k: int) -> int:
    """a_k recomputed as floor(||q_{k-2} a|| / ||q_{k-1} a||): a consistency check."""
    if k < 1:
        raise ValueError(f"quotient index must be >= 1, got {k}")
    num = convergent_distance(cf, k - 2)
    den = convergent_distance(cf, k - 1)
    return floor_ratio(cf, num, den)


# ------------------------------------------------------------------
# best approximations and closest multiples
# ------------------------------------------------------------------

def best_approximations(cf: ContinuedFraction, q_max: int) -> list[Convergent]:
    """All best rational approximations with denominator <= q_max.

    These are exactly the convergents; the exhaustive-scan oracle in the
    verification suite confirms the claim for every slope it checks.
    """
    if q_max < 1:
        raise ValueError(f"q_max must be >= 1, got {q_max}")
    out = []
    k = 0
    while True:
        try:
            c = convergent(cf, k)
        except DepthExceededError:
            raise DepthExceededError(
                f"best approximations up to {q_max} need convergents beyond the truncation"
            ) from None
        if c.q > q_max:
            break
        out.append(c)
        k += 1
    return out


def closest_multiples(cf: ContinuedFraction, k: int, l: int) -> list[int]:
    """All n with 0 < n < q_{k,l} and ||n a|| < ||q_{k,l-1} a||.

    By the closest-multiple property these are exactly m*q_{k-1} for
    1 <= m <= min(l, a_k - l + 1); each returned value is re-certified
    against the defining inequality.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    a_k = cf.quotient(k)
    if not 1 <= l <= a_k:
        raise ValueError(f"l must satisfy 1 <= l <= a_{k} = {a_k}, got {l}")
    q_prev = convergent(cf, k - 1).q
    bound = semiconvergent_distance(cf, k, l - 1)
    out = []
    for m in range(1, min(l, a_k - l + 1) + 1):
        n = m * q_prev
        if compare(cf, distance(cf, n), bound) is not Ordering.LT:
            raise AssertionError(f"closest-multiple certification failed at n={n} for {cf}")
        out.append(n)
    return out


# ------------------------------------------------------------------
# certified decimal rendering
# ------------------------------------------------------------------

def approx_str(cf: ContinuedFraction, form: LinearForm, digits: int = 12) -> str:
    """Deterministic decimal rendering with `digits` significant digits.

    Derived from certified enclosures only (never from a floating alpha):
    the enclosure is deepened until both endpoints round to the same string.
    """
    if form.q == 0:
        return _round_fraction(Fraction(-form.p), digits)
    for d in _depth_schedule(cf, None):
        enc = enclosure(cf, form, d)
        lo_s = _round_fraction(enc.lo, digits)
        hi_s = _round_fraction(enc.hi, digits)
        if lo_s == hi_s:
            return lo_s
    raise UndecidedError(f"cannot render {form} to {digits} digits for slope {cf}")


def decimal_str(x: Fraction, digits: int = 12) -> str:
    """Deterministic decimal rendering of an exact rational."""
    return _round_fraction(Fraction(x), digits)


def _round_fraction(x: Fraction, digits: int) -> str:
    if x == 0:
        return "0." + "0" * (digits - 1)
    neg = x < 0
    x = -x if neg else x
    # Exponent e: number of digits before the decimal point (may be <= 0).
    e = 0
    while x >= 1:
        x /= 10
        e += 1
    while x < Fraction(1, 10):
        x *= 10
        e -= 1
    # Now 1/10 <= x < 1; round to `digits` digits after the scaling point.
    scaled = x * 10 ** digits
    n = scaled.numerator // scaled.denominator
    if 2 * (scaled.numerator % scaled.denominator) >= scaled.denominator:
        n += 1
    mantissa = str(n)
    if len(mantissa) > digits:  # rounding overflow, e.g. 0.9999 -> 1.000
        mantissa = mantissa[:digits]
        e += 1
    body = ("-" if neg else "")
    if 0 < e <= digits:
        int_part = mantissa[:e]
        frac_part = mantissa[e:]
        return body + (int_part + ("." + frac_part if frac_part else ""))
    if e <= 0 and e > -5:
        return body + "0." + "0" * (-e) + mantissa
    return body + mantissa[0] + "." + mantissa[1:] + f"e{e - 1:+d}"
