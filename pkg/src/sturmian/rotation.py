"""Circle-rotation dynamics: orbits, codings, factor intervals, three-distance.

The circle is [0, 1) with the rotation x -> {x + alpha}.  Orbit points are
named by integer indices: index m stands for {m*alpha}, so negative indices
give the partition points {-i*alpha} that cut the circle into the intervals
of the length-n factors.

All positions are handled through certified integer keys: at convergent
depth d the point {m*alpha} sits within |m|/q_{d+1} key units of
(m*p_d mod q_d), so once every pairwise circular key distance exceeds twice
that error, every comparison of keys is a certified comparison of the true
positions.  Tables deepen automatically until certification succeeds.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable

from sturmian.exactnum import (
    ContinuedFraction,
    LinearForm,
    UndecidedError,
    _ctx,
    convergent_distance,
    semiconvergent_distance,
)
from sturmian.words import check_word


class BoundaryConvention(Enum):
    """Which side of the cut points 0 and 1-alpha belongs to I_0."""

    LEFT_CLOSED = "left"    # I_0 = [0, 1-alpha), I_1 = [1-alpha, 1)
    RIGHT_CLOSED = "right"  # I_0 = (0, 1-alpha], I_1 = (1-alpha, 1]


DEFAULT_CONVENTION = BoundaryConvention.LEFT_CLOSED


@dataclass(frozen=True)
class FactorInterval:
    """Arc of a length-n factor, endpoints named as orbit indices.

    left_idx = i means the counterclockwise start of the arc is {-i*alpha};
    right_idx names its end the same way.  The length is exact.
    """

    left_idx: int
    right_idx: int
    length: LinearForm


@dataclass(frozen=True)
class PartitionSummary:
    """Gap structure of the points {0, alpha, ..., n*alpha}.

    The decomposition n = l*q_{k-1} + q_{k-2} + r (k >= 2, 0 < l <= a_k,
    0 <= r < q_{k-1}) pins the three gap lengths; counts follow the
    three-distance formulas.  Lengths are sorted ascending; the long type
    always equals short + mid and may have count zero.
    """

    n: int
    k: int
    l: int
    r: int
    count_short: int
    length_short: LinearForm
    count_mid: int
    length_mid: LinearForm
    count_long: int
    length_long: LinearForm


def require_normalized(cf: ContinuedFraction) -> None:
    """Coding assumes a_1 >= 2 (alpha < 1/2); normalize_slope first."""
    if cf.quotient(1) < 2:
        raise ValueError(
            f"slope {cf} has a_1 = 1; apply normalize_slope and swap letters"
        )


# ------------------------------------------------------------------
# certified key tables
# ------------------------------------------------------------------

class KeyTable:
    """Certified integer positions for orbit indices in [-span, span].

    key(m) = m*p_d mod q_d approximates {m*alpha}*q_d within `err` key
    units, and the table is only built once every pairwise circular key
    distance exceeds 2*err, so key order is certified position order.
    """

    __slots__ = ("cf", "span", "depth", "p", "q", "err", "_keys")

    def __init__(self, cf: ContinuedFraction, span: int, depth: int,
                 p: int, q: int, err: int, keys: list[int]) -> None:
        self.cf = cf
        self.span = span
        self.depth = depth
        self.p = p
        self.q = q
        self.err = err
        self._keys = keys  # index m + span

    def key(self, m: int) -> int:
        return self._keys[m + self.span]

    def less(self, m1: int, m2: int) -> bool:
        """Certified test {m1*alpha} < {m2*alpha} in [0, 1)."""
        return self.key(m1) < self.key(m2)

    def floor_multiple(self, m: int) -> int:
        """floor(m*alpha), certified by the no-wrap margin of the table."""
        return (m * self.p - self.key(m)) // self.q

    def position_form(self, m: int) -> LinearForm:
        """{m*alpha} as the exact form m*alpha - floor(m*alpha)."""
        return LinearForm(m, self.floor_multiple(m))

    def norm_key(self, m: int) -> int:
        """Key-unit value of ||m*alpha||."""
        k = self.key(m)
        return min(k, self.q - k)


def _build_key_table(cf: ContinuedFraction, span: int) -> KeyTable:
    ctx = _ctx(cf)
    d = 2
    top = cf.max_depth(None)
    # Initial guess: pairwise gaps scale like 1/span, errors like span/q_{d+1}.
    while d + 1 <= top:
        p, q = ctx.pair(d)
        q_next = ctx.pair(d + 1)[1]
        if q * q_next < 128 * span * span and d + 1 < top:
            d += 2
            continue
        err = span // q_next + 1
        step = p % q
        keys = [0] * (2 * span + 1)
        cur = (-span * p) % q
        for i in range(2 * span + 1):
            keys[i] = cur
            cur += step
            if cur >= q:
                cur -= q
        ordered = sorted(keys)
        gap_ok = all(b - a > 2 * err for a, b in zip(ordered, ordered[1:]))
        wrap_ok = ordered[0] + q - ordered[-1] > 2 * err
        if gap_ok and wrap_ok:
            return KeyTable(cf, span, d, p, q, err, keys)
        d += 2
    raise UndecidedError(
        f"cannot certify {2 * span + 1} orbit points for slope {cf} within depth {top}"
    )


@lru_cache(maxsize=None)
def _key_table_pow2(cf: ContinuedFraction, span_pow2: int) -> KeyTable:
    return _build_key_table(cf, span_pow2)


def key_table(cf: ContinuedFraction, span: int) -> KeyTable:
    """Certified table covering orbit indices [-span, span] (cached)."""
    if span < 1:
        raise ValueError(f"span must be >= 1, got {span}")
    pow2 = 1
    while pow2 < span:
        pow2 *= 2
    return _key_table_pow2(cf, pow2)


# ------------------------------------------------------------------
# orbit ordering and coding
# ------------------------------------------------------------------

def point_order(cf: ContinuedFraction, points: Iterable[int]) -> list[int]:
    """Orbit indices sorted by circular position starting from 0.

    Input indices m stand for {m*alpha} and must be distinct.
    """
    ms = list(points)
    if len(set(ms)) != len(ms):
        raise ValueError("orbit points must have distinct indices")
    if not ms:
        return []
    table = key_table(cf, max(1, max(abs(m) for m in ms)))
    return sorted(ms, key=table.key)


def coding_prefix(cf: ContinuedFraction, start: int, length: int,
                  convention: BoundaryConvention = DEFAULT_CONVENTION) -> str:
    """First `length` letters of the coding of the orbit of {start*alpha}.

    Letter t is 0 iff {(start+t)*alpha} lies in I_0 under the convention.
    The convention only matters when the orbit passes through 0 or
    {-alpha}, i.e. for start <= 0.
    """
    require_normalized(cf)
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    ctx = _ctx(cf)
    top = cf.max_depth(None)
    max_j = max(abs(start), abs(start + length - 1), 1)
    left = convention is BoundaryConvention.LEFT_CLOSED
    d = 2
    while d + 1 <= top:
        p, q = ctx.pair(d)
        q_next = ctx.pair(d + 1)[1]
        if q * q_next < 64 * max_j * max_j and d + 1 < top:
            d += 2
            continue
        err2 = 2 * (max_j // q_next + 1)
        step = p % q
        boundary = (-p) % q  # key of {-alpha} = 1 - alpha
        out: list[str] = []
        cur = (start * p) % q
        ok = True
        for t in range(length):
            j = start + t
            if j == 0:
                out.append("0" if left else "1")
            elif j == -1:
                out.append("1" if left else "0")
            else:
                delta = cur - boundary
                if cur < err2 or q - cur < err2 or -err2 < delta < err2:
                    ok = False  # margin too small at this depth
                    break
                out.append("0" if delta < 0 else "1")
            cur += step
            if cur >= q:
                cur -= q
        if ok:
            return "".join(out)
        d += 2
    raise UndecidedError(
        f"cannot certify a coding of length {length} from index {start} for slope {cf}"
    )


_PREFIX_CACHE: dict[ContinuedFraction, str] = {}


def characteristic_prefix(cf: ContinuedFraction, length: int) -> str:
    """Prefix of the characteristic word (orbit coding started at {alpha})."""
    cached = _PREFIX_CACHE.get(cf, "")
    if len(cached) < length:
        cached = coding_prefix(cf, 1, max(length, 2 * len(cached), 1024))
        _PREFIX_CACHE[cf] = cached
    return cached[:length]


# ------------------------------------------------------------------
# factor intervals
# ------------------------------------------------------------------

@lru_cache(maxsize=None)
def _factors_cached(cf: ContinuedFraction, n: int) -> tuple[tuple[str, FactorInterval], ...]:
    table = key_table(cf, n)
    boundary = table.key(-1)

    # bits[j + n] codes which side of {-alpha} the point {j*alpha} lies on,
    # which is letter t of the interval starting at {-i*alpha} for j = t - i.
    bits = []
    for j in range(-n, n):
        if j == 0:
            bits.append("0")
        elif j == -1:
            bits.append("1")
        else:
            bits.append("0" if table.key(j) < boundary else "1")
    bitstr = "".join(bits)

    order = sorted(range(n + 1), key=lambda i: table.key(-i))
    out = []
    for t, i in enumerate(order):
        nxt = order[(t + 1) % (n + 1)]
        word = bitstr[n - i: 2 * n - i]
        length = table.position_form(-nxt) - table.position_form(-i)
        if t == n:
            length = length.shift(1)  # gap wraps past the point 1
        out.append((word, FactorInterval(i, nxt, length)))
    return tuple(out)


def factors_of_length(cf: ContinuedFraction, n: int) -> list[tuple[str, FactorInterval]]:
    """All n+1 factors of length n with their exact intervals.

    The circle is split by the points {0, -alpha, ..., -n*alpha}; the word
    of each interval is read off by comparing the shifted left endpoint
    against the cut point {-alpha}, so no sample point is ever needed.
    Output follows the circular order of the intervals starting at 0.
    """
    require_normalized(cf)
    if n < 1:
        raise ValueError(f"factor length must be >= 1, got {n}")
    return list(_factors_cached(cf, n))


@lru_cache(maxsize=None)
def factor_interval_map(cf: ContinuedFraction, n: int) -> dict[str, FactorInterval]:
    """Word -> interval lookup for the length-n factors (cached)."""
    return {word: interval for word, interval in factors_of_length(cf, n)}


def factor_containing_point(cf: ContinuedFraction, n: int, m: int) -> str:
    """The length-n factor whose interval contains the orbit point {m*alpha}.

    The point must not be one of the partition points {0, ..., -n*alpha};
    orbit indices outside [-n, 0] always qualify.
    """
    require_normalized(cf)
    if -n <= m <= 0:
        raise ValueError(f"{{{m}*alpha}} is a partition point at level {n}")
    table = key_table(cf, max(n, abs(m)))
    target = table.key(m)
    best_word, best_key = None, -1
    for word, interval in _factors_cached(cf, n):
        k = table.key(-interval.left_idx)
        if best_key < k <= target:
            best_word, best_key = word, k
    assert best_word is not None  # left endpoint 0 has key 0 <= target
    return best_word


def special_factors(cf: ContinuedFraction, n: int) -> tuple[str, str]:
    """(left special, right special) factors of length n.

    The left special factor is the length-n prefix of the characteristic
    word; the right special factor is its reversal.
    """
    require_normalized(cf)
    if n < 1:
        raise ValueError(f"length must be >= 1, got {n}")
    left = characteristic_prefix(cf, n)
    return left, left[::-1]


# ------------------------------------------------------------------
# word intervals by arc intersection
# ------------------------------------------------------------------

def word_interval(cf: ContinuedFraction, w: str) -> FactorInterval | None:
    """Exact interval [w] of an arbitrary binary word, or None if w is not
    a factor of the language.

    Runs the arc automaton [w_0..w_t] = [w_0..w_{t-1}] /\\ R^{-t}(I_{w_t});
    endpoints stay named by orbit indices throughout, so the result is
    exact.  The right endpoint index 0 may denote the point 1 (= 0 reached
    from below); lengths account for the wrap.
    """
    require_normalized(cf)
    check_word(w)
    n = len(w)
    if n < 1:
        raise ValueError("word must be nonempty")
    table = key_table(cf, n)
    q = table.q

    # Arc [lo, hi) in key space; *_idx name the endpoints as {-idx * alpha}.
    if w[0] == "0":
        lo, lo_idx, hi, hi_idx = 0, 0, table.key(-1), 1
    else:
        lo, lo_idx, hi, hi_idx = table.key(-1), 1, q, 0  # hi is the point 1

    for t in range(1, n):
        x, y = table.key(-t), table.key(-(t + 1))
        if w[t] == "0":
            bs, bs_idx, be, be_idx = x, t, y, t + 1
        else:
            bs, bs_idx, be, be_idx = y, t + 1, x, t
        if bs < be:
            # B is a plain arc: intersect directly.
            if bs > lo:
                lo, lo_idx = bs, bs_idx
            if be < hi:
                hi, hi_idx = be, be_idx
            if lo >= hi:
                return None
        else:
            # B wraps: remove the complement gap G = [be, bs) from [lo, hi).
            if bs <= lo or be >= hi:
                pass  # G misses the arc
            elif be <= lo:
                if bs >= hi:
                    return None
                lo, lo_idx = bs, bs_idx
            elif bs >= hi:
                hi, hi_idx = be, be_idx
            else:
                raise AssertionError(
                    f"arc split into two components at step {t} for {w!r}: "
                    "partition structure violated"
                )
    length = _endpoint_form(table, hi_idx, hi == q) - _endpoint_form(table, lo_idx, False)
    return FactorInterval(lo_idx, hi_idx, length)


def _endpoint_form(table: KeyTable, idx: int, at_one: bool) -> LinearForm:
    if at_one:
        return LinearForm(0, -1)  # the point 1
    return table.position_form(-idx)


def language_extension(cf: ContinuedFraction, base: str, ext: str) -> int:
    """Longest j such that base + ext[:j] stays in the language.

    base itself must be a factor; returns 0 if no extension letter fits.
    """
    require_normalized(cf)
    check_word(base)
    check_word(ext)
    total = len(base) + len(ext)
    table = key_table(cf, total)
    q = table.q

    word = base
    if word[0] == "0":
        lo, hi = 0, table.key(-1)
    else:
        lo, hi = table.key(-1), q

    def step(t: int, letter: str, lo: int, hi: int) -> tuple[int, int] | None:
        x, y = table.key(-t), table.key(-(t + 1))
        bs, be = (x, y) if letter == "0" else (y, x)
        if bs < be:
            lo2, hi2 = max(lo, bs), min(hi, be)
            return (lo2, hi2) if lo2 < hi2 else None
        if bs <= lo or be >= hi:
            return (lo, hi)
        if be <= lo:
            return (bs, hi) if bs < hi else None
        if bs >= hi:
            return (lo, be)
        raise AssertionError("arc split into two components")

    for t in range(1, len(base)):
        nxt = step(t, base[t], lo, hi)
        if nxt is None:
            raise ValueError(f"base word {base!r} is not a factor")
        lo, hi = nxt
    count = 0
    for j, letter in enumerate(ext):
        nxt = step(len(base) + j, letter, lo, hi)
        if nxt is None:
            break
        lo, hi = nxt
        count += 1
    return count


# ------------------------------------------------------------------
# three-distance structure
# ------------------------------------------------------------------

def three_distance_decomposition(cf: ContinuedFraction, n: int) -> tuple[int, int, int]:
    """The unique (k, l, r) with n = l*q_{k-1} + q_{k-2} + r, k >= 2,
    0 < l <= a_k, 0 <= r < q_{k-1}."""
    if n <= cf.quotient(1):
        raise ValueError(f"n must exceed a_1 = {cf.quotient(1)}, got {n}")
    ctx = _ctx(cf)
    k = 2
    while ctx.pair(k)[1] + ctx.pair(k - 1)[1] <= n:
        k += 1
    q1 = ctx.pair(k - 1)[1]
    q2 = ctx.pair(k - 2)[1]
    l, r = divmod(n - q2, q1)
    return k, l, r


def three_distance(cf: ContinuedFraction, n: int) -> PartitionSummary:
    """Formulaic gap summary for the points {0, alpha, ..., n*alpha}."""
    k, l, r = three_distance_decomposition(cf, n)
    q_prev = _ctx(cf).pair(k - 1)[1]
    len_a = convergent_distance(cf, k - 1)        # count n + 1 - q_{k-1}
    len_b = semiconvergent_distance(cf, k, l)     # count r + 1
    len_c = semiconvergent_distance(cf, k, l - 1)  # count q_{k-1} - (r + 1)
    count_a = n + 1 - q_prev
    count_b = r + 1
    count_c = q_prev - (r + 1)
    if len_c != len_a + len_b:
        raise AssertionError("distance recurrence violated in three-distance summary")
    # Sort the two non-long types exactly: ||q_{k,l} a|| < ||q_{k-1} a|| iff l = a_k.
    if l == cf.quotient(k):
        short = (count_b, len_b)
        mid = (count_a, len_a)
    else:
        short = (count_a, len_a)
        mid = (count_b, len_b)
    return PartitionSummary(
        n=n, k=k, l=l, r=r,
        count_short=short[0], length_short=short[1],
        count_mid=mid[0], length_mid=mid[1],
        count_long=count_c, length_long=len_c,
    )
