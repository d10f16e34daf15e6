"""Independent brute-force oracles.

Every formula in the package has a second, structurally different route:
sorted orbit gaps instead of the three-distance counts, sliding-window
scans of a coded prefix instead of interval-length index formulas,
exhaustive multiples instead of convergent enumeration.  The verification
suites and the test suite drive both routes against each other.

Scans work on plain strings (find() runs in C) or on big-integer bit
masks, so the oracles stay fast without ever touching floating point.
"""

from __future__ import annotations

from fractions import Fraction

from sturmian.exactnum import ContinuedFraction, LinearForm
from sturmian.rotation import KeyTable, key_table


# ------------------------------------------------------------------
# sorted-gap spectrum of an orbit prefix
# ------------------------------------------------------------------

def gap_spectrum(cf: ContinuedFraction, n: int,
                 candidates: list[LinearForm]) -> list[int]:
    """Count the actual gaps of {0, alpha, ..., n*alpha} per candidate length.

    The points are sorted by certified keys; each circular gap is then an
    exact LinearForm (difference of neighbouring positions), and two forms
    share a value at an irrational alpha only when they are identical, so
    matching against the candidates is syntactic.  A gap matching no
    candidate raises.
    """
    table = key_table(cf, n)
    order = sorted(range(n + 1), key=table.key)
    counts = [0] * len(candidates)
    for t, m in enumerate(order):
        nxt = order[(t + 1) % (n + 1)]
        gap = table.position_form(nxt) - table.position_form(m)
        if t == n:
            gap = gap.shift(1)  # wrap past the point 1
        try:
            counts[candidates.index(gap)] += 1
        except ValueError:
            raise AssertionError(f"orbit gap {gap} matched no candidate length") from None
    return counts


# ------------------------------------------------------------------
# power scans over a coded prefix
# ------------------------------------------------------------------

def max_power(text: str, w: str) -> int:
    """Largest p >= 0 with w^p a factor of text."""
    if not w:
        raise ValueError("pattern must be nonempty")
    p = 0
    while w * (p + 1) in text:
        p += 1
    return p


def max_fractional_power(text: str, w: str) -> Fraction:
    """Largest exponent p + j/|w| with w^p w[:j] a factor of text (0 if absent)."""
    n = len(w)
    if n == 0:
        raise ValueError("pattern must be nonempty")
    occ = []
    at = text.find(w)
    while at != -1:
        occ.append(at)
        at = text.find(w, at + 1)
    if not occ:
        return Fraction(0)
    occ_set = set(occ)
    chain: dict[int, int] = {}
    best = Fraction(0)
    for pos in reversed(occ):
        chain[pos] = chain.get(pos + n, 0) + 1
    for pos in occ:
        p = chain[pos]
        tail = pos + p * n
        j = 0
        while j < n - 1 and tail + j < len(text) and text[tail + j] == w[j]:
            j += 1
        best = max(best, Fraction(p * n + j, n))
    return best


def _longest_run(mask: int) -> int:
    """Length of the longest run of 1-bits in mask."""
    if mask == 0:
        return 0
    # Doubling: collapsed[k] has a 1 where a run of length 2^k starts.
    total = 1
    collapsed = [(1, mask)]
    while True:
        r, y = collapsed[-1]
        y2 = y & (y >> r)
        if y2 == 0:
            break
        collapsed.append((2 * r, y2))
    total, cur = collapsed[-1]
    for r, _ in reversed(collapsed[:-1]):
        y2 = cur & (cur >> r)
        if y2:
            cur = y2
            total += r
    return total


def max_run_exponent(text: str, max_period: int) -> tuple[Fraction, int]:
    """Largest (run + L)/L over periods L <= max_period, with its period.

    A run of r consecutive positions where text[i] == text[i+L] witnesses a
    factor of length r + L with period L, i.e. a fractional power of
    exponent (r + L)/L of its length-L prefix.
    """
    bits = int(text, 2) if text else 0
    length = len(text)
    best = Fraction(0)
    best_period = 0
    for period in range(1, min(max_period, length - 1) + 1):
        mask = ~(bits ^ (bits >> period)) & ((1 << (length - period)) - 1)
        run = _longest_run(mask)
        if run == 0:
            continue
        exponent = Fraction(run + period, period)
        if exponent > best:
            best, best_period = exponent, period
    return best, best_period


def square_root_lengths(text: str, n_max: int) -> set[int]:
    """Lengths of primitive words w with w*w a factor of text, |w| <= n_max."""
    out = set()
    for n in range(1, n_max + 1):
        at = 0
        while True:
            # Any period-n repeat of length 2n is a square of its length-n prefix.
            idx = _find_square(text, n, at)
            if idx is None:
                break
            w = text[idx:idx + n]
            if (w + w).find(w, 1) == len(w):
                out.add(n)
                break
            at = idx + 1
    return out


def _find_square(text: str, n: int, start: int) -> int | None:
    for i in range(start, len(text) - 2 * n + 1):
        if text[i:i + n] == text[i + n:i + 2 * n]:
            return i
    return None


def power_roots(text: str, n_max: int, exponent: int) -> set[str]:
    """All primitive words w, |w| <= n_max, with w^exponent a factor of text."""
    roots = set()
    for n in range(1, n_max + 1):
        for i in range(0, len(text) - exponent * n + 1):
            w = text[i:i + n]
            if text[i:i + exponent * n] == w * exponent and (w + w).find(w, 1) == n:
                roots.add(w)
    return roots


# ------------------------------------------------------------------
# exhaustive approximation scans
# ------------------------------------------------------------------

def best_denominator_scan(cf: ContinuedFraction, q_max: int) -> list[int]:
    """Denominators of best approximations found by scanning all b <= q_max."""
    table = _scan_table(cf, q_max)
    best: list[int] = []
    current = table.q  # key-unit value of 1
    for b in range(1, q_max + 1):
        val = table.norm_key(b)
        if val < current:
            best.append(b)
            current = val
    return best


def closer_multiples_scan(cf: ContinuedFraction, limit: int, bound_n: int) -> list[int]:
    """All 0 < n < limit with ||n*alpha|| < ||bound_n*alpha|| by direct scan."""
    table = _scan_table(cf, max(limit, bound_n))
    bound = table.norm_key(bound_n)
    return [n for n in range(1, limit) if table.norm_key(n) < bound]


def _scan_table(cf: ContinuedFraction, span: int) -> KeyTable:
    # The certified table guarantees strict ordering of all ||m*alpha||
    # values in range: distinct m < span give distinct separated keys.
    return key_table(cf, span)
