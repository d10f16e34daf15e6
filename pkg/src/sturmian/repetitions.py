"""Integer and fractional powers of factors, classified by length.

The central fact: the integer index of a factor w of length n is
gamma + floor(|[w]| / ||n*alpha||), with gamma = 0 exactly when the
interval length equals ||n*alpha||.  Lengths q_k and q_{k,l} carry the
conjugacy classes of reversed standard and semistandard words, whose
interval lengths (and hence indices) follow a rigid positional pattern;
every other length has index 1 throughout.  All of it is computed here
twice: by exact interval formulas and by scanning coded prefixes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sturmian import oracles
from sturmian.exactnum import (
    ContinuedFraction,
    LinearForm,
    _ctx,
    alpha_bounds,
    convergent,
    convergent_distance,
    distance,
    floor_ratio,
    semiconvergent_distance,
)
from sturmian.rotation import (
    characteristic_prefix,
    factor_interval_map,
    language_extension,
    require_normalized,
    three_distance_decomposition,
    word_interval,
)
from sturmian.words import (
    check_word,
    conjugates,
    reversal,
    standard_or_semistandard,
    standard_word,
)


class NotAFactorError(ValueError):
    """The queried word does not belong to the language of the slope."""


class PrefixTooShortError(ValueError):
    """An oracle scan window shorter than its certified requirement."""


CASE_TAGS = ("i", "ii", "iii", "iv", "v", "vi", "vii")


@dataclass(frozen=True)
class IndexReport:
    """Classification of one factor: its integer index and case."""

    word: str
    n: int
    integer_index: int
    case_tag: str
    conjugate_position: int | None = None
    fractional_index: Fraction | None = None


@dataclass(frozen=True)
class ConjugacyReport:
    """Interval structure of the conjugacy class of length q_{k,l}.

    conjugates[i] = C^i(reversed s_{k,l}); the first `wide_count` of them
    carry intervals of length ||q_{k,l-1} a||, the rest intervals of length
    ||q_{k-1} a||, and the one factor outside the class has the unique
    interval of length ||q_{k,l} a||.
    """

    k: int
    l: int
    base: str
    conjugates: tuple[str, ...]
    wide_count: int
    wide_length: LinearForm
    narrow_count: int
    narrow_length: LinearForm
    leftover: str
    leftover_length: LinearForm


@dataclass(frozen=True)
class CriticalExponentResult:
    """The supremum of fractional indices over all factors.

    When the supremum is attained it is the exact rational
    `value_attained`; otherwise it is approached along one residue class
    of depths and equals limit_offset + limit_tail (a purely periodic
    continued fraction), reported with certified enclosures.
    """

    slope: ContinuedFraction
    depth: int
    terms: tuple[tuple[int, Fraction], ...]
    witness_k: int
    attained: bool
    value_attained: Fraction | None
    limit_offset: int | None
    limit_tail: ContinuedFraction | None
    depth_limited: bool
    bounded: bool | None
    infinite: bool = False

    def bounds(self, depth: int = 40) -> tuple[Fraction, Fraction]:
        """Certified rational bounds for the supremum."""
        if self.value_attained is not None:
            return self.value_attained, self.value_attained
        lo, hi = alpha_bounds(self.limit_tail, min(depth, self.limit_tail.max_depth(None)))
        return self.limit_offset + lo, self.limit_offset + hi


# ------------------------------------------------------------------
# integer index: formula and oracle
# ------------------------------------------------------------------

def _convergent_index_of(cf: ContinuedFraction, n: int) -> int:
    """k with q_k <= n < q_{k+1} (k >= 0 since q_0 = 1)."""
    ctx = _ctx(cf)
    k = 0
    while ctx.pair(k + 1)[1] <= n:
        k += 1
    return k


def index_by_interval(cf: ContinuedFraction, w: str) -> int:
    """Integer index from the interval length: gamma + floor(|[w]|/||n a||)."""
    require_normalized(cf)
    check_word(w)
    if not w:
        raise NotAFactorError("the empty word has no index")
    intervals = factor_interval_map(cf, len(w))
    if w not in intervals:
        raise NotAFactorError(f"{w!r} is not a factor for slope {cf}")
    length = intervals[w].length
    dist = distance(cf, len(w))
    gamma = 0 if length == dist else 1
    return gamma + floor_ratio(cf, length, dist)


def oracle_window(cf: ContinuedFraction, n: int) -> int:
    """Prefix length that certifies every power scan at factor length n.

    The longest pattern worth scanning is N = (bound + 1)*n letters, with
    bound = a_{k+1} + 2 the largest possible index at length n.  Any
    factor of length N has an interval at least as long as the minimum
    level-N gap, which is at least ||q_K alpha|| for the decomposition
    index K of N; and an arc longer than ||q_J alpha|| is entered by every
    q_J + q_{J+1} consecutive orbit points.  Taking J = K + 1 gives a
    window after which a pattern absent from the prefix is absent from
    the whole language.
    """
    ctx = _ctx(cf)
    bound = cf.quotient(_convergent_index_of(cf, n) + 1) + 2
    longest = (bound + 1) * n
    if longest <= cf.quotient(1):
        big_k = 1
    else:
        big_k, _, _ = three_distance_decomposition(cf, longest)
    return longest + ctx.pair(big_k + 1)[1] + ctx.pair(big_k + 2)[1] + 1


def index_oracle(cf: ContinuedFraction, w: str, prefix_len: int | None = None) -> int:
    """Largest p with w^p inside a coded prefix (0 if w never occurs).

    With a window at least as long as `oracle_window` the result equals
    the true index; shorter windows than the hard minimum raise.
    """
    require_normalized(cf)
    check_word(w)
    n = len(w)
    if n == 0:
        raise NotAFactorError("the empty word has no index")
    if prefix_len is None:
        prefix_len = oracle_window(cf, n)
    minimum = (cf.quotient(_convergent_index_of(cf, n) + 1) + 4) * n
    if prefix_len < minimum:
        raise PrefixTooShortError(
            f"prefix of {prefix_len} letters cannot certify indices at length {n}; "
            f"need at least {minimum}"
        )
    return oracles.max_power(characteristic_prefix(cf, prefix_len), w)


# ------------------------------------------------------------------
# the seven-way classification by length
# ------------------------------------------------------------------

def length_case(cf: ContinuedFraction, n: int) -> tuple[str, dict]:
    """Which classification case the length n falls into, with parameters.

    The cases are checked to be mutually exclusive; a double match raises
    instead of silently picking one.
    """
    require_normalized(cf)
    if n < 1:
        raise ValueError(f"length must be >= 1, got {n}")
    a1 = cf.quotient(1)
    if n < a1:
        return "i", {}
    if n == a1:
        return "ii", {}
    matches: list[tuple[str, dict]] = []
    # n = q_k or a strict semiconvergent q_{k,l}: both mean r = 0 in the
    # three-distance decomposition n = l*q_{k-1} + q_{k-2} + r.
    k, l, r = three_distance_decomposition(cf, n)
    if r == 0:
        if l == cf.quotient(k):
            matches.append(("iii", {"k": k}))
        else:
            matches.append(("iv", {"k": k, "l": l}))
    if n % a1 == 0 and 1 < n // a1 < cf.quotient(2) + 1:
        matches.append(("v", {"m": n // a1}))
    j = 2
    while convergent(cf, j).q * 2 <= n:
        qj = convergent(cf, j).q
        if n % qj == 0 and 1 < n // qj < cf.quotient(j + 1) + 2:
            matches.append(("vi", {"k": j, "m": n // qj}))
        j += 1
    if len(matches) > 1:
        raise AssertionError(f"length {n} matched several cases for {cf}: {matches}")
    if matches:
        return matches[0]
    return "vii", {}


def classify_length(cf: ContinuedFraction, n: int,
                    with_fractional: bool = False) -> list[IndexReport]:
    """IndexReport for every factor of length n, per the length's case.

    Indices are assigned by the positional pattern of the case (conjugate
    numbering against the reversed standard word); the interval formula
    and the scan oracle provide two independent cross-checks in the
    verification suites.  Fractional indices are filled only on request.
    """
    tag, params = length_case(cf, n)
    factors = [w for w, _ in _factor_words(cf, n)]
    a1 = cf.quotient(1)

    assigned: dict[str, tuple[int, int | None]] = {}
    if tag == "i":
        base = reversal("0" * (n - 1) + "1")
        for i, c in enumerate(conjugates(base)):
            assigned[c] = (1, i)
        assigned["0" * n] = (a1 // n, None)
    elif tag == "ii":
        base = reversal(standard_word(cf, 1))
        for i, c in enumerate(conjugates(base)):
            assigned[c] = (cf.quotient(2) + 1, i)
        assigned["0" * a1] = (1, None)
    elif tag in ("iii", "iv"):
        k = params["k"]
        l = params.get("l", cf.quotient(k))
        base = reversal(standard_or_semistandard(cf, k, l))
        q_prev = convergent(cf, k - 1).q
        first = cf.quotient(k + 1) + 2 if tag == "iii" else 2
        rest = cf.quotient(k + 1) + 1 if tag == "iii" else 1
        for i, c in enumerate(conjugates(base)):
            assigned[c] = (first if i < q_prev - 1 else rest, i)
        leftover = set(factors) - set(assigned)
        if len(leftover) != 1:
            raise AssertionError(f"expected one non-conjugate factor at n={n}, got {leftover}")
        assigned[leftover.pop()] = (1, None)
    elif tag in ("v", "vi"):
        k = params.get("k", 1)
        m = params["m"]
        root = reversal(standard_word(cf, k))
        q_k = convergent(cf, k).q
        q_prev = convergent(cf, k - 1).q
        first = (cf.quotient(k + 1) + 2) // m
        rest = (cf.quotient(k + 1) + 1) // m
        for i in range(q_k):
            c = _shift_power(root, m, i)
            assigned[c] = (first if i < q_prev - 1 else rest, i)
        for w in factors:
            if w not in assigned:
                assigned[w] = (1, None)
    else:
        for w in factors:
            assigned[w] = (1, None)

    if set(assigned) != set(factors):
        raise AssertionError(
            f"case {tag} did not account for the factors of length {n} for {cf}"
        )
    out = []
    for w in factors:
        idx, pos = assigned[w]
        frac = fractional_index(cf, w) if with_fractional else None
        out.append(IndexReport(w, n, idx, tag, pos, frac))
    return out


def _shift_power(root: str, m: int, i: int) -> str:
    """C^i(root^m) = C^i(root)^m for i < |root|."""
    shifted = root[-i:] + root[:-i] if i else root
    return shifted * m


@lru_cache(maxsize=None)
def _factor_words(cf: ContinuedFraction, n: int) -> tuple[tuple[str, LinearForm], ...]:
    return tuple((w, iv.length) for w, iv in factor_interval_map(cf, n).items())


# ------------------------------------------------------------------
# squares
# ------------------------------------------------------------------

def square_lengths(cf: ContinuedFraction, n_max: int) -> set[int]:
    """Lengths <= n_max of primitive words whose square is a factor.

    These are exactly the convergent denominators q_k and the strict
    semiconvergent denominators q_{k,l} (0 < l < a_k); each witness square
    is re-certified by an exact interval computation before returning.
    """
    require_normalized(cf)
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    out: dict[int, str] = {}
    k = 0
    while True:
        q = convergent(cf, k).q
        if q > n_max:
            break
        out[q] = standard_word(cf, k)
        k += 1
    j = 2
    while convergent(cf, j - 1).q + convergent(cf, j - 2).q <= n_max:
        for l in range(1, cf.quotient(j)):
            q = l * convergent(cf, j - 1).q + convergent(cf, j - 2).q
            if q <= n_max:
                out[q] = standard_or_semistandard(cf, j, l)
        j += 1
    for q, w in out.items():
        if word_interval(cf, w * 2) is None:
            raise AssertionError(f"square of {w!r} (length {q}) unexpectedly missing")
    return set(out)


# ------------------------------------------------------------------
# conjugacy classes of standard lengths
# ------------------------------------------------------------------

def conjugacy_report(cf: ContinuedFraction, k: int, l: int) -> ConjugacyReport:
    """Full conjugacy-class structure at length q_{k,l} (l = a_k gives s_k).

    Tags are assigned positionally and then certified against the exact
    interval of every factor; the conjugate at position q_{k-1} - 2 is
    checked to be s_{k,l} itself.
    """
    require_normalized(cf)
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    a_k = cf.quotient(k)
    if not 0 < l <= a_k:
        raise ValueError(f"l must satisfy 0 < l <= a_{k} = {a_k}, got {l}")
    plain = standard_or_semistandard(cf, k, l)
    base = reversal(plain)
    n = len(base)
    conj = conjugates(base)
    if len(set(conj)) != n:
        raise AssertionError(f"s_({k},{l}) reversed is not primitive: {base!r}")
    q_prev = convergent(cf, k - 1).q
    wide_len = semiconvergent_distance(cf, k, l - 1)
    narrow_len = convergent_distance(cf, k - 1)
    leftover_len = semiconvergent_distance(cf, k, l)

    intervals = factor_interval_map(cf, n)
    for i, c in enumerate(conj):
        expected = wide_len if i < q_prev - 1 else narrow_len
        if intervals[c].length != expected:
            raise AssertionError(f"conjugate {i} of {base!r} has unexpected interval length")
    leftover = set(intervals) - set(conj)
    if len(leftover) != 1:
        raise AssertionError(f"expected exactly one non-conjugate factor at n={n}")
    leftover_word = leftover.pop()
    if intervals[leftover_word].length != leftover_len:
        raise AssertionError("non-conjugate factor has unexpected interval length")
    if conj[q_prev - 2] != plain:
        raise AssertionError(f"conjugate {q_prev - 2} of {base!r} is not s_({k},{l})")
    return ConjugacyReport(
        k=k, l=l, base=base, conjugates=tuple(conj),
        wide_count=q_prev - 1, wide_length=wide_len,
        narrow_count=n + 1 - q_prev, narrow_length=narrow_len,
        leftover=leftover_word, leftover_length=leftover_len,
    )


# ------------------------------------------------------------------
# fractional index and the critical exponent
# ------------------------------------------------------------------

def fractional_index(cf: ContinuedFraction, w: str) -> Fraction:
    """sup of exponents e with w^e a factor, as an exact rational.

    Equals ind + j/|w| where ind is the integer index and j is the longest
    proper prefix of w that still extends w^ind inside the language;
    computed by exact interval iteration.
    """
    ind = index_by_interval(cf, w)
    if len(w) == 1:
        return Fraction(ind)
    j = language_extension(cf, w * ind, w[:-1])
    return Fraction(ind * len(w) + j, len(w))


def _class_limit_tail(cf: ContinuedFraction, k0: int) -> ContinuedFraction:
    """Purely periodic tail [0; (a_{k0}, a_{k0-1}, ..., back one period)]."""
    period = len(cf.period)
    block = tuple(cf.quotient(k0 - j) for j in range(period))
    return ContinuedFraction((), block)


def _candidate_le(cf_tail_a: tuple[Fraction, ContinuedFraction | None],
                  cf_tail_b: tuple[Fraction, ContinuedFraction | None]) -> bool:
    """Certified a <= b for candidates of the form rational + optional CF tail."""
    fa, ta = cf_tail_a
    fb, tb = cf_tail_b
    if ta is not None and tb is not None and _same_number(ta, tb):
        return fa <= fb
    d = 8
    while d <= 64:
        lo_a, hi_a = (fa, fa) if ta is None else tuple(fa + x for x in alpha_bounds(ta, d))
        lo_b, hi_b = (fb, fb) if tb is None else tuple(fb + x for x in alpha_bounds(tb, d))
        if hi_a <= lo_b:
            return True
        if hi_b < lo_a:
            return False
        d *= 2
    raise AssertionError("critical-exponent candidates did not separate")


def _same_number(a: ContinuedFraction, b: ContinuedFraction) -> bool:
    return _primitive_rotation(a.period) == _primitive_rotation(b.period)


def _primitive_rotation(period: tuple[int, ...]) -> tuple[int, ...]:
    # Purely periodic expansions are equal iff their quotient streams are,
    # i.e. iff the primitive periods coincide exactly.
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period == period[:d] * (n // d):
            return period[:d]
    return period


def critical_exponent(cf: ContinuedFraction, depth_bound: int) -> CriticalExponentResult:
    """sup over factors of the fractional index, from the slope alone.

    The candidates are: a_1 (witnessed by the letter 0); the exact
    fractional indices of the length-q_1 conjugacy class; and for each
    k >= 2 the fractional index of the k-th standard word,

        t_k = a_{k+1} + 2 + (q_{k-1} - 2)/q_k,

    which dominates every other factor of comparable length.  For a
    periodic slope the per-class limits of the t_k are 2 + a_{k+1} plus a
    purely periodic continued fraction, so the supremum is reported
    exactly: either attained by a rational candidate or equal to the best
    class limit.  For truncations only finitely many terms exist and the
    result is a certified lower bound.

    The supremum is finite for every eventually periodic or truncated
    slope; it is infinite exactly for unbounded partial quotients, which
    these inputs cannot express (the flag is reserved).
    """
    require_normalized(cf)
    if depth_bound < 2:
        raise ValueError(f"depth bound must be >= 2, got {depth_bound}")
    ctx = _ctx(cf)

    def term(k: int) -> Fraction:
        return cf.quotient(k + 1) + 2 + Fraction(ctx.pair(k - 1)[1] - 2, ctx.pair(k)[1])

    a1 = Fraction(cf.quotient(1))
    if not cf.is_periodic:
        top = min(depth_bound, len(cf.preperiod) - 1)
        terms = tuple((k, term(k)) for k in range(2, top + 1))
        # The length-q_1 class reaches at least its integer index a_2 + 1.
        q1_value = Fraction(cf.quotient(2) + 1) if len(cf.preperiod) >= 2 else a1
        best_k, best = 0, a1
        if q1_value > best:
            best_k, best = 1, q1_value
        for k, t in terms:
            if t > best:
                best_k, best = k, t
        return CriticalExponentResult(
            slope=cf, depth=depth_bound, terms=terms, witness_k=best_k,
            attained=True, value_attained=best, limit_offset=None,
            limit_tail=None, depth_limited=True, bounded=None,
        )

    m = len(cf.preperiod)
    period = len(cf.period)
    # Beyond the horizon every term sits strictly below its class limit:
    # the term and the limit share s = k - m reversed quotients, so they
    # differ by at most 1/d_s^2 (d_s the shared continuant), while the
    # term loses a full 2/q_k <= 2/(2 q_m d_s); once d_s >= q_m the slack
    # wins.  Continuants grow at least like Fibonacci numbers.
    q_m = ctx.pair(m)[1] if m else 1
    s, fib_a, fib_b = 1, 1, 1  # fib_b = Fib(s + 1) <= any continuant of s terms
    while fib_b < q_m:
        fib_a, fib_b = fib_b, fib_a + fib_b
        s += 1
    horizon = max(m + period + 1, m + s + 1, depth_bound)

    terms = tuple((k, term(k)) for k in range(2, depth_bound + 1))
    candidates: list[tuple[Fraction, ContinuedFraction | None, int]] = [(a1, None, 0)]
    for w in set(conjugates(reversal(standard_word(cf, 1)))):
        candidates.append((fractional_index(cf, w), None, 1))
    for k in range(2, horizon + 1):
        candidates.append((term(k), None, k))
    for c in range(period):
        k0 = m + period + 1 + c
        tail = _class_limit_tail(cf, k0)
        candidates.append((Fraction(2 + cf.quotient(k0 + 1)), tail, k0))

    best = candidates[0]
    for cand in candidates[1:]:
        if _candidate_le(cf_tail_a=(best[0], best[1]), cf_tail_b=(cand[0], cand[1])):
            best = cand
    frac_part, tail, witness = best
    if tail is None:
        return CriticalExponentResult(
            slope=cf, depth=depth_bound, terms=terms, witness_k=witness,
            attained=True, value_attained=frac_part, limit_offset=None,
            limit_tail=None, depth_limited=False, bounded=True,
        )
    return CriticalExponentResult(
        slope=cf, depth=depth_bound, terms=terms, witness_k=witness,
        attained=False, value_attained=None, limit_offset=int(frac_part),
        limit_tail=tail, depth_limited=False, bounded=True,
    )
