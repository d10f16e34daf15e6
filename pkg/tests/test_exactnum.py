"""Tests for the exact continued-fraction kernel."""

from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import alpha_oracle, form_bounds, form_sign_oracle, unroll
from sturmian import exactnum as ex
from sturmian.exactnum import (
    ContinuedFraction,
    DepthExceededError,
    LinearForm,
    Ordering,
    SlopeSyntaxError,
    UndecidedError,
    best_approximations,
    closest_multiples,
    compare,
    convergent,
    convergent_distance,
    distance,
    enclosure,
    normalize_slope,
    parse_slope,
    recover_quotient,
    semiconvergent_den,
    semiconvergent_distance,
)


# ------------------------------------------------------------------
# parsing
# ------------------------------------------------------------------

@pytest.mark.parametrize("text,pre,per", [
    ("[0;2,(1,2)]", (2,), (1, 2)),
    ("[0;(1)]", (), (1,)),
    ("[0;2,1,1]", (2, 1, 1), ()),
    ("[0; 2, (1, 2)]", (2,), (1, 2)),
    ("[0;5,1,(1)]", (5, 1), (1,)),
])
def test_parse_slope(text, pre, per):
    cf = parse_slope(text)
    assert cf.preperiod == pre
    assert cf.period == per


def test_parse_slope_truncation_flag():
    cf = parse_slope("[0;2,1,1]")
    assert not cf.is_periodic
    assert cf.truncation_depth == 3
    assert parse_slope("[0;2,(1,2)]").truncation_depth is None


@pytest.mark.parametrize("bad", [
    "", "[0;]", "[1;2]", "[0;0]", "[0;-1]", "[0;2,()]", "[0;2,(1),3]",
    "[0;2 3]", "[0;2,,3]", "0;2]", "[0;2,(1,2]",
])
def test_parse_slope_rejects(bad):
    with pytest.raises(SlopeSyntaxError):
        parse_slope(bad)


def test_slope_roundtrip_str():
    for text in ["[0;2,(1,2)]", "[0;(1)]", "[0;2,1,1]", "[0;3,(2,1)]"]:
        assert str(parse_slope(text)) == text


# ------------------------------------------------------------------
# normalization
# ------------------------------------------------------------------

@pytest.mark.parametrize("text,expected,swap", [
    ("[0;(1)]", "[0;2,(1)]", True),
    ("[0;2,(1,2)]", "[0;2,(1,2)]", False),
    ("[0;1,(3)]", "[0;4,(3)]", True),
    ("[0;1,1]", "[0;2]", True),
    ("[0;(1,3)]", "[0;4,(1,3)]", True),
    ("[0;1,2,(5)]", "[0;3,(5)]", True),
])
def test_normalize_slope(text, expected, swap):
    got, got_swap = normalize_slope(parse_slope(text))
    assert str(got) == expected
    assert got_swap is swap


def test_normalize_preserves_tail():
    # Dropping a_1 = 1 and bumping a_2 must leave the quotient stream intact.
    for text in ["[0;(1)]", "[0;1,(3)]", "[0;(1,3)]", "[0;1,2,(5)]", "[0;(1,2)]"]:
        cf = parse_slope(text)
        norm, swap = normalize_slope(cf)
        assert swap
        seq = unroll(cf, 21)
        assert seq[0] == 1
        assert unroll(norm, 19) == [seq[1] + 1] + seq[2:20]


def test_normalize_depth_error():
    with pytest.raises(DepthExceededError):
        normalize_slope(parse_slope("[0;1]"))


# ------------------------------------------------------------------
# convergents and semiconvergents
# ------------------------------------------------------------------

def test_convergents_worked_example(example_slope):
    qs = [convergent(example_slope, k).q for k in range(4)]
    assert qs == [1, 2, 3, 8]
    assert convergent(example_slope, 3).p == 3


def test_convergents_fibonacci(fib_slope):
    assert [convergent(fib_slope, k).q for k in range(6)] == [1, 2, 3, 5, 8, 13]


def test_convergents_match_bottom_up_evaluation(family):
    for cf in family:
        for k in range(1, 12):
            c = convergent(cf, k)
            x = Fraction(0)
            for a in reversed(unroll(cf, k)):
                x = 1 / (a + x)
            assert c.fraction == x


def test_determinant_identity(family):
    for cf in family:
        for k in range(1, 40):
            a = convergent(cf, k)
            b = convergent(cf, k - 1)
            assert a.p * b.q - b.p * a.q == (-1) ** (k - 1)


def test_denominators_increase(family):
    for cf in family:
        qs = [convergent(cf, k).q for k in range(30)]
        assert all(qs[k] < qs[k + 1] for k in range(1, 29))


def test_convergent_depth_error():
    cf = parse_slope("[0;2,1,1]")
    assert convergent(cf, 3).q == 5
    with pytest.raises(DepthExceededError):
        convergent(cf, 4)


def test_semiconvergents_worked_example(example_slope):
    assert semiconvergent_den(example_slope, 3, 1) == 5
    assert semiconvergent_den(example_slope, 3, 0) == 2
    assert semiconvergent_den(example_slope, 3, 2) == 8


def test_semiconvergent_range_errors(example_slope):
    with pytest.raises(ValueError):
        semiconvergent_den(example_slope, 3, 3)
    with pytest.raises(ValueError):
        semiconvergent_den(example_slope, 1, 0)


# ------------------------------------------------------------------
# enclosures
# ------------------------------------------------------------------

def test_enclosure_contains_true_value(example_slope):
    # Independent bounds from bottom-up evaluation at high depth.
    lo_a, hi_a = alpha_oracle(example_slope, 50)
    for q, p in [(1, 0), (3, 1), (-5, -2), (17, 6), (0, -4)]:
        enc = enclosure(example_slope, LinearForm(q, p), 12)
        assert enc.lo <= q * lo_a - p <= enc.hi or enc.lo <= q * hi_a - p <= enc.hi
        # The tight oracle interval must sit inside the depth-12 enclosure.
        vals = sorted([q * lo_a - p, q * hi_a - p])
        assert enc.lo <= vals[0] and vals[1] <= enc.hi


def test_enclosure_width_bound(family):
    for cf in family:
        for d in (4, 9, 15):
            for q, p in [(1, 0), (123, 45), (-77, -28)]:
                enc = enclosure(cf, LinearForm(q, p), d)
                qd = convergent(cf, d).q
                qd1 = convergent(cf, d + 1).q
                assert enc.width <= Fraction(abs(q), qd * qd1)


def test_enclosure_nesting(family):
    # Deeper enclosures are contained in shallower ones (depth d vs d+4).
    for cf in family:
        for n in (1, 7, 123, 4096, 9973):
            p = round(n * 0.381966)  # any integer offset works here
            for d in (4, 8, 16, 24):
                outer = enclosure(cf, LinearForm(n, p), d)
                inner = enclosure(cf, LinearForm(n, p), d + 4)
                assert outer.lo <= inner.lo and inner.hi <= outer.hi


def test_enclosure_depth_error_on_truncation():
    cf = parse_slope("[0;2,1,1]")
    enclosure(cf, LinearForm(1, 0), 3)  # cylinder bound at the final depth
    with pytest.raises(DepthExceededError):
        enclosure(cf, LinearForm(1, 0), 4)


# ------------------------------------------------------------------
# sign / compare
# ------------------------------------------------------------------

def test_compare_identical_is_eq(example_slope):
    x = LinearForm(3, 1)
    assert compare(example_slope, x, x) is Ordering.EQ


def test_compare_distances_worked_example(example_slope):
    assert compare(example_slope, distance(example_slope, 3), distance(example_slope, 2)) is Ordering.LT


def test_compare_reduces_distance_difference(example_slope):
    # ||5a|| equals ||2a|| - ||3a|| as identical reduced forms.
    lhs = distance(example_slope, 5)
    rhs = distance(example_slope, 2) - distance(example_slope, 3)
    assert lhs == rhs
    assert compare(example_slope, lhs, rhs) is Ordering.EQ


def test_sign_matches_oracle(family):
    forms = [LinearForm(q, p) for q, p in
             [(1, 0), (2, 1), (-3, -1), (5, 2), (13, 5), (-30, -11), (7, 3)]]
    for cf in family:
        for form in forms:
            assert ex.sign(cf, form) == form_sign_oracle(cf, form)


def test_sign_undecided_on_shallow_truncation():
    cf = parse_slope("[0;2,1,1]")
    # alpha is only pinned to (3/8, 2/5); 80*alpha - 31 straddles zero there.
    with pytest.raises(UndecidedError):
        ex.sign(cf, LinearForm(80, 31))


# ------------------------------------------------------------------
# distances
# ------------------------------------------------------------------

def test_distance_forms_worked_example(example_slope):
    assert distance(example_slope, 3) == LinearForm(3, 1)
    assert distance(example_slope, 2) == LinearForm(-2, -1)
    assert distance(example_slope, 5) == LinearForm(-5, -2)


def test_distance_trivial_first_multiple(fib_slope):
    assert distance(fib_slope, 1) == LinearForm(1, 0)


def test_distance_is_nonnegative_and_below_half(family):
    for cf in family:
        for n in range(1, 120):
            form = distance(cf, n)
            lo, hi = form_bounds(cf, form)
            assert lo > 0
            assert hi < Fraction(1, 2)


def test_distance_matches_semiconvergent_recurrence(family):
    # (-1)^k (q_{k,l} a - p_{k,l}) is the nearest-integer distance form.
    for cf in family:
        for k in range(2, 9):
            for l in range(0, cf.quotient(k) + 1):
                n = semiconvergent_den(cf, k, l)
                assert distance(cf, n) == semiconvergent_distance(cf, k, l)


def test_distance_difference_identity(family):
    # ||q_{k,l} a|| = ||q_{k,l-1} a|| - ||q_{k-1} a|| as exact forms.
    for cf in family:
        for k in range(2, 11):
            for l in range(1, cf.quotient(k) + 1):
                lhs = semiconvergent_distance(cf, k, l)
                rhs = semiconvergent_distance(cf, k, l - 1) - convergent_distance(cf, k - 1)
                assert lhs == rhs


def test_min_distance_over_initial_segment(family):
    # For 0 < n < q_k the closest multiple is q_{k-1}.
    for cf in family:
        for k in range(2, 6):
            qk = convergent(cf, k).q
            qk1 = convergent(cf, k - 1).q
            best = distance(cf, qk1)
            for n in range(1, qk):
                rel = compare(cf, distance(cf, n), best)
                if n == qk1:
                    assert rel is Ordering.EQ
                else:
                    assert rel is Ordering.GT


def test_max_coefficient_sandwich(family):
    # a_k ||q_{k-1} a|| < ||q_{k-2} a|| < (a_k + 1) ||q_{k-1} a||.
    for cf in family:
        for k in range(2, 12):
            a_k = cf.quotient(k)
            prev = convergent_distance(cf, k - 1)
            prev2 = convergent_distance(cf, k - 2)
            assert compare(cf, a_k * prev, prev2) is Ordering.LT
            assert compare(cf, prev2, (a_k + 1) * prev) is Ordering.LT


# ------------------------------------------------------------------
# recovered quotients
# ------------------------------------------------------------------

def test_recover_quotient_roundtrip(family):
    for cf in family:
        for k in range(1, 26):
            assert recover_quotient(cf, k) == cf.quotient(k)


def test_recover_quotient_base_case(example_slope):
    assert recover_quotient(example_slope, 1) == 2


def test_recover_quotient_on_truncation_within_depth():
    cf = parse_slope("[0;2,1,1]")
    assert recover_quotient(cf, 3) == 1


# ------------------------------------------------------------------
# best approximations
# ------------------------------------------------------------------

def scan_best_denominators(cf: ContinuedFraction, q_max: int) -> list[int]:
    """Exhaustive oracle: b is best iff ||b a|| beats every smaller multiple."""
    lo_a, hi_a = alpha_oracle(cf, 120)
    best: list[int] = []
    current = Fraction(1)
    for b in range(1, q_max + 1):
        # ||b a|| with a safety check that the oracle interval separates.
        cands = sorted([abs(b * lo_a - round(b * lo_a)), abs(b * hi_a - round(b * hi_a))])
        assert cands[1] - cands[0] < Fraction(1, 10**30)
        val = cands[1]
        if val < current:
            best.append(b)
            current = val
    return best


def test_best_approximations_examples(example_slope, fib_slope):
    assert [c.q for c in best_approximations(example_slope, 8)] == [1, 2, 3, 8]
    assert [c.q for c in best_approximations(example_slope, 1)] == [1]
    assert [c.q for c in best_approximations(fib_slope, 13)] == [1, 2, 3, 5, 8, 13]


def test_best_approximations_match_exhaustive_scan(family):
    for cf in family:
        assert [c.q for c in best_approximations(cf, 200)] == scan_best_denominators(cf, 200)


# ------------------------------------------------------------------
# closest multiples
# ------------------------------------------------------------------

def scan_closest_multiples(cf: ContinuedFraction, k: int, l: int) -> list[int]:
    lo_a, hi_a = alpha_oracle(cf, 120)

    def norm(n: int) -> Fraction:
        v = sorted([abs(n * lo_a - round(n * lo_a)), abs(n * hi_a - round(n * hi_a))])
        assert v[1] - v[0] < Fraction(1, 10**30)
        return v[1]

    q_kl = semiconvergent_den(cf, k, l)
    bound = norm(semiconvergent_den(cf, k, l - 1))  # l=1 gives ||q_{k-2} a||
    return [n for n in range(1, q_kl) if norm(n) < bound]


def test_closest_multiples_examples(example_slope):
    assert closest_multiples(example_slope, 3, 1) == [3]
    assert closest_multiples(example_slope, 2, 1) == [2]


def test_closest_multiples_match_exhaustive_scan(family):
    for cf in family:
        for k in range(2, 8):
            for l in range(1, cf.quotient(k) + 1):
                if semiconvergent_den(cf, k, l) > 500:
                    continue
                got = closest_multiples(cf, k, l)
                assert got == scan_closest_multiples(cf, k, l)
                q_prev = convergent(cf, k - 1).q
                assert all(n % q_prev == 0 for n in got)


# ------------------------------------------------------------------
# decimal rendering
# ------------------------------------------------------------------

def test_approx_str_frozen_digits(example_slope):
    assert ex.approx_str(example_slope, LinearForm(1, 0)) == "0.366025403784"
    assert ex.approx_str(example_slope, LinearForm(3, 1)) == "0.0980762113533"
    assert ex.approx_str(example_slope, LinearForm(-2, -1)) == "0.267949192431"
    assert ex.approx_str(example_slope, LinearForm(-5, -2)) == "0.169872981078"
    assert ex.approx_str(example_slope, LinearForm(0, -2)) == "2.00000000000"


def test_approx_str_deterministic(family):
    for cf in family:
        form = distance(cf, 37)
        assert ex.approx_str(cf, form) == ex.approx_str(cf, form)


# ------------------------------------------------------------------
# depth cap environment variable
# ------------------------------------------------------------------

def test_depth_limit_env_override(monkeypatch):
    assert ex.depth_limit() == 64
    monkeypatch.setenv("STURM_DEPTH_LIMIT", "16")
    assert ex.depth_limit() == 16
    monkeypatch.setenv("STURM_DEPTH_LIMIT", "zzz")
    with pytest.raises(ValueError):
        ex.depth_limit()
