"""Direct tests of the brute-force oracle primitives on synthetic strings.

The oracles back every formula-vs-scan equivalence, so they are checked
here against naive reimplementations on small inputs where the answer can
be enumerated.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import alpha_oracle
from sturmian import oracles
from sturmian.oracles import (
    _longest_run,
    best_denominator_scan,
    max_fractional_power,
    max_power,
    max_run_exponent,
    power_roots,
    square_root_lengths,
)

WORDS = ["0", "1", "01", "10", "00", "010", "001", "100", "0101", "0010"]

TEXTS = [
    "0101010010",
    "0010010010001",
    "0100101001001010010100100101001",  # a slope-(3-sqrt5)/2 coding prefix
    "0000",
    "10110110101101101011",
]


def naive_max_power(text: str, w: str) -> int:
    p = 0
    while w * (p + 1) in text:
        p += 1
    return p


def naive_max_fractional(text: str, w: str) -> Fraction:
    best = Fraction(0)
    n = len(w)
    for i in range(len(text)):
        length = 0
        while i + length < len(text) and text[i + length] == w[length % n]:
            length += 1
        if length >= n:
            best = max(best, Fraction(length, n))
    return best


@pytest.mark.parametrize("text", TEXTS)
def test_max_power_matches_naive(text):
    for w in WORDS:
        assert max_power(text, w) == naive_max_power(text, w)


@pytest.mark.parametrize("text", TEXTS)
def test_max_fractional_power_matches_naive(text):
    for w in WORDS:
        got = max_fractional_power(text, w)
        naive = naive_max_fractional(text, w)
        if naive < 1:
            assert got == 0
        else:
            assert got == naive, (text, w)


def test_max_fractional_power_simple_cases():
    assert max_fractional_power("010", "01") == Fraction(3, 2)
    assert max_fractional_power("01001010", "010") == 2
    assert max_fractional_power("111", "0") == 0


def test_longest_run_bit_trick():
    cases = {
        0b0: 0,
        0b1: 1,
        0b11101101111: 4,
        0b1111: 4,
        0b1010101: 1,
        (1 << 300) - 1: 300,
        ((1 << 64) - 1) << 5 | 0b101: 64,
    }
    for mask, expected in cases.items():
        assert _longest_run(mask) == expected


def naive_run_exponent(text: str, max_period: int) -> Fraction:
    best = Fraction(0)
    for period in range(1, min(max_period, len(text) - 1) + 1):
        run = 0
        best_run = 0
        for i in range(len(text) - period):
            run = run + 1 if text[i] == text[i + period] else 0
            best_run = max(best_run, run)
        if best_run:
            best = max(best, Fraction(best_run + period, period))
    return best


@pytest.mark.parametrize("text", TEXTS)
def test_max_run_exponent_matches_naive(text):
    got, _ = max_run_exponent(text, 8)
    assert got == naive_run_exponent(text, 8)


def test_max_run_exponent_witness():
    best, period = max_run_exponent("0000", 3)
    assert best == 4 and period == 1
    best, period = max_run_exponent("010101", 4)
    assert best == 3 and period == 2


def test_square_root_lengths_synthetic():
    assert square_root_lengths("00100100", 4) == {1, 3}
    assert square_root_lengths("0101", 4) == {2}  # 0101 = (01)^2, root primitive
    assert square_root_lengths("010", 4) == set()


def test_power_roots_synthetic():
    assert power_roots("00100100", 3, 2) == {"0", "001", "010", "100"}
    assert power_roots("000", 2, 3) == {"0"}
    assert power_roots("0101010", 3, 3) == {"01", "10"}


def test_best_denominator_scan_matches_independent_route(family):
    # Third route: exact Fractions from a deep bottom-up evaluation.
    for cf in family:
        lo_a, hi_a = alpha_oracle(cf, 120)

        def norm(b: int) -> Fraction:
            vals = sorted([abs(b * lo_a - round(b * lo_a)),
                           abs(b * hi_a - round(b * hi_a))])
            assert vals[1] - vals[0] < Fraction(1, 10 ** 30)
            return vals[1]

        best, current = [], Fraction(1)
        for b in range(1, 201):
            v = norm(b)
            if v < current:
                best.append(b)
                current = v
        assert best_denominator_scan(cf, 200) == best
