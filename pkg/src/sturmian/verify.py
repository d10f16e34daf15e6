"""Verification suites: every structural claim checked against an oracle.

Each suite runs a formula route and an independent brute-force route over
a family of slopes and reports pass/fail with counters.  The suites back
the `verify` CLI subcommand and the acceptance tests; `inject_fault`
deliberately corrupts one formula (negative control) to prove the suites
can fail.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from sturmian import oracles
from sturmian.exactnum import (
    ContinuedFraction,
    Ordering,
    best_approximations,
    closest_multiples,
    compare,
    convergent,
    convergent_distance,
    distance,
    parse_slope,
    recover_quotient,
    semiconvergent_den,
    semiconvergent_distance,
)
from sturmian.repetitions import (
    classify_length,
    conjugacy_report,
    critical_exponent,
    fractional_index,
    index_by_interval,
    index_oracle,
    oracle_window,
    square_lengths,
)
from sturmian.rotation import (
    characteristic_prefix,
    factor_interval_map,
    three_distance,
    word_interval,
)
from sturmian.words import conjugates, reversal, standard_or_semistandard, standard_word

DEFAULT_FAMILY = (
    "[0;2,(1)]", "[0;2,(2)]", "[0;2,(3)]", "[0;2,(1,2)]", "[0;2,(2,1)]", "[0;2,(1,3)]",
    "[0;3,(1)]", "[0;3,(2)]", "[0;3,(3)]", "[0;3,(1,2)]", "[0;3,(2,1)]", "[0;3,(1,3)]",
)

FAULT_MODES = ("flip-gamma",)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    seconds: float
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        # Times are kept out of the line so that CLI output stays
        # byte-identical across runs.
        status = "PASS" if self.passed else "FAIL"
        out = f"{self.name:<24} {status}  ({self.checks} checks)"
        for f in self.failures[:5]:
            out += f"\n    {f}"
        if len(self.failures) > 5:
            out += f"\n    ... and {len(self.failures) - 5} more"
        return out


class _Recorder:
    def __init__(self) -> None:
        self.checks = 0
        self.failures: list[str] = []

    def check(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(message)


def _finish(name: str, rec: _Recorder, start: float) -> SuiteResult:
    return SuiteResult(name, not rec.failures, rec.checks, time.monotonic() - start,
                       rec.failures)


def default_family() -> list[ContinuedFraction]:
    return [parse_slope(s) for s in DEFAULT_FAMILY]


# ------------------------------------------------------------------
# number-theory kernel
# ------------------------------------------------------------------

def suite_best_approximations(slopes: list[ContinuedFraction],
                              q_max: int = 500) -> SuiteResult:
    """Best approximations = convergents (exhaustive scan), recovered
    quotients, and the minimum-distance property."""
    start = time.monotonic()
    rec = _Recorder()
    for cf in slopes:
        got = [c.q for c in best_approximations(cf, q_max)]
        scan = oracles.best_denominator_scan(cf, q_max)
        rec.check(got == scan, f"{cf}: best approximations {got} != scan {scan}")
        for k in range(1, 26):
            rec.check(recover_quotient(cf, k) == cf.quotient(k),
                      f"{cf}: recovered a_{k} mismatch")
        for k in range(2, 8):
            qk = convergent(cf, k).q
            if qk > q_max:
                break
            closer = oracles.closer_multiples_scan(cf, qk, convergent(cf, k - 1).q)
            rec.check(closer == [],
                      f"{cf}: some n < q_{k} beats ||q_{k - 1} alpha||: {closer}")
    return _finish("best-approximations", rec, start)


def suite_closest_multiples(slopes: list[ContinuedFraction],
                            q_max: int = 500) -> SuiteResult:
    """Closest-multiple structure below q_{k,l}, the distance recurrence
    as a form identity, and the quotient sandwich."""
    start = time.monotonic()
    rec = _Recorder()
    for cf in slopes:
        k = 2
        while semiconvergent_den(cf, k, 0) + convergent(cf, k - 1).q <= q_max:
            for l in range(1, cf.quotient(k) + 1):
                q_kl = semiconvergent_den(cf, k, l)
                if q_kl > q_max:
                    continue
                got = closest_multiples(cf, k, l)
                scan = oracles.closer_multiples_scan(
                    cf, q_kl, semiconvergent_den(cf, k, l - 1))
                rec.check(got == scan, f"{cf}: closest multiples ({k},{l}) {got} != {scan}")
                lhs = semiconvergent_distance(cf, k, l)
                rhs = semiconvergent_distance(cf, k, l - 1) - convergent_distance(cf, k - 1)
                rec.check(lhs == rhs, f"{cf}: distance recurrence broken at ({k},{l})")
                rec.check(distance(cf, q_kl) == lhs,
                          f"{cf}: nearest-integer distance disagrees at q_({k},{l})")
            a_k = cf.quotient(k)
            prev = convergent_distance(cf, k - 1)
            prev2 = convergent_distance(cf, k - 2)
            ok = (compare(cf, a_k * prev, prev2) is Ordering.LT
                  and compare(cf, prev2, (a_k + 1) * prev) is Ordering.LT)
            rec.check(ok, f"{cf}: quotient sandwich fails at k={k}")
            k += 1
    return _finish("closest-multiples", rec, start)


# ------------------------------------------------------------------
# geometry
# ------------------------------------------------------------------

def suite_three_distance(slopes: list[ContinuedFraction],
                         n_max: int = 500) -> SuiteResult:
    """Formulaic gap counts vs the sorted-gap oracle for every level."""
    start = time.monotonic()
    rec = _Recorder()
    for cf in slopes:
        for n in range(cf.quotient(1) + 1, n_max + 1):
            s = three_distance(cf, n)
            counts = oracles.gap_spectrum(
                cf, n, [s.length_short, s.length_mid, s.length_long])
            ok = counts == [s.count_short, s.count_mid, s.count_long]
            rec.check(ok, f"{cf}: gap counts at n={n}: formula "
                          f"{[s.count_short, s.count_mid, s.count_long]} vs actual {counts}")
            if not ok and len(rec.failures) > 10:
                return _finish("three-distance", rec, start)
    return _finish("three-distance", rec, start)


def suite_square_lengths(slopes: list[ContinuedFraction],
                         n_max: int = 150) -> SuiteResult:
    """Square lengths: construction gives every q_k and q_{k,l}; a scan of
    a certified window finds nothing else."""
    start = time.monotonic()
    rec = _Recorder()
    for cf in slopes:
        formula = square_lengths(cf, n_max)  # internally certifies each witness
        window = characteristic_prefix(cf, oracle_window(cf, n_max))
        scanned = oracles.square_root_lengths(window, n_max)
        rec.check(scanned == formula,
                  f"{cf}: square lengths scan {sorted(scanned)} != formula {sorted(formula)}")
    return _finish("square-lengths", rec, start)


def suite_conjugacy(slopes: list[ContinuedFraction], n_max: int = 150) -> SuiteResult:
    """Conjugacy-class interval tags vs the level partition and the
    three-distance counts; the rotation identity inside the class."""
    start = time.monotonic()
    rec = _Recorder()
    for cf in slopes:
        k = 2
        while semiconvergent_den(cf, k, 1) <= n_max:
            for l in range(1, cf.quotient(k) + 1):
                n = semiconvergent_den(cf, k, l)
                if n > n_max:
                    continue
                rep = conjugacy_report(cf, k, l)  # self-certifies vs intervals
                summary = three_distance(cf, n)
                pairs = {
                    (summary.count_short, summary.length_short),
                    (summary.count_mid, summary.length_mid),
                    (summary.count_long, summary.length_long),
                }
                expected = {
                    (rep.wide_count, rep.wide_length),
                    (rep.narrow_count, rep.narrow_length),
                    (1, rep.leftover_length),
                }
                rec.check(pairs == expected,
                          f"{cf}: class ({k},{l}) tags disagree with the partition")
                rec.check(rep.conjugates[convergent(cf, k - 1).q - 2] ==
                          standard_or_semistandard(cf, k, l),
                          f"{cf}: rotation identity fails at ({k},{l})")
            k += 1
    return _finish("conjugacy-intervals", rec, start)


# ------------------------------------------------------------------
# powers
# ------------------------------------------------------------------

def suite_power_classification(slopes: list[ContinuedFraction], n_max: int = 150,
                               inject_fault: str | None = None) -> SuiteResult:
    """Case indices == interval formula == scan oracle for every factor of
    every length; case tags exclusive and exhaustive."""
    start = time.monotonic()
    rec = _Recorder()
    for cf in slopes:
        for n in range(1, n_max + 1):
            try:
                reports = classify_length(cf, n)
            except AssertionError as exc:  # double case match
                rec.check(False, f"{cf}: {exc}")
                continue
            intervals = factor_interval_map(cf, n)
            dist = distance(cf, n)
            for report in reports:
                formula = index_by_interval(cf, report.word)
                if inject_fault == "flip-gamma":
                    gamma = 0 if intervals[report.word].length == dist else 1
                    formula += 1 if gamma == 0 else -1
                ok = report.integer_index == formula
                if ok:
                    scanned = index_oracle(cf, report.word)
                    if scanned != formula:
                        scanned = index_oracle(cf, report.word,
                                               2 * oracle_window(cf, n))
                    ok = scanned == formula
                    rec.check(ok, f"{cf}: n={n} {report.word}: case index "
                                  f"{report.integer_index}, formula {formula}, "
                                  f"scan {scanned}")
                else:
                    rec.check(False, f"{cf}: n={n} {report.word}: case index "
                                     f"{report.integer_index} != formula {formula}")
                if len(rec.failures) > 20:
                    return _finish("power-classification", rec, start)
    return _finish("power-classification", rec, start)


def suite_critical_exponent(slopes: list[ContinuedFraction], depth: int = 30,
                            scan_len: int = 100_000) -> SuiteResult:
    """The supremum dominates every term, every exactly computed
    fractional index of a standard word, and every repetition found by
    an unstructured run scan of a long prefix."""
    start = time.monotonic()
    rec = _Recorder()
    for cf in slopes:
        res = critical_exponent(cf, depth)
        lo, hi = res.bounds()
        rec.check(0 < lo <= hi, f"{cf}: empty supremum bounds")
        for k, t in res.terms:
            rec.check(t <= hi, f"{cf}: term at k={k} exceeds the supremum")
            if k <= 9 and convergent(cf, k).q <= 300:
                exact = fractional_index(cf, standard_word(cf, k))
                rec.check(exact == t,
                          f"{cf}: standard-word fractional index at k={k}: "
                          f"interval route {exact} != term {t}")
        window = characteristic_prefix(cf, scan_len)
        observed, period = oracles.max_run_exponent(window, 1200)
        rec.check(observed <= hi,
                  f"{cf}: scanned repetition of exponent {observed} (period {period}) "
                  f"exceeds the supremum bound {hi}")
    return _finish("critical-exponent", rec, start)


def suite_cube_structure(slopes: list[ContinuedFraction], n_max: int = 100) -> SuiteResult:
    """Square and cube roots are conjugates of standard-family words;
    slopes whose quotients cap every index below 4 contain no fourth
    power; cubes of every convergent length exist."""
    start = time.monotonic()
    rec = _Recorder()
    for cf in slopes:
        window = characteristic_prefix(cf, oracle_window(cf, n_max))
        allowed_sq = _standard_conjugates(cf, n_max, include_semis=True)
        allowed_cube = _standard_conjugates(cf, n_max, include_semis=False)
        for w in sorted(oracles.power_roots(window, n_max, 2)):
            rec.check(w in allowed_sq,
                      f"{cf}: square root {w} not conjugate to a standard-family word")
        for w in sorted(oracles.power_roots(window, n_max, 3)):
            if w == "0":
                rec.check(cf.quotient(1) > 2, f"{cf}: cube 000 requires a_1 > 2")
            else:
                rec.check(w in allowed_cube,
                          f"{cf}: cube root {w} not conjugate to a standard word")
        # Cubes with |w| = q_k exist for every k >= 2 (the class index
        # reaches a_{k+1} + 2 >= 3); at k = 0 and 1 existence is exactly
        # a_1 >= 3 resp. a_2 >= 2.  Certify both directions by intervals.
        rec.check((word_interval(cf, "000") is not None) == (cf.quotient(1) >= 3),
                  f"{cf}: cube of the letter 0 disagrees with a_1")
        q1_cube = reversal(standard_word(cf, 1)) * 3
        rec.check((word_interval(cf, q1_cube) is not None) == (cf.quotient(2) >= 2),
                  f"{cf}: cube at length q_1 disagrees with a_2")
        for k in range(2, 9):
            if convergent(cf, k).q > 400:
                break
            cube = reversal(standard_word(cf, k)) * 3
            rec.check(word_interval(cf, cube) is not None,
                      f"{cf}: no cube of period length q_{k}")
        # Fourth powers need an index >= 4 somewhere, i.e. a quotient
        # a_{k+1} >= 2 at some usable depth; all-ones tails forbid them.
        if cf.is_periodic and max(cf.period) == 1 and cf.quotient(2) == 1:
            best, period = oracles.max_run_exponent(window, n_max)
            rec.check(best < 4,
                      f"{cf}: fourth power of period {period} found; exponent {best}")
    return _finish("cube-structure", rec, start)


def _standard_conjugates(cf: ContinuedFraction, n_max: int,
                         include_semis: bool) -> set[str]:
    out: set[str] = set()
    k = 0 if include_semis else 1
    while convergent(cf, k).q <= n_max:
        out.update(conjugates(standard_word(cf, k)))
        k += 1
    if include_semis:
        j = 2
        while convergent(cf, j - 1).q + convergent(cf, j - 2).q <= n_max:
            for l in range(1, cf.quotient(j)):
                if semiconvergent_den(cf, j, l) <= n_max:
                    out.update(conjugates(standard_or_semistandard(cf, j, l)))
            j += 1
    return out


# ------------------------------------------------------------------
# runner
# ------------------------------------------------------------------

SUITES = {
    "best-approximations": suite_best_approximations,
    "closest-multiples": suite_closest_multiples,
    "three-distance": suite_three_distance,
    "square-lengths": suite_square_lengths,
    "conjugacy-intervals": suite_conjugacy,
    "power-classification": suite_power_classification,
    "critical-exponent": suite_critical_exponent,
    "cube-structure": suite_cube_structure,
}


def run_suites(names: list[str] | None = None,
               slopes: list[ContinuedFraction] | None = None,
               n_max: int = 150,
               inject_fault: str | None = None) -> list[SuiteResult]:
    """Run the named suites (default: all) over the slope family.

    n_max scales only the power-classification sweep; the other suites
    keep their own bounds (500 for the kernel and gap suites, 150 for
    squares and conjugacy, 100 for roots).
    """
    if inject_fault is not None and inject_fault not in FAULT_MODES:
        raise ValueError(f"unknown fault mode {inject_fault!r}; known: {FAULT_MODES}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if slopes is None:
        slopes = default_family()
    results = []
    for name in names or list(SUITES):
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; known: {sorted(SUITES)}")
        if name == "power-classification":
            results.append(SUITES[name](slopes, n_max=n_max, inject_fault=inject_fault))
        else:
            results.append(SUITES[name](slopes))
    return results
