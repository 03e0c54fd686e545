"""
Acceptance suite: one test per numbered criterion, each at its stated tolerance
and time budget. Every test records a PASS/FAIL line; the lines are printed in
the pytest terminal summary, or directly when this file is run as a script.
"""

import json
import math
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from stacksort.analytic_bounds import (
    A0, B0, b_series, f0_integral_check, f_closed_form, f_coefficients, golomb_dickman,
)
from stacksort.core_perm import all_perms, del_r, identity, normalize, parse_perm, split_by_hook, Hook
from stacksort.fertility import FertilityCache, catalan, fertility, image_counts, w2_formula, wt_table
from stacksort.montecarlo import estimate
from stacksort.partition_dynamics import (
    ballot_lower_bound, ballot_probability, ballot_probability_by_paths, eta, make_partition,
    run_dynamics,
)
from stacksort.reporting import run_verify
from stacksort.sorting_maps import pop_stack, sd_prime, stack_sort
from stacksort.weak_order import leq_right

RESULTS: list[str] = []

MC_N, MC_SAMPLES, MC_SEED = 400, 1000, 0


def record(number: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def sd_prime_400():
    return estimate("sd_prime", MC_N, MC_SAMPLES, MC_SEED)


@pytest.fixture(scope="module")
def lam():
    return golomb_dickman()


def test_criterion_01_named_values():
    start = time.perf_counter()
    example = parse_perm("9 12 6 11 4 1 10 7 8 2 5 3")
    trace = run_dynamics(example)
    checks = {
        "s(4162)": stack_sort(parse_perm("4162")) == parse_perm("1426"),
        "s(5273614)": stack_sort(parse_perm("5273614")) == parse_perm("2531467"),
        "Pop(7634512)": pop_stack(parse_perm("7634512")) == parse_perm("3674152"),
        "del_2(436718)": del_r(parse_perm("436718"), 2) == parse_perm("4678"),
        "normalize(4682)": normalize(parse_perm("4682")) == parse_perm("2341"),
        "eta example": [set(b) for b in eta(make_partition(
            [{9, 12}, {6, 11}, {1, 4, 10}, {7, 8}, {2, 5}, {3}]))] == [{9}, {1, 4, 6, 7}, {2}],
        "maxima trace": [set(M) for M in trace.maxima_sets] == [
            {3, 5, 8, 10, 11, 12}, {2, 7, 9}, {6}, {4}, {1}],
        "sd' = 5": trace.halted_at == 5 and sd_prime(example) == 5,
        "fertilities 1, 4": (fertility(parse_perm("31425")), fertility(parse_perm("34125")))
        == (1, 4),
        "hook split": split_by_hook(parse_perm("426315789"), Hook(3, 8))
        == (parse_perm("4269"), parse_perm("3157")),
    }
    elapsed = time.perf_counter() - start
    bad = [k for k, v in checks.items() if not v]
    record(1, not bad and elapsed < 1.0,
           f"{len(checks) - len(bad)}/{len(checks)} named values exact in {elapsed * 1000:.1f} ms"
           + (f"; wrong: {bad}" if bad else ""))


def test_criterion_02_oracle_equivalence():
    start = time.perf_counter()
    evaluated, mismatches = 0, []
    for n in range(8):
        brute = image_counts(n)  # one S_n sweep gives every preimage count at this n
        cache = FertilityCache()
        for p in all_perms(n):
            evaluated += 1
            if fertility(p, cache) != brute.get(p, 0):
                mismatches.append(p)
    elapsed = time.perf_counter() - start
    record(2, not mismatches and evaluated == sum(math.factorial(n) for n in range(1, 8)) + 1
           and elapsed <= 120,
           f"{evaluated} permutations (n <= 7, incl. empty), {len(mismatches)} mismatches, "
           f"{elapsed:.2f}s")


def test_criterion_03_fertility_monotone():
    start = time.perf_counter()
    cache = FertilityCache()
    bad = []
    checked = 0
    for n in range(1, 8):
        ident = identity(n)
        for p in all_perms(n):
            checked += 1
            f, g = fertility(p, cache), fertility(stack_sort(p), cache)
            if f > g or ((f == g) != (p == ident)):
                bad.append(p)
    elapsed = time.perf_counter() - start
    record(3, not bad and elapsed <= 60,
           f"{checked} permutations, strict increase except at identity; "
           f"{len(bad)} violations, {elapsed:.2f}s")


def test_criterion_04_weak_order():
    antitone = run_verify("thm4", 6)
    swap = run_verify("lemma9", 6)
    low, high = parse_perm("31425"), parse_perm("34125")
    counter = leq_right(low, high) and fertility(low) == 1 < 4 == fertility(high)
    record(4, antitone.passed and swap.passed and counter,
           f"left-order antitonicity {antitone.status} ({antitone.checked} comparable pairs), "
           f"value-swap equality {swap.status} ({swap.checked} cases), right-order counterexample 31425/34125 "
           f"{'detected' if counter else 'missing'}")


def test_criterion_05_exhaustive_sweeps_and_dynamics():
    results = [run_verify(pid, 6) for pid in ("lemma2", "lemma3", "lemma4", "lemma7", "lemma8")]
    results.append(run_verify("dynamics-agreement", 7))
    summary = ", ".join(f"{r.property_id} {r.status}" for r in results)
    record(5, all(r.passed for r in results),
           summary + " (dynamics incl. 1000 random at n = 100)")


def test_criterion_06_tables():
    start = time.perf_counter()
    problems = []
    for n in range(1, 10):
        rows = {c.t: c.value for c in wt_table(n)}
        w = lambda t: rows.get(t, math.factorial(n))
        if w(1) != catalan(n):
            problems.append(f"W_1({n})")
        if w(2) != w2_formula(n):
            problems.append(f"W_2({n})")
        if 2 <= n <= 8 and w(n - 2) != math.factorial(n) - math.factorial(n - 2):
            problems.append(f"W_n-2({n})")
    elapsed = time.perf_counter() - start
    record(6, not problems and elapsed <= 600,
           f"W_1, W_2 for n <= 9 and W_(n-2) for n <= 8 exact; {len(problems)} mismatches, "
           f"{elapsed:.2f}s")


def test_criterion_07_ballot():
    triples = mismatches = below = 0
    for n in range(1, 13):
        for i_m in range(1, n + 1):
            for i_prev in range(i_m):
                triples += 1
                exact = ballot_probability(n, i_prev, i_m)
                assert isinstance(exact, Fraction)
                mismatches += exact != ballot_probability_by_paths(n, i_prev, i_m)
                below += exact < ballot_lower_bound(n, i_prev, i_m)
    record(7, mismatches == 0 and below == 0,
           f"{triples} triples (n <= 12): {mismatches} mismatches vs path counting, "
           f"{below} below the lower bound")


def test_criterion_08_monte_carlo(sd_prime_400):
    start = time.perf_counter()
    main = estimate("sd_prime", MC_N, MC_SAMPLES, MC_SEED)
    rev = estimate("revstack_depth", MC_N, MC_SAMPLES, MC_SEED)
    pop = estimate("pop_depth", MC_N, MC_SAMPLES, MC_SEED)
    elapsed = time.perf_counter() - start
    ok = (0.74 <= main.mean <= 0.83 and 0.10 <= main.stddev <= 0.18
          and 0.40 <= rev.mean <= 0.52 and pop.mean >= 0.5 - 3 * pop.stderr
          and main.mean == sd_prime_400.mean)
    record(8, ok and elapsed <= 30,
           f"sd'/n mean {main.mean:.4f} sd {main.stddev:.4f}; revstack mean {rev.mean:.4f}; "
           f"pop mean {pop.mean:.4f} (stderr {pop.stderr:.4f}); {elapsed:.2f}s")


def test_criterion_09_constants(lam):
    sum_b = b_series()
    coeffs = f_coefficients(60)
    drift = max(max(abs(c.a - f_closed_form(c.ell).a), abs(c.b - f_closed_form(c.ell).b))
                for c in coeffs)
    f0_err = max(abs(f0_integral_check(k / 10) - (A0 * k / 10 + B0)) for k in range(10))
    ok = (abs(lam - 0.62433) < 1e-3
          and abs(sum_b - 0.6 * (7 - 8 * math.log(2))) < 1e-6
          and abs(f0_integral_check(0.0) + 0.5 - 0.92056) < 1e-4
          and drift <= 1e-12 and f0_err < 1e-6)
    record(9, ok, f"lambda {lam:.6f}, sum b {sum_b:.8f}, recurrence drift {drift:.1e}, "
                  f"F0 quadrature error {f0_err:.1e}")


def test_criterion_10_sandwich(lam, sd_prime_400):
    m, se = sd_prime_400.mean, sd_prime_400.stderr
    upper = b_series()
    ok = lam < m + 3 * se and m - 3 * se < upper
    record(10, ok, f"{lam:.5f} < {m:.4f} (+/- 3*{se:.4f}) < {upper:.5f}; "
                   f"strict margins {m - lam:.4f} and {upper - m:.4f}")


def test_criterion_11_reproducibility():
    def run(workers):
        cmd = [sys.executable, "-m", "stacksort.cli", "estimate", "--stat", "sdprime",
               "--n", str(MC_N), "--samples", str(MC_SAMPLES), "--seed", "123",
               "--workers", str(workers)]
        return subprocess.run(cmd, capture_output=True, check=True).stdout

    one, two = run(1), run(2)
    json.loads(one)
    record(11, one == two and len(one) > 0,
           f"estimate JSON with --workers 1 vs 2: {'byte-identical' if one == two else 'DIFFERENT'} "
           f"({len(one)} bytes)")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
