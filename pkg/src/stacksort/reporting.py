"""
Registered verification sweeps and deterministic serialization of reports.

Each property in :data:`PROPERTIES` is an exhaustive (or seeded-sample) check
over S_n for ``n`` up to ``max_n``. A failing check carries a counterexample
that can be re-evaluated directly.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional

from .core_perm import (
    Perm, all_perms, del_r, identity, normalize,
    right_to_left_maxima, tail_bound_descents,
)
from .fertility import (
    CountTable, catalan, exact_depth_average, fertility, fertility_at_descent,
    image_counts, w2_formula, wt_table,
)
from .montecarlo import EstimateReport, exact_alpha_ratio, sample_permutation, sample_stream
from .partition_dynamics import DynamicsTrace, quarantine_depth_bound, run_dynamics
from .sorting_maps import sd, sd_prime, sd_prime_by_iteration, stack_sort
from .weak_order import down_set, leq_right, value_swap_check

__all__ = ["VerifyResult", "PROPERTIES", "DEFAULT_MAX_N", "run_verify", "emit"]


@dataclass
class VerifyResult:
    property_id: str
    n_range: tuple[int, int]
    status: str
    checked: int = 0
    counterexample: Optional[list] = None
    detail: str = ""
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "property_id": self.property_id,
            "n_range": list(self.n_range),
            "status": self.status,
            "checked": self.checked,
            "counterexample": self.counterexample,
            "detail": self.detail,
            "elapsed_s": round(self.elapsed, 3) if timing else None,
        }


class _Fail(Exception):
    def __init__(self, detail: str, *witness: Any) -> None:
        super().__init__(detail)
        self.detail = detail
        self.witness = [list(w) if isinstance(w, tuple) else w for w in witness]


def _perms_upto(max_n: int, start: int = 0):
    for n in range(start, max_n + 1):
        yield from all_perms(n)


def _deletion_commutes(max_n: int) -> int:
    count = 0
    for p in _perms_upto(max_n):
        n = len(p)
        orbit = [p]
        for _ in range(n):
            orbit.append(stack_sort(orbit[-1]))
        for r in range(n + 1):
            q = del_r(p, r)
            for t in range(n + 1):
                if q != del_r(orbit[t], r):
                    raise _Fail(f"s^{t}(del_{r}(p)) != del_{r}(s^{t}(p))", p)
                count += 1
                q = stack_sort(q)
    return count


def _has_231(p: Perm, b: int, a: int) -> bool:
    i, j = p.index(b), p.index(a)
    return i < j and any(p[k] > b for k in range(i + 1, j))


def _inversions_from_231(max_n: int) -> int:
    count = 0
    for p in _perms_upto(max_n):
        sp = stack_sort(p)
        for b in p:
            for a in p:
                if a >= b:
                    continue
                in_image = sp.index(b) < sp.index(a)
                if in_image != _has_231(p, b, a):
                    raise _Fail(f"21 pattern ({b},{a}) in s(p) disagrees with 231 witness", p)
                count += 1
    return count


def _entries_after_minimum(max_n: int) -> int:
    count = 0
    for p in _perms_upto(max_n, 1):
        k = p.index(min(p))
        L, R = p[:k], p[k + 1:]
        sp = stack_sort(p)
        right = set(sp[sp.index(min(p)) + 1:])
        expected = set(R) | {L[i - 1] for i in right_to_left_maxima(L)}
        if right != expected:
            raise _Fail("entries right of the minimum in s(p) differ from R plus maxima of L", p)
        count += 1
    return count


def _quarantine_bound_holds(max_n: int) -> int:
    count = 0
    for p in _perms_upto(max_n, 1):
        r = len(right_to_left_maxima(p))
        if r < 2:
            continue
        depth = sd_prime(p)
        for m in range(1, r):
            bound = quarantine_depth_bound(p, m)
            if bound is not None:
                if depth > bound:
                    raise _Fail(f"sd_prime {depth} exceeds quarantine bound {bound} (m={m})", p)
                count += 1
    return count


def _sentinel_depth_matches(max_n: int) -> int:
    count = 0
    for p in _perms_upto(max_n, 1):
        a = sd_prime(p)
        if a != sd(normalize(p + (0,))) or a != sd_prime_by_iteration(p):
            raise _Fail("sd_prime(p) != sd(p 0)", p)
        count += 1
    return count


def _image_splits_at_maxima(max_n: int) -> int:
    count = 0
    for p in _perms_upto(max_n, 1):
        trace = run_dynamics(p)
        M = list(trace.maxima_sets)
        q = p
        for t in range(1, len(p) + 1):
            q = stack_sort(q)
            union = set().union(*M[:t]) if t <= len(M) else set(p)
            n_right = len(union)
            L, R = q[:len(q) - n_right], q[len(q) - n_right:]
            if R != tuple(sorted(union)):
                raise _Fail(f"suffix of s^{t}(p) is not the increasing union of maxima sets", p)
            nxt = M[t] if t < len(M) else frozenset()
            if {L[i - 1] for i in right_to_left_maxima(L)} != set(nxt):
                raise _Fail(f"right-to-left maxima of the prefix of s^{t}(p) differ", p)
            count += 1
    return count


def _value_swap_injects(max_n: int) -> int:
    count = 0
    for n in range(2, max_n + 1):
        pre: dict[Perm, set] = {}
        for sigma in all_perms(n):
            pre.setdefault(stack_sort(sigma), set()).add(sigma)
        for p in all_perms(n):
            for i in range(1, n):
                if p.index(i + 1) > p.index(i):
                    continue
                report = value_swap_check(p, i, pre)
                if not report.ok:
                    raise _Fail("; ".join(report.failures), p, i)
                count += 1
    return count


def _fertility_grows_under_s(max_n: int) -> int:
    count = 0
    for p in _perms_upto(max_n):
        a, b = fertility(p), fertility(stack_sort(p))
        ident = p == identity(len(p))
        if a > b or (a == b) != ident:
            raise _Fail(f"fertility {a} vs fertility of s(p) {b}", p)
        count += 1
    return count


def _decomposition_matches_brute(max_n: int) -> int:
    count = 0
    for n in range(max_n + 1):
        images = image_counts(n)
        for p in all_perms(n):
            f = fertility(p)
            if f != images.get(p, 0):
                raise _Fail(f"decomposition gives {f}, brute force {images.get(p, 0)}", p)
            # every tail-bound descent, not just the canonical one
            if n <= 6:
                for d in tail_bound_descents(p):
                    if fertility_at_descent(p, d) != f:
                        raise _Fail(f"hook sum at tail-bound descent {d} differs", p)
            count += 1
    return count


def _left_order_antitone(max_n: int) -> int:
    count = 0
    for p in _perms_upto(max_n):
        fp = fertility(p)
        for q in down_set(p, "left"):
            if fertility(q) < fp:
                raise _Fail("fertility increased going down the left weak order", q, p)
            count += 1
    return count


def _s_below_right(max_n: int) -> int:
    count = 0
    for p in _perms_upto(max_n, 1):
        if not leq_right(stack_sort(p), p):
            raise _Fail("s(p) is not below p in the right weak order", p)
        count += 1
    return count


def _wt_tables(max_n: int) -> int:
    count = 0
    for n in range(1, max_n + 1):
        row = {c.t: c.value for c in wt_table(n)}
        expected = {1: catalan(n), 2: w2_formula(n), n - 1: math.factorial(n)}
        if n >= 2:
            expected[n - 2] = math.factorial(n) - math.factorial(n - 2)
        for t, v in expected.items():
            if t in row and row[t] != v:
                raise _Fail(f"W_{t}({n}) = {row[t]}, expected {v}", [n, t])
            count += t in row
    return count


def _dn_monotone(max_n: int) -> int:
    count = 0
    prev = None
    prev_alpha = None
    for n in range(1, max_n + 1):
        dp = exact_depth_average(n, prime=True)
        d = exact_depth_average(n)
        alpha = exact_alpha_ratio(n)
        if dp < d:
            raise _Fail(f"D'_{n} = {dp} < D_{n} = {d}", [n])
        if prev is not None and dp > prev + 1:
            raise _Fail(f"D'_{n} = {dp} exceeds D'_{n-1} + 1", [n])
        if prev_alpha is not None and alpha >= prev_alpha:
            raise _Fail(f"alpha_{n}/{n} = {alpha} not below alpha_{n-1}/{n-1}", [n])
        prev, prev_alpha = dp, alpha
        count += 1
    return count


def _dynamics_agreement(max_n: int, random_n: int = 100, random_samples: int = 1000,
                        seed: int = 0) -> int:
    count = 0
    for p in _perms_upto(max_n, 1):
        if run_dynamics(p).halted_at != sd_prime(p):
            raise _Fail("dynamics and sentinel simulation disagree", p)
        count += 1
    for k in range(random_samples):
        p = sample_permutation(random_n, sample_stream(seed, k))
        if run_dynamics(p).halted_at != sd_prime(p):
            raise _Fail("dynamics and sentinel simulation disagree", p)
        count += 1
    return count


PROPERTIES: dict[str, Callable[[int], int]] = {
    "lemma2": _deletion_commutes,
    "lemma3": _inversions_from_231,
    "lemma4": _entries_after_minimum,
    "lemma5": _quarantine_bound_holds,
    "lemma7": _sentinel_depth_matches,
    "lemma8": _image_splits_at_maxima,
    "lemma9": _value_swap_injects,
    "thm2": _fertility_grows_under_s,
    "thm3-oracle": _decomposition_matches_brute,
    "thm4": _left_order_antitone,
    "s-below-right": _s_below_right,
    "wt-tables": _wt_tables,
    "dn-monotone": _dn_monotone,
    "dynamics-agreement": _dynamics_agreement,
}

DEFAULT_MAX_N = {
    "lemma2": 6, "lemma3": 6, "lemma4": 6, "lemma5": 7, "lemma7": 7,
    "lemma8": 6, "lemma9": 6, "thm2": 7, "thm3-oracle": 7, "thm4": 6,
    "s-below-right": 7, "wt-tables": 9, "dn-monotone": 7,
    "dynamics-agreement": 7,
}


def run_verify(property_id: str, max_n: Optional[int] = None) -> VerifyResult:
    if property_id not in PROPERTIES:
        raise KeyError(f"unknown property {property_id!r}; known: {sorted(PROPERTIES)}")
    if max_n is None:
        max_n = DEFAULT_MAX_N[property_id]
    start = time.perf_counter()
    try:
        checked = PROPERTIES[property_id](max_n)
    except _Fail as fail:
        return VerifyResult(property_id, (0, max_n), "fail", 0, fail.witness, fail.detail,
                            time.perf_counter() - start)
    return VerifyResult(property_id, (0, max_n), "pass", checked, None, "",
                        time.perf_counter() - start)


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (frozenset, set)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, list):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    return obj


def _rows(report: Any, timing: bool) -> tuple[list[str], list[list]]:
    """Header and rows for the tabular formats."""
    if isinstance(report, EstimateReport):
        d = report.to_dict(timing)
        header = ["statistic", "n", "samples", "seed", "generator", "mean", "stddev",
                  "stderr", "ci95_lo", "ci95_hi", "wall_time_s"]
        return header, [[d["statistic"], d["n"], d["samples"], d["seed"], d["generator"],
                         d["mean"], d["stddev"], d["stderr"], d["ci95"][0], d["ci95"][1],
                         d["wall_time_s"]]]
    if isinstance(report, VerifyResult):
        d = report.to_dict(timing)
        ce = "" if d["counterexample"] is None else json.dumps(d["counterexample"])
        return (["property_id", "n_max", "status", "checked", "counterexample", "elapsed_s"],
                [[d["property_id"], d["n_range"][1], d["status"], d["checked"], ce,
                  d["elapsed_s"]]])
    if isinstance(report, list) and report and isinstance(report[0], CountTable):
        rows = sorted(report, key=lambda c: (c.n, c.t))
        return ["n", "t", "value"], [[c.n, c.t, c.value] for c in rows]
    if isinstance(report, list) and report and isinstance(report[0], tuple):
        return ["quantity", "value"], [list(r) for r in report]
    if isinstance(report, DynamicsTrace):
        d = report.to_dict()
        return (["step", "partition", "maxima"],
                [[k + 1, json.dumps(B), json.dumps(M)]
                 for k, (B, M) in enumerate(zip(d["partitions"], d["maxima"]))])
    if isinstance(report, dict):
        return list(report), [[_jsonable(v) for v in report.values()]]
    raise TypeError(f"cannot tabulate {type(report).__name__}")


def emit(report: Any, fmt: str = "json", timing: bool = True) -> str:
    """
    Serialize a report as ``json``, ``csv`` or an aligned ``table``.

    CSV columns: EstimateReport -> statistic,n,samples,seed,generator,mean,
    stddev,stderr,ci95_lo,ci95_hi,wall_time_s; CountTable lists -> n,t,value
    (sorted by n then t); VerifyResult -> property_id,n_max,status,checked,
    counterexample,elapsed_s.
    """
    if fmt == "json":
        if isinstance(report, (EstimateReport, VerifyResult)):
            payload = report.to_dict(timing)
        elif isinstance(report, DynamicsTrace):
            payload = report.to_dict()
        elif isinstance(report, list) and report and isinstance(report[0], CountTable):
            payload = [{"n": c.n, "t": c.t, "value": c.value}
                       for c in sorted(report, key=lambda c: (c.n, c.t))]
        elif isinstance(report, list) and report and isinstance(report[0], tuple):
            payload = {k: v for k, v in report}
        else:
            payload = _jsonable(report)
        return json.dumps(payload)
    header, rows = _rows(report, timing)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(["" if v is None else v for v in row] for row in rows)
        return buf.getvalue().rstrip("\n")
    if fmt == "table":
        cells = [header] + [["" if v is None else str(v) for v in row] for row in rows]
        widths = [max(len(str(r[k])) for r in cells) for k in range(len(header))]
        return "\n".join("  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip()
                         for r in cells)
    raise ValueError(f"unknown format {fmt!r}")
