"""
Ordered set partitions in standard form and the block-merging dynamics that
track which entries overtake an appended 0 under repeated stack-sorting.

Blocks are tuples sorted in decreasing order, so ``block[0]`` is the maximum and
``block[j - 1]`` the j-th largest element.

>>> B = ((12, 9), (11, 6), (10, 4, 1), (8, 7), (5, 2), (3,))
>>> sorted(maxima(B))
[3, 5, 8, 10, 11, 12]
>>> eta(B)
((9,), (7, 6, 4, 1), (2,))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence

from .core_perm import Perm, right_to_left_maxima

__all__ = [
    "Partition", "DynamicsTrace", "make_partition", "is_standard", "maxima",
    "eta", "b1_of", "run_dynamics", "is_quarantined", "quarantine_depth_bound",
    "ballot_probability", "ballot_lower_bound", "ballot_probability_by_paths",
]

Partition = tuple[tuple[int, ...], ...]


def make_partition(blocks: Iterable[Iterable[int]]) -> Partition:
    """Build a partition from arbitrary iterables, checking standard form."""
    B = tuple(tuple(sorted(b, reverse=True)) for b in blocks)
    if not is_standard(B):
        raise ValueError(f"not an ordered set partition in standard form: {B}")
    return B


def is_standard(B: Partition) -> bool:
    seen: set[int] = set()
    for blk in B:
        if not blk or any(a <= b for a, b in zip(blk, blk[1:])):
            return False
        if seen.intersection(blk):
            return False
        seen.update(blk)
    return all(B[k][0] > B[k + 1][0] for k in range(len(B) - 1))


def _check(B: Partition) -> None:
    if not is_standard(B):
        raise ValueError(f"not an ordered set partition in standard form: {B}")


def maxima(B: Partition) -> frozenset[int]:
    _check(B)
    return frozenset(blk[0] for blk in B)


def eta(B: Partition) -> Partition:
    """One step of the dynamics: strip block maxima, then merge residual blocks."""
    _check(B)
    residual = [blk[1:] for blk in B]
    if not any(residual):
        return ()
    r = len(residual)
    # J = indices whose residual max beats every residual max to its right;
    # an empty residual has max -infinity, so it only qualifies as the last index.
    J = []
    best: Optional[int] = None
    for j in range(r - 1, -1, -1):
        res = residual[j]
        if j == r - 1:
            J.append(j)
        elif res and (best is None or res[0] > best):
            J.append(j)
        if res and (best is None or res[0] > best):
            best = res[0]
    J.reverse()
    out = []
    start = 0
    for j in J:
        merged = sorted((x for res in residual[start:j + 1] for x in res), reverse=True)
        if merged:
            out.append(tuple(merged))
        start = j + 1
    return tuple(out)


def b1_of(p: Sequence[int]) -> Partition:
    """Cut ``p`` at its right-to-left maxima and return the blocks as sets."""
    out = []
    start = 0
    for i in right_to_left_maxima(p):
        out.append(tuple(sorted(p[start:i], reverse=True)))
        start = i
    return tuple(out)


@dataclass(frozen=True)
class DynamicsTrace:
    """``partitions[k]`` is the (k+1)-th partition of the dynamics; ``maxima_sets`` likewise."""
    permutation: Perm
    partitions: tuple[Partition, ...]
    maxima_sets: tuple[frozenset[int], ...]
    halted_at: int

    def to_dict(self) -> dict:
        return {
            "permutation": list(self.permutation),
            "indexing": "1-based",
            "partitions": [[sorted(blk) for blk in B] for B in self.partitions],
            "maxima": [sorted(M) for M in self.maxima_sets],
            "halted_at": self.halted_at,
        }


def run_dynamics(p: Sequence[int]) -> DynamicsTrace:
    """Iterate ``eta`` from ``b1_of(p)`` until the partition is empty."""
    if len(p) == 0:
        raise ValueError("dynamics need a nonempty permutation")
    parts = []
    B = b1_of(p)
    while B:
        parts.append(B)
        B = eta(B)
    return DynamicsTrace(
        permutation=tuple(p),
        partitions=tuple(parts),
        maxima_sets=tuple(frozenset(blk[0] for blk in B) for B in parts),
        halted_at=len(parts),
    )


def is_quarantined(B: Partition, m: int) -> bool:
    """
    Whether the union E of the blocks after block ``m`` (1-based) is quarantined:
    block m is at least as large as E and dominates it element by element in
    decreasing order.
    """
    _check(B)
    if not 1 <= m <= len(B):
        raise ValueError(f"block index {m} out of range for {len(B)} blocks")
    Bm = B[m - 1]
    E = sorted((x for blk in B[m:] for x in blk), reverse=True)
    if len(Bm) < len(E):
        return False
    return all(b > e for b, e in zip(Bm, E))


def quarantine_depth_bound(p: Sequence[int], m: int) -> Optional[int]:
    """
    Position of the m-th right-to-left maximum when the entries after it are
    quarantined in ``b1_of(p)``; ``None`` otherwise. When returned, it bounds
    ``sd_prime(p)`` from above.
    """
    positions = right_to_left_maxima(p)
    if not 1 <= m <= len(positions) - 1:
        raise ValueError(f"m must lie in [1, {len(positions) - 1}], got {m}")
    if is_quarantined(b1_of(p), m):
        return positions[m - 1]
    return None


def _ballot_params(n: int, i_prev: int, i_m: int) -> tuple[int, int]:
    if not 0 <= i_prev < i_m <= n:
        raise ValueError(f"need 0 <= i_prev < i_m <= n, got {i_prev}, {i_m}, {n}")
    return i_m - i_prev, n - i_m


def ballot_probability(n: int, i_prev: int, i_m: int) -> Fraction:
    """
    Exact probability that the entries after the block ending at ``i_m`` are
    quarantined, for a uniform permutation with right-to-left maxima at
    ``i_prev`` and ``i_m`` (among others).

    Out-of-range binomials count as 0. When the later blocks hold more entries
    than block m the event is impossible and the binomial expression no longer
    applies (it can go negative), so 0 is returned directly.

    >>> ballot_probability(4, 0, 2)
    Fraction(2, 3)
    """
    k, q = _ballot_params(n, i_prev, i_m)
    if q > k:
        return Fraction(0)
    N = n - i_prev - 1
    total = comb(N, k - 1)
    return Fraction(total - comb(N, k + 1), total)


def ballot_lower_bound(n: int, i_prev: int, i_m: int) -> Fraction:
    k, q = _ballot_params(n, i_prev, i_m)
    return 1 - Fraction(q, k) ** 2


def ballot_probability_by_paths(n: int, i_prev: int, i_m: int) -> Fraction:
    """
    Brute-force count over east/north step sequences that start with an east
    step: the fraction that never has more north than east steps in a prefix.
    """
    k, q = _ballot_params(n, i_prev, i_m)
    rest = k - 1 + q
    good = total = 0
    for north in combinations(range(rest), q):
        total += 1
        north_set = set(north)
        east, up = 1, 0
        ok = True
        for step in range(rest):
            if step in north_set:
                up += 1
            else:
                east += 1
            if up > east:
                ok = False
                break
        good += ok
    return Fraction(good, total)
