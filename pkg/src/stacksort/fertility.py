"""
Fertility ``|s^{-1}(p)|`` of a permutation, computed two ways:

* :func:`preimages_brute` applies ``s`` to every member of S_n (the oracle);
* :func:`fertility` recurses through the hook decomposition, splitting ``p``
  along the hooks that leave its canonical tail-bound descent.

Also here: exhaustive counts of t-stack-sortable permutations and exact
averages of ``sd`` / ``sd_prime`` over S_n.

>>> fertility((3, 1, 4, 2, 5)), fertility((3, 4, 1, 2, 5))
(1, 4)
>>> fertility((1, 2, 3, 4))
14
"""

from __future__ import annotations

import math
import struct
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from pathlib import Path
from typing import Callable, Optional, Sequence

from .core_perm import (
    Perm, SizeGuardError, hooks_from, is_increasing, normalize, perm_key,
    perms_in_rank_range, rank_ranges, split_by_hook, tail_length,
)
from .sorting_maps import sd_prime, stack_sort

__all__ = [
    "MAX_EXHAUSTIVE_N", "FertilityCache", "DEFAULT_CACHE", "CountTable", "catalan",
    "preimages_brute", "image_counts", "fertility", "fertility_at_descent",
    "canonical_descent", "depth_distribution", "count_t_sortable", "wt_table",
    "w2_formula", "exact_depth_average",
]

MAX_EXHAUSTIVE_N = 10


def catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


def w2_formula(n: int) -> int:
    """Closed form for the number of 2-stack-sortable permutations of length n."""
    return 2 * math.comb(3 * n, n) // ((n + 1) * (2 * n + 1))


class FertilityCache:
    """
    Map from normalized-permutation byte keys to fertilities.

    The sidecar file is a sequence of records
    ``<u8 key length><key bytes><u16 value length><value, big-endian unsigned>``
    after an 8-byte magic header.
    """

    MAGIC = b"SSFERT01"

    def __init__(self) -> None:
        self._data: dict[bytes, int] = {}

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key: bytes) -> bool:
        return key in self._data

    def get(self, key: bytes) -> Optional[int]:
        return self._data.get(key)

    def put(self, key: bytes, value: int) -> None:
        if value < 0:
            raise ValueError("fertilities are nonnegative")
        self._data[key] = value

    def items(self):
        return self._data.items()

    def clear(self) -> None:
        self._data.clear()

    def save(self, path: str | Path) -> None:
        with open(path, "wb") as fh:
            fh.write(self.MAGIC)
            for key in sorted(self._data, key=lambda k: (len(k), k)):
                value = self._data[key]
                raw = value.to_bytes(max(1, (value.bit_length() + 7) // 8), "big")
                fh.write(struct.pack(">B", len(key)) + key)
                fh.write(struct.pack(">H", len(raw)) + raw)

    @classmethod
    def load(cls, path: str | Path) -> "FertilityCache":
        cache = cls()
        blob = Path(path).read_bytes()
        if not blob.startswith(cls.MAGIC):
            raise ValueError(f"{path} is not a fertility cache file")
        pos = len(cls.MAGIC)
        while pos < len(blob):
            klen = blob[pos]
            key = blob[pos + 1:pos + 1 + klen]
            pos += 1 + klen
            (vlen,) = struct.unpack_from(">H", blob, pos)
            pos += 2
            cache._data[bytes(key)] = int.from_bytes(blob[pos:pos + vlen], "big")
            pos += vlen
        return cache


DEFAULT_CACHE = FertilityCache()


def _guard(n: int, limit: int = MAX_EXHAUSTIVE_N) -> None:
    if n > limit:
        raise SizeGuardError(f"exhaustive sweep over S_{n} exceeds the guard n <= {limit}")


def _sweep(worker: Callable[[int, int, int], Counter], n: int, workers: int) -> Counter:
    """Run ``worker(n, lo, hi)`` over lexicographic rank ranges of S_n and merge."""
    ranges = rank_ranges(n, workers)
    if workers <= 1 or len(ranges) == 1:
        return sum((worker(n, lo, hi) for lo, hi in ranges), Counter())
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(worker, [n] * len(ranges), *zip(*ranges))
        return sum(parts, Counter())


def _preimage_chunk(target: Perm, n: int, lo: int, hi: int) -> Counter:
    return Counter(q for q in perms_in_rank_range(n, lo, hi) if stack_sort(q) == target)


def preimages_brute(p: Sequence[int], workers: int = 1) -> set[Perm]:
    """All members of S_n that ``s`` sends to ``p`` (which must lie in S_n)."""
    p = tuple(p)
    n = len(p)
    _guard(n)
    if normalize(p) != p:
        raise ValueError(f"{p} is not a member of S_{n}")
    return set(_sweep(partial(_preimage_chunk, p), n, workers))


def _image_chunk(n: int, lo: int, hi: int) -> Counter:
    return Counter(stack_sort(q) for q in perms_in_rank_range(n, lo, hi))


def image_counts(n: int, workers: int = 1) -> Counter:
    """``{p: |s^{-1}(p)|}`` for every image point, from a single sweep of S_n."""
    _guard(n)
    return _sweep(_image_chunk, n, workers)


def canonical_descent(p: Sequence[int]) -> int:
    """Position of the entry ``n - tail_length``; a tail-bound descent whenever ``p`` is not the identity."""
    target = len(p) - tail_length(p)
    return p.index(target) + 1


def fertility_at_descent(p: Sequence[int], d: int,
                         cache: Optional[FertilityCache] = None) -> int:
    """Hook-decomposition sum taken at descent ``d`` of the normalized ``p``."""
    q = normalize(p)
    total = 0
    for hook in hooks_from(q, d):
        unsheltered, sheltered = split_by_hook(q, hook)
        left = fertility(unsheltered, cache)
        if left:
            total += left * fertility(sheltered, cache)
    return total


def fertility(p: Sequence[int], cache: Optional[FertilityCache] = None) -> int:
    """``|s^{-1}(p)|`` via the hook decomposition, memoized on normalized keys."""
    if cache is None:
        cache = DEFAULT_CACHE
    key = perm_key(p)
    hit = cache.get(key)
    if hit is not None:
        return hit
    q = tuple(key)
    if is_increasing(q):
        value = catalan(len(q))
    else:
        value = fertility_at_descent(q, canonical_descent(q), cache)
    cache.put(key, value)
    return value


@dataclass(frozen=True)
class CountTable:
    """Number of t-stack-sortable permutations in S_n."""
    n: int
    t: int
    value: int


def _sd_chunk(n: int, lo: int, hi: int) -> Counter:
    memo: dict[Perm, int] = {}

    def depth(q: Perm) -> int:
        chain = []
        while q not in memo:
            if is_increasing(q):
                memo[q] = 0
                break
            chain.append(q)
            q = stack_sort(q)
        d = memo[q]
        for r in reversed(chain):
            d += 1
            memo[r] = d
        return memo[chain[0]] if chain else d

    return Counter(depth(q) for q in perms_in_rank_range(n, lo, hi))


def _sd_prime_chunk(n: int, lo: int, hi: int) -> Counter:
    return Counter(sd_prime(q) for q in perms_in_rank_range(n, lo, hi))


def depth_distribution(n: int, prime: bool = False, workers: int = 1) -> Counter:
    """``{depth: count}`` of ``sd`` (or ``sd_prime``) over S_n."""
    _guard(n)
    if prime and n == 0:
        raise ValueError("sd_prime is undefined on the empty permutation")
    return _sweep(_sd_prime_chunk if prime else _sd_chunk, n, workers)


def wt_table(n: int, workers: int = 1) -> list[CountTable]:
    """``W_t(n)`` for ``t = 0, ..., max(n - 1, 0)`` from one exhaustive sweep."""
    dist = depth_distribution(n, workers=workers)
    out = []
    running = 0
    for t in range(max(n, 1)):
        running += dist.get(t, 0)
        out.append(CountTable(n, t, running))
    return out


def count_t_sortable(n: int, t: int, workers: int = 1) -> CountTable:
    if t < 0:
        raise ValueError("t must be nonnegative")
    dist = depth_distribution(n, workers=workers)
    return CountTable(n, t, sum(c for d, c in dist.items() if d <= t))


def exact_depth_average(n: int, prime: bool = False, workers: int = 1) -> Fraction:
    """Exact mean of ``sd`` (or ``sd_prime``) over S_n."""
    if n < 1:
        raise ValueError("n must be positive")
    dist = depth_distribution(n, prime=prime, workers=workers)
    return Fraction(sum(d * c for d, c in dist.items()), math.factorial(n))
