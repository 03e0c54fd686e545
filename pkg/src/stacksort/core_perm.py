"""
Permutations in one-line notation and the structural queries used everywhere
else in the package.

A permutation is a plain ``tuple`` of distinct positive integers. Positions are
1-based in every public function (``hooks_from``, ``descents`` and friends),
matching the usual mathematical indexing; internally we slice 0-based tuples.

>>> normalize((4, 6, 8, 2))
(2, 3, 4, 1)
>>> del_r((4, 3, 6, 7, 1, 8), 2)
(4, 6, 7, 8)
>>> foata((6, 1, 7, 3, 5, 4, 2))
((6, 1, 7), (3, 5), (4,), (2,))
"""

from __future__ import annotations

import math
from itertools import permutations
from typing import Iterable, Iterator, NamedTuple, Sequence

__all__ = [
    "Perm", "Hook", "SizeGuardError", "MAX_KEY_LENGTH",
    "as_perm", "parse_perm", "format_perm", "is_increasing", "identity",
    "normalize", "perm_key", "del_r", "right_to_left_maxima", "descents",
    "tail_length", "hooks_from", "tail_bound_descents", "split_by_hook",
    "foata", "inverse", "all_perms", "unrank", "perms_in_rank_range",
    "rank_ranges",
]

Perm = tuple[int, ...]

# memo keys pack one entry per byte
MAX_KEY_LENGTH = 255


class SizeGuardError(ValueError):
    """Raised when an exhaustive computation is asked for a size beyond its guard."""


class Hook(NamedTuple):
    """A hook joining the points (sw, p[sw]) and (ne, p[ne]); 1-based positions."""
    sw: int
    ne: int


def as_perm(p: Iterable[int]) -> Perm:
    """Validate ``p`` and return it as a tuple."""
    t = tuple(int(x) for x in p)
    if len(set(t)) != len(t):
        raise ValueError(f"entries are not distinct: {t}")
    if t and min(t) < 1:
        raise ValueError(f"entries must be positive: {t}")
    return t


def parse_perm(text: str) -> Perm:
    """
    Parse ``"4 1 6 2"`` (or ``"4,1,6,2"``) and the compact digit form ``"4162"``.

    >>> parse_perm("4162")
    (4, 1, 6, 2)
    >>> parse_perm("9 12 6")
    (9, 12, 6)
    """
    text = text.strip()
    if not text:
        return ()
    tokens = text.replace(",", " ").split()
    if len(tokens) == 1 and len(tokens[0]) > 1:
        if not tokens[0].isdigit() or "0" in tokens[0]:
            raise ValueError(f"cannot parse permutation {text!r}")
        tokens = list(tokens[0])
    return as_perm(int(tok) for tok in tokens)


def format_perm(p: Sequence[int]) -> str:
    return " ".join(str(x) for x in p)


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def is_increasing(p: Sequence[int]) -> bool:
    return all(a < b for a, b in zip(p, p[1:]))


def normalize(p: Sequence[int]) -> Perm:
    """Replace the i-th smallest entry by i."""
    rank = {v: i for i, v in enumerate(sorted(p), start=1)}
    return tuple(rank[v] for v in p)


def perm_key(p: Sequence[int]) -> bytes:
    """Byte encoding of ``normalize(p)``, used as a memo key."""
    if len(p) > MAX_KEY_LENGTH:
        raise SizeGuardError(f"memo keys support n <= {MAX_KEY_LENGTH}, got {len(p)}")
    return bytes(normalize(p))


def del_r(p: Sequence[int], r: int) -> Perm:
    """Delete the ``r`` smallest entries of ``p``."""
    if not 0 <= r <= len(p):
        raise ValueError(f"r must lie in [0, {len(p)}], got {r}")
    if r == 0:
        return tuple(p)
    cutoff = sorted(p)[r - 1]
    return tuple(x for x in p if x > cutoff)


def right_to_left_maxima(p: Sequence[int]) -> list[int]:
    """Positions (1-based, increasing) of the entries larger than everything to their right."""
    out = []
    best = None
    for i in range(len(p) - 1, -1, -1):
        if best is None or p[i] > best:
            best = p[i]
            out.append(i + 1)
    out.reverse()
    return out


def descents(p: Sequence[int]) -> list[int]:
    return [i for i in range(1, len(p)) if p[i - 1] > p[i]]


def tail_length(p: Sequence[int]) -> int:
    """Length of the longest suffix of ``p`` (a member of S_n) fixed pointwise."""
    n = len(p)
    ell = 0
    while ell < n and p[n - 1 - ell] == n - ell:
        ell += 1
    return ell


def hooks_from(p: Sequence[int], i: int) -> list[Hook]:
    """All hooks of ``p`` with southwest endpoint at position ``i``."""
    if not 1 <= i <= len(p):
        raise ValueError(f"position {i} out of range for length {len(p)}")
    a = p[i - 1]
    return [Hook(i, j) for j in range(i + 1, len(p) + 1) if p[j - 1] > a]


def tail_bound_descents(p: Sequence[int]) -> list[int]:
    """Descents d such that every hook in SW_d(p) ends inside the tail of ``p``."""
    n = len(p)
    tail_start = n - tail_length(p) + 1
    return [d for d in descents(p)
            if all(h.ne >= tail_start for h in hooks_from(p, d))]


def split_by_hook(p: Sequence[int], hook: Hook) -> tuple[Perm, Perm]:
    """Return the (unsheltered, sheltered) subpermutations determined by ``hook``."""
    i, j = hook
    if not (1 <= i < j <= len(p)) or p[i - 1] > p[j - 1]:
        raise ValueError(f"{hook} is not a hook of {tuple(p)}")
    p = tuple(p)
    return p[:i] + p[j:], p[i:j - 1]


def foata(p: Sequence[int]) -> tuple[Perm, ...]:
    """
    Cut ``p`` after each right-to-left maximum; the pieces read as disjoint cycles.

    The cycle maxima (the last entries of the pieces) are strictly decreasing.
    """
    cuts = right_to_left_maxima(p)
    out = []
    start = 0
    for c in cuts:
        out.append(tuple(p[start:c]))
        start = c
    return tuple(out)


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p, start=1):
        inv[v - 1] = i
    return tuple(inv)


def all_perms(n: int) -> Iterator[Perm]:
    """S_n in lexicographic order."""
    return permutations(range(1, n + 1))


def unrank(n: int, k: int) -> Perm:
    """The ``k``-th (0-based) member of S_n in lexicographic order."""
    if not 0 <= k < math.factorial(n):
        raise ValueError(f"rank {k} out of range for S_{n}")
    pool = list(range(1, n + 1))
    out = []
    for m in range(n, 0, -1):
        q, k = divmod(k, math.factorial(m - 1))
        out.append(pool.pop(q))
    return tuple(out)


def _next_perm(a: list[int]) -> bool:
    i = len(a) - 2
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = len(a) - 1
    while a[j] <= a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    a[i + 1:] = reversed(a[i + 1:])
    return True


def perms_in_rank_range(n: int, lo: int, hi: int) -> Iterator[Perm]:
    """Members of S_n with lexicographic rank in ``[lo, hi)``."""
    if lo >= hi:
        return
    if n == 0:
        yield ()
        return
    a = list(unrank(n, lo))
    yield tuple(a)
    for _ in range(hi - lo - 1):
        if not _next_perm(a):
            return
        yield tuple(a)


def rank_ranges(n: int, parts: int) -> list[tuple[int, int]]:
    """Split ``range(n!)`` into ``parts`` contiguous, nearly equal rank ranges."""
    total = math.factorial(n)
    parts = max(1, min(parts, total))
    bounds = [total * k // parts for k in range(parts + 1)]
    return list(zip(bounds, bounds[1:]))
