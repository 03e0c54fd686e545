"""
Right and left weak orders on S_n, defined through their generators.

``t_right(p, i)`` swaps the entries in positions i, i+1 when they form a
descent; ``t_left(p, i)`` swaps the values i, i+1 when i+1 sits to the left of
i. ``q <= p`` in an order when ``q`` is reachable from ``p`` by such moves.
The breadth-first search is the reference; inversion-set containment is the
fast path (position-pair inversions for the left order, value-pair inversions
for the right order).

>>> leq_right((3, 1, 4, 2, 5), (3, 4, 1, 2, 5))
True
>>> leq_left((2, 1, 3), (2, 3, 1))
False
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .core_perm import Perm, SizeGuardError, inverse
from .fertility import preimages_brute
from .sorting_maps import stack_sort

__all__ = [
    "CoverMove", "t_right", "t_left", "apply_move", "down_set",
    "leq_right", "leq_left", "leq_right_bfs", "leq_left_bfs",
    "value_inversions", "position_inversions", "has_231_witness", "ValueSwapReport", "value_swap_check",
]

MAX_BFS_N = 8


class CoverMove(NamedTuple):
    kind: str  # "right" or "left"
    index: int


def _check_index(p: Sequence[int], i: int) -> None:
    if not 1 <= i <= len(p) - 1:
        raise ValueError(f"index {i} out of range for length {len(p)}")


def t_right(p: Sequence[int], i: int) -> Perm:
    _check_index(p, i)
    p = tuple(p)
    if p[i - 1] > p[i]:
        return p[:i - 1] + (p[i], p[i - 1]) + p[i + 1:]
    return p


def t_left(p: Sequence[int], i: int) -> Perm:
    _check_index(p, i)
    p = tuple(p)
    a, b = p.index(i), p.index(i + 1)
    if b > a:
        return p
    q = list(p)
    q[a], q[b] = i + 1, i
    return tuple(q)


def apply_move(p: Sequence[int], move: CoverMove) -> Perm:
    if move.kind == "right":
        return t_right(p, move.index)
    if move.kind == "left":
        return t_left(p, move.index)
    raise ValueError(f"unknown move kind {move.kind!r}")


def down_set(p: Sequence[int], kind: str) -> set[Perm]:
    """Everything reachable from ``p`` by moves of the given kind (including ``p``)."""
    p = tuple(p)
    if len(p) > MAX_BFS_N:
        raise SizeGuardError(f"reachability search limited to n <= {MAX_BFS_N}")
    seen = {p}
    queue = deque([p])
    while queue:
        q = queue.popleft()
        for i in range(1, len(q)):
            r = apply_move(q, CoverMove(kind, i))
            if r not in seen:
                seen.add(r)
                queue.append(r)
    return seen


def leq_right_bfs(q: Sequence[int], p: Sequence[int]) -> bool:
    return tuple(q) in down_set(p, "right")


def leq_left_bfs(q: Sequence[int], p: Sequence[int]) -> bool:
    return tuple(q) in down_set(p, "left")


def value_inversions(p: Sequence[int]) -> set[tuple[int, int]]:
    """Pairs of values ``(a, b)`` with ``a < b`` and ``b`` placed left of ``a``."""
    pos = inverse(p)
    n = len(p)
    return {(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)
            if pos[b - 1] < pos[a - 1]}


def position_inversions(p: Sequence[int]) -> set[tuple[int, int]]:
    """Pairs of positions ``(x, y)`` with ``x < y`` and ``p[x] > p[y]`` (1-based)."""
    return value_inversions(inverse(p))


def _same_support(q: Sequence[int], p: Sequence[int]) -> None:
    if sorted(q) != sorted(p) or sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError("both arguments must lie in the same S_n")


def leq_left(q: Sequence[int], p: Sequence[int]) -> bool:
    # value swaps keep every other position pair in place
    _same_support(q, p)
    return position_inversions(q) <= position_inversions(p)


def leq_right(q: Sequence[int], p: Sequence[int]) -> bool:
    _same_support(q, p)
    return value_inversions(q) <= value_inversions(p)


def has_231_witness(p: Sequence[int], i: int) -> bool:
    """Whether some entry ``a`` makes ``i+1, a, i`` a 231 pattern in ``p``."""
    big, small = p.index(i + 1), p.index(i)
    return big < small and any(p[k] > i + 1 for k in range(big + 1, small))


@dataclass
class ValueSwapReport:
    permutation: Perm
    index: int
    fertility: int
    moved_fertility: int
    injective_image_ok: bool
    witness: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def value_swap_check(p: Sequence[int], i: int,
                 preimage_table: Optional[dict[Perm, set[Perm]]] = None) -> ValueSwapReport:
    """
    Check by brute force that swapping values i, i+1 maps preimages of ``p``
    into preimages of ``t_left(p, i)``, and that the two fertilities agree
    when a 231 witness ``i+1, a, i`` exists.

    ``preimage_table`` (image -> preimages over all of S_n) saves the two
    sweeps when checking many pairs.
    """
    p = tuple(p)
    _check_index(p, i)
    if p.index(i + 1) > p.index(i):
        raise ValueError(f"{i + 1} does not precede {i} in {p}")
    if len(p) > MAX_BFS_N:
        raise SizeGuardError(f"value_swap_check limited to n <= {MAX_BFS_N}")
    moved = t_left(p, i)
    if preimage_table is None:
        pre, pre_moved = preimages_brute(p), preimages_brute(moved)
    else:
        pre, pre_moved = preimage_table.get(p, set()), preimage_table.get(moved, set())
    images = {t_left(sigma, i) for sigma in pre}
    injective_ok = all(stack_sort(x) == moved for x in images) and len(images) == len(pre)
    witness = has_231_witness(p, i)
    report = ValueSwapReport(p, i, len(pre), len(pre_moved), injective_ok, witness)
    if not injective_ok:
        report.failures.append("value swap does not map preimages injectively")
    if len(pre) > len(pre_moved):
        report.failures.append("fertility increased under the value swap")
    if witness and len(pre) != len(pre_moved):
        report.failures.append("231 witness present but fertilities differ")
    return report
