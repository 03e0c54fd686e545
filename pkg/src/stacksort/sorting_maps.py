"""
West's stack-sorting map ``s`` and its relatives.

Two independent implementations of ``s`` are kept on purpose: the explicit
one-stack procedure (:func:`stack_sort`) and the recursive ``s(LmR) = s(L)s(R)m``
rule (:func:`stack_sort_recursive`). The test-suite holds them against each other.

>>> stack_sort((4, 1, 6, 2))
(1, 4, 2, 6)
>>> pop_stack((7, 6, 3, 4, 5, 1, 2))
(3, 6, 7, 4, 1, 5, 2)
>>> sd((4, 1, 6, 2))
2
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .core_perm import Perm, is_increasing

__all__ = [
    "MAP_KINDS", "DepthRecord", "stack_sort", "stack_sort_recursive", "iterate",
    "sd", "sd_by_iteration", "sd_prime", "sd_prime_by_iteration", "pop_stack", "revstack",
    "apply_map", "depth_under",
]

MAP_KINDS = ("s", "revstack", "pop")
_KIND_CODE = {"s": 0, "revstack": 1, "pop": 2}

# below this length the pure-Python loops beat kernel dispatch (and skip JIT compilation)
SMALL_N = 16


@dataclass(frozen=True)
class DepthRecord:
    permutation: Perm
    depth: int
    map_kind: str


def stack_sort(p: Sequence[int]) -> Perm:
    """Pass ``p`` once through a stack, popping whenever the next input is larger than the top."""
    out = []
    stack = []
    for x in p:
        while stack and stack[-1] < x:
            out.append(stack.pop())
        stack.append(x)
    out.extend(reversed(stack))
    return tuple(out)


def stack_sort_recursive(p: Sequence[int]) -> Perm:
    """``s(LmR) = s(L) s(R) m`` with ``m`` the largest entry; ``s`` fixes the empty permutation."""
    if len(p) <= 1:
        return tuple(p)
    k = max(range(len(p)), key=p.__getitem__)
    return stack_sort_recursive(p[:k]) + stack_sort_recursive(p[k + 1:]) + (p[k],)


def iterate(p: Sequence[int], t: int) -> Perm:
    if t < 0:
        raise ValueError("iteration count must be nonnegative")
    p = tuple(p)
    for _ in range(t):
        p = stack_sort(p)
    return p


def pop_stack(p: Sequence[int]) -> Perm:
    """Reverse every maximal descending run of ``p``."""
    out: list[int] = []
    run: list[int] = []
    for x in p:
        if run and run[-1] < x:
            out.extend(reversed(run))
            run = []
        run.append(x)
    out.extend(reversed(run))
    return tuple(out)


def revstack(p: Sequence[int]) -> Perm:
    return stack_sort(tuple(reversed(p)))


def apply_map(kind: str, p: Sequence[int], t: int = 1) -> Perm:
    """Apply ``t`` iterations of the map named ``kind``."""
    maps = {"s": stack_sort, "revstack": revstack, "pop": pop_stack}
    if kind not in maps:
        raise ValueError(f"unknown map kind {kind!r}; expected one of {MAP_KINDS}")
    if t < 0:
        raise ValueError("iteration count must be nonnegative")
    fn = maps[kind]
    p = tuple(p)
    for _ in range(t):
        p = fn(p)
    return p


def _as_array(p: Sequence[int]) -> np.ndarray:
    return np.asarray(p, dtype=np.int64).reshape(-1)


def depth_under(kind: str, p: Sequence[int]) -> int:
    """Least ``t`` such that ``t`` iterations of ``kind`` produce an increasing permutation."""
    if kind not in _KIND_CODE:
        raise ValueError(f"unknown map kind {kind!r}; expected one of {MAP_KINDS}")
    n = len(p)
    if n <= 1:
        return 0
    # s and Pop sort within n-1 passes; revstack has no proven bound, so guard against cycling
    cap = n * n + 1
    if n < SMALL_N:
        t = _depth_by_iteration(kind, p, cap)
    else:
        t = _kernels.depth(_as_array(p), _KIND_CODE[kind], cap)
    if t < 0:
        raise RuntimeError(f"{kind} did not sort {tuple(p)} within {cap} iterations")
    return int(t)


def _depth_by_iteration(kind: str, p: Sequence[int], cap: int) -> int:
    p = tuple(p)
    for t in range(cap + 1):
        if is_increasing(p):
            return t
        p = apply_map(kind, p)
    return -1


def sd(p: Sequence[int]) -> int:
    """Stack-sorting depth: least ``t >= 0`` with ``s^t(p)`` increasing."""
    return depth_under("s", p)


def sd_prime(p: Sequence[int]) -> int:
    """Least ``t >= 1`` such that 0 is the first entry of ``s^t(p 0)``."""
    if len(p) == 0:
        raise ValueError("sd_prime is undefined for the empty permutation")
    if min(p) < 1:
        raise ValueError("sd_prime needs positive entries")
    if len(p) < SMALL_N:
        return sd_prime_by_iteration(p)
    return int(_kernels.sd_prime(_as_array(p)))


def sd_prime_by_iteration(p: Sequence[int]) -> int:
    """Pure-Python sentinel simulation; slow reference for :func:`sd_prime`."""
    if len(p) == 0:
        raise ValueError("sd_prime is undefined for the empty permutation")
    q = tuple(p) + (0,)
    t = 0
    while True:
        q = stack_sort(q)
        t += 1
        if q[0] == 0:
            return t


def sd_by_iteration(p: Sequence[int]) -> int:
    """Pure-Python reference for :func:`sd`."""
    p = tuple(p)
    t = 0
    while not is_increasing(p):
        p = stack_sort(p)
        t += 1
    return t
