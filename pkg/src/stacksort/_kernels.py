"""Compiled inner loops for depth statistics on large permutations (int64 arrays)."""

import numba
import numpy as np


@numba.njit(cache=True)
def stack_pass(src, dst, stack):
    top = 0
    k = 0
    for x in src:
        while top > 0 and stack[top - 1] < x:
            top -= 1
            dst[k] = stack[top]
            k += 1
        stack[top] = x
        top += 1
    while top > 0:
        top -= 1
        dst[k] = stack[top]
        k += 1


@numba.njit(cache=True)
def pop_pass(src, dst):
    n = src.shape[0]
    start = 0
    while start < n:
        end = start + 1
        while end < n and src[end - 1] > src[end]:
            end += 1
        for k in range(end - start):
            dst[start + k] = src[end - 1 - k]
        start = end


@numba.njit(cache=True)
def _increasing(a):
    for i in range(a.shape[0] - 1):
        if a[i] > a[i + 1]:
            return False
    return True


@numba.njit(cache=True)
def depth(p, kind, cap):
    """Iterations of the map ``kind`` (0 = s, 1 = revstack, 2 = pop) until sorted; -1 past ``cap``."""
    n = p.shape[0]
    a = p.copy()
    b = np.empty_like(a)
    tmp = np.empty_like(a)
    stack = np.empty_like(a)
    t = 0
    while not _increasing(a):
        if t >= cap:
            return -1
        if kind == 0:
            stack_pass(a, b, stack)
        elif kind == 1:
            for i in range(n):
                tmp[i] = a[n - 1 - i]
            stack_pass(tmp, b, stack)
        else:
            pop_pass(a, b)
        a, b = b, a
        t += 1
    return t


@numba.njit(cache=True)
def sd_prime(p):
    """Least t >= 1 putting an appended 0 sentinel first under t passes of s."""
    n = p.shape[0]
    a = np.empty(n + 1, dtype=np.int64)
    a[:n] = p
    a[n] = 0
    b = np.empty_like(a)
    stack = np.empty_like(a)
    t = 0
    while True:
        stack_pass(a, b, stack)
        a, b = b, a
        t += 1
        if a[0] == 0:
            return t


@numba.njit(cache=True)
def max_block(p):
    """Size of the largest block cut out by the right-to-left maxima."""
    best = 0
    cur = -1
    nxt = 0
    for i in range(p.shape[0] - 1, -1, -1):
        if p[i] > cur:
            cur = p[i]
            if nxt > 0:
                best = max(best, nxt - (i + 1))
            nxt = i + 1
    return max(best, nxt)
