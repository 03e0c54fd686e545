"""
Seeded Monte Carlo estimates of depth statistics over uniform random permutations.

Sample ``k`` of a run with seed ``S`` is drawn from its own stream,
``numpy.random.Generator(PCG64(SeedSequence([S, k])))``, by a single call to
``Generator.permutation`` (a Fisher-Yates shuffle). Because every sample owns its
stream, the set of values, and therefore the report, does not depend on how the
indices are split across worker processes. Sums are taken with ``math.fsum``
over values in index order.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .core_perm import Perm, all_perms
from .fertility import _guard

__all__ = [
    "GENERATOR", "STATISTICS", "EstimateReport", "sample_stream",
    "sample_permutation", "sample_values", "estimate", "alpha_ratio",
    "exact_alpha_ratio", "sample_with_rtl_positions",
]

GENERATOR = "numpy-PCG64/SeedSequence([seed, index])"

STATISTICS = ("sd", "sd_prime", "pop_depth", "revstack_depth", "max_block")

_MAP_CODE = {"sd": 0, "revstack_depth": 1, "pop_depth": 2}


@dataclass(frozen=True)
class EstimateReport:
    statistic: str
    n: int
    samples: int
    seed: int
    generator: str
    mean: float
    stddev: float
    stderr: float
    ci95: tuple[float, float]
    wall_time: float

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        d["ci95"] = list(self.ci95)
        wall = d.pop("wall_time")
        d["wall_time_s"] = wall if timing else None
        return d


def sample_stream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))


def sample_permutation(n: int, rng: np.random.Generator) -> Perm:
    """A uniform member of S_n."""
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(int(x) for x in rng.permutation(n) + 1)


def _statistic(statistic: str, arr: np.ndarray) -> int:
    if statistic == "sd_prime":
        return int(_kernels.sd_prime(arr))
    if statistic == "max_block":
        return int(_kernels.max_block(arr))
    n = arr.shape[0]
    value = int(_kernels.depth(arr, _MAP_CODE[statistic], n * n + 1))
    if value < 0:
        raise RuntimeError(f"{statistic} failed to sort a sample of length {n}")
    return value


def _chunk(statistics: tuple[str, ...], n: int, seed: int, lo: int, hi: int) -> np.ndarray:
    out = np.empty((hi - lo, len(statistics)), dtype=np.int64)
    for row, k in enumerate(range(lo, hi)):
        arr = sample_stream(seed, k).permutation(n).astype(np.int64) + 1
        for col, stat in enumerate(statistics):
            out[row, col] = _statistic(stat, arr)
    return out


def sample_values(statistics: Sequence[str] | str, n: int, samples: int, seed: int,
                  workers: int = 1) -> np.ndarray:
    """
    Raw integer values, shape ``(samples, len(statistics))``; every statistic in
    a row is evaluated on the same permutation, so columns are paired.
    """
    if isinstance(statistics, str):
        statistics = (statistics,)
    statistics = tuple(statistics)
    for stat in statistics:
        if stat not in STATISTICS:
            raise ValueError(f"unknown statistic {stat!r}; expected one of {STATISTICS}")
    if n < 1:
        raise ValueError("n must be positive")
    bounds = [samples * k // max(workers, 1) for k in range(max(workers, 1) + 1)]
    ranges = [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
    if workers <= 1 or len(ranges) <= 1:
        parts = [_chunk(statistics, n, seed, lo, hi) for lo, hi in ranges]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_chunk, statistics, n, seed, lo, hi) for lo, hi in ranges]
            parts = [f.result() for f in futures]
    if not parts:
        return np.empty((0, len(statistics)), dtype=np.int64)
    return np.concatenate(parts, axis=0)


def _summarize(values: np.ndarray, n: int) -> tuple[float, float, float]:
    ratios = [int(v) / n for v in values]
    k = len(ratios)
    mean = math.fsum(ratios) / k
    var = math.fsum((x - mean) ** 2 for x in ratios) / (k - 1)
    stddev = math.sqrt(var)
    return mean, stddev, stddev / math.sqrt(k)


def estimate(statistic: str, n: int, samples: int, seed: int,
             workers: int = 1) -> EstimateReport:
    """Mean and spread of ``statistic / n`` over ``samples`` uniform permutations of length ``n``."""
    if samples < 2:
        raise ValueError("need at least two samples")
    start = time.perf_counter()
    values = sample_values(statistic, n, samples, seed, workers)[:, 0]
    mean, stddev, stderr = _summarize(values, n)
    return EstimateReport(
        statistic=statistic, n=n, samples=samples, seed=seed, generator=GENERATOR,
        mean=mean, stddev=stddev, stderr=stderr,
        ci95=(mean - 1.96 * stderr, mean + 1.96 * stderr),
        wall_time=time.perf_counter() - start,
    )


def alpha_ratio(n: int, samples: int, seed: int, workers: int = 1) -> EstimateReport:
    """Estimate of (expected largest right-to-left-maxima block) / n, i.e. longest Foata cycle / n."""
    return estimate("max_block", n, samples, seed, workers)


def exact_alpha_ratio(n: int) -> Fraction:
    """Exact expected largest block size over S_n, divided by n."""
    if n < 1:
        raise ValueError("n must be positive")
    _guard(n)
    total = sum(int(_kernels.max_block(np.asarray(p, dtype=np.int64))) for p in all_perms(n))
    return Fraction(total, math.factorial(n) * n)


def sample_with_rtl_positions(positions: Sequence[int], rng: np.random.Generator) -> Perm:
    """
    A uniform permutation of ``[n]`` (``n = positions[-1]``) whose right-to-left
    maxima sit exactly at the given 1-based positions.

    Built block by block from the left: the largest remaining value goes to the next maximum
    position and the values in front of it are a uniform random subset, in
    uniform order, of what is left.
    """
    positions = list(positions)
    if not positions or any(a >= b for a, b in zip(positions, positions[1:])) or positions[0] < 1:
        raise ValueError(f"positions must be strictly increasing and positive: {positions}")
    n = positions[-1]
    out = [0] * n
    pool = list(range(1, n + 1))
    prev = 0
    for pos in positions:
        top = pool.pop()  # pool stays sorted; its max is the block maximum
        out[pos - 1] = top
        size = pos - prev - 1
        picks = rng.choice(len(pool), size=size, replace=False) if size else []
        chosen = [pool[int(k)] for k in picks]
        for k, v in zip(range(prev, pos - 1), chosen):
            out[k] = v
        chosen_set = set(chosen)
        pool = [v for v in pool if v not in chosen_set]
        prev = pos
    return tuple(out)
