"""Wall-clock timing of one full subset sweep, the unit of work per trial."""
from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

import numpy as np

from .gf2 import FieldParams
from .graph import HostGraph
from .sieve import walk_sieve


@dataclass(frozen=True)
class BenchRow:
    k: int
    threads: int
    seconds: float
    value: int


def time_sweep(graph: HostGraph, k: int, field: FieldParams, threads: int = 1, seed: int = 0, repeats: int = 1) -> BenchRow:
    """Best-of-``repeats`` time of one ``2^k`` sweep with random ``u`` and ``y``.

    ``value`` is the sweep result, identical for every thread count.
    """
    rng = np.random.default_rng([seed, k])
    u = field.random_array(rng, (graph.n, k))
    y = field.random_array(rng, 2 * graph.e)
    walk_sieve(graph, 1, u[:, :1], y, field, 1)  # compile outside the timed region
    best = float("inf")
    value = 0
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = walk_sieve(graph, k, u, y, field, threads)
        best = min(best, time.perf_counter() - t0)
    return BenchRow(k, threads, best, value)


def median_ratio(rows: list[BenchRow]) -> float | None:
    """Median of ``T(k+1) / T(k)`` over consecutive rows."""
    ratios = [b.seconds / a.seconds for a, b in zip(rows, rows[1:]) if b.k == a.k + 1]
    return statistics.median(ratios) if ratios else None
