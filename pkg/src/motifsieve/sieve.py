"""Substitution sieves over GF(2^b).

Each sieve replaces the vertex variable ``x_i`` by ``u_i^A = sum_{j in A}
u[i][j]`` and sums the evaluator over all label subsets ``A`` of
``{1..k}``.  In characteristic 2 everything except the wanted monomials
cancels.  The three variants differ only in how the ``u`` table is built:

* unconstrained: ``u[i][j] = z[i][j]``
* constrained:   ``u[i][j] = sum_{d in S_c(i)} v[i,d] w[d,j]``
  (list coloring: ``d`` ranges over the shades of every color in the list)
* cost:          ``u[i][j] = sum_q eta_S^kS(i,q) eta_ID^kID(i,q) sum_{d in S_q} v[i,d] w[d,j]``
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _kernels
from .gf2 import FieldParams
from .graph import HostGraph, MotifInstance


@dataclass(frozen=True)
class ShadeTable:
    """Disjoint shade ranges ``[start, stop)`` per color id.

    When ``star`` is set the table has one extra trailing color (id
    ``len(inst.colors)``) with ``k`` shades, the wildcard of the closest
    variant.
    """

    ranges: tuple[tuple[int, int], ...]
    star: bool = False

    @classmethod
    def build(cls, inst: MotifInstance, star: bool = False) -> ShadeTable:
        ranges = []
        start = 0
        for m in inst.motif:
            ranges.append((start, start + m))
            start += m
        if star:
            ranges.append((start, start + inst.k))
        return cls(tuple(ranges), star)

    @property
    def size(self) -> int:
        return self.ranges[-1][1] if self.ranges else 0

    @property
    def num_colors(self) -> int:
        return len(self.ranges)

    def shades(self, q: int) -> range:
        return range(*self.ranges[q])

    def color_of_shade(self, d: int) -> int:
        for q, (a, b) in enumerate(self.ranges):
            if a <= d < b:
                return q
        raise IndexError(d)


@dataclass(frozen=True)
class SieveAssignment:
    """Random values for ``v`` (n x |S|), ``w`` (|S| x k) and ``y`` (one per arc)."""

    v: np.ndarray
    w: np.ndarray
    y: np.ndarray

    @property
    def label_count(self) -> int:
        return self.w.shape[1]

    @classmethod
    def draw(cls, inst: MotifInstance, shades: ShadeTable, field: FieldParams, rng: np.random.Generator) -> SieveAssignment:
        v = field.random_array(rng, (inst.n, shades.size))
        w = field.random_array(rng, (shades.size, inst.k))
        y = field.random_array(rng, 2 * inst.graph.e)
        return cls(v, w, y)


@dataclass(frozen=True)
class CostTables:
    """Per (vertex, color) exponents of the two cost indeterminates, and the point they take.

    ``kappa_s`` and ``kappa_id`` have shape ``(n, num_colors)`` where the
    column count matches the :class:`ShadeTable` (wildcard included).
    """

    kappa_s: np.ndarray
    kappa_id: np.ndarray
    eta_s: int = 1
    eta_id: int = 1

    @classmethod
    def closest(cls, inst: MotifInstance, eta_s: int = 1, eta_id: int = 1) -> CostTables:
        """Substitution / insert-delete costs with the wildcard color last."""
        nc = len(inst.colors)
        ks = np.ones((inst.n, nc + 1), dtype=np.int64)
        kid = np.zeros((inst.n, nc + 1), dtype=np.int64)
        ks[:, nc] = 0
        kid[:, nc] = 1
        for u in range(1, inst.n + 1):
            ks[u - 1, inst.color_of(u)] = 0
        return cls(ks, kid, eta_s, eta_id)

    @classmethod
    def subsumption(cls, inst: MotifInstance, eta: int = 1) -> CostTables:
        """Cost 0 for a vertex's own color and 1 otherwise, tracked by ``eta_s`` alone."""
        nc = len(inst.colors)
        ks = np.ones((inst.n, nc), dtype=np.int64)
        for u in range(1, inst.n + 1):
            ks[u - 1, inst.color_of(u)] = 0
        return cls(ks, np.zeros_like(ks), eta, 1)

    def at(self, eta_s: int, eta_id: int) -> CostTables:
        return CostTables(self.kappa_s, self.kappa_id, eta_s, eta_id)


# ---------------------------------------------------------------------------
# u tables


def _shade_products(assign: SieveAssignment, field: FieldParams) -> np.ndarray:
    """``prod[i, d, j] = v[i, d] * w[d, j]``."""
    return field.mul_array(assign.v[:, :, None], assign.w[None, :, :])


def _masked_sum(prod: np.ndarray, allowed: np.ndarray) -> np.ndarray:
    masked = np.where(allowed[:, :, None], prod, np.uint64(0))
    return np.bitwise_xor.reduce(masked, axis=1)


def build_u_table_constrained(inst: MotifInstance, shades: ShadeTable, assign: SieveAssignment, field: FieldParams) -> np.ndarray:
    """``u[i][j]`` summed over the shades of vertex ``i``'s own color."""
    allowed = np.zeros((inst.n, shades.size), dtype=bool)
    for u in range(1, inst.n + 1):
        a, b = shades.ranges[inst.color_of(u)]
        allowed[u - 1, a:b] = True
    return _masked_sum(_shade_products(assign, field), allowed)


def build_u_table_list(inst: MotifInstance, shades: ShadeTable, assign: SieveAssignment, field: FieldParams) -> np.ndarray:
    """``u[i][j]`` summed over the shades of every color in vertex ``i``'s list."""
    allowed = np.zeros((inst.n, shades.size), dtype=bool)
    for u in range(1, inst.n + 1):
        for q in inst.vertex_colors[u - 1]:
            a, b = shades.ranges[q]
            allowed[u - 1, a:b] = True
    return _masked_sum(_shade_products(assign, field), allowed)


def inner_sums(shades: ShadeTable, assign: SieveAssignment, field: FieldParams) -> np.ndarray:
    """``t[i, q, j] = sum_{d in S_q} v[i, d] w[d, j]``, shape ``(n, num_colors, k)``."""
    prod = _shade_products(assign, field)
    n, _, k = prod.shape
    t = np.zeros((n, shades.num_colors, k), dtype=np.uint64)
    for q, (a, b) in enumerate(shades.ranges):
        if a < b:
            t[:, q, :] = np.bitwise_xor.reduce(prod[:, a:b, :], axis=1)
    return t


def cost_weights(costs: CostTables, field: FieldParams) -> np.ndarray:
    """``eta_s^kappa_s * eta_id^kappa_id`` per (vertex, color), with ``0^0 = 1``."""
    ps: dict[int, int] = {}
    pid: dict[int, int] = {}
    out = np.empty(costs.kappa_s.shape, dtype=np.uint64)
    for (i, q), es in np.ndenumerate(costs.kappa_s):
        eid = int(costs.kappa_id[i, q])
        es = int(es)
        if es not in ps:
            ps[es] = field.pow(costs.eta_s, es)
        if eid not in pid:
            pid[eid] = field.pow(costs.eta_id, eid)
        out[i, q] = field.mul(ps[es], pid[eid])
    return out


def build_u_table_cost(
    inst: MotifInstance,
    shades: ShadeTable,
    assign: SieveAssignment,
    costs: CostTables,
    field: FieldParams,
    inner: np.ndarray | None = None,
) -> np.ndarray:
    """Cost-weighted ``u`` table; pass ``inner`` to reuse :func:`inner_sums` across points."""
    if inner is None:
        inner = inner_sums(shades, assign, field)
    weights = cost_weights(costs, field)
    return np.bitwise_xor.reduce(field.mul_array(weights[:, :, None], inner), axis=1)


# ---------------------------------------------------------------------------
# sieve sums


def _xor(a, b):
    return a ^ b


def sieve_sum(
    evaluator: Callable[[list], object],
    u_table: Sequence[Sequence],
    k: int,
    ring=None,
    subsets: Iterable[int] | None = None,
):
    """``sum_{A subset of {1..k}} evaluator(u^A)``.

    Subsets are bitmasks; ``subsets`` restricts the sum to a block of them
    (default: all ``2^k``).  ``ring`` supplies ``add``/``zero`` for
    non-integer values such as symbolic polynomials; by default values are
    GF(2^b) ints added by XOR.
    """
    add = ring.add if ring is not None else _xor
    zero = ring.zero if ring is not None else 0
    n = len(u_table)
    if subsets is None:
        subsets = range(1 << k)
    total = zero
    for mask in subsets:
        point = []
        for i in range(n):
            acc = zero
            for j in range(k):
                if mask >> j & 1:
                    acc = add(acc, u_table[i][j])
            point.append(acc)
        total = add(total, evaluator(point))
    return total


def sieve_sum_unconstrained(evaluator, z_values, k: int, ring=None, subsets=None):
    """Sieve with ``u[i][j] = z[i][j]`` taken directly."""
    return sieve_sum(evaluator, z_values, k, ring=ring, subsets=subsets)


def default_threads() -> int:
    return os.cpu_count() or 1


def walk_sieve(
    graph: HostGraph,
    k: int,
    u_table: np.ndarray,
    y: np.ndarray,
    field: FieldParams,
    threads: int = 1,
) -> int:
    """``sum_A P_k(u^A, y)`` over all ``2^k`` label subsets, on the compiled kernel.

    The subset range is cut into ``threads`` contiguous blocks of Gray-code
    ranks, one per worker; block sums are XOR-combined, so the result does
    not depend on ``threads``.
    """
    u_table = np.ascontiguousarray(u_table, dtype=np.uint64)
    y = np.ascontiguousarray(y, dtype=np.uint64)
    indptr, indices = graph.csr
    args = (u_table, indptr, indices, y, k, *field.kernel_args)
    total = 1 << u_table.shape[1]
    threads = max(1, min(threads, total))
    bounds = [total * t // threads for t in range(threads + 1)]
    if threads == 1:
        return int(_kernels.sweep(0, total, *args))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda t: _kernels.sweep(bounds[t], bounds[t + 1], *args), range(threads))
        acc = 0
        for p in parts:
            acc ^= int(p)
    return acc
