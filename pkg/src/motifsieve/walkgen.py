"""Generating polynomial of properly ordered branching walks.

``P_k(x, y)`` sums, over every properly ordered branching walk of size
``k``, the product ``x_root * prod_{tree edges a<b} y_(phi a, phi b) x_phi(b)``.
Its x-multilinear monomials are exactly the fingerprints of simple walks,
i.e. of connected ``k``-vertex sets.

:func:`eval_walk_poly` evaluates it over any ring context by dynamic
programming over (size, vertex, neighbor cursor).
:func:`enumerate_branching_walks` is an independent brute-force route
used as a test oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .algebra import Poly, PolyRing
from .errors import GuardError, ParameterError
from .gf2 import FieldParams
from .graph import HostGraph

SYMBOLIC_MAX_N = 6
SYMBOLIC_MAX_K = 4


@dataclass(frozen=True)
class WalkAssignment:
    """Values of ``x_u`` (one per vertex) and ``y_(u,v)`` (one per arc, in ``graph.arcs()`` order)."""

    x_values: Sequence
    y_values: Sequence

    def check(self, graph: HostGraph) -> None:
        if len(self.x_values) != graph.n:
            raise ParameterError(f"expected {graph.n} x-values, got {len(self.x_values)}")
        if len(self.y_values) != 2 * graph.e:
            raise ParameterError(f"expected {2 * graph.e} y-values, got {len(self.y_values)}")


def eval_walk_poly(graph: HostGraph, k: int, assign: WalkAssignment, ring):
    """Value of ``P_k`` at ``assign``, computed in ``ring`` with O(k^2 e) operations."""
    if k < 1:
        raise ParameterError("k must be positive")
    assign.check(graph)
    add, mul = ring.add, ring.mul
    x = list(assign.x_values)
    y = list(assign.y_values)
    n = graph.n
    adj = [[v - 1 for v in a] for a in graph.adjacency]
    arc0 = [0] * (n + 1)
    for u in range(n):
        arc0[u + 1] = arc0[u] + len(adj[u])
    # table[l][u][i], cursor i in 0..deg(u); i == deg(u) is the empty tail
    table = [None, [[ring.one] * (len(adj[u]) + 1) for u in range(n)]]
    for l in range(2, k + 1):
        row = []
        for u in range(n):
            d = len(adj[u])
            cells = [ring.zero] * (d + 1)
            for i in range(d - 1, -1, -1):
                v = adj[u][i]
                s = ring.zero
                for l1 in range(1, l):
                    s = add(s, mul(table[l1][u][i + 1], table[l - l1][v][0]))
                cells[i] = add(cells[i + 1], mul(mul(y[arc0[u] + i], x[v]), s))
            row.append(cells)
        table.append(row)
    total = ring.zero
    for u in range(n):
        total = add(total, mul(x[u], table[k][u][0]))
    return total


def eval_walk_poly_fast(graph: HostGraph, k: int, x: np.ndarray, y: np.ndarray, field: FieldParams) -> int:
    """GF(2^b) evaluation through the compiled kernel; same contract as :func:`eval_walk_poly`."""
    x = np.ascontiguousarray(x, dtype=np.uint64)
    y = np.ascontiguousarray(y, dtype=np.uint64)
    WalkAssignment(x, y).check(graph)
    indptr, indices = graph.csr
    P = np.empty((indices.shape[0] + graph.n, k + 1), dtype=np.uint64)
    yx = np.empty(indices.shape[0], dtype=np.uint64)
    return int(_kernels.walk_eval(x, indptr, indices, y, k, *field.kernel_args, P, yx))


# ---------------------------------------------------------------------------
# brute-force oracle


def _preorder_trees(size: int) -> Iterator[tuple[int, ...]]:
    """Parent arrays of ordered rooted trees on nodes 1..size, nodes in preorder.

    ``parent[a - 1]`` is the parent of node ``a`` (0 for the root).  Node
    ``a`` can only hang off the rightmost path of the tree on ``1..a-1``.
    """

    def grow(parent: list[int], path: list[int]):
        a = len(parent) + 1
        if a > size:
            yield tuple(parent)
            return
        for depth in range(len(path)):
            parent.append(path[depth])
            yield from grow(parent, path[: depth + 1] + [a])
            parent.pop()

    yield from grow([0], [1])


def enumerate_branching_walks(graph: HostGraph, k: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every properly ordered branching walk of size ``k`` as ``(parent, phi)``.

    ``phi[a - 1]`` is the host vertex of node ``a``.
    """
    adj = [set(a) for a in graph.adjacency]
    for parent in _preorder_trees(k):
        last_child: dict[int, int] = {}
        prev_sibling = [0] * (k + 1)
        for a in range(2, k + 1):
            p = parent[a - 1]
            prev_sibling[a] = last_child.get(p, 0)
            last_child[p] = a
        phi = [0] * (k + 1)

        def place(a: int):
            if a > k:
                yield tuple(phi[1:])
                return
            if a == 1:
                candidates = range(1, graph.n + 1)
            else:
                candidates = sorted(adj[phi[parent[a - 1]] - 1])
            for v in candidates:
                s = prev_sibling[a]
                if s and not phi[s] < v:
                    continue
                phi[a] = v
                yield from place(a + 1)
            phi[a] = 0

        for image in place(1):
            yield parent, image


def fingerprint(ring: PolyRing, parent: Sequence[int], phi: Sequence[int]) -> Poly:
    """``x_root`` times the monomial fingerprint of the walk ``(parent, phi)``."""
    mono = ring.var(("x", phi[0]))
    for a in range(2, len(phi) + 1):
        u, v = phi[parent[a - 1] - 1], phi[a - 1]
        mono = mono * ring.var(("y", u, v)) * ring.var(("x", v))
    return mono


def eval_walk_poly_symbolic(graph: HostGraph, k: int, ring: PolyRing | None = None) -> Poly:
    """Expanded ``P_k`` over GF(2) built by explicit walk enumeration."""
    if graph.n > SYMBOLIC_MAX_N or k > SYMBOLIC_MAX_K:
        raise GuardError(f"symbolic expansion limited to n <= {SYMBOLIC_MAX_N}, k <= {SYMBOLIC_MAX_K}")
    ring = ring or PolyRing()
    total = ring.zero
    for parent, phi in enumerate_branching_walks(graph, k):
        total = total + fingerprint(ring, parent, phi)
    return total


def symbolic_assignment(graph: HostGraph, ring: PolyRing) -> WalkAssignment:
    """Every ``x_u`` and ``y_(u,v)`` as an indeterminate of ``ring``."""
    return WalkAssignment(
        [ring.var(("x", u)) for u in range(1, graph.n + 1)],
        [ring.var(("y", u, v)) for u, v in graph.arcs()],
    )
