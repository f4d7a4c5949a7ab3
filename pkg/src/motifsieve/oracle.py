"""Brute-force ground truth for small instances.

Nothing here shares code with the sieves beyond the instance model: the
oracles enumerate connected vertex sets, compare multisets directly, and
expand sieve polynomials symbolically.
"""
from __future__ import annotations

import heapq
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, NamedTuple

from .algebra import Poly, PolyRing
from .errors import GuardError, InstanceError
from .graph import CostSpec, HostGraph, MotifInstance
from .walkgen import eval_walk_poly_symbolic

# Set-cover reductions with n <= 6, m <= 5, t <= 3 reach 22 vertices.
ORACLE_MAX_N = 24
BFS_MAX_SIZE = 8
BFS_MAX_CAP = 50
SYMBOLIC_MAX_N = 4
SYMBOLIC_MAX_K = 3
SYMBOLIC_MAX_SHADES = 4

MultisetOverColors = Counter


def enumerate_connected_k_subsets(
    graph: HostGraph,
    k: int,
    prune: Callable[[frozenset], bool] | None = None,
) -> Iterator[tuple[int, ...]]:
    """Every connected ``k``-subset once, as a sorted tuple, in lexicographic order.

    Sets are grown from their minimum vertex; a vertex joins the extension
    frontier only through the first set member it is adjacent to, so each
    set has a single growth path.  ``prune(partial)`` returning False cuts
    the subtree, which is sound only for properties inherited by subsets.
    """
    if graph.n > ORACLE_MAX_N:
        raise GuardError(f"oracle enumeration limited to n <= {ORACLE_MAX_N}")
    if not 1 <= k <= graph.n:
        return
    adj = [frozenset(a) for a in graph.adjacency]

    def extend(sub: frozenset, closed: frozenset, ext: list[int], root: int, out: list):
        if len(sub) == k:
            out.append(tuple(sorted(sub)))
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            new_sub = sub | {w}
            if prune is not None and not prune(new_sub):
                continue
            exclusive = [x for x in adj[w - 1] if x > root and x not in closed]
            extend(new_sub, closed | adj[w - 1], ext + exclusive, root, out)

    for root in range(1, graph.n + 1):
        start = frozenset([root])
        if prune is not None and not prune(start):
            continue
        found: list[tuple[int, ...]] = []
        closed = start | adj[root - 1]
        extend(start, closed, [x for x in adj[root - 1] if x > root], root, found)
        yield from sorted(found)


def _list_assignable(inst: MotifInstance, vertices) -> bool:
    """Can every vertex take a distinct motif slot of one of its colors? (Kuhn matching)"""
    slots = [q for q, m in enumerate(inst.motif) for _ in range(m)]
    owner: dict[int, int] = {}

    def augment(u: int, seen: set) -> bool:
        for s, q in enumerate(slots):
            if q in inst.vertex_colors[u - 1] and s not in seen:
                seen.add(s)
                if s not in owner or augment(owner[s], seen):
                    owner[s] = u
                    return True
        return False

    return all(augment(u, set()) for u in vertices)


def fits_motif(inst: MotifInstance, vertices) -> bool:
    """``c(K)`` is a sub-multiset of ``M`` (for list colorings: some choice of colors is)."""
    if inst.list_coloring:
        return _list_assignable(inst, vertices)
    counts = Counter(inst.color_of(u) for u in vertices)
    return all(c <= inst.motif[q] for q, c in counts.items())


def brute_decide_max_motif(inst: MotifInstance) -> bool:
    if sum(inst.motif) < inst.k:
        return False
    prune = lambda s: fits_motif(inst, s)  # noqa: E731
    return any(True for _ in enumerate_connected_k_subsets(inst.graph, inst.k, prune=prune))


def edit_distance(M: Mapping, N: Mapping, costs: CostSpec) -> int:
    """Minimum weighted edit cost turning multiset ``M`` into ``N``.

    Minimises over the untouched count ``k_u`` (at most the multiset
    intersection) and substituted count ``k_s``; the rest of ``M`` is
    deleted and the rest of ``N`` inserted.
    """
    size_m = sum(M.values())
    size_n = sum(N.values())
    inter = sum(min(c, N.get(q, 0)) for q, c in M.items())
    best = None
    for ku in range(inter + 1):
        for ks in range(min(size_m, size_n) - ku + 1):
            c = costs.sigma_s * ks + costs.sigma_d * (size_m - ku - ks) + costs.sigma_i * (size_n - ku - ks)
            if best is None or c < best:
                best = c
    return best


def edit_distance_bfs(M: Mapping, N: Mapping, costs: CostSpec, cost_cap: int = BFS_MAX_CAP) -> int | None:
    """Uniform-cost search over multisets under single substitute/insert/delete steps.

    Returns ``None`` when ``N`` is not reachable within ``cost_cap``.  States
    use only colors occurring in ``M`` or ``N`` and never exceed
    ``|M| + |N|`` elements.
    """
    size = sum(M.values()) + sum(N.values())
    if size > BFS_MAX_SIZE or cost_cap > BFS_MAX_CAP:
        raise GuardError(f"BFS oracle limited to |M| + |N| <= {BFS_MAX_SIZE}, cap <= {BFS_MAX_CAP}")
    palette = sorted(set(q for q, c in M.items() if c) | set(q for q, c in N.items() if c), key=repr)
    start = tuple(M.get(q, 0) for q in palette)
    goal = tuple(N.get(q, 0) for q in palette)
    dist = {start: 0}
    heap = [(0, start)]
    while heap:
        d, state = heapq.heappop(heap)
        if d > dist[state]:
            continue
        if state == goal:
            return d
        total = sum(state)
        moves = []
        for i, c in enumerate(state):
            if total < size:
                moves.append((costs.sigma_i, i, +1, None))
            if c:
                moves.append((costs.sigma_d, i, -1, None))
                for j in range(len(state)):
                    if j != i:
                        moves.append((costs.sigma_s, i, -1, j))
        for w, i, delta, j in moves:
            nxt = list(state)
            nxt[i] += delta
            if j is not None:
                nxt[j] += 1
            nxt = tuple(nxt)
            nd = d + w
            if nd <= cost_cap and nd < dist.get(nxt, nd + 1):
                dist[nxt] = nd
                heapq.heappush(heap, (nd, nxt))
    return None


class ClosestOracle(NamedTuple):
    answer: bool
    min_cost: int | None


def brute_decide_closest(inst: MotifInstance, costs: CostSpec | None = None) -> ClosestOracle:
    """Minimum edit cost from ``M`` to ``c(K)`` over connected ``k``-sets ``K``."""
    costs = costs or inst.costs
    if costs is None:
        raise InstanceError("closest variant needs a CostSpec")
    raw = inst.raw_motif if inst.raw_motif is not None else inst.motif
    M = Counter({q: m for q, m in enumerate(raw) if m})
    best = None
    for K in enumerate_connected_k_subsets(inst.graph, inst.k):
        c = edit_distance(M, Counter(inst.color_of(u) for u in K), costs)
        if best is None or c < best:
            best = c
    return ClosestOracle(best is not None and best <= costs.tau, best)


# ---------------------------------------------------------------------------
# symbolic sieve expansion

MODES = ("unconstrained", "constrained", "cost", "subsume")


@dataclass(frozen=True)
class SymbolicVerdict:
    """Whether the sieve polynomial is nonzero and, for cost modes, its ``(eta_S, eta_ID)`` degrees."""

    nonzero: bool
    eta_degrees: frozenset = frozenset()


def _mode_shades(inst: MotifInstance, mode: str) -> list[tuple[int, range]]:
    """``(color, shade range)`` pairs; the wildcard color id is ``len(inst.colors)``."""
    out = []
    start = 0
    for q, m in enumerate(inst.motif):
        out.append((q, range(start, start + m)))
        start += m
    if mode == "cost":
        out.append((len(inst.colors), range(start, start + inst.k)))
    return out


def _kappa(inst: MotifInstance, mode: str, u: int, q: int) -> tuple[int, int]:
    star = q == len(inst.colors)
    own = not star and q == inst.color_of(u)
    if mode == "cost":
        return (0, 1) if star else ((0, 0) if own else (1, 0))
    return (0, 0) if own else (1, 0)


def _check_guard(inst: MotifInstance, mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    shades = sum(len(r) for _, r in _mode_shades(inst, mode))
    if inst.n > SYMBOLIC_MAX_N or inst.k > SYMBOLIC_MAX_K or shades > SYMBOLIC_MAX_SHADES:
        raise GuardError(
            f"symbolic check limited to n <= {SYMBOLIC_MAX_N}, k <= {SYMBOLIC_MAX_K}, |S| <= {SYMBOLIC_MAX_SHADES}"
        )
    if mode in ("cost", "subsume") and inst.list_coloring:
        raise InstanceError("cost modes need a single coloring")


def _expanded_walk_poly(inst: MotifInstance) -> tuple[PolyRing, Poly]:
    ring = PolyRing(width=5)
    for u in range(1, inst.n + 1):
        ring.var(("x", u))  # x fields occupy the lowest n * width bits
    return ring, eval_walk_poly_symbolic(inst.graph, inst.k, ring)


def _x_exponents(ring: PolyRing, mono: int, n: int) -> tuple[int, ...]:
    mask = (1 << ring.width) - 1
    return tuple((mono >> (i * ring.width)) & mask for i in range(n))


def symbolic_sieve_check(inst: MotifInstance, mode: str = "constrained") -> SymbolicVerdict:
    """Expand ``Q = sum_A P_k(u^A, y)`` over GF(2) and inspect it.

    Modes: ``unconstrained`` (``u[i][j] = z_ij``), ``constrained`` (own or
    listed colors' shades), ``cost`` (closest-variant costs with a wildcard
    color of ``k`` shades, two indeterminates) and ``subsume`` (cost 0 on the
    own color, 1 elsewhere, one indeterminate).
    """
    _check_guard(inst, mode)
    ring, P = _expanded_walk_poly(inst)
    n, k = inst.n, inst.k
    xmask = (1 << (n * ring.width)) - 1
    # group P as sum over x-monomials of (x-part) * (y-polynomial)
    by_x: dict[tuple[int, ...], set[int]] = {}
    for mono in P:
        by_x.setdefault(_x_exponents(ring, mono, n), set()).add(mono & ~xmask)

    eta_s, eta_id = ring.var(("eta", "S")), ring.var(("eta", "ID"))
    shades = _mode_shades(inst, mode)
    u = [[ring.zero] * k for _ in range(n)]
    for i in range(n):
        for j in range(k):
            if mode == "unconstrained":
                u[i][j] = ring.var(("z", i + 1, j + 1))
                continue
            acc = ring.zero
            for q, ds in shades:
                if mode == "constrained" and q not in inst.vertex_colors[i]:
                    continue
                inner = ring.zero
                for d in ds:
                    inner = inner + ring.var(("v", i + 1, d)) * ring.var(("w", d, j + 1))
                if mode in ("cost", "subsume"):
                    ks, kid = _kappa(inst, mode, i + 1, q)
                    inner = inner * eta_s**ks * eta_id**kid
                acc = acc + inner
            u[i][j] = acc

    Q = ring.zero
    for xexp, ys in by_x.items():
        R = ring.zero
        for A in range(1 << k):
            term = ring.one
            for i, e in enumerate(xexp):
                if e:
                    uA = ring.zero
                    for j in range(k):
                        if A >> j & 1:
                            uA = uA + u[i][j]
                    term = term * uA**e
                    if not term:
                        break
            R = R + term
        if R:
            Q = Q + R * Poly(ring, frozenset(ys))
    degrees = frozenset()
    if mode in ("cost", "subsume"):
        degrees = frozenset(
            (ring.degree_in(m, [("eta", "S")]), ring.degree_in(m, [("eta", "ID")])) for m in Q
        )
    return SymbolicVerdict(bool(Q), degrees)


def witness_predicate(inst: MotifInstance, mode: str = "constrained") -> SymbolicVerdict:
    """What the sieve should detect, read directly off the expanded ``P_k``.

    Looks at the x-multilinear monomials of ``P_k`` (one per connected
    ``k``-set) and checks proper coloring / enumerates proper colorings and
    their costs by brute force.
    """
    _check_guard(inst, mode)
    ring, P = _expanded_walk_poly(inst)
    sets = {
        tuple(i + 1 for i, e in enumerate(_x_exponents(ring, m, inst.n)) if e)
        for m in P
        if max(_x_exponents(ring, m, inst.n)) <= 1
    }
    if mode == "unconstrained":
        return SymbolicVerdict(bool(sets))
    if mode == "constrained":
        return SymbolicVerdict(any(fits_motif(inst, K) for K in sets))
    shades = _mode_shades(inst, mode)
    cap = {q: len(ds) for q, ds in shades}
    degrees = set()
    for K in sets:
        for choice in itertools.product(list(cap), repeat=len(K)):
            used = Counter(choice)
            if any(c > cap[q] for q, c in used.items()):
                continue
            ks = sum(_kappa(inst, mode, u, q)[0] for u, q in zip(K, choice))
            kid = sum(_kappa(inst, mode, u, q)[1] for u, q in zip(K, choice))
            degrees.add((ks, kid))
    return SymbolicVerdict(bool(degrees), frozenset(degrees))
