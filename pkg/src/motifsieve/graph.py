"""Instance data model: host graph, coloring, motif, and the text format.

Vertices are 1-based everywhere in the public API.  Colors are interned
as indices into ``MotifInstance.colors``, which is kept in sorted-name
order so that shade allocation is reproducible.
"""
from __future__ import annotations

import hashlib
import io
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import InstanceError, ParseError

HEADER = "motif-instance v1"


@dataclass(frozen=True)
class HostGraph:
    """Undirected simple graph on vertices ``1..n``.

    ``adjacency[u - 1]`` is the strictly increasing neighbor tuple of ``u``.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> HostGraph:
        if n < 1:
            raise InstanceError("graph needs at least one vertex")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise InstanceError(f"edge ({u}, {v}) has an endpoint outside 1..{n}")
            if u == v:
                raise InstanceError(f"self-loop at vertex {u}")
            if v in nbrs[u - 1]:
                raise InstanceError(f"duplicate edge ({min(u, v)}, {max(u, v)})")
            nbrs[u - 1].add(v)
            nbrs[v - 1].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def e(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u - 1]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u - 1])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(1, self.n + 1) for v in self.adjacency[u - 1] if u < v]

    def arcs(self) -> list[tuple[int, int]]:
        """Both orientations of every edge, ordered by tail then head.

        This is the order in which per-arc values (the ``y`` variables) are
        passed around as flat arrays.
        """
        return [(u, v) for u in range(1, self.n + 1) for v in self.adjacency[u - 1]]

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """0-based ``(indptr, indices)`` with neighbor runs in increasing order."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        for u, a in enumerate(self.adjacency):
            indptr[u + 1] = indptr[u] + len(a)
        indices = np.fromiter((v - 1 for a in self.adjacency for v in a), dtype=np.int64, count=int(indptr[-1]))
        return indptr, indices

    def is_connected(self, vertices: Iterable[int] | None = None) -> bool:
        """Connectivity of the whole graph, or of the subgraph induced by ``vertices``."""
        allowed = set(range(1, self.n + 1)) if vertices is None else set(vertices)
        if not allowed:
            return True
        start = next(iter(allowed))
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in self.adjacency[u - 1]:
                if v in allowed and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == len(allowed)

    def relabel(self, perm: Sequence[int]) -> HostGraph:
        """Graph with vertex ``u`` renamed ``perm[u - 1]``."""
        return HostGraph.from_edges(self.n, ((perm[u - 1], perm[v - 1]) for u, v in self.edges()))


@dataclass(frozen=True)
class CostSpec:
    """Substitute/insert/delete costs and acceptance threshold for the closest variant."""

    sigma_s: int
    sigma_i: int
    sigma_d: int
    tau: int = 0

    def __post_init__(self):
        for name in ("sigma_s", "sigma_i", "sigma_d", "tau"):
            if getattr(self, name) < 0:
                raise InstanceError(f"{name} must be nonnegative")

    def parameterized_cost(self, k_s: int, k_id: int, motif_size: int, k: int) -> int:
        """Cost of an optimum edit sequence with the given substitution/insert-delete counts.

        The last term is negative when the motif is smaller than ``k``; the
        ``k_id`` term then over-counts deletions by exactly that amount.
        """
        return self.sigma_s * k_s + (self.sigma_i + self.sigma_d) * k_id + self.sigma_d * (motif_size - k)


@dataclass(frozen=True)
class MotifInstance:
    """A graph motif problem instance.

    Attributes
    ----------
    graph : HostGraph
    colors : tuple of str
        Sorted color names; a color id is an index into this tuple.
    vertex_colors : tuple of tuple of int
        ``vertex_colors[u - 1]`` is the sorted tuple of admissible color ids
        of vertex ``u`` (a singleton unless ``list_coloring``).
    motif : tuple of int
        Multiplicity ``m(q)`` per color id.
    k : int
    list_coloring : bool
    costs : CostSpec or None
    raw_motif : tuple of int or None
        Multiplicities before clamping to ``k``; set by :func:`preprocess`.
    """

    graph: HostGraph
    colors: tuple[str, ...]
    vertex_colors: tuple[tuple[int, ...], ...]
    motif: tuple[int, ...]
    k: int
    list_coloring: bool = False
    costs: CostSpec | None = None
    raw_motif: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        validate(self)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def motif_size(self) -> int:
        """|M| as given, i.e. before any clamping."""
        return sum(self.raw_motif if self.raw_motif is not None else self.motif)

    def color_of(self, u: int) -> int:
        """Color id of ``u`` in the single-coloring variant."""
        cs = self.vertex_colors[u - 1]
        if len(cs) != 1:
            raise InstanceError(f"vertex {u} has a color list, not a single color")
        return cs[0]

    def color_id(self, name: str) -> int:
        return self.colors.index(name)

    def motif_counts(self) -> dict[str, int]:
        return {c: m for c, m in zip(self.colors, self.motif) if m}

    def digest(self) -> str:
        return hashlib.sha256(serialize_instance(self).encode()).hexdigest()[:16]


def validate(inst: MotifInstance) -> None:
    g = inst.graph
    if not g.is_connected():
        raise InstanceError("graph not connected")
    if not 1 <= inst.k <= g.n:
        raise InstanceError(f"k must lie in [1, n] = [1, {g.n}], got {inst.k}")
    if list(inst.colors) != sorted(set(inst.colors)):
        raise InstanceError("color names must be unique and sorted")
    if len(inst.vertex_colors) != g.n:
        raise InstanceError("every vertex needs a color")
    nc = len(inst.colors)
    for u, cs in enumerate(inst.vertex_colors, start=1):
        if not cs:
            raise InstanceError(f"vertex {u} has an empty color list")
        if list(cs) != sorted(set(cs)) or not all(0 <= c < nc for c in cs):
            raise InstanceError(f"vertex {u} refers to an unknown color")
        if len(cs) > 1 and not inst.list_coloring:
            raise InstanceError(f"vertex {u} has several colors outside the list variant")
    if len(inst.motif) != nc or any(m < 0 for m in inst.motif):
        raise InstanceError("motif multiplicities must be nonnegative, one per color")
    if inst.costs is not None and inst.list_coloring:
        raise InstanceError("edit costs are only defined for single-colored instances")


def make_instance(
    n: int,
    edges: Iterable[tuple[int, int]],
    coloring: Sequence[str] | Sequence[Sequence[str]],
    motif: dict[str, int],
    k: int,
    costs: CostSpec | None = None,
    extra_colors: Iterable[str] = (),
) -> MotifInstance:
    """Build an instance from color names.

    ``coloring[u - 1]`` is a color name, or a list of names for the
    list-coloring variant.
    """
    list_coloring = any(not isinstance(c, str) for c in coloring)
    per_vertex = [[c] if isinstance(c, str) else list(c) for c in coloring]
    names = sorted({c for cs in per_vertex for c in cs} | set(motif) | set(extra_colors))
    ids = {c: i for i, c in enumerate(names)}
    return MotifInstance(
        graph=HostGraph.from_edges(n, edges),
        colors=tuple(names),
        vertex_colors=tuple(tuple(sorted({ids[c] for c in cs})) if cs else () for cs in per_vertex),
        motif=tuple(motif.get(c, 0) for c in names),
        k=k,
        list_coloring=list_coloring,
        costs=costs,
    )


def preprocess(inst: MotifInstance) -> MotifInstance:
    """Clamp every multiplicity to ``k``; idempotent."""
    clamped = tuple(min(m, inst.k) for m in inst.motif)
    if clamped == inst.motif:
        return inst
    return replace(inst, motif=clamped, raw_motif=inst.raw_motif or inst.motif)


def relabel(inst: MotifInstance, perm: Sequence[int]) -> MotifInstance:
    """Rename vertex ``u`` to ``perm[u - 1]``, carrying colors along."""
    vc = [()] * inst.n
    for u in range(1, inst.n + 1):
        vc[perm[u - 1] - 1] = inst.vertex_colors[u - 1]
    return replace(inst, graph=inst.graph.relabel(perm), vertex_colors=tuple(vc))


# ---------------------------------------------------------------------------
# text format


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", lineno) from None


def parse_instance(text: str | TextIO) -> MotifInstance:
    """Parse the ``motif-instance v1`` line format."""
    lines = text.splitlines() if isinstance(text, str) else text.read().splitlines()
    n = None
    k = None
    edges: list[tuple[int, int]] = []
    single: dict[int, str] = {}
    lists: dict[int, list[str]] = {}
    motif: dict[str, int] = {}
    costs = None
    tau = None
    seen_header = False

    def vertex(tok: str, lineno: int) -> int:
        v = _int(tok, lineno, "vertex")
        if n is None:
            raise ParseError("'vertices' must precede vertex references", lineno)
        if not 1 <= v <= n:
            raise ParseError(f"vertex {v} outside 1..{n}", lineno)
        return v

    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != HEADER:
                raise ParseError(f"expected header {HEADER!r}", lineno)
            seen_header = True
            continue
        tok = line.split()
        key, args = tok[0], tok[1:]
        arity = {"vertices": 1, "edge": 2, "color": 2, "colors": 2, "motif": 2, "k": 1, "costs": 3, "tau": 1}
        if key not in arity:
            raise ParseError(f"unknown directive {key!r}", lineno)
        if len(args) != arity[key]:
            raise ParseError(f"{key!r} takes {arity[key]} argument(s)", lineno)
        if key == "vertices":
            if n is not None:
                raise ParseError("duplicate 'vertices' line", lineno)
            n = _int(args[0], lineno, "vertex count")
            if n < 1:
                raise ParseError("vertex count must be positive", lineno)
        elif key == "edge":
            edges.append((vertex(args[0], lineno), vertex(args[1], lineno)))
        elif key in ("color", "colors"):
            v = vertex(args[0], lineno)
            if v in single or v in lists:
                raise ParseError(f"vertex {v} colored twice", lineno)
            if key == "color":
                single[v] = args[1]
            else:
                names = [c for c in args[1].split(",")]
                if any(not c for c in names):
                    raise ParseError("empty color name in list", lineno)
                lists[v] = names
        elif key == "motif":
            if args[0] in motif:
                raise ParseError(f"duplicate motif color {args[0]!r}", lineno)
            m = _int(args[1], lineno, "multiplicity")
            if m < 0:
                raise ParseError("multiplicity must be nonnegative", lineno)
            motif[args[0]] = m
        elif key == "k":
            if k is not None:
                raise ParseError("duplicate 'k' line", lineno)
            k = _int(args[0], lineno, "k")
        elif key == "costs":
            vals = [_int(a, lineno, "cost") for a in args]
            if any(c < 0 for c in vals):
                raise ParseError("costs must be nonnegative", lineno)
            costs = vals
        elif key == "tau":
            tau = _int(args[0], lineno, "tau")
            if tau < 0:
                raise ParseError("tau must be nonnegative", lineno)

    if not seen_header:
        raise ParseError(f"missing header {HEADER!r}", 1)
    if n is None:
        raise ParseError("missing 'vertices' line")
    if k is None:
        raise ParseError("missing 'k' line")
    if (costs is None) != (tau is None):
        raise ParseError("'costs' and 'tau' must be given together")
    missing = [v for v in range(1, n + 1) if v not in single and v not in lists]
    if missing:
        raise InstanceError(f"vertex {missing[0]} has no color")
    coloring = [lists[v] if v in lists else single[v] for v in range(1, n + 1)]
    cost_spec = CostSpec(*costs, tau=tau) if costs is not None else None
    return make_instance(n, edges, coloring, motif, k, costs=cost_spec)


def serialize_instance(inst: MotifInstance) -> str:
    out = io.StringIO()
    g = inst.graph
    out.write(f"{HEADER}\n")
    out.write(f"vertices {g.n}\n")
    for u, v in g.edges():
        out.write(f"edge {u} {v}\n")
    for u in range(1, g.n + 1):
        names = [inst.colors[c] for c in inst.vertex_colors[u - 1]]
        if inst.list_coloring:
            out.write(f"colors {u} {','.join(names)}\n")
        else:
            out.write(f"color {u} {names[0]}\n")
    motif = inst.raw_motif if inst.raw_motif is not None else inst.motif
    for name, m in zip(inst.colors, motif):
        # zero lines keep colors that no vertex carries in the universe
        if m or not any(inst.colors.index(name) in cs for cs in inst.vertex_colors):
            out.write(f"motif {name} {m}\n")
    out.write(f"k {inst.k}\n")
    if inst.costs is not None:
        c = inst.costs
        out.write(f"costs {c.sigma_s} {c.sigma_i} {c.sigma_d}\n")
        out.write(f"tau {c.tau}\n")
    return out.getvalue()


# ---------------------------------------------------------------------------
# random instances


def random_connected_graph(n: int, e: int, rng: np.random.Generator) -> HostGraph:
    """Random spanning tree plus uniformly chosen extra edges, ``e`` edges in total."""
    if n < 1:
        raise InstanceError("need at least one vertex")
    if not n - 1 <= e <= n * (n - 1) // 2:
        raise InstanceError(f"a connected simple graph on {n} vertices has {n - 1}..{n * (n - 1) // 2} edges")
    order = rng.permutation(n) + 1
    edges = set()
    for i in range(1, n):
        a, b = int(order[i]), int(order[rng.integers(i)])
        edges.add((min(a, b), max(a, b)))
    rest = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if (a, b) not in edges]
    for idx in rng.choice(len(rest), size=e - len(edges), replace=False):
        edges.add(rest[int(idx)])
    return HostGraph.from_edges(n, sorted(edges))


def random_instance(
    rng: np.random.Generator,
    n: int,
    e: int,
    k: int,
    num_colors: int,
    motif_size: int | None = None,
    list_size: int = 0,
    costs: CostSpec | None = None,
) -> MotifInstance:
    """Random connected instance over colors ``c0..c{num_colors-1}``.

    The motif draws ``motif_size`` colors (default ``k``) with replacement.
    With ``list_size > 0`` every vertex gets between 1 and ``list_size``
    distinct colors instead of one.
    """
    g = random_connected_graph(n, e, rng)
    names = [f"c{i}" for i in range(num_colors)]
    if list_size:
        coloring = [
            [names[int(i)] for i in rng.choice(num_colors, size=int(rng.integers(1, min(list_size, num_colors) + 1)), replace=False)]
            for _ in range(n)
        ]
    else:
        coloring = [names[int(i)] for i in rng.integers(num_colors, size=n)]
    motif: dict[str, int] = {}
    for i in rng.integers(num_colors, size=k if motif_size is None else motif_size):
        motif[names[int(i)]] = motif.get(names[int(i)], 0) + 1
    return make_instance(n, g.edges(), coloring, motif, k, costs=costs, extra_colors=names)
