"""Set Cover to Maximum Graph Motif, in the unique-color and two-color forms.

The host graph has a root ``r``, ``t`` copies ``s^j_i`` of every set
(``j = 1..t``), and the universe elements.  ``r`` is adjacent to every set
copy, and each set copy is adjacent to the elements it contains.  With
``k = n + t + 1`` a connected motif match must take ``r``, every element,
and one set copy per ``j``, which is a cover by at most ``t`` sets.

Vertex numbering: ``r`` is 1, then ``s^j_i`` in ``(j, i)`` order, then the
universe elements in input order.
"""
from __future__ import annotations

import io
import itertools
from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np

from .errors import GuardError, InstanceError, ParseError
from .graph import MotifInstance, make_instance

HEADER = "setcover v1"
BRUTE_MAX_SETS = 12


@dataclass(frozen=True)
class SetCoverInstance:
    """Universe ``elements`` (names), family ``sets`` (tuples of element indices), budget ``t``."""

    elements: tuple[str, ...]
    sets: tuple[tuple[int, ...], ...]
    t: int

    def __post_init__(self):
        if self.t < 1:
            raise InstanceError("t must be at least 1")
        if not self.elements or not self.sets:
            raise InstanceError("universe and set family must be nonempty")
        if len(set(self.elements)) != len(self.elements):
            raise InstanceError("duplicate universe element")
        covered = set()
        for s in self.sets:
            if any(not 0 <= a < len(self.elements) for a in s):
                raise InstanceError("set refers to an unknown element")
            covered.update(s)
        if covered != set(range(len(self.elements))):
            raise InstanceError("the sets do not cover the universe")

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def m(self) -> int:
        return len(self.sets)


def _graph(sc: SetCoverInstance) -> tuple[int, list[tuple[int, int]]]:
    n, m, t = sc.n, sc.m, sc.t

    def s(j: int, i: int) -> int:  # 1-based copy j, 0-based set i
        return 2 + (j - 1) * m + i

    def elem(a: int) -> int:
        return 2 + m * t + a

    edges = []
    for j in range(1, t + 1):
        for i, members in enumerate(sc.sets):
            edges.append((1, s(j, i)))
            for a in members:
                edges.append((s(j, i), elem(a)))
    return 1 + n + m * t, edges


def reduce_unique_colors(sc: SetCoverInstance) -> MotifInstance:
    """Colors ``1..n+t+1``, each of multiplicity one."""
    nv, edges = _graph(sc)
    t = sc.t
    coloring = [str(t + 1)]
    coloring += [str(j) for j in range(1, t + 1) for _ in sc.sets]
    coloring += [str(t + 2 + a) for a in range(sc.n)]
    motif = {str(q): 1 for q in range(1, sc.n + t + 2)}
    return make_instance(nv, edges, coloring, motif, sc.n + t + 1)


def reduce_two_colors(sc: SetCoverInstance) -> MotifInstance:
    """Color 1 on ``r`` and the universe (multiplicity ``n+1``), color 2 on set copies (``t``)."""
    nv, edges = _graph(sc)
    coloring = ["1"] + ["2"] * (sc.m * sc.t) + ["1"] * sc.n
    return make_instance(nv, edges, coloring, {"1": sc.n + 1, "2": sc.t}, sc.n + sc.t + 1)


def brute_set_cover(sc: SetCoverInstance) -> bool:
    """Is the universe covered by at most ``t`` of the sets?"""
    if sc.m > BRUTE_MAX_SETS:
        raise GuardError(f"brute-force set cover limited to m <= {BRUTE_MAX_SETS}")
    full = (1 << sc.n) - 1
    masks = [sum(1 << a for a in s) for s in sc.sets]
    for size in range(1, min(sc.t, sc.m) + 1):
        for combo in itertools.combinations(masks, size):
            acc = 0
            for mk in combo:
                acc |= mk
            if acc == full:
                return True
    return False


def random_set_cover(n: int, m: int, t: int, rng: np.random.Generator, density: float = 0.5) -> SetCoverInstance:
    """Each element joins each set with probability ``density``; uncovered elements are
    then added to a uniformly chosen set."""
    if n < 1 or m < 1 or t < 1:
        raise InstanceError("universe size, set count and t must be positive")
    if not 0.0 <= density <= 1.0:
        raise InstanceError("density must lie in [0, 1]")
    member = rng.random((m, n)) < density
    for a in range(n):
        if not member[:, a].any():
            member[rng.integers(m), a] = True
    sets = tuple(tuple(int(a) for a in np.flatnonzero(row)) for row in member)
    return SetCoverInstance(tuple(f"e{a + 1}" for a in range(n)), sets, t)


def parse_setcover(text: str | TextIO) -> SetCoverInstance:
    lines = text.splitlines() if isinstance(text, str) else text.read().splitlines()
    elements: list[str] = []
    sets: dict[int, tuple[str, ...]] = {}
    t = None
    seen_header = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != HEADER:
                raise ParseError(f"expected header {HEADER!r}", lineno)
            seen_header = True
            continue
        key, *args = line.split()
        if key == "element":
            if len(args) != 1:
                raise ParseError("'element' takes one name", lineno)
            elements.append(args[0])
        elif key == "set":
            if not args:
                raise ParseError("'set' needs an index", lineno)
            try:
                idx = int(args[0])
            except ValueError:
                raise ParseError("set index must be an integer", lineno) from None
            if idx in sets:
                raise ParseError(f"duplicate set {idx}", lineno)
            sets[idx] = tuple(args[1:])
        elif key == "t":
            if len(args) != 1:
                raise ParseError("'t' takes one integer", lineno)
            try:
                t = int(args[0])
            except ValueError:
                raise ParseError("t must be an integer", lineno) from None
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    if not seen_header:
        raise ParseError(f"missing header {HEADER!r}", 1)
    if t is None:
        raise ParseError("missing 't' line")
    if sorted(sets) != list(range(1, len(sets) + 1)):
        raise ParseError("sets must be numbered 1..m")
    index = {e: a for a, e in enumerate(elements)}
    family = []
    for i in range(1, len(sets) + 1):
        unknown = [e for e in sets[i] if e not in index]
        if unknown:
            raise InstanceError(f"set {i} mentions unknown element {unknown[0]!r}")
        family.append(tuple(sorted({index[e] for e in sets[i]})))
    return SetCoverInstance(tuple(elements), tuple(family), t)


def serialize_setcover(sc: SetCoverInstance) -> str:
    out = io.StringIO()
    out.write(f"{HEADER}\n")
    for e in sc.elements:
        out.write(f"element {e}\n")
    for i, s in enumerate(sc.sets, start=1):
        out.write(" ".join(["set", str(i), *(sc.elements[a] for a in s)]) + "\n")
    out.write(f"t {sc.t}\n")
    return out.getvalue()


def reduce(sc: SetCoverInstance, variant: str = "unique") -> MotifInstance:
    if variant == "unique":
        return reduce_unique_colors(sc)
    if variant == "twocolor":
        return reduce_two_colors(sc)
    raise ValueError(f"unknown reduction variant {variant!r}")
