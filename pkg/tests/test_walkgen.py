import numpy as np
import pytest

from motifsieve.algebra import INTEGERS, PolyRing
from motifsieve.errors import GuardError
from motifsieve.gf2 import FieldParams
from motifsieve.graph import HostGraph, random_connected_graph
from motifsieve.walkgen import (
    WalkAssignment,
    enumerate_branching_walks,
    eval_walk_poly,
    eval_walk_poly_fast,
    eval_walk_poly_symbolic,
    fingerprint,
    symbolic_assignment,
)

EDGE = HostGraph.from_edges(2, [(1, 2)])
PATH3 = HostGraph.from_edges(3, [(1, 2), (2, 3)])
TRIANGLE = HostGraph.from_edges(3, [(1, 2), (2, 3), (1, 3)])


def count(graph, k):
    return eval_walk_poly(graph, k, WalkAssignment([1] * graph.n, [1] * (2 * graph.e)), INTEGERS)


@pytest.mark.parametrize("graph,k,expected", [(EDGE, 2, 2), (PATH3, 3, 7), (TRIANGLE, 2, 6), (PATH3, 1, 3)])
def test_integer_counts(graph, k, expected):
    assert count(graph, k) == expected


def small_graphs():
    rng = np.random.default_rng(99)
    yield from (EDGE, PATH3, TRIANGLE)
    for _ in range(6):
        n = int(rng.integers(2, 6))
        yield random_connected_graph(n, int(rng.integers(n - 1, n * (n - 1) // 2 + 1)), rng)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_counts_match_enumeration(k):
    for g in small_graphs():
        assert count(g, k) == sum(1 for _ in enumerate_branching_walks(g, k))


def test_edge_symbolic():
    ring = PolyRing()
    P = eval_walk_poly_symbolic(EDGE, 2, ring)
    x1, x2 = ring.var(("x", 1)), ring.var(("x", 2))
    expected = x1 * ring.var(("y", 1, 2)) * x2 + x2 * ring.var(("y", 2, 1)) * x1
    assert P == expected and len(P) == 2


def test_k1_is_sum_of_x():
    ring = PolyRing()
    P = eval_walk_poly_symbolic(TRIANGLE, 1, ring)
    assert P == ring.var(("x", 1)) + ring.var(("x", 2)) + ring.var(("x", 3))


def test_k2_monomials_are_arcs():
    for g in small_graphs():
        assert len(eval_walk_poly_symbolic(g, 2)) == 2 * g.e


def test_symbolic_dp_matches_enumeration():
    for g in small_graphs():
        for k in range(1, 5):
            ring = PolyRing()
            dp = eval_walk_poly(g, k, symbolic_assignment(g, ring), ring)
            assert dp == eval_walk_poly_symbolic(g, k, ring)


def _degrees(ring, mono):
    exps = ring.exponents(mono)
    xd = sum(e for name, e in exps.items() if name[0] == "x")
    yd = sum(e for name, e in exps.items() if name[0] == "y")
    return xd, yd


def test_monomial_degrees():
    for g in small_graphs():
        for k in range(1, 5):
            ring = PolyRing()
            for mono in eval_walk_poly_symbolic(g, k, ring):
                assert _degrees(ring, mono) == (k, k - 1)


def _reconstruct(ring, mono):
    """Rebuild ``(parent, phi)`` of a simple walk from its fingerprint."""
    exps = ring.exponents(mono)
    arcs = [(name[1], name[2]) for name in exps if name[0] == "y"]
    heads = {v for _, v in arcs}
    (root,) = [name[1] for name in exps if name[0] == "x" and name[1] not in heads]
    children = {}
    for u, v in arcs:
        children.setdefault(u, []).append(v)
    parent, phi = [], []

    def visit(v, p):
        phi.append(v)
        parent.append(p)
        me = len(phi)
        for c in sorted(children.get(v, [])):
            visit(c, me)

    visit(root, 0)
    return tuple(parent), tuple(phi)


def test_multilinear_iff_simple_and_reconstructible():
    for g in small_graphs():
        for k in range(1, 5):
            ring = PolyRing()
            seen = {}
            for parent, phi in enumerate_branching_walks(g, k):
                mono = next(iter(fingerprint(ring, parent, phi)))
                simple = len(set(phi)) == k
                multilinear = all(e == 1 for name, e in ring.exponents(mono).items() if name[0] == "x")
                assert simple == multilinear
                if simple:
                    assert mono not in seen
                    seen[mono] = (parent, phi)
                    assert _reconstruct(ring, mono) == (parent, phi)


def _evaluate(ring, poly, field, point):
    total = 0
    for mono in poly:
        term = 1
        for name, e in ring.exponents(mono).items():
            term = field.mul(term, field.pow(point[name], e))
        total ^= term
    return total


def test_evaluation_matches_symbolic_substitution():
    field = FieldParams.of_bits(8)
    rng = np.random.default_rng(4)
    for g in small_graphs():
        for k in range(1, 5):
            ring = PolyRing()
            P = eval_walk_poly_symbolic(g, k, ring)
            x = field.random_array(rng, g.n)
            y = field.random_array(rng, 2 * g.e)
            point = {("x", u): int(x[u - 1]) for u in range(1, g.n + 1)}
            point.update({("y", u, v): int(y[i]) for i, (u, v) in enumerate(g.arcs())})
            expected = _evaluate(ring, P, field, point)
            assert eval_walk_poly(g, k, WalkAssignment(list(map(int, x)), list(map(int, y))), field) == expected
            assert eval_walk_poly_fast(g, k, x, y, field) == expected


@pytest.mark.parametrize("b", [5, 16, 64])
def test_fast_matches_generic_on_larger_graph(b):
    field = FieldParams.of_bits(b)
    rng = np.random.default_rng(b)
    g = random_connected_graph(15, 30, rng)
    for k in (1, 3, 6, 9):
        x, y = field.random_array(rng, g.n), field.random_array(rng, 2 * g.e)
        slow = eval_walk_poly(g, k, WalkAssignment(list(map(int, x)), list(map(int, y))), field)
        assert eval_walk_poly_fast(g, k, x, y, field) == slow


def test_symbolic_guard():
    g = random_connected_graph(7, 8, np.random.default_rng(1))
    with pytest.raises(GuardError):
        eval_walk_poly_symbolic(g, 2)
    with pytest.raises(GuardError):
        eval_walk_poly_symbolic(PATH3, 5)
