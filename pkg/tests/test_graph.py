import numpy as np
import pytest

from motifsieve.errors import InstanceError, ParseError
from motifsieve.graph import (
    CostSpec,
    HostGraph,
    make_instance,
    parse_instance,
    preprocess,
    random_connected_graph,
    random_instance,
    relabel,
    serialize_instance,
)

PATH_TEXT = """\
motif-instance v1
# a path
vertices 3
edge 1 2
edge 2 3
color 1 r
color 2 b
color 3 r
motif r 2
motif b 1
k 3
"""


def test_parse_path():
    inst = parse_instance(PATH_TEXT)
    assert (inst.n, inst.graph.e, inst.k) == (3, 2, 3)
    assert inst.motif_counts() == {"b": 1, "r": 2}
    assert inst.graph.neighbors(2) == (1, 3)


def test_edge_to_vertex_zero_is_syntax_error():
    with pytest.raises(ParseError, match="line 4"):
        parse_instance(PATH_TEXT.replace("edge 1 2", "edge 0 2"))


def test_disconnected_graph_rejected():
    text = "motif-instance v1\nvertices 4\nedge 1 2\nedge 3 4\n" + "".join(f"color {v} r\n" for v in range(1, 5)) + "k 2\n"
    with pytest.raises(InstanceError, match="graph not connected"):
        parse_instance(text)


@pytest.mark.parametrize(
    "edit",
    [
        ("edge 2 3", "edge 2 2"),  # loop
        ("edge 2 3", "edge 2 1"),  # parallel edge
        ("k 3", "k 4"),
        ("k 3", "k 0"),
        ("motif b 1", "motif b -1"),
    ],
)
def test_validation_rejects(edit):
    with pytest.raises((InstanceError, ParseError)):
        parse_instance(PATH_TEXT.replace(*edit))


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_instance("vertices 3\n")
    with pytest.raises(ParseError):
        parse_instance(PATH_TEXT + "bogus 1\n")
    with pytest.raises(ParseError):
        parse_instance(PATH_TEXT + "costs 1 1 1\n")
    with pytest.raises(InstanceError):
        parse_instance(PATH_TEXT.replace("color 3 r\n", ""))


def test_negative_costs_rejected():
    with pytest.raises(InstanceError):
        CostSpec(1, -1, 1)


def test_adjacency_is_symmetric_and_sorted(rng):
    g = random_connected_graph(12, 25, rng)
    for u in range(1, g.n + 1):
        nb = g.neighbors(u)
        assert list(nb) == sorted(set(nb))
        assert all(u in g.neighbors(v) for v in nb)
    assert g.e == 25 and g.is_connected()
    assert len(g.arcs()) == 50


def test_preprocess_clamps():
    inst = make_instance(3, [(1, 2), (2, 3)], ["red"] * 3, {"red": 7, "blue": 0}, 3)
    p = preprocess(inst)
    assert p.motif_counts() == {"red": 3}
    assert p.motif[p.color_id("blue")] == 0
    assert p.motif_size == 7
    assert preprocess(p) is p
    small = make_instance(3, [(1, 2), (2, 3)], ["red"] * 3, {"red": 2}, 3)
    assert preprocess(small) is small


def test_round_trip_random(rng):
    for i in range(100):
        n = int(rng.integers(1, 9))
        e = int(rng.integers(n - 1, n * (n - 1) // 2 + 1))
        costs = CostSpec(*map(int, rng.integers(0, 4, size=3)), tau=int(rng.integers(0, 6))) if i % 3 == 0 else None
        list_size = 3 if i % 5 == 1 else 0
        inst = random_instance(rng, n, e, int(rng.integers(1, n + 1)), int(rng.integers(1, 5)),
                               motif_size=int(rng.integers(0, 6)), list_size=list_size,
                               costs=None if list_size else costs)
        text = serialize_instance(inst)
        assert parse_instance(text) == inst
        assert serialize_instance(parse_instance(text)) == text


def test_empty_motif_round_trips():
    inst = make_instance(2, [(1, 2)], ["a", "b"], {}, 2)
    assert parse_instance(serialize_instance(inst)) == inst


def test_list_coloring_round_trips():
    inst = make_instance(3, [(1, 2), (1, 3)], [["a", "b"], ["b"], ["a", "c"]], {"a": 1, "c": 2}, 2)
    text = serialize_instance(inst)
    assert "colors 1 a,b" in text
    assert parse_instance(text) == inst


def test_preprocessed_serializes_raw_motif():
    inst = make_instance(2, [(1, 2)], ["a", "a"], {"a": 5}, 2)
    assert "motif a 5" in serialize_instance(preprocess(inst))


def test_relabel_moves_colors():
    inst = parse_instance(PATH_TEXT)
    r = relabel(inst, [3, 1, 2])
    assert r.graph.edges() == [(1, 2), (1, 3)]
    assert [r.colors[r.color_of(u)] for u in (1, 2, 3)] == ["b", "r", "r"]


def test_costs_on_list_instance_rejected():
    with pytest.raises(InstanceError):
        make_instance(2, [(1, 2)], [["a", "b"], ["a"]], {"a": 1}, 2, costs=CostSpec(1, 1, 1))


def test_parameterized_cost_signed_term():
    c = CostSpec(sigma_s=5, sigma_i=2, sigma_d=1)
    assert c.parameterized_cost(1, 0, 2, 2) == 5
    assert c.parameterized_cost(0, 1, 2, 2) == 3
    # |M| = 1 < k = 2: one insertion only
    assert c.parameterized_cost(0, 1, 1, 2) == 2


def test_host_graph_from_edges_errors():
    with pytest.raises(InstanceError):
        HostGraph.from_edges(2, [(1, 3)])
    with pytest.raises(InstanceError):
        HostGraph.from_edges(2, [(1, 2), (2, 1)])


def test_digest_stable():
    a, b = parse_instance(PATH_TEXT), parse_instance(PATH_TEXT)
    assert a.digest() == b.digest()
    assert a.digest() != parse_instance(PATH_TEXT.replace("k 3", "k 2")).digest()
