import itertools

import pytest
from hypothesis import given

from forestlab.errors import BadIndex, GraphSyntaxError, LoopEdge, WeightOutOfRange
from forestlab.graph import (
    boundary,
    bridges,
    build_graph,
    components,
    edge_count,
    graph_from_json,
    graph_to_json,
    induced_subgraph,
    is_connected,
    is_forest,
    parse_graph,
    permute,
    remove_edge,
    serialize_graph,
)
from forestlab.constructions import build_family
from randgraphs import multigraphs

K4 = [(u, v) for u, v in itertools.combinations(range(4), 2)]


def test_triple_edge_k2_degrees():
    G = build_graph(2, 1, [1, 1], [(0, 1, 3)])
    assert G.degrees == (3, 3)
    assert G.num_edges == 3 and not G.is_simple


def test_single_heavy_vertex_has_zero_capacity():
    G = build_graph(1, 3, [5], [])
    assert G.capacity(0) == 0


def test_weight_bound_enforced():
    with pytest.raises(WeightOutOfRange):
        build_graph(3, 2, [1, 1, 5], [(0, 1, 1)])


def test_loops_and_bad_indices_rejected():
    with pytest.raises(LoopEdge):
        build_graph(2, 1, None, [(1, 1, 1)])
    with pytest.raises(BadIndex):
        build_graph(2, 1, None, [(0, 2)])


def test_repeated_pairs_merge():
    G = build_graph(3, 1, None, [(1, 0), (0, 1, 2), (2, 1)])
    assert G.edges == ((0, 1, 3), (1, 2, 1))


def test_induced_subgraph_examples():
    k2 = build_graph(2, 1, None, [(0, 1, 3)])
    H = induced_subgraph(k2, [0])
    assert H.n == 1 and H.num_edges == 0
    k4 = build_graph(4, 2, None, K4)
    K3 = induced_subgraph(k4, [0, 2, 3])
    assert K3.num_edges == 3 and K3.labels == (0, 2, 3)
    fam = build_family("md", 1, 0)
    assert induced_subgraph(fam, fam.vertices()) == fam


def test_is_forest_examples():
    path = build_graph(3, 1, None, [(0, 1), (1, 2)])
    assert is_forest(path)
    assert not is_forest(build_graph(2, 1, None, [(0, 1, 2)]))
    tri = build_graph(3, 1, None, [(0, 1), (1, 2), (0, 2)])
    assert is_forest(tri, [0, 1]) and not is_forest(tri)


def test_boundary_examples():
    path = build_graph(3, 1, None, [(0, 1), (1, 2)])
    assert boundary(path, [0, 1, 2]) == set()
    assert boundary(path, [0, 1]) == {1}
    star = build_graph(4, 1, None, [(0, 1), (0, 2), (0, 3)])
    assert boundary(star, [0, 1]) == {0}


def test_bridges_skip_parallel_pairs():
    G = build_graph(4, 1, None, [(0, 1, 2), (1, 2), (2, 3)])
    assert bridges(G) == [(1, 2), (2, 3)]


def test_text_format_examples():
    G = parse_graph("graph 2 D=1\ne 0 1 3\n")
    assert G == build_graph(2, 1, None, [(0, 1, 3)])
    k4 = build_graph(4, 2, [1, 2, 1, 4], K4)
    assert parse_graph(serialize_graph(k4)) == k4
    with pytest.raises(LoopEdge):
        parse_graph("graph 1 D=1\ne 0 0 1\n")


def test_parse_errors_carry_line_numbers():
    with pytest.raises(GraphSyntaxError, match="line 2"):
        parse_graph("graph 2 D=1\ne 0 x\n")
    with pytest.raises(GraphSyntaxError):
        parse_graph("graph 2 D=1\ne 0 1 4\n")
    with pytest.raises(GraphSyntaxError):
        parse_graph("e 0 1\n")


def test_comments_and_json():
    G = parse_graph("# a path\ngraph 3 D=2  # header\nw 2 3\ne 0 1\ne 1 2\n")
    assert G.weights == (1, 1, 3)
    assert parse_graph('{"n": 3, "D": 2, "weights": [1,1,3], "edges": [[0,1,1],[1,2,1]]}') == G


@given(multigraphs(max_n=7))
def test_serialization_round_trips(G):
    assert parse_graph(serialize_graph(G)) == G
    assert graph_from_json(graph_to_json(G)) == G


@given(multigraphs(max_n=7))
def test_induced_edge_count_matches(G):
    for r in range(1, G.n + 1):
        for A in itertools.combinations(range(G.n), r):
            assert induced_subgraph(G, A).num_edges == edge_count(G, A)


@given(multigraphs(max_n=7))
def test_multi_edge_is_never_a_forest(G):
    if any(m >= 2 for _, _, m in G.edges):
        assert not is_forest(G)


@given(multigraphs(max_n=7))
def test_components_partition_vertices(G):
    comps = components(G)
    assert sorted(v for C in comps for v in C) == list(G.vertices())
    assert is_connected(G) == (len(comps) == 1)


@given(multigraphs(max_n=7))
def test_bridge_removal_disconnects(G):
    before = len(components(G))
    for u, v in bridges(G):
        assert len(components(remove_edge(G, u, v))) == before + 1


@given(multigraphs(max_n=6))
def test_permute_preserves_degree_sequence(G):
    perm = list(reversed(range(G.n)))
    H = permute(G, perm)
    assert sorted(H.degrees) == sorted(G.degrees)
    assert sorted(H.weights) == sorted(G.weights)
