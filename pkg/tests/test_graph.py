import itertools
import random

import networkx as nx
import pytest

from gbei.graph import (
    GRAPH6_HEADER,
    Graph,
    Graph6Error,
    GraphError,
    all_labeled_graphs,
    canonical_form,
    complement,
    complete,
    complete_multipartite,
    connected_components,
    cycle,
    disjoint_union,
    edgeless,
    induced_subgraph,
    is_connected,
    is_cut_vertex,
    is_isomorphic,
    isomorphism_classes,
    join_product,
    make_named,
    parse_graph6,
    path,
    relabel,
    star,
    write_graph6,
)


def to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(1, G.n + 1))
    H.add_edges_from(G.edges())
    return H


def from_nx_bytes(code: str) -> set:
    H = nx.from_graph6_bytes(code.encode())
    return {tuple(sorted((u + 1, v + 1))) for u, v in H.edges()}


def test_graph6_matches_networkx_on_all_graphs_up_to_five_vertices():
    for n in range(1, 6):
        for G in all_labeled_graphs(n):
            code = write_graph6(G)
            assert parse_graph6(code) == G
            assert from_nx_bytes(code) == set(G.edges())
            assert nx.to_graph6_bytes(to_nx(G), header=False).decode().strip() == code


@pytest.mark.parametrize("n", [7, 12, 62, 63, 64])
def test_graph6_random_graphs_and_long_length_prefix(n):
    rng = random.Random(n)
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < 0.3]
    G = Graph.from_edges(n, edges)
    code = write_graph6(G)
    assert (code[0] == "~") == (n >= 63)
    assert parse_graph6(code) == G
    assert from_nx_bytes(code) == set(edges)


def test_graph6_header_and_known_codes():
    assert parse_graph6(GRAPH6_HEADER + "A_") == complete(2)
    assert write_graph6(path(4)) == "Ch"
    assert write_graph6(complete(4)) == "C~"


@pytest.mark.parametrize(
    "code, fragment",
    [("", "empty"), ("A", "data bytes"), ("A_~", "data bytes"), ("A`", "padding"), ("A\x20", "printable"), ("?", "zero")],
)
def test_graph6_rejects_malformed_records(code, fragment):
    with pytest.raises(Graph6Error, match=fragment):
        parse_graph6(code)


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 4)])
    with pytest.raises(GraphError):
        Graph(2, (2, 0))


def test_named_families():
    assert path(4).edges() == [(1, 2), (2, 3), (3, 4)]
    assert star(3).edges() == [(1, 2), (1, 3), (1, 4)]
    assert cycle(4).num_edges == 4
    assert edgeless(3).num_edges == 0
    assert complete_multipartite([1, 2]) == star(2)
    assert is_isomorphic(complete_multipartite([2, 2]), cycle(4))
    assert make_named("complement", path(4)) == complement(path(4))
    assert is_isomorphic(complement(path(4)), path(4))
    with pytest.raises(GraphError):
        make_named("wheel", 5)


def test_union_and_join_products():
    U = disjoint_union([complete(2), complete(2)])
    assert U.edges() == [(1, 2), (3, 4)] and not is_connected(U)
    J = join_product([complete(1), disjoint_union([complete(1), complete(2)])])
    assert J.edges() == [(1, 2), (1, 3), (1, 4), (3, 4)]
    assert join_product([edgeless(2), edgeless(2)]) == complete_multipartite([2, 2])


def test_components_and_cut_vertices_against_networkx():
    for G in all_labeled_graphs(5):
        H = to_nx(G)
        assert sorted(map(sorted, connected_components(G))) == sorted(map(sorted, nx.connected_components(H)))
        if is_connected(G) and G.n > 1:
            assert {v for v in G.vertices if is_cut_vertex(G, v)} == set(nx.articulation_points(H))


def test_induced_subgraph_relabels_in_order():
    H, back = induced_subgraph(path(5), [2, 3, 5])
    assert H.edges() == [(1, 2)]
    assert back == {1: 2, 2: 3, 3: 5}


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)])
def test_isomorphism_class_counts(n, count):
    reps = isomorphism_classes(n)
    assert len(reps) == count
    for a, b in itertools.combinations(reps, 2):
        assert not nx.is_isomorphic(to_nx(a), to_nx(b))


def test_canonical_form_is_relabeling_invariant():
    rng = random.Random(7)
    for G in isomorphism_classes(5):
        perm = list(range(1, 6))
        rng.shuffle(perm)
        H = relabel(G, perm)
        assert canonical_form(H) == canonical_form(G)
        assert is_isomorphic(G, H)
