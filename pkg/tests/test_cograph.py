import itertools

import networkx as nx
import pytest

from gbei.cograph import (
    CographError,
    Cotree,
    cotree,
    cotree_graph,
    has_induced_p4,
    join_split,
    minimum_connected_dominating_set,
    nonadjacent_pairs,
)
from gbei.graph import (
    all_labeled_graphs,
    complement,
    complete,
    complete_multipartite,
    cycle,
    disjoint_union,
    is_connected,
    isomorphism_classes,
    join_product,
    path,
    star,
)


def brute_p4(G) -> bool:
    for quad in itertools.combinations(G.vertices, 4):
        for order in itertools.permutations(quad):
            a, b, c, d = order
            edges = {(a, b), (b, c), (c, d)}
            if all(G.adjacent(u, v) == ((u, v) in edges or (v, u) in edges) for u, v in itertools.combinations(order, 2)):
                return True
    return False


def test_spec_examples():
    assert has_induced_p4(path(4)) == (1, 2, 3, 4)
    with pytest.raises(CographError) as info:
        cotree(path(4))
    assert info.value.witness == (1, 2, 3, 4)
    tree = cotree(complete(4))
    assert tree.kind == "join" and [c.kind for c in tree.children] == ["leaf"] * 4
    B = join_product([complete(1), disjoint_union([complete(1), complete(2)])])
    assert cotree_graph(cotree(B)) == B


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 10), (5, 24)])
def test_number_of_cographs_up_to_isomorphism(n, count):
    assert sum(has_induced_p4(G) is None for G in isomorphism_classes(n)) == count


def test_detection_and_witnesses_on_five_vertices():
    for G in all_labeled_graphs(5):
        w = has_induced_p4(G)
        assert (w is not None) == brute_p4(G)
        if w is not None:
            a, b, c, d = w
            assert G.adjacent(a, b) and G.adjacent(b, c) and G.adjacent(c, d)
            assert not (G.adjacent(a, c) or G.adjacent(b, d) or G.adjacent(a, d))


def test_cotree_json_round_trip_and_reconstruction():
    for G in all_labeled_graphs(5):
        if has_induced_p4(G) is None:
            tree = cotree(G)
            assert Cotree.from_json(tree.to_json()) == tree
            assert cotree_graph(tree) == G
            assert sorted(tree.leaves()) == list(G.vertices)


def test_cotree_alternates_node_kinds():
    def check(t, parent=None):
        if t.kind != "leaf":
            assert t.kind != parent and len(t.children) >= 2
            for c in t.children:
                check(c, t.kind)

    for G in isomorphism_classes(5):
        if has_induced_p4(G) is None:
            check(cotree(G))


def test_minimum_connected_dominating_set_against_networkx():
    for G in isomorphism_classes(5):
        if not is_connected(G):
            with pytest.raises(CographError):
                minimum_connected_dominating_set(G)
            continue
        H = nx.Graph(G.edges())
        H.add_nodes_from(G.vertices)
        S = minimum_connected_dominating_set(G)
        assert nx.is_dominating_set(H, S) and nx.is_connected(H.subgraph(S))
        best = min(
            k for k in range(1, G.n + 1)
            for T in itertools.combinations(G.vertices, k)
            if nx.is_dominating_set(H, T) and nx.is_connected(H.subgraph(T))
        )
        assert len(S) == best


@pytest.mark.parametrize("G", [complete_multipartite([2, 2]), complete_multipartite([1, 2, 3]), star(4),
                               join_product([disjoint_union([complete(2), complete(1)]), complete(2)])])
def test_join_split_is_a_join(G):
    V1, V2, cert = join_split(G)
    assert V1 and V2 and V1 | V2 == set(G.vertices) and not V1 & V2
    assert all(G.adjacent(a, b) for a in V1 for b in V2)
    assert cert.to_json()["branch"] in {"universal-vertex", "w-universal", "v-universal", "edge"}


def test_join_split_edge_branch():
    G = complete_multipartite([2, 2])
    V1, V2, cert = join_split(G)
    assert cert.branch == "edge" and len(cert.dominating) == 2


def test_join_split_errors():
    with pytest.raises(CographError):
        join_split(disjoint_union([complete(2), complete(2)]))
    with pytest.raises(CographError) as info:
        join_split(cycle(5))
    assert info.value.witness is not None


def test_nonadjacent_pairs():
    assert nonadjacent_pairs(complete(4)) == 0
    assert nonadjacent_pairs(path(4)) == 3
    assert nonadjacent_pairs(complement(complete(4))) == 6
