import itertools

import networkx as nx
import pytest

from gbei.graph import (
    Graph,
    all_labeled_graphs,
    complete,
    cycle,
    disjoint_union,
    edgeless,
    is_connected,
    isomorphism_classes,
    join_product,
    path,
    star,
)
from gbei.groebner import contains_ideal, groebner_basis, hilbert_values
from gbei.poly import gbei_generators
from gbei.primedec import (
    EXHAUSTIVE_LIMIT,
    CutSetError,
    cut_sets,
    cut_sets_of_join,
    has_cut_point_property,
    join_collections,
    krull_dimension,
    prime_component,
    prime_components,
    prime_generators,
)


def brute_force_cut_sets(G: Graph) -> set:
    """Definition checked with networkx: each v in T raises the component count when put back."""
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    H.add_edges_from(G.edges())
    out = set()
    for k in range(G.n + 1):
        for T in itertools.combinations(G.vertices, k):
            rest = H.subgraph(set(G.vertices) - set(T))
            base = nx.number_connected_components(rest) if rest.number_of_nodes() else 0
            if all(
                nx.number_connected_components(H.subgraph(set(rest.nodes) | {v})) < base for v in T
            ):
                out.add(frozenset(T))
    return out


def test_spec_examples():
    assert cut_sets(path(4)).as_lists() == [[], [2], [3]]
    assert cut_sets(complete(3)).as_lists() == [[]]
    assert cut_sets(cycle(4)).as_lists() == [[], [1, 3], [2, 4]]
    assert cut_sets(star(3)).as_lists() == [[], [1]]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_cut_sets_match_the_definition(n):
    for G in all_labeled_graphs(n):
        fam = cut_sets(G)
        assert set(fam.sets) == brute_force_cut_sets(G)
        assert fam.sets[0] == frozenset()
        for T in fam:
            assert has_cut_point_property(G, T)


def test_enumeration_cap():
    with pytest.raises(CutSetError, match="exhaustive-limit"):
        cut_sets(path(EXHAUSTIVE_LIMIT + 1))


def test_join_formula_small_cases_and_preconditions():
    E2 = edgeless(2)
    assert cut_sets_of_join(E2, E2).as_lists() == [[], [1, 2], [3, 4]]
    K2K1 = disjoint_union([complete(2), complete(1)])
    assert set(cut_sets_of_join(K2K1, E2).sets) == set(cut_sets(join_product([K2K1, E2])).sets)
    with pytest.raises(CutSetError, match="connected"):
        cut_sets_of_join(path(3), E2)


def test_join_collections():
    assert join_collections([[[1], [2]], [[], [3]]]) == [frozenset({1}), frozenset({2}), frozenset({1, 3}), frozenset({2, 3})]
    assert join_collections([[[1]], []]) == []


def test_prime_component_blocks_and_errors():
    P = prime_component(path(3), 3, [2])
    assert sorted(map(sorted, P.cliques)) == [[1], [3]]
    assert P.killed == [(1, 2), (2, 2), (3, 2)]
    assert P.to_json() == {"T": [2], "killed": [[1, 2], [2, 2], [3, 2]], "cliques": [[1], [3]]}
    with pytest.raises(CutSetError):
        prime_component(path(3), 3, [1])


def test_primes_contain_the_ideal():
    for G in isomorphism_classes(4):
        J = gbei_generators(G, 3)
        for P in prime_components(G, 3):
            assert contains_ideal(prime_generators(P), J)


def hilbert_dimension(I, upto=9):
    """Krull dimension from the Hilbert function: differences until it vanishes."""
    vals = hilbert_values(groebner_basis(I), upto)
    k = 0
    while any(vals[-3:]):
        vals = [b - a for a, b in zip(vals, vals[1:])]
        k += 1
    return k


@pytest.mark.parametrize(
    "G, m, dim",
    [(complete(2), 2, 3), (path(3), 2, 4), (path(3), 3, 6), (complete(3), 3, 5), (cycle(4), 2, 5), (star(3), 2, 6)],
)
def test_krull_dimension_matches_hilbert_growth(G, m, dim):
    assert krull_dimension(G, m) == dim
    assert hilbert_dimension(gbei_generators(G, m)) == dim


def test_dimension_formula_for_edgeless_and_disconnected():
    assert krull_dimension(edgeless(3), 2) == 6
    G = disjoint_union([complete(2), complete(2)])
    assert krull_dimension(G, 3) == 8
    assert is_connected(join_product([edgeless(2), edgeless(2)]))
