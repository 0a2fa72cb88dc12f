"""Randomized properties over small graphs."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from gbei.cograph import CographError, cotree, cotree_graph, has_induced_p4
from gbei.graph import Graph, complement, connected_components, is_isomorphic, join_product, parse_graph6, relabel, write_graph6
from gbei.groebner import groebner_basis, is_groebner
from gbei.poly import Polynomial, gbei_generators
from gbei.primedec import cut_sets, krull_dimension
from gbei.regularity import reg_bounds, reg_formula

FAST = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


@FAST
@given(graphs(max_n=40))
def test_graph6_round_trip(G):
    assert parse_graph6(write_graph6(G)) == G


@FAST
@given(graphs(max_n=6), st.permutations(range(1, 7)))
def test_cut_sets_follow_relabeling(G, perm):
    perm = [p for p in perm if p <= G.n]
    H = relabel(G, perm)
    mapped = {frozenset(perm[v - 1] for v in T) for T in cut_sets(G)}
    assert mapped == set(cut_sets(H).sets)


@FAST
@given(graphs(max_n=7))
def test_cographs_are_closed_under_complement(G):
    assert (has_induced_p4(G) is None) == (has_induced_p4(complement(G)) is None)
    try:
        tree = cotree(G)
    except CographError as err:
        assert err.witness is not None
    else:
        assert cotree_graph(tree) == G


@FAST
@given(graphs(max_n=4), graphs(max_n=3))
def test_join_of_cographs_is_a_cograph(G1, G2):
    J = join_product([G1, G2])
    if has_induced_p4(G1) is None and has_induced_p4(G2) is None:
        assert has_induced_p4(J) is None


@FAST
@given(graphs(max_n=7), st.integers(2, 6))
def test_formula_sits_inside_the_bounds(G, m):
    r = reg_formula(G, m)
    lo, hi = reg_bounds(G, m)
    assert lo <= r.lower <= r.upper <= hi


@FAST
@given(graphs(max_n=7), st.integers(2, 5))
def test_dimension_between_empty_prime_and_ring(G, m):
    empty_prime = sum(m + len(c) - 1 for c in connected_components(G))
    assert empty_prime <= krull_dimension(G, m) <= m * G.n


@FAST
@given(graphs(min_n=2, max_n=4), st.integers(2, 3), st.data())
def test_groebner_confluence_and_normal_form(G, m, data):
    J = gbei_generators(G, m)
    B = groebner_basis(J)
    assert is_groebner(B.polys, "degrevlex")
    R = J.ring
    k = data.draw(st.integers(0, R.grid.N - 1))
    x = Polynomial(R, {R.var_index(k): 1})
    f = x * x * x
    for g in J.generators:
        f = f + g * x
    once = B.normal_form(f)
    assert B.normal_form(once) == once
    assert once == B.normal_form(x * x * x)


@FAST
@given(graphs(max_n=5), graphs(max_n=5))
def test_isomorphism_is_symmetric(G, H):
    assert is_isomorphic(G, H) == is_isomorphic(H, G)
