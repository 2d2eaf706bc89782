from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hellycover.colour import (
    EdgeColouredGraph,
    Graph,
    adversarial_colouring,
    adversarial_host,
    aux_hypergraph,
    aux_multigraph,
    brute_force_component_cover,
    check_host,
    common_neighbour_depth,
    cover_for_colouring,
    indep_cover,
    min_degree_distinct_cover,
    monochromatic_components,
    multigraph_alpha,
    tc_exact_small,
    transitive_closure,
)
from hellycover.constructions import complete_r_partite, disjoint_edges, two_copy_partite
from hellycover.errors import InputError
from hellycover.hypergraph import complete_graph_edges, validate
from hellycover.solvers import tau_exact

import oracles
from strategies import coloured_graphs, graphs

K3_RED = EdgeColouredGraph(3, 2, ((0, 1, 1), (1, 2, 1), (0, 2, 1)))
P4 = EdgeColouredGraph(4, 2, ((0, 1, 1), (1, 2, 2), (2, 3, 1)))


def complete_minus_matching(n):
    return Graph(n, tuple((u, v) for u, v in complete_graph_edges(n) if not (u % 2 == 0 and v == u + 1)))


def colour_randomly(graph, r, rng):
    cols = rng.integers(1, r + 1, size=len(graph.edges))
    return EdgeColouredGraph(graph.n, r, tuple((u, v, int(c)) for (u, v), c in zip(graph.edges, cols)))


# --- components and the auxiliary hypergraph ---------------------------------

def test_components_examples():
    assert monochromatic_components(K3_RED) == [[(0, 1, 2)], [(0,), (1,), (2,)]]
    empty = EdgeColouredGraph(3, 2)
    assert monochromatic_components(empty) == [[(0,), (1,), (2,)]] * 2
    assert monochromatic_components(P4) == [[(0, 1), (2, 3)], [(0,), (1, 2), (3,)]]


def test_rejects_malformed_colourings():
    with pytest.raises(InputError):
        EdgeColouredGraph(3, 2, ((0, 1, 3),))
    with pytest.raises(InputError):
        EdgeColouredGraph(3, 2, ((0, 0, 1),))
    with pytest.raises(InputError):
        EdgeColouredGraph(3, 2, ((0, 1, 1), (1, 0, 2)))
    EdgeColouredGraph(3, 2, ((0, 1, 1), (1, 0, 2)), multi=True)


def test_aux_hypergraph_examples():
    aux = aux_hypergraph(K3_RED)
    h = aux.hypergraph
    assert h.n == 4 and h.e == 3
    assert all(0 in e for e in h.edges)
    assert tau_exact(h).value == 1
    lone = aux_hypergraph(EdgeColouredGraph(1, 3)).hypergraph
    assert lone.n == 3 and lone.edges == ((0, 1, 2),)


@given(coloured_graphs())
def test_aux_hypergraph_is_partite(g):
    aux = aux_hypergraph(g)
    h = aux.hypergraph
    assert validate(h) == []
    assert h.e == g.n
    assert h.n == sum(len(c) for c in monochromatic_components(g))
    for x, (colour, members) in enumerate(aux.components):
        assert aux.partition.part_of[x] == colour - 1
        for v in members:
            assert x in h.edges[v]


# --- optimal component covers ------------------------------------------------

def test_cover_examples():
    assert cover_for_colouring(K3_RED).size == 1
    p4 = cover_for_colouring(P4)
    assert p4.size == 2 and p4.complete


@given(coloured_graphs(max_n=7))
def test_cover_matches_brute_force(g):
    cover = cover_for_colouring(g)
    assert cover.complete
    assert cover.size == oracles.component_cover_brute(g.n, g.r, g.edges)
    assert cover.size == brute_force_component_cover(g)
    assert cover.size == tau_exact(aux_hypergraph(g).hypergraph).value
    comps = {(c, m) for c, _, m in cover.components}
    for colour, members in comps:
        assert frozenset(members) in oracles.components_brute(g.n, g.edges, colour)


@given(coloured_graphs(max_n=7))
def test_closure_preserves_covers(g):
    closed = transitive_closure(g)
    assert monochromatic_components(closed) == monochromatic_components(g)
    assert cover_for_colouring(closed).size == cover_for_colouring(g).size


@given(coloured_graphs(max_n=8))
def test_indep_cover_bound(g):
    ic = indep_cover(g)
    assert ic.complete
    alpha = oracles.alpha_brute(g.n, [(u, v) for u, v, _ in g.edges])
    assert cover_for_colouring(g).size <= ic.size <= g.r * alpha


def test_indep_cover_examples():
    kn = EdgeColouredGraph(5, 3, tuple((u, v, 1 + (u + v) % 3) for u, v in complete_graph_edges(5)))
    assert indep_cover(kn).size <= 3
    assert indep_cover(EdgeColouredGraph(4, 2)).size == 8
    p4 = indep_cover(P4)
    assert p4.complete and p4.size <= 4
    assert {0, 2} <= {v for _, _, m in p4.components for v in m}


def test_transitive_closure_examples():
    assert transitive_closure(K3_RED).edges == ((0, 1, 1), (0, 2, 1), (1, 2, 1))
    closed = transitive_closure(P4)
    assert closed.edges == ((0, 1, 1), (1, 2, 2), (2, 3, 1))
    assert multigraph_alpha(closed) == (2, (0, 2))


# --- tree-cover numbers of small graphs ---------------------------------------

def test_tc_examples():
    assert tc_exact_small(Graph(4, complete_graph_edges(4)), 2) == 1
    assert tc_exact_small(Graph(5), 3) == 5
    path = Graph(3, ((0, 1), (1, 2)))
    assert tc_exact_small(path, 2) == 2


@pytest.mark.parametrize("n", [3, 4, 5])
def test_tc_of_complete_graphs(n):
    assert tc_exact_small(Graph(n, complete_graph_edges(n)), 2) == 1


def test_tc_at_least_r_when_alpha_large():
    # independent set {0, 1, 2} of size 3 >= r
    g = Graph(4, ((0, 3), (1, 3), (2, 3)))
    assert tc_exact_small(g, 3) >= 3


@given(graphs(max_n=5), st.integers(1, 3))
def test_tc_symmetry_reduction_is_sound(graph, r):
    if r ** len(graph.edges) > 800:
        return
    worst = 0
    for cols in product(range(1, r + 1), repeat=len(graph.edges)):
        edges = tuple((u, v, c) for (u, v), c in zip(graph.edges, cols))
        worst = max(worst, oracles.component_cover_brute(graph.n, r, edges))
    assert tc_exact_small(graph, r) == worst


# --- common-neighbour depth ----------------------------------------------------

def test_depth_examples():
    assert common_neighbour_depth(Graph(5, complete_graph_edges(5)), True) == 5
    assert common_neighbour_depth(Graph(4, ((0, 1), (2, 3))), False) == 1
    assert common_neighbour_depth(complete_minus_matching(8), True) >= 4


@given(graphs(max_n=7), st.booleans())
def test_depth_matches_brute_force(graph, closed):
    assert common_neighbour_depth(graph, closed) == oracles.common_neighbour_depth_brute(
        graph.n, graph.edges, closed
    )


# --- distinct-colour covers under a degree condition ---------------------------

def test_min_degree_r2_k8_minus_matching():
    graph = complete_minus_matching(8)
    rng = np.random.default_rng(100)
    for _ in range(100):
        cover = min_degree_distinct_cover(colour_randomly(graph, 2, rng))
        assert cover.complete and cover.distinct_colours and cover.size <= 2


def test_min_degree_r3_n16():
    graph = complete_minus_matching(16)
    assert graph.min_degree == 14
    rng = np.random.default_rng(16)
    for _ in range(10):
        cover = min_degree_distinct_cover(colour_randomly(graph, 3, rng))
        assert cover.complete and cover.distinct_colours and cover.size <= 3


def test_min_degree_single_spanning_component():
    graph = complete_minus_matching(8)
    g = EdgeColouredGraph(8, 2, tuple((u, v, 2) for u, v in graph.edges))
    cover = min_degree_distinct_cover(g)
    assert cover.size == 1 and cover.components[0][0] == 2


def test_min_degree_precondition():
    with pytest.raises(InputError):
        min_degree_distinct_cover(P4)


# --- the multigraph A(H) --------------------------------------------------------

def test_aux_multigraph_examples():
    a = aux_multigraph(disjoint_edges(2, 2).hypergraph)
    assert a.n == 2 and a.edges == ()
    h = complete_r_partite(2, 2).hypergraph
    a = aux_multigraph(h)
    assert a.n == 4
    assert cover_for_colouring(a).size >= tau_exact(h).value == 2


def test_aux_multigraph_two_copies():
    c = two_copy_partite(3)
    h, k = c.hypergraph, c.predicted_properties[0].k
    a = aux_multigraph(h)
    assert cover_for_colouring(a).size >= tau_exact(h).value
    comps = monochromatic_components(a)
    label = [{v: i for i, comp in enumerate(cl) for v in comp} for cl in comps]
    for size in range(1, k + 1):
        for s in combinations(range(a.n), size):
            # some assignment of colours puts each class inside one component
            assert any(
                all(len({label[c - 1][v] for v, cc in zip(s, cols) if cc == c}) <= 1 for c in range(1, a.r + 1))
                for cols in product(range(1, a.r + 1), repeat=size)
            )


def test_aux_multigraph_needs_partition():
    from hellycover.hypergraph import Hypergraph

    with pytest.raises(InputError):
        aux_multigraph(Hypergraph(3, ((0, 1), (1, 2)), 2))


# --- adversarial colourings -------------------------------------------------------

def test_adversarial_disjoint_edges():
    h = disjoint_edges(2, 2).hypergraph
    host = adversarial_host(h.e, 3)
    assert check_host(host.graph, host.s_vertices, 3, host.w) == []
    g = adversarial_colouring(h, None, 3, host.graph, host.s_vertices, host.w)
    assert g.r == 3
    assert cover_for_colouring(g).size >= tau_exact(h).value + 1 == 3
    assert oracles.component_cover_brute(g.n, g.r, g.edges) >= 3


def test_adversarial_two_copy():
    c = two_copy_partite(2)
    h, k = c.hypergraph, c.predicted_properties[0].k
    host = adversarial_host(h.e, k)
    g = adversarial_colouring(h, None, k, host.graph, host.s_vertices, host.w)
    assert cover_for_colouring(g).size >= 4


def test_adversarial_rejects_bad_hosts():
    h = disjoint_edges(2, 2).hypergraph
    bad = Graph(3, ((0, 1), (1, 2)))
    problems = check_host(bad, (0, 1), 2, 2)
    assert any("not independent" in p for p in problems)
    assert any("adjacent to S" in p for p in problems)
    with pytest.raises(InputError, match="host violates"):
        adversarial_colouring(h, None, 2, bad, (0, 1), 2)


def test_adversarial_requires_pcp():
    c = two_copy_partite(2)
    host = adversarial_host(c.hypergraph.e, 5)
    with pytest.raises(InputError, match="pcp"):
        adversarial_colouring(c.hypergraph, None, 5, host.graph, host.s_vertices, host.w)
