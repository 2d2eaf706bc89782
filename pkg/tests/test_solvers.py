import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hellycover.constructions import complete_r_graph, complete_r_partite, h_rtm, two_copy_partite
from hellycover.errors import BudgetExceeded, InputError
from hellycover.helly import covering_hypergraph
from hellycover.hypergraph import Hypergraph, PartiteStructure, complete_graph_edges, is_cover
from hellycover.solvers import (
    InverseRoot,
    critical_edge_bound,
    critical_reduce,
    greedy_ell_cover,
    has_cover_at_most,
    is_critical,
    min_cover,
    nu_exact,
    reduce_family,
    tau_exact,
    tau_fractional,
    transversal_cover,
)

import oracles
from strategies import hypergraphs, partite_hypergraphs, uniform_hypergraphs

K3 = Hypergraph(3, complete_graph_edges(3), 2)
K4 = Hypergraph(4, complete_graph_edges(4), 2)


def disjoint(count, r):
    return Hypergraph(count * r, tuple(tuple(range(i * r, i * r + r)) for i in range(count)), r)


# --- tau ---------------------------------------------------------------------

def test_tau_edgeless():
    res = tau_exact(Hypergraph(5))
    assert res.value == 0 and res.witness == ()


@pytest.mark.parametrize("r,t", [(2, 0), (2, 2), (3, 1), (3, 3), (4, 2)])
def test_tau_complete_graph(r, t):
    assert tau_exact(complete_r_graph(t + r, r).hypergraph).value == t + 1


@pytest.mark.parametrize("r,t,m", [(2, 1, 2), (3, 1, 2), (3, 2, 1), (4, 0, 2)])
def test_tau_h_rtm(r, t, m):
    assert tau_exact(h_rtm(r, t, m).hypergraph).value == (t + 1) * m


@given(hypergraphs(max_n=9, max_e=10))
def test_tau_matches_brute_force(h):
    res = tau_exact(h)
    assert res.value == oracles.tau_brute(h.n, h.edges)
    assert len(res.witness) == res.value and is_cover(h, res.witness)


@given(hypergraphs(max_n=8, max_e=9), st.integers(0, 6))
def test_has_cover_at_most_matches_oracle(h, k):
    found = has_cover_at_most(h.masks, k)
    assert (found is not None) == oracles.has_cover_brute(h.edges, k)
    if found is not None:
        assert len(found) <= k and is_cover(h, found)


def test_has_cover_at_most_rejects_greedy_overshoot():
    # greedy finds a 3-cover of C4 before the search proves 2 suffices
    c4 = Hypergraph(4, ((0, 1), (1, 2), (2, 3), (0, 3)), 2)
    assert has_cover_at_most(c4.masks, 1) is None
    assert len(has_cover_at_most(c4.masks, 2)) == 2


@given(hypergraphs(max_n=8, max_e=9))
def test_reduce_family_keeps_tau(h):
    reduced = reduce_family(h.masks)
    assert len(min_cover(reduced)) == oracles.tau_brute(h.n, h.edges)


def test_budget_error_carries_bounds():
    h = complete_r_graph(12, 3).hypergraph
    with pytest.raises(BudgetExceeded) as info:
        tau_exact(h, budget=3)
    exc = info.value
    assert exc.lower <= 10 <= exc.upper
    assert exc.witness is None or is_cover(h, exc.witness)


# --- matchings ---------------------------------------------------------------

def test_nu_disjoint_and_k4():
    assert nu_exact(disjoint(3, 3)).value == 3
    res = nu_exact(K4)
    assert res.value == 2
    a, b = res.witness
    assert not set(a) & set(b)


def test_nu_under_pcp():
    # C4 as a bipartite graph has pcp(2, 3), so at most 2 disjoint edges
    assert nu_exact(complete_r_partite(2, 2).hypergraph).value <= 2


@given(hypergraphs(max_n=8, max_e=9))
def test_nu_matches_brute_force(h):
    assert nu_exact(h).value == oracles.nu_brute(h.edges)


@given(uniform_hypergraphs(max_n=8, max_e=9))
def test_nu_tau_sandwich(h):
    nu, tau = nu_exact(h).value, tau_exact(h).value
    assert nu <= tau <= h.r * nu


# --- fractional covers -------------------------------------------------------

def test_tau_star_single_edge_and_triangle():
    assert tau_fractional(Hypergraph(3, ((0, 1, 2),), 3)).value == 1
    assert tau_fractional(K3).value == Fraction(3, 2)
    assert tau_fractional(Hypergraph(2)).value == 0


@pytest.mark.parametrize("r,ell,t", [(2, 2, 2), (2, 2, 3), (3, 2, 2), (2, 1, 3)])
def test_tau_star_covering_hypergraph(r, ell, t):
    ch = covering_hypergraph(complete_r_graph(t + r, r).hypergraph, ell)
    expect = Fraction(math.comb(t + r, ell), math.comb(t, ell))
    assert tau_fractional(ch.derived).value == expect


@given(hypergraphs(max_n=7, max_e=9, min_e=1))
def test_tau_star_feasible_and_matches_linprog(h):
    res = tau_fractional(h)
    for e in h.edges:
        assert sum(res.weights.get(v, 0) for v in e) >= 1
    assert sum(res.weights.values()) == res.value
    assert float(res.value) == pytest.approx(oracles.tau_star_linprog(h.n, h.edges), abs=1e-7)


@given(hypergraphs(max_n=7, max_e=9, min_e=1))
def test_lovasz_sandwich(h):
    star, tau = tau_fractional(h).value, tau_exact(h).value
    assert star <= tau
    assert tau <= (1 + math.log(h.max_degree)) * float(star) + 1e-9


# --- transversal covers ------------------------------------------------------

def test_transversal_single_edge():
    p = PartiteStructure(((0,), (1,), (2,)))
    h = Hypergraph(3, ((0, 1, 2),), 3, False, p)
    assert transversal_cover(h) == (0, 1, 2)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_no_transversal_in_complete_partite(r):
    assert transversal_cover(complete_r_partite(r, 2).hypergraph) is None


@pytest.mark.parametrize("r", [2, 3, 4])
def test_two_copy_minus_any_edge_has_transversal(r):
    h = two_copy_partite(r).hypergraph
    for i in range(h.e):
        smaller = h.delete_edge(i)
        t = transversal_cover(smaller)
        assert t is not None and is_cover(smaller, t)


def test_transversal_needs_partition():
    with pytest.raises(InputError):
        transversal_cover(K4)


@given(partite_hypergraphs())
def test_transversal_matches_brute_force(h):
    t = transversal_cover(h)
    expected = oracles.transversal_brute(h.parts.parts, h.edges)
    assert (t is None) == (expected is None)
    if t is not None:
        assert is_cover(h, t)
        assert sorted(h.parts.part_of[v] for v in t) == list(range(h.parts.r))


# --- greedy peeling ----------------------------------------------------------

def test_greedy_disjoint_edges_one_round():
    res = greedy_ell_cover(disjoint(3, 2), 3, Fraction(1, 2))
    assert res.rounds == 1 and len(res.cover) == 3


def test_greedy_k4_vertices():
    res = greedy_ell_cover(K4, 1, Fraction(1, 2))
    assert res.rounds == 3 and len(res.cover) == 3
    assert [rd.covered for rd in res.trace] == [3, 2, 1]


@pytest.mark.parametrize("r,t", [(2, 4), (2, 6), (3, 6)])
def test_greedy_complete_graph_rounds(r, t):
    h = complete_r_graph(t + r, r).hypergraph
    j = t // r
    res = greedy_ell_cover(h, r, InverseRoot(h.e, j))
    assert is_cover(h, res.cover)
    if res.all_thresholds_met:
        assert res.rounds <= j
        assert len(res.cover) <= r * res.rounds


def test_greedy_errors():
    with pytest.raises(InputError):
        greedy_ell_cover(K4, 5, 0.5)
    with pytest.raises(InputError):
        greedy_ell_cover(K4, 1, 1.5)


def test_greedy_sampled_is_seeded():
    h = complete_r_graph(6, 2).hypergraph
    a = greedy_ell_cover(h, 2, 0.5, mode="sampled", samples=4, seed=3)
    b = greedy_ell_cover(h, 2, 0.5, mode="sampled", samples=4, seed=3)
    assert a == b and a.seed == 3


@given(hypergraphs(max_n=7, max_e=9), st.integers(1, 3))
def test_greedy_cover_is_a_cover(h, ell):
    if ell > h.n:
        return
    res = greedy_ell_cover(h, ell, Fraction(1, 2))
    assert is_cover(h, res.cover)
    assert len(res.cover) <= ell * res.rounds


def test_inverse_root_is_exact():
    x = InverseRoot(16, 2)  # exactly 1/4
    assert not x.keeps_fewer(1, 4)
    assert x.keeps_fewer(0, 4)
    assert x.keeps_fewer(2, 9)
    assert float(x) == 0.25


# --- criticality -------------------------------------------------------------

def test_critical_examples():
    assert is_critical(disjoint(3, 2))
    assert is_critical(K4)
    pendant = Hypergraph(5, complete_graph_edges(4) + ((3, 4),), 2)
    assert tau_exact(pendant).value == 3
    assert not is_critical(pendant)


def test_critical_reduce_examples():
    assert critical_reduce(K4).edges == K4.edges
    doubled = Hypergraph(4, complete_graph_edges(4) + ((0, 1),), 2, multi=True)
    assert sorted(critical_reduce(doubled).edges) == sorted(K4.edges)
    k5 = Hypergraph(5, complete_graph_edges(5), 2)
    tau = tau_exact(k5).value
    assert tau == 4
    assert critical_reduce(k5).e <= critical_edge_bound(2, tau)


@given(hypergraphs(max_n=7, max_e=8, min_e=1))
def test_critical_reduce_properties(h):
    out = critical_reduce(h)
    tau = tau_exact(h).value
    assert tau_exact(out).value == tau
    assert set(out.edges) <= set(h.edges)
    assert is_critical(out)
    assert out.e <= critical_edge_bound(out.rank, tau)
