import pytest
from hypothesis import given
from hypothesis import strategies as st

from hellycover.constructions import h_rtm
from hellycover.errors import InputError
from hellycover.hypergraph import (
    Hypergraph,
    PartiteStructure,
    complete_graph_edges,
    covered_edges,
    disjoint_union,
    from_mask,
    remove_vertices,
    to_mask,
    validate,
)
from hellycover.solvers import tau_exact

from strategies import hypergraphs

K4 = Hypergraph(4, complete_graph_edges(4), 2)


def test_validate_clean_matching():
    h = Hypergraph(6, ((0, 1), (2, 3), (4, 5)))
    assert validate(h) == []


def test_validate_uniformity():
    h = Hypergraph(3, ((0, 1, 2),), 2)
    assert validate(h) == ["uniformity violation at edge 0: size 3 != 2"]


def test_validate_partite():
    p = PartiteStructure(((0, 1), (2, 3)))
    h = Hypergraph(4, ((0, 1),), 2, False, p)
    assert "partite violation: edge 0 meets part 0 twice" in validate(h)


def test_validate_duplicates_and_empty():
    h = Hypergraph(3, ((0, 1), (0, 1), ()))
    msgs = validate(h)
    assert "duplicate edge at edge 1 (same as edge 0)" in msgs
    assert "empty edge at edge 2" in msgs
    assert validate(Hypergraph(3, ((0, 1), (0, 1)), multi=True)) == []


def test_validate_partition_gaps():
    p = PartiteStructure(((0,), (0, 1)))
    msgs = validate(Hypergraph(3, (), 2, False, p))
    assert any("already in part 0" in m for m in msgs)
    assert any("misses vertices [2]" in m for m in msgs)


def test_covered_edges_k4():
    assert covered_edges(K4, {0, 1}) == 5
    assert covered_edges(K4, set()) == 0
    assert covered_edges(K4, range(4)) == 6


def test_covered_edges_h312_important():
    c = h_rtm(3, 1, 2)
    s = c.important[0] + c.important[1]
    assert covered_edges(c.hypergraph, s) == c.hypergraph.e == 12


def test_covered_edges_out_of_range():
    with pytest.raises(InputError):
        covered_edges(K4, {4})


def test_remove_vertices_k4():
    assert remove_vertices(K4, {0, 1}).edges == ((2, 3),)
    assert remove_vertices(K4, set()) == K4
    assert remove_vertices(K4, range(4)).edges == ()


def test_disjoint_union_two_edges():
    one = Hypergraph(2, ((0, 1),), 2)
    u = disjoint_union([one, one])
    assert u.n == 4 and u.edges == ((0, 1), (2, 3))
    assert tau_exact(u).value == 2


def test_disjoint_union_keeps_parts():
    p = PartiteStructure(((0,), (1,)))
    one = Hypergraph(2, ((0, 1),), 2, False, p)
    u = disjoint_union([one, one, one])
    assert u.parts.parts == ((0, 2, 4), (1, 3, 5))
    assert validate(u) == []


def test_mask_round_trip():
    assert from_mask(to_mask([5, 0, 3])) == (0, 3, 5)
    assert to_mask([]) == 0


def test_strip_isolated_relabels():
    h = Hypergraph(5, ((1, 3),))
    s = h.strip_isolated()
    assert s.n == 2 and s.edges == ((0, 1),)
    assert h.isolated_vertices() == (0, 2, 4)


@given(hypergraphs(), st.data())
def test_covered_edges_monotone(h, data):
    small = data.draw(st.sets(st.integers(0, h.n - 1)))
    extra = data.draw(st.sets(st.integers(0, h.n - 1)))
    assert covered_edges(h, small) <= covered_edges(h, small | extra)


@given(hypergraphs(), st.data())
def test_remove_plus_covered_is_total(h, data):
    s = data.draw(st.sets(st.integers(0, h.n - 1)))
    assert remove_vertices(h, s).e + covered_edges(h, s) == h.e


@given(hypergraphs())
def test_validate_idempotent(h):
    before = h
    assert validate(h) == validate(h)
    assert h == before


@given(st.integers(1, 4), st.integers(1, 4))
def test_disjoint_union_preserves_uniformity(a, b):
    x = Hypergraph(3, ((0, 1), (1, 2)), 2)
    y = Hypergraph(4, ((0, 3),), 2)
    u = disjoint_union([x] * a + [y] * b)
    assert u.r == 2 and validate(u) == []
