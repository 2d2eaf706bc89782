from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hellycover.errors import BudgetExceeded
from hellycover.lp import solve_packing

import oracles


def test_triangle_packing():
    # rows are vertices, columns are the edges of K3
    sol = solve_packing(3, [[0, 1], [1, 2], [0, 2]])
    assert sol.value == Fraction(3, 2)
    assert sol.primal == (Fraction(1, 2),) * 3
    assert sum(sol.dual) == sol.value


def test_disjoint_columns():
    sol = solve_packing(4, [[0, 1], [2, 3]])
    assert sol.value == 2


def test_pivot_cap():
    with pytest.raises(BudgetExceeded):
        solve_packing(3, [[0, 1], [1, 2], [0, 2]], max_pivots=0)


@st.composite
def zero_one_columns(draw):
    rows = draw(st.integers(1, 6))
    col = st.sets(st.integers(0, rows - 1), min_size=1, max_size=rows).map(sorted)
    return rows, draw(st.lists(col, min_size=1, max_size=8))


@given(zero_one_columns())
def test_strong_duality_and_feasibility(data):
    rows, cols = data
    sol = solve_packing(rows, cols)
    assert sum(sol.primal) == sol.value == sum(sol.dual)
    assert all(y >= 0 for y in sol.primal) and all(w >= 0 for w in sol.dual)
    for i in range(rows):
        assert sum(y for y, c in zip(sol.primal, cols) if i in c) <= 1
    for c in cols:
        assert sum(sol.dual[i] for i in c) >= 1
    assert float(sol.value) == pytest.approx(oracles.tau_star_linprog(rows, cols), abs=1e-7)
