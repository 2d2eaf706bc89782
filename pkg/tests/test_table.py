import math

import pytest

from hellycover.errors import InputError
from hellycover.table import UNBOUNDED, build_cell, build_table, cell_consistent, k_columns, upper_bound


def test_k_columns():
    assert k_columns(2) == [2, 3, 4, 6]
    assert k_columns(3) == [3, 4, 5, 7, 8, 20]


def test_upper_bound_rules():
    assert upper_bound("hp", 3, 3)[0] == UNBOUNDED
    assert upper_bound("hp", 3, 8)[0] == 3
    assert upper_bound("h", 3, 8)[0] == 9
    assert upper_bound("h", 3, 20)[0] == 3
    assert upper_bound("h", 6, 7)[0] == 36


def test_small_k_is_unbounded():
    cell = build_cell("hp", 3, 3)
    assert cell.lower == UNBOUNDED and cell.status == "unbounded"
    assert cell.to_dict()["upper"] == "∞"


@pytest.mark.parametrize("r", [3, 4])
def test_certified_lower_bounds(r):
    # r copies of an intersecting H_{r,t,1} give r * tau at k = r + 1
    at_r1 = build_cell("hp", r, r + 1)
    assert at_r1.lower == r * ((r + 1) // 2) and at_r1.lower_source.startswith("copies")
    # two_copy_partite(r) has tau = r + 1
    k = math.comb(r, (r + 1) // 2) + math.comb(r, (r + 2) // 2) - 1
    cell = build_cell("hp", r, k)
    assert cell.lower == r + 1 and cell.lower_source.startswith("two_copy_partite")
    assert cell_consistent(at_r1) and cell_consistent(cell)


def test_hp_rightmost_column_is_r():
    for r in (2, 3):
        cell = build_cell("hp", r, math.comb(2 * r, r))
        assert cell.upper == r and cell.lower == r
        assert cell.status == "exact" and cell_consistent(cell)


def test_table_rows_are_monotone_and_consistent():
    cells = build_table(r_max=3)
    assert all(cell_consistent(c) for c in cells)
    for kind in ("h", "hp"):
        for r in (2, 3):
            row = [c for c in cells if c.kind == kind and c.r == r]
            finite = [c.upper for c in row if c.upper != UNBOUNDED]
            assert finite == sorted(finite, reverse=True)
            lows = [c.lower for c in row if c.lower is not None and c.lower != UNBOUNDED]
            assert lows == sorted(lows, reverse=True)


def test_table_arguments():
    with pytest.raises(InputError):
        build_table(r_max=1)
    with pytest.raises(InputError):
        build_cell("x", 2, 3)
