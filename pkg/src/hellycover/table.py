"""Desk-scale tables of h_r(k, r) and hp_r(k).

A cell never claims an exact extremal value it cannot certify. The lower
bound is the largest cover number among small constructions whose property
was verified exhaustively within the cell budget; the upper bound is the
best closed-form bound that applies, and the certifying instances are checked
against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .constructions import (
    ConstructionOutput,
    complete_r_graph,
    copies,
    disjoint_edges,
    h_rtm,
    lb_start_family,
    two_copy_partite,
)
from .errors import BudgetExceeded, InputError
from .helly import has_cover_property, has_partite_cover_property
from .solvers import tau_exact, transversal_cover

UNBOUNDED = math.inf
MAX_VERTICES = 60
MAX_EDGES = 300


@dataclass
class Cell:
    kind: str  # "h" for h_r(k, r), "hp" for hp_r(k)
    r: int
    k: int
    lower: float | int | None = None
    lower_source: str | None = None
    upper: float | int | None = None
    upper_rule: str = ""
    checks: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.upper == UNBOUNDED and self.lower == UNBOUNDED:
            return "unbounded"
        if self.lower is None:
            return "skipped(budget)"
        if self.lower == self.upper:
            return "exact"
        return "bounds"

    def to_dict(self) -> dict:
        def show(v):
            return "∞" if v == UNBOUNDED else v

        return {
            "kind": self.kind,
            "r": self.r,
            "k": self.k,
            "lower": show(self.lower),
            "lower_source": self.lower_source,
            "upper": show(self.upper),
            "upper_rule": self.upper_rule,
            "status": self.status,
            "checks": self.checks,
            "skipped": self.skipped,
        }


def k_columns(r: int) -> list[int]:
    return sorted({r, r + 1, r + 2, 2**r - 1, 2**r, math.comb(2 * r, r)})


def upper_bound(kind: str, r: int, k: int) -> tuple[float | int, str]:
    if k <= r:
        return UNBOUNDED, "any r edges have a cover of size r, so the property says nothing"
    if kind == "hp" and k >= 2**r:
        return r, "2^r edges with transversal covers force a transversal cover"
    if k >= math.comb(2 * r, r):
        return r, "C(2r, r) edges with r-covers force an r-cover"
    best, rule = r * r, "a maximal matching has at most r edges, so its r^2 vertices cover"
    if k > 1:
        peel = math.ceil(16 * r * r * math.log(r) / math.log(k)) - 1
        if peel < best:
            best, rule = peel, "greedy peeling bound 16 r^2 ln r / ln k (strict)"
    return best, rule


def _fits(c: ConstructionOutput) -> bool:
    return c.hypergraph.n <= MAX_VERTICES and c.hypergraph.e <= MAX_EDGES


def _predicted_k(c: ConstructionOutput, kind: str) -> float:
    best = 0
    for p in c.predicted_properties:
        if p.kind == "pcp" or (kind == "h" and p.kind == "cp" and p.ell == c.hypergraph.uniformity):
            best = max(best, p.k)
    return best


def candidates(kind: str, r: int, k: int) -> list[ConstructionOutput]:
    out = [disjoint_edges(r, r), two_copy_partite(r)]
    for t in range(r):
        for m in (1, 2, 3):
            out.append(h_rtm(r, t, m))
    # r copies of an intersecting H_{r,t,1}: any r+1 edges have two in one copy
    t = (r + 1) // 2 - 1
    if r >= 3:
        out.append(copies(h_rtm(r, t, 1).hypergraph, r, t + 1))
    if kind == "h":
        for n in range(r + 1, 3 * r + 2):
            out.append(complete_r_graph(n, r))
        out.append(complete_r_graph(r * r - 1 + r, r))
        if k > r:
            out.append(lb_start_family(r, r, k))
    out = [c for c in out if _fits(c) and _predicted_k(c, kind) >= k]
    out.sort(key=lambda c: -c.predicted_tau)
    return out


def _label(c: ConstructionOutput) -> str:
    params = ",".join(f"{a}={b}" for a, b in c.params.items())
    return f"{c.family}({params})"


def build_cell(kind: str, r: int, k: int, budget: int = 200_000) -> Cell:
    if kind not in ("h", "hp"):
        raise InputError("kind must be 'h' or 'hp'")
    upper, rule = upper_bound(kind, r, k)
    cell = Cell(kind, r, k, upper=upper, upper_rule=rule)
    if k <= r:
        # disjoint edges: any k <= r of them have a transversal cover, tau grows without bound
        witness = disjoint_edges(2 * r, r)
        ok = has_partite_cover_property(witness.hypergraph, None, k, budget=budget).holds
        cell.lower = UNBOUNDED if ok else None
        cell.lower_source = f"{_label(witness)}: any {k} of arbitrarily many disjoint edges are covered"
        return cell
    for c in candidates(kind, r, k):
        h = c.hypergraph
        try:
            if kind == "hp":
                verdict = has_partite_cover_property(h, None, k, budget=budget)
            else:
                verdict = has_cover_property(h, k, r, budget=budget)
            if not verdict.holds:
                cell.checks.append({"instance": _label(c), "property_failed": list(verdict.witness)})
                continue
            tau = tau_exact(h, budget).value
        except BudgetExceeded:
            cell.skipped.append(_label(c))
            continue
        if tau != c.predicted_tau:
            cell.checks.append({"instance": _label(c), "tau": tau, "predicted": c.predicted_tau})
        if cell.lower is None or tau > cell.lower:
            cell.lower, cell.lower_source = tau, _label(c)
        cell.checks.append({"instance": _label(c), "tau": tau, "within_upper": tau <= upper})
        if kind == "hp" and k >= 2**r:
            cell.checks.append({"instance": _label(c), "transversal_found": transversal_cover(h) is not None})
    return cell


def build_table(r_max: int = 6, r_min: int = 2, budget: int = 200_000, kinds=("h", "hp")) -> list[Cell]:
    if r_min < 2 or r_max < r_min:
        raise InputError("need 2 <= r_min <= r_max")
    cells = []
    for kind in kinds:
        for r in range(r_min, r_max + 1):
            row = [build_cell(kind, r, k, budget) for k in k_columns(r)]
            _propagate(row)
            cells.extend(row)
    return cells


def _propagate(row: list[Cell]) -> None:
    """Both quantities are nonincreasing in k: lower bounds pass to smaller k,
    upper bounds to larger k."""
    for i in range(len(row) - 2, -1, -1):
        nxt, cur = row[i + 1], row[i]
        if nxt.lower is not None and (cur.lower is None or nxt.lower > cur.lower):
            cur.lower, cur.lower_source = nxt.lower, f"{nxt.lower_source} (from k={nxt.k})"
    for i in range(1, len(row)):
        prev, cur = row[i - 1], row[i]
        if prev.upper < cur.upper:
            cur.upper, cur.upper_rule = prev.upper, f"{prev.upper_rule} (from k={prev.k})"


def cell_consistent(cell: Cell) -> bool:
    """No certified lower bound may exceed the upper bound, and every check passed."""
    if cell.lower is not None and cell.upper is not None and cell.lower != UNBOUNDED:
        if cell.lower > cell.upper:
            return False
    for chk in cell.checks:
        if chk.get("within_upper") is False or chk.get("transversal_found") is False:
            return False
        if "predicted" in chk:
            return False
    return True
