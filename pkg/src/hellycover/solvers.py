"""Cover, matching and fractional-cover solvers.

All exact searches work on edge bitmasks. ``tau_exact`` is a branch and bound:
root reductions (duplicate/superset edges, dominated vertices), a greedy
incumbent, a disjoint-edge packing lower bound, and branching on the vertices
of a smallest uncovered edge in decreasing degree order, forbidding the
vertices already tried so each cover is explored once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import budget as _budget
from .errors import BudgetExceeded, InputError
from .hypergraph import (
    Hypergraph,
    PartiteStructure,
    from_mask,
    is_cover,
    require_partite,
    require_valid,
    to_mask,
)
from .lp import solve_packing


@dataclass(frozen=True)
class CoverResult:
    value: int
    witness: tuple[int, ...]
    optimal: bool = True
    stats: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {"value": self.value, "witness": list(self.witness), "optimal": self.optimal, "stats": self.stats}


@dataclass(frozen=True)
class MatchingResult:
    value: int
    witness: tuple[tuple[int, ...], ...]
    stats: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {"value": self.value, "witness": [list(e) for e in self.witness], "optimal": True, "stats": self.stats}


@dataclass(frozen=True)
class FractionalCoverResult:
    value: Fraction
    weights: dict[int, Fraction]
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def value_float(self) -> float:
        return float(self.value)

    def to_dict(self) -> dict:
        return {
            "value": str(self.value),
            "value_float": self.value_float,
            "witness": {str(v): str(w) for v, w in sorted(self.weights.items())},
            "optimal": True,
            "stats": self.stats,
        }


# ---------------------------------------------------------------------------
# reductions and bounds on bitmask families


def _minimal_edges(masks: Iterable[int]) -> list[int]:
    """Distinct inclusion-minimal masks, sorted by (size, mask)."""
    uniq = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in uniq:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def _dominated_vertices(masks: Sequence[int]) -> int:
    """Mask of vertices whose edge set is contained in another vertex's.

    Ties (identical edge sets) keep the smallest vertex.
    """
    inc: dict[int, int] = {}
    for i, m in enumerate(masks):
        mm = m
        while mm:
            low = mm & -mm
            v = low.bit_length() - 1
            inc[v] = inc.get(v, 0) | (1 << i)
            mm ^= low
    verts = sorted(inc)
    dead = 0
    for u in verts:
        iu = inc[u]
        for v in verts:
            if v == u:
                continue
            iv = inc[v]
            if iu & ~iv == 0 and (iu != iv or v < u):
                dead |= 1 << u
                break
    return dead


def reduce_family(masks: Iterable[int]) -> list[int]:
    """Cover-preserving reduction to a fixpoint.

    Every cover of the result covers the input, and the result has the same
    cover number.
    """
    cur = _minimal_edges(masks)
    while True:
        dead = _dominated_vertices(cur)
        if not dead:
            return cur
        cur = _minimal_edges(m & ~dead for m in cur)


def _packing_bound(masks: Sequence[int]) -> int:
    used = 0
    count = 0
    for m in sorted(masks, key=int.bit_count):
        if not m & used:
            used |= m
            count += 1
    return count


def _greedy_cover(masks: Sequence[int]) -> list[int]:
    uncovered = list(masks)
    chosen: list[int] = []
    while uncovered:
        counts: dict[int, int] = {}
        for m in uncovered:
            mm = m
            while mm:
                low = mm & -mm
                v = low.bit_length() - 1
                counts[v] = counts.get(v, 0) + 1
                mm ^= low
        v = min(counts, key=lambda x: (-counts[x], x))
        chosen.append(v)
        bit = 1 << v
        uncovered = [m for m in uncovered if not m & bit]
    return chosen


class _CoverSearch:
    def __init__(self, masks: Sequence[int], budget: int):
        self.masks = list(masks)
        self.budget = budget
        self.nodes = 0
        self.best = math.inf
        self.best_set: list[int] | None = None
        self.stop_at = -1
        self.root_lb = 0

    def run(self, incumbent: list[int] | None, limit: int | None = None) -> None:
        if incumbent is not None:
            self.best = len(incumbent)
            self.best_set = list(incumbent)
        if limit is not None and self.best > limit:
            # only covers within the limit count as answers
            self.best = limit + 1
            self.best_set = None
        self.root_lb = _packing_bound(self.masks) if self.masks else 0
        self.stop_at = self.root_lb if limit is None else limit
        if self.best <= self.stop_at:
            return
        self._rec(self.masks, [])

    def _rec(self, uncovered: list[int], chosen: list[int]) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(
                f"cover search exceeded budget of {self.budget} nodes",
                lower=self.root_lb,
                upper=None if self.best_set is None else len(self.best_set),
                witness=None if self.best_set is None else tuple(sorted(self.best_set)),
                consumed=self.nodes,
            )
        k = len(chosen)
        if not uncovered:
            if k < self.best:
                self.best = k
                self.best_set = list(chosen)
            return self.best <= self.stop_at
        if k + 1 >= self.best:
            return False
        if k + _packing_bound(uncovered) >= self.best:
            return False
        edge = min(uncovered, key=int.bit_count)
        verts = from_mask(edge)
        deg = {v: 0 for v in verts}
        for m in uncovered:
            for v in verts:
                if m >> v & 1:
                    deg[v] += 1
        order = sorted(verts, key=lambda v: (-deg[v], v))
        excl = 0
        for v in order:
            bit = 1 << v
            nxt: list[int] = []
            ok = True
            for m in uncovered:
                if m & bit:
                    continue
                m2 = m & ~excl
                if not m2:
                    ok = False
                    break
                nxt.append(m2)
            if ok:
                chosen.append(v)
                done = self._rec(nxt, chosen)
                chosen.pop()
                if done:
                    return True
            excl |= bit
        return False


def _cover_search(masks: Sequence[int], budget: int | None, limit: int | None = None) -> tuple[list[int] | None, dict]:
    if any(m == 0 for m in masks):
        raise InputError("an empty edge cannot be covered")
    reduced = reduce_family(masks)
    search = _CoverSearch(reduced, _budget.resolve(budget))
    incumbent = _greedy_cover(reduced)
    search.run(incumbent, limit)
    stats = {"nodes": search.nodes, "reduced_edges": len(reduced), "root_lower_bound": search.root_lb}
    if search.best_set is None:
        return None, stats
    return sorted(search.best_set), stats


def tau_exact(h: Hypergraph, budget: int | None = None) -> CoverResult:
    """Minimum cover of ``h`` by branch and bound."""
    if not h.edges:
        return CoverResult(0, (), True, {"nodes": 0})
    if any(not 0 <= v < h.n for e in h.edges for v in e):
        raise InputError("edge vertex outside universe")
    best, stats = _cover_search(h.masks, budget)
    return CoverResult(len(best), tuple(best), True, stats)


def min_cover(masks: Sequence[int], budget: int | None = None) -> tuple[int, ...]:
    """A minimum cover of a bitmask family."""
    if not masks:
        return ()
    best, _ = _cover_search(masks, budget)
    return tuple(best)


def has_cover_at_most(masks: Sequence[int], k: int, budget: int | None = None) -> tuple[int, ...] | None:
    """A cover of the bitmask family with at most ``k`` vertices, or ``None``."""
    if not masks:
        return ()
    if k <= 0:
        return None
    best, _ = _cover_search(masks, budget, limit=k)
    return None if best is None else tuple(best)


def nu_exact(h: Hypergraph, budget: int | None = None) -> MatchingResult:
    """Maximum matching by include/exclude branching."""
    cap = _budget.resolve(budget)
    masks = _minimal_edges(h.masks)
    masks = [m for m in masks if m]
    best: list[int] = []
    used = 0
    for m in masks:
        if not m & used:
            used |= m
            best.append(m)
    state = {"nodes": 0, "best": list(best)}

    def bound(rem: list[int]) -> int:
        if not rem:
            return 0
        union = 0
        for m in rem:
            union |= m
        return min(len(rem), union.bit_count() // min(m.bit_count() for m in rem))

    def rec(rem: list[int], chosen: list[int]) -> None:
        state["nodes"] += 1
        if state["nodes"] > cap:
            raise BudgetExceeded(
                f"matching search exceeded budget of {cap} nodes",
                lower=len(state["best"]),
                consumed=state["nodes"],
            )
        if len(chosen) + bound(rem) <= len(state["best"]):
            return
        if not rem:
            state["best"] = list(chosen)
            return
        e, rest = rem[0], rem[1:]
        chosen.append(e)
        rec([f for f in rest if not f & e], chosen)
        chosen.pop()
        rec(rest, chosen)

    rec(masks, [])
    order = {m: i for i, m in reversed(list(enumerate(h.masks)))}
    witness = tuple(h.edges[order[m]] for m in sorted(state["best"], key=lambda m: order[m]))
    return MatchingResult(len(witness), witness, {"nodes": state["nodes"]})


def tau_fractional(h: Hypergraph) -> FractionalCoverResult:
    """Exact fractional cover number via the packing dual."""
    if not h.edges:
        return FractionalCoverResult(Fraction(0), {}, {"pivots": 0})
    require_valid(Hypergraph(h.n, h.edges, None, True))
    verts = sorted({v for e in h.edges for v in e})
    row = {v: i for i, v in enumerate(verts)}
    sol = solve_packing(len(verts), [[row[v] for v in e] for e in h.edges])
    weights = {v: sol.dual[i] for i, v in enumerate(verts) if sol.dual[i]}
    for e in h.edges:
        if sum(weights.get(v, 0) for v in e) < 1:
            raise ArithmeticError("simplex returned an infeasible fractional cover")
    if sum(weights.values()) != sol.value or sum(sol.primal) != sol.value:
        raise ArithmeticError("simplex primal/dual values disagree")
    return FractionalCoverResult(sol.value, weights, {"pivots": sol.pivots})


def transversal_cover(h: Hypergraph, p: PartiteStructure | None = None) -> tuple[int, ...] | None:
    """Lexicographically least cover with exactly one vertex per part, if any.

    Parts are decided in order. Within a part, vertices that cover no new edge
    are interchangeable, so only the smallest of them is tried.
    """
    p = require_partite(h, p)
    r = p.r
    where = p.part_of
    # per edge: the vertex it has in each part
    rows = [[0] * r for _ in h.edges]
    for i, e in enumerate(h.edges):
        for v in e:
            rows[i][where[v]] = v
    chosen: list[int] = []

    def blocked(uncovered: list[int], depth: int) -> bool:
        # greedy set of edges pairwise differing in every remaining part
        picked: list[int] = []
        for i in uncovered:
            ri = rows[i]
            if all(all(ri[j] != rows[q][j] for j in range(depth, r)) for q in picked):
                picked.append(i)
                if len(picked) > r - depth:
                    return True
        return False

    def rec(depth: int, uncovered: list[int]) -> bool:
        if not uncovered:
            chosen.extend(p.parts[j][0] for j in range(depth, r))
            return True
        if depth == r or blocked(uncovered, depth):
            return False
        idle_tried = False
        for v in p.parts[depth]:
            rest = [i for i in uncovered if rows[i][depth] != v]
            if len(rest) == len(uncovered):
                if idle_tried:
                    continue
                idle_tried = True
            chosen.append(v)
            if rec(depth + 1, rest):
                return True
            chosen.pop()
        return False

    if any(len(part) == 0 for part in p.parts):
        return None
    if rec(0, list(range(h.e))):
        return tuple(chosen)
    return None


class InverseRoot:
    """The ratio ``base ** (-1 / degree)`` with exact comparisons.

    ``after < x * before`` is decided as ``after**degree * base < before**degree``.
    """

    def __init__(self, base: int, degree: int):
        if base < 2 or degree < 1:
            raise InputError("InverseRoot needs base >= 2 and degree >= 1 to lie in (0, 1)")
        self.base = int(base)
        self.degree = int(degree)

    def __float__(self) -> float:
        return self.base ** (-1.0 / self.degree)

    def __repr__(self) -> str:
        return f"{self.base}^(-1/{self.degree})"

    def keeps_fewer(self, after: int, before: int) -> bool:
        return after**self.degree * self.base < before**self.degree


def _ratio_test(x, after: int, before: int) -> bool:
    if isinstance(x, InverseRoot):
        return x.keeps_fewer(after, before)
    if isinstance(x, (int, Fraction)):
        return after < Fraction(x) * before
    return after < float(x) * before


@dataclass(frozen=True)
class GreedyRound:
    chosen: tuple[int, ...]
    covered: int
    edges_before: int
    edges_after: int
    threshold_met: bool  # covered > (1 - x) * edges_before


@dataclass(frozen=True)
class GreedyResult:
    cover: tuple[int, ...]
    rounds: int
    trace: tuple[GreedyRound, ...]
    mode: str = "exhaustive"
    seed: int | None = None

    @property
    def all_thresholds_met(self) -> bool:
        return all(rd.threshold_met for rd in self.trace)

    def to_dict(self) -> dict:
        return {
            "cover": list(self.cover),
            "rounds": self.rounds,
            "mode": self.mode,
            "seed": self.seed,
            "trace": [
                {
                    "chosen": list(rd.chosen),
                    "covered": rd.covered,
                    "edges_before": rd.edges_before,
                    "edges_after": rd.edges_after,
                    "threshold_met": rd.threshold_met,
                }
                for rd in self.trace
            ],
        }


def greedy_ell_cover(
    h: Hypergraph,
    ell: int,
    x,
    mode: str = "exhaustive",
    samples: int | None = None,
    seed: int = 0,
) -> GreedyResult:
    """Peel off best ``ell``-sets until no edge is left.

    In exhaustive mode each round takes the lexicographically least ``ell``-set
    covering the most remaining edges. In sampled mode each round draws
    ``samples`` edges with replacement and takes the least cover of at most
    ``ell`` vertices of that sample (padded to ``ell`` vertices); a sample with
    no such cover stops the run and is reported as a failed round.
    """
    if ell < 1:
        raise InputError("ell must be at least 1")
    if ell > h.n:
        raise InputError(f"ell={ell} exceeds vertex count {h.n}")
    xf = float(x)
    if not 0 < xf < 1:
        raise InputError("x must lie in (0, 1)")
    if mode not in ("exhaustive", "sampled"):
        raise InputError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed) if mode == "sampled" else None
    edges = list(h.masks)
    cover: set[int] = set()
    trace: list[GreedyRound] = []
    while edges:
        before = len(edges)
        if mode == "exhaustive":
            inc = [0] * h.n
            for i, m in enumerate(edges):
                mm = m
                while mm:
                    low = mm & -mm
                    inc[low.bit_length() - 1] |= 1 << i
                    mm ^= low
            best_count, best_set = -1, None
            for s in combinations(range(h.n), ell):
                acc = 0
                for v in s:
                    acc |= inc[v]
                c = acc.bit_count()
                if c > best_count:
                    best_count, best_set = c, s
                    if c == before:
                        break
            chosen = best_set
        else:
            k = samples if samples is not None else before
            picks = rng.integers(0, before, size=k)
            sample = [edges[int(i)] for i in picks]
            found = has_cover_at_most(sample, ell)
            if found is None:
                trace.append(GreedyRound((), 0, before, before, False))
                break
            pad = [v for v in range(h.n) if v not in found][: ell - len(found)]
            chosen = tuple(sorted(set(found) | set(pad)))
        smask = to_mask(chosen)
        rest = [m for m in edges if not m & smask]
        covered = before - len(rest)
        trace.append(GreedyRound(tuple(chosen), covered, before, len(rest), _ratio_test(x, len(rest), before)))
        cover.update(chosen)
        edges = rest
    return GreedyResult(tuple(sorted(cover)), len(trace), tuple(trace), mode, seed if mode == "sampled" else None)


def _tau_value(h: Hypergraph, budget: int | None) -> int:
    return tau_exact(h, budget).value


def is_critical(h: Hypergraph, budget: int | None = None) -> bool:
    """True iff deleting any single edge lowers the cover number."""
    if not h.edges:
        return True
    tau = _tau_value(h, budget)
    for i in range(h.e):
        rest = h.masks[:i] + h.masks[i + 1:]
        if has_cover_at_most(rest, tau - 1, budget) is None:
            return False
    return True


def critical_reduce(h: Hypergraph, budget: int | None = None) -> Hypergraph:
    """A critical subhypergraph with the same cover number.

    Edges are scanned in index order and an edge is dropped when the rest
    still needs the full cover number. One pass suffices: an edge kept once
    stays essential in every smaller subhypergraph with the same cover number,
    so restarting the scan after each removal would keep the same edges.
    """
    if not h.edges:
        return h
    tau = _tau_value(h, budget)
    keep = list(range(h.e))
    pos = 0
    while pos < len(keep):
        rest = [h.masks[j] for j in keep[:pos] + keep[pos + 1:]]
        if has_cover_at_most(rest, tau - 1, budget) is None:
            del keep[pos]
        else:
            pos += 1
    return h.with_edges([h.edges[j] for j in keep])


def critical_edge_bound(rank: int, tau: int) -> int:
    """Largest possible edge count of a critical hypergraph with these parameters."""
    t = tau - 1
    return math.comb(rank + t, t)


def check_cover(h: Hypergraph, s: Iterable[int]) -> bool:
    return is_cover(h, s)
