"""Helly-type cover properties and the covering hypergraph.

A family of edges has a cover of size at most ``ell`` iff the intersection
of the per-edge masks "which candidate covers hit me" is nonempty. Property
checks enumerate edge families in lexicographic order with a running AND, so
a failing prefix settles every extension at once and the first failure found
is the lexicographically least failing family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Sequence

import numpy as np

from . import budget as _budget
from .errors import BudgetExceeded, InputError
from .hypergraph import Hypergraph, PartiteStructure, require_partite, to_mask
from .solvers import has_cover_at_most, min_cover, tau_exact, transversal_cover

# above this many candidate covers, families are tested one by one instead
CANDIDATE_LIMIT = 1 << 17

UNBOUNDED = math.inf


@dataclass(frozen=True)
class PropertyVerdict:
    holds: bool
    witness: tuple[int, ...] | None
    mode: str
    k: int
    ell: int | None = None
    seed: int | None = None
    trials: int | None = None
    families_checked: int = 0
    kind: str = "cp"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "holds": self.holds,
            "witness": None if self.witness is None else list(self.witness),
            "mode": self.mode,
            "k": self.k,
            "ell": self.ell,
            "seed": self.seed,
            "trials": self.trials,
            "budget_consumed": self.families_checked,
        }


def _candidate_masks_for_cp(h: Hypergraph, ell: int) -> list[int] | None:
    """Per edge, a bitmask over the ell-subsets of touched vertices hitting it."""
    verts = sorted({v for e in h.edges for v in e})
    size = min(ell, len(verts))
    if math.comb(len(verts), size) > CANDIDATE_LIMIT:
        return None
    hits = [0] * h.e
    for idx, s in enumerate(combinations(verts, size)):
        smask = to_mask(s)
        bit = 1 << idx
        for i, m in enumerate(h.masks):
            if m & smask:
                hits[i] |= bit
    return hits


def _candidate_masks_for_transversals(h: Hypergraph, p: PartiteStructure) -> list[int] | None:
    total = math.prod(len(part) for part in p.parts)
    if total > CANDIDATE_LIMIT:
        return None
    hits = [0] * h.e
    for idx, t in enumerate(product(*p.parts)):
        tmask = to_mask(t)
        bit = 1 << idx
        for i, m in enumerate(h.masks):
            if m & tmask:
                hits[i] |= bit
    return hits


def _candidate_masks_for_edges(h: Hypergraph) -> list[int]:
    hits = [0] * h.e
    for j, f in enumerate(h.masks):
        bit = 1 << j
        for i, m in enumerate(h.masks):
            if m & f:
                hits[i] |= bit
    return hits


def _first_failing_family(hits: Sequence[int], k: int, cap: int) -> tuple[tuple[int, ...] | None, int]:
    """Lexicographically least k-subset of indices whose masks AND to zero."""
    e = len(hits)
    count = 0
    prefix: list[int] = []

    def rec(start: int, acc: int) -> tuple[int, ...] | None:
        nonlocal count
        depth = len(prefix)
        for i in range(start, e - (k - depth) + 1):
            count += 1
            if count > cap:
                raise BudgetExceeded(
                    f"property check exceeded budget of {cap} families; use sampled mode",
                    consumed=count,
                )
            nacc = acc & hits[i]
            if not nacc:
                return tuple(prefix) + tuple(range(i, i + k - depth))
            if depth + 1 < k:
                prefix.append(i)
                found = rec(i + 1, nacc)
                prefix.pop()
                if found is not None:
                    return found
        return None

    full = (1 << max((m.bit_length() for m in hits), default=0)) - 1
    return rec(0, full), count


def _check(
    h: Hypergraph,
    k: int,
    hits: list[int] | None,
    family_ok: Callable[[Sequence[int]], bool],
    mode: str,
    trials: int,
    seed: int,
    budget: int | None,
) -> tuple[bool, tuple[int, ...] | None, int]:
    cap = _budget.resolve(budget)
    e = h.e
    if e <= k:
        family = tuple(range(e))
        ok = family_ok(family) if hits is None else _and_all(hits, family)
        return ok, None if ok else family, 1
    if mode == "exhaustive":
        if hits is not None:
            witness, count = _first_failing_family(hits, k, cap)
            return witness is None, witness, count
        total = math.comb(e, k)
        if total > cap:
            raise BudgetExceeded(
                f"C({e},{k}) = {total} families exceed budget {cap}; use sampled mode", consumed=0
            )
        count = 0
        for fam in combinations(range(e), k):
            count += 1
            if not family_ok(fam):
                return False, fam, count
        return True, None, count
    if mode == "sampled":
        rng = np.random.default_rng(seed)
        for trial in range(trials):
            fam = tuple(sorted(int(i) for i in rng.choice(e, size=k, replace=False)))
            ok = _and_all(hits, fam) if hits is not None else family_ok(fam)
            if not ok:
                return False, fam, trial + 1
        return True, None, trials
    raise InputError(f"unknown mode {mode!r}")


def _and_all(hits: Sequence[int], family: Sequence[int]) -> bool:
    acc = -1
    for i in family:
        acc &= hits[i]
    return acc != 0


def has_cover_property(
    h: Hypergraph,
    k: int,
    ell: int,
    mode: str = "exhaustive",
    trials: int = 1000,
    seed: int = 0,
    budget: int | None = None,
) -> PropertyVerdict:
    """Does every family of at most ``k`` edges have a cover of size ``<= ell``?"""
    if k < 1 or ell < 1:
        raise InputError("k and ell must be at least 1")
    hits = _candidate_masks_for_cp(h, ell)

    def family_ok(fam: Sequence[int]) -> bool:
        return has_cover_at_most([h.masks[i] for i in fam], ell) is not None

    ok, witness, count = _check(h, k, hits, family_ok, mode, trials, seed, budget)
    return PropertyVerdict(
        ok, witness, mode, k, ell,
        seed if mode == "sampled" else None,
        trials if mode == "sampled" else None,
        count, "cp",
    )


def has_partite_cover_property(
    h: Hypergraph,
    p: PartiteStructure | None,
    k: int,
    mode: str = "exhaustive",
    trials: int = 1000,
    seed: int = 0,
    budget: int | None = None,
    require_edge: bool = False,
) -> PropertyVerdict:
    """Does every family of at most ``k`` edges have a transversal cover?

    With ``require_edge`` the transversal must itself be an edge of ``h``.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    p = require_partite(h, p)
    if require_edge:
        hits = _candidate_masks_for_edges(h)
    else:
        hits = _candidate_masks_for_transversals(h, p)

    def family_ok(fam: Sequence[int]) -> bool:
        sub = Hypergraph(h.n, [h.edges[i] for i in fam], h.r, True, p)
        return transversal_cover(sub, p) is not None

    ok, witness, count = _check(h, k, hits, family_ok, mode, trials, seed, budget)
    return PropertyVerdict(
        ok, witness, mode, k, None,
        seed if mode == "sampled" else None,
        trials if mode == "sampled" else None,
        count, "pcp-edge" if require_edge else "pcp",
    )


@dataclass(frozen=True)
class CoveringHypergraph:
    """The ell-covering hypergraph of ``base``.

    ``derived`` lives on the edge indices of ``base``; its edge ``j`` is the
    set of base edges disjoint from ``subsets[j]``. Empty such sets are
    dropped and counted in ``dropped``.
    """

    base: Hypergraph
    ell: int
    derived: Hypergraph
    subsets: tuple[tuple[int, ...], ...]
    dropped: int = 0
    dropped_subsets: tuple[tuple[int, ...], ...] = field(default=(), repr=False)

    def is_t_intersecting(self, t: int) -> bool:
        """Counts the dropped empty edges: any of them breaks intersection."""
        if self.dropped:
            return False
        if not self.derived.edges:
            return True
        return intersecting_level(self.derived) >= t


def covering_hypergraph(h: Hypergraph, ell: int) -> CoveringHypergraph:
    if not 0 <= ell <= h.n:
        raise InputError(f"ell={ell} must lie in 0..{h.n}")
    edges = []
    subsets = []
    dropped = []
    for s in combinations(range(h.n), ell):
        smask = to_mask(s)
        missed = tuple(i for i, m in enumerate(h.masks) if not m & smask)
        if missed:
            edges.append(missed)
            subsets.append(s)
        else:
            dropped.append(s)
    derived = Hypergraph(h.e, tuple(edges), None, True)
    return CoveringHypergraph(h, ell, derived, tuple(subsets), len(dropped), tuple(dropped))


def smallest_violating_k(h: Hypergraph, ell: int, budget: int | None = None) -> int | None:
    """Least k such that cp(k, ell) fails, or ``None`` when it never fails."""
    if ell < 1:
        raise InputError("ell must be at least 1")
    if ell > h.n:
        return None
    ch = covering_hypergraph(h, ell)
    if ch.dropped or not ch.derived.edges:
        return None
    return tau_exact(ch.derived, budget).value


def lb_counting_bound(h: Hypergraph, g: Hypergraph) -> float | int:
    """Families of this many ``h``-edges are always hit by a single ``g``-edge.

    Returns ``floor((e(g) - 1) / (e(g) - delta))`` where ``delta`` is the least
    number of ``g``-edges meeting an ``h``-edge, and ``inf`` when every
    ``g``-edge meets every ``h``-edge.
    """
    if g.n != h.n:
        raise InputError(f"universe mismatch: h has {h.n} vertices, g has {g.n}")
    if not g.edges:
        raise InputError("g must have at least one edge")
    sizes = {len(e) for e in g.edges}
    if len(sizes) != 1:
        raise InputError("g must be uniform")
    eg = g.e
    if not h.edges:
        return UNBOUNDED
    delta = min(sum(1 for f in g.masks if f & m) for m in h.masks)
    if delta == eg:
        return UNBOUNDED
    return (eg - 1) // (eg - delta)


def intersecting_level(h: Hypergraph, budget: int | None = None) -> int:
    """Largest t such that every t edges share a vertex (capped at e(h)).

    A family has empty intersection iff it meets, for every vertex v, the set
    of edges avoiding v. The least such family is therefore a minimum cover of
    the "avoiders" hypergraph on edge indices, and the level is one less.
    """
    if not h.edges:
        raise InputError("intersecting_level needs at least one edge")
    if any(not e for e in h.edges):
        return 0
    all_edges = (1 << h.e) - 1
    avoiders = []
    for v in range(h.n):
        a = all_edges & ~h.incidence[v]
        if a == 0:
            return h.e
        avoiders.append(a)
    cover = min_cover(avoiders, budget)
    return len(cover) - 1


@dataclass(frozen=True)
class IntersectingBoundReport:
    t: int
    tau: int
    n: int
    max_degree: int
    bound: float
    holds: bool

    def to_dict(self) -> dict:
        return {
            "t": self.t, "tau": self.tau, "n": self.n, "max_degree": self.max_degree,
            "bound": self.bound, "holds": self.holds, "log": "natural",
        }


def intersecting_tau_bound_check(h: Hypergraph, t: int, budget: int | None = None) -> IntersectingBoundReport:
    """Compare tau(h) with n^(1/t) (1 + ln d) for a t-intersecting ``h``."""
    if t < 1:
        raise InputError("t must be at least 1")
    level = intersecting_level(h, budget)
    if level < t:
        raise InputError(f"hypergraph is only {level}-intersecting, not {t}-intersecting")
    tau = tau_exact(h, budget).value
    d = h.max_degree
    bound = h.n ** (1.0 / t) * (1.0 + math.log(d))
    return IntersectingBoundReport(t, tau, h.n, d, bound, tau <= bound + 1e-9)
