"""Generators for the extremal families, tagged with their predicted cover numbers.

Numbering is canonical: parts are consecutive blocks of vertex ids, and in
the important/unimportant families the important vertices come first in
each part. Every generator is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product

from .errors import InputError
from .hypergraph import Hypergraph, PartiteStructure, disjoint_union

MAX_GENERATED_EDGES = 1_000_000

FAMILIES = (
    "complete_r",
    "complete_r_partite",
    "h_rtm",
    "sum_hypergraph",
    "copies",
    "lb_start_family",
    "partite_start_family",
    "two_copy_partite",
    "disjoint_edges",
)


@dataclass(frozen=True)
class Prediction:
    """A guaranteed property: ``cp`` (every k edges have an ell-cover),
    ``pcp`` (every k edges have a transversal cover) or ``no_transversal``.
    ``k`` may be ``math.inf``."""

    kind: str
    k: float | int | None = None
    ell: int | None = None

    def to_dict(self) -> dict:
        k = "unbounded" if self.k == math.inf else self.k
        return {"kind": self.kind, "k": k, "ell": self.ell}


@dataclass(frozen=True)
class ConstructionOutput:
    family: str
    params: dict
    hypergraph: Hypergraph
    predicted_tau: int
    predicted_properties: tuple[Prediction, ...] = ()
    regime: str = "proof"
    important: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False)

    @property
    def partition(self) -> PartiteStructure | None:
        return self.hypergraph.parts

    def sidecar(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "predicted_tau": self.predicted_tau,
            "predicted_properties": [p.to_dict() for p in self.predicted_properties],
            "regime": self.regime,
            "important": None if self.important is None else [list(p) for p in self.important],
        }


def _counting_k(total: int, avoiding: int) -> float | int:
    """Largest k with k * avoiding < total (inf when nothing avoids)."""
    if avoiding == 0:
        return math.inf
    return (total - 1) // avoiding


def complete_r_graph(n: int, r: int) -> ConstructionOutput:
    if not n >= r >= 2:
        raise InputError("need n >= r >= 2")
    h = Hypergraph(n, tuple(combinations(range(n), r)), r)
    preds = []
    for ell in range(1, min(r, n) + 1):
        k = _counting_k(math.comb(n, ell), math.comb(n - r, ell))
        if k >= 1:
            preds.append(Prediction("cp", k, ell))
    # fewer than r(ell+1) vertices: any ell+1 edges contain an intersecting pair
    ell = n // r
    if ell >= 1:
        preds.append(Prediction("cp", ell + 1, ell))
    return ConstructionOutput("complete_r", {"n": n, "r": r}, h, n - r + 1, tuple(preds))


def complete_r_partite(r: int, per_part: int) -> ConstructionOutput:
    if r < 2 or per_part < 1:
        raise InputError("need r >= 2 and per_part >= 1")
    parts = tuple(tuple(range(i * per_part, (i + 1) * per_part)) for i in range(r))
    h = Hypergraph(r * per_part, tuple(product(*parts)), r, False, PartiteStructure(parts))
    preds = []
    if per_part >= 2:
        preds.append(Prediction("no_transversal"))
    if per_part == 2:
        preds.append(Prediction("pcp", 2**r - 1))
    if per_part == 1:
        preds.append(Prediction("pcp", math.inf))
    return ConstructionOutput("complete_r_partite", {"r": r, "per_part": per_part}, h, per_part, tuple(preds))


def h_rtm(r: int, t: int, m: int) -> ConstructionOutput:
    """m important vertices per part; one edge per choice of r-t important
    vertices in distinct parts, completed by t private vertices."""
    if r < 2 or not 0 <= t < r or m < 1:
        raise InputError("need r >= 2, 0 <= t < r and m >= 1")
    total = math.comb(r, r - t) * m ** (r - t)
    if total > MAX_GENERATED_EDGES:
        raise InputError(f"H_(r,t,m) would have {total} edges, above the limit {MAX_GENERATED_EDGES}")
    chosen_parts = list(combinations(range(r), r - t))
    choices = [(ps, imp) for ps in chosen_parts for imp in product(range(m), repeat=r - t)]
    unimportant_count = [0] * r
    for ps, _ in choices:
        for i in range(r):
            if i not in ps:
                unimportant_count[i] += 1
    starts = []
    offset = 0
    for i in range(r):
        starts.append(offset)
        offset += m + unimportant_count[i]
    n = offset
    parts = tuple(tuple(range(starts[i], starts[i] + m + unimportant_count[i])) for i in range(r))
    next_free = [starts[i] + m for i in range(r)]
    edges = []
    for ps, imp in choices:
        edge = []
        pick = dict(zip(ps, imp))
        for i in range(r):
            if i in pick:
                edge.append(starts[i] + pick[i])
            else:
                edge.append(next_free[i])
                next_free[i] += 1
        edges.append(tuple(edge))
    h = Hypergraph(n, tuple(edges), r, False, PartiteStructure(parts))
    important = tuple(tuple(range(starts[i], starts[i] + m)) for i in range(r))
    # counting bound with the complete r-partite graph on important vertices
    k = _counting_k(m**r, (m - 1) ** (r - t) * m**t)
    preds = (Prediction("pcp", k),) if k >= 1 else ()
    return ConstructionOutput("h_rtm", {"r": r, "t": t, "m": m}, h, (t + 1) * m, preds, important=important)


def sum_hypergraph(r: int, s: int) -> ConstructionOutput:
    if r < 2 or s < 0:
        raise InputError("need r >= 2 and s >= 0")
    size = s + 1
    parts = tuple(tuple(range(i * size, (i + 1) * size)) for i in range(r))
    edges = tuple(
        tuple(i * size + x for i, x in enumerate(xs))
        for xs in product(range(size), repeat=r)
        if sum(xs) == s
    )
    h = Hypergraph(r * size, edges, r, False, PartiteStructure(parts))
    return ConstructionOutput("sum_hypergraph", {"r": r, "s": s}, h, s + 1)


def copies(h: Hypergraph, count: int, tau: int | None = None) -> ConstructionOutput:
    """``count`` disjoint copies of ``h`` (parts merged part-wise).

    When ``h`` is intersecting and r-partite and ``count == r``, any r+1 edges
    contain two from the same copy, so the union has pcp(r, r+1).
    """
    if count < 1:
        raise InputError("count must be at least 1")
    union = disjoint_union([h] * count)
    if tau is None:
        from .solvers import tau_exact

        tau = tau_exact(h).value
    preds = []
    r = h.uniformity
    if h.parts is not None and r is not None and count == r and _intersecting(h):
        preds.append(Prediction("pcp", r + 1))
    return ConstructionOutput("copies", {"count": count}, union, count * tau, tuple(preds))


def _intersecting(h: Hypergraph) -> bool:
    return all(a & b for a, b in combinations(h.masks, 2))


def lb_start_family(r: int, ell: int, k: int) -> ConstructionOutput:
    """ceil(ell/2) disjoint complete r-graphs on floor(r ell / 3k) + r vertices."""
    if r < 2 or ell < 1 or k <= ell:
        raise InputError("need r >= 2 and k > ell >= 1")
    q = (r * ell) // (3 * k)
    count = -(-ell // 2)
    block = complete_r_graph(q + r, r)
    union = disjoint_union([block.hypergraph] * count)
    return ConstructionOutput(
        "lb_start_family", {"r": r, "ell": ell, "k": k}, union, count * (q + 1), (Prediction("cp", k, ell),)
    )


def partite_start_family(r: int, k: int) -> ConstructionOutput:
    """floor(r/4) disjoint copies of H_{r,t,1} with t = floor(r^2 / 10k)."""
    if r < 4:
        raise InputError("need r >= 4")
    t = (r * r) // (10 * k)
    if t >= r:
        raise InputError(f"t = floor(r^2/10k) = {t} must be below r")
    count = r // 4
    block = h_rtm(r, t, 1)
    union = disjoint_union([block.hypergraph] * count)
    in_regime = k > r > 50
    preds = (Prediction("pcp", k),) if in_regime else ()
    return ConstructionOutput(
        "partite_start_family",
        {"r": r, "k": k, "t": t},
        union,
        (t + 1) * count,
        preds,
        "proof" if in_regime else "outside-proof",
    )


def two_copy_partite(r: int) -> ConstructionOutput:
    """Disjoint union of H_{r,floor((r-1)/2),1} and H_{r,ceil((r-1)/2),1}."""
    if r < 2:
        raise InputError("need r >= 2")
    h1 = h_rtm(r, (r - 1) // 2, 1)
    h2 = h_rtm(r, r // 2, 1)
    union = disjoint_union([h1.hypergraph, h2.hypergraph])
    k = math.comb(r, (r + 1) // 2) + math.comb(r, (r + 2) // 2) - 1
    return ConstructionOutput("two_copy_partite", {"r": r}, union, r + 1, (Prediction("pcp", k),))


def disjoint_edges(count: int, r: int) -> ConstructionOutput:
    """``count`` pairwise disjoint transversal edges of an r-partite r-graph."""
    if count < 1 or r < 1:
        raise InputError("need count >= 1 and r >= 1")
    parts = tuple(tuple(i * count + j for j in range(count)) for i in range(r))
    edges = tuple(tuple(i * count + j for i in range(r)) for j in range(count))
    h = Hypergraph(r * count, edges, r, False, PartiteStructure(parts))
    # with at most r edges in total, edge j can take its part-j vertex
    preds = (Prediction("pcp", math.inf if count <= r else r), Prediction("cp", math.inf, count))
    return ConstructionOutput("disjoint_edges", {"count": count, "r": r}, h, count, preds)


def build(family: str, **params) -> ConstructionOutput:
    """Dispatch by family name (``copies`` is not buildable from integers alone)."""
    table = {
        "complete_r": lambda: complete_r_graph(params["n"], params["r"]),
        "complete_r_partite": lambda: complete_r_partite(params["r"], params["per_part"]),
        "h_rtm": lambda: h_rtm(params["r"], params["t"], params["m"]),
        "sum_hypergraph": lambda: sum_hypergraph(params["r"], params["s"]),
        "lb_start_family": lambda: lb_start_family(params["r"], params["ell"], params["k"]),
        "partite_start_family": lambda: partite_start_family(params["r"], params["k"]),
        "two_copy_partite": lambda: two_copy_partite(params["r"]),
        "disjoint_edges": lambda: disjoint_edges(params["count"], params["r"]),
    }
    if family not in table:
        raise InputError(f"unknown or non-generated family {family!r}")
    try:
        return table[family]()
    except KeyError as exc:
        raise InputError(f"family {family} needs parameter {exc.args[0]!r}") from None


def corpus(max_vertices: int = 24, max_edges: int = 400) -> list[ConstructionOutput]:
    """Every small generated instance, in a fixed order."""
    out: list[ConstructionOutput] = []

    def add(c: ConstructionOutput) -> None:
        if c.hypergraph.n <= max_vertices and c.hypergraph.e <= max_edges:
            out.append(c)

    for r in (2, 3, 4):
        for n in range(r, 10):
            add(complete_r_graph(n, r))
    for r in (2, 3, 4):
        for per in (1, 2, 3):
            add(complete_r_partite(r, per))
    for r in (2, 3, 4, 5):
        for t in range(r):
            for m in (1, 2, 3):
                add(h_rtm(r, t, m))
    for r in (2, 3, 4):
        for s in range(5):
            add(sum_hypergraph(r, s))
    for r, ell, k in ((2, 2, 3), (3, 2, 3), (4, 3, 4), (3, 3, 4), (4, 1, 2), (6, 4, 5)):
        add(lb_start_family(r, ell, k))
    for r in (2, 3, 4):
        add(two_copy_partite(r))
    add(partite_start_family(8, 9))
    return out
