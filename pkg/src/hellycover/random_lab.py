"""Seeded G(n,p) samples and fixed-n probes of the random-graph lemmas.

PRNG: numpy's ``default_rng`` (PCG64). A sample draws ``C(n,2)`` uniforms in
one call and visits pairs ``(i, j)``, ``i < j``, in lexicographic order; the
pair is an edge iff its draw is below ``p``. Per-trial generators are seeded
with ``(seed, trial)`` so trials are independent of how many ran before.

A probe failure in regime is "empirical tension", never a disproof: the
lemmas only promise their conclusions for large n.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import budget as _budget
from .colour import (
    EdgeColouredGraph,
    Graph,
    aux_hypergraph,
    common_neighbour_depth,
    cover_for_colouring,
    multigraph_alpha,
    transitive_closure,
)
from .errors import BudgetExceeded, InputError
from .helly import has_partite_cover_property
from .hypergraph import from_mask, to_mask

UNSPECIFIED = "constant unspecified"
MAX_CERTIFICATES = 20


def _as_fraction(p) -> Fraction:
    if isinstance(p, float):
        p = repr(p)
    f = Fraction(p)
    if not 0 <= f <= 1:
        raise InputError(f"p={p} must lie in [0, 1]")
    return f


@dataclass(frozen=True)
class GnpSample:
    n: int
    p: Fraction
    seed: int
    graph: Graph

    def to_dict(self) -> dict:
        return {"n": self.n, "p": str(self.p), "seed": self.seed, "edges": [list(e) for e in self.graph.edges]}


def gnp_sample(n: int, p, seed: int) -> GnpSample:
    if n < 0:
        raise InputError("n must be nonnegative")
    pf = _as_fraction(p)
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)  # row-major order: lexicographic pairs
    draws = rng.random(len(iu))
    keep = draws < float(pf)
    edges = tuple(zip(iu[keep].tolist(), ju[keep].tolist()))
    return GnpSample(n, pf, seed, Graph(n, edges))


@dataclass
class ProbeReport:
    probe: str
    params: dict
    seed: int | None
    trials: int
    failures: int = 0
    certificates: list = field(default_factory=list)
    in_regime: bool | str = UNSPECIFIED
    measured: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if not self.failures:
            return "ok"
        return "empirical tension" if self.in_regime is True else "failures outside regime"

    def add_failure(self, certificate) -> None:
        self.failures += 1
        if len(self.certificates) < MAX_CERTIFICATES:
            self.certificates.append(certificate)

    def to_dict(self) -> dict:
        return {
            "probe": self.probe,
            "params": self.params,
            "seed": self.seed,
            "trials": self.trials,
            "failures": self.failures,
            "status": self.status,
            "in_regime": self.in_regime,
            "certificates": self.certificates,
            "measured": self.measured,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["probe", "seed", "trials", "failures", "status", "in_regime", "params", "measured"])
        w.writerow([
            self.probe, self.seed, self.trials, self.failures, self.status, self.in_regime,
            json.dumps(self.params, sort_keys=True), json.dumps(self.measured, sort_keys=True),
        ])
        return buf.getvalue()


def random_colouring(graph: Graph, r: int, rng: np.random.Generator) -> EdgeColouredGraph:
    cols = rng.integers(1, r + 1, size=len(graph.edges))
    return EdgeColouredGraph(graph.n, r, tuple((u, v, int(c)) for (u, v), c in zip(graph.edges, cols)))


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


# --- edges between large sets ------------------------------------------------

def edge_between_threshold(n: int, p) -> int:
    pf = _as_fraction(p)
    if pf == 0 or n < 2:
        return n + 1
    return math.ceil(10 * math.log(n) / float(pf))


def _blank_partner(nb: list[int], a_mask: int, size: int, n: int) -> int | None:
    """Mask of ``size`` vertices outside A with no neighbour in A, if any."""
    touched = a_mask
    for v in from_mask(a_mask):
        touched |= nb[v]
    free = ((1 << n) - 1) & ~touched
    if free.bit_count() < size:
        return None
    out = 0
    for v in from_mask(free)[:size]:
        out |= 1 << v
    return out


def verify_no_crossing_edge(graph: Graph, a, b) -> bool:
    a, b = set(a), set(b)
    if a & b:
        return False
    return not any((u in a and v in b) or (u in b and v in a) for u, v in graph.edges)


def probe_edge_between_sets(
    sample: GnpSample,
    threshold_size: int | None = None,
    trials: int = 1000,
    seed: int = 0,
    budget: int | None = None,
) -> ProbeReport:
    """Look for disjoint A, B of the threshold size with no edge between them.

    Exhaustive over A when C(n, size) fits the budget; otherwise ``trials``
    random sets A. For a given A the best B is any ``size`` vertices outside
    A with no neighbour in A, so no search over B is needed.
    """
    n = sample.n
    default = edge_between_threshold(n, sample.p)
    size = default if threshold_size is None else threshold_size
    if size < 1:
        raise InputError("threshold_size must be positive")
    in_regime = size >= default
    nb = sample.graph.neighbour_masks
    params = {"n": n, "p": str(sample.p), "sample_seed": sample.seed, "size": size, "default_size": default}
    if 2 * size > n:
        return ProbeReport("edge_between_sets", params, seed, 0, 0, [], in_regime, {"mode": "vacuous"})
    cap = _budget.resolve(budget)
    total = math.comb(n, size)
    if total <= cap:
        report = ProbeReport("edge_between_sets", params, None, 0, in_regime=in_regime, measured={"mode": "exhaustive"})
        for a in combinations(range(n), size):
            report.trials += 1
            amask = to_mask(a)
            b = _blank_partner(nb, amask, size, n)
            if b is not None:
                report.add_failure({"A": list(a), "B": list(from_mask(b))})
        return report
    report = ProbeReport("edge_between_sets", params, seed, trials, in_regime=in_regime, measured={"mode": "sampled"})
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        a = sorted(int(x) for x in rng.choice(n, size=size, replace=False))
        b = _blank_partner(nb, to_mask(a), size, n)
        if b is not None:
            report.add_failure({"A": a, "B": list(from_mask(b))})
    return report


# --- common neighbours of r-sets ---------------------------------------------

def common_neighbour_threshold(n: int, r: int, d: float = 1.0) -> float:
    return (64 * d * r * math.log(n) / n) ** (1.0 / r)


def probe_common_neighbours(
    sample: GnpSample,
    r: int,
    d: float = 1.0,
    trials: int = 1000,
    seed: int = 0,
    budget: int | None = None,
) -> ProbeReport:
    """Does every r-set have at least ln n common neighbours?"""
    n = sample.n
    if r < 1 or n < 2:
        raise InputError("need r >= 1 and n >= 2")
    need = math.log(n)
    threshold = common_neighbour_threshold(n, r, d)
    in_regime = float(sample.p) >= threshold
    params = {"n": n, "p": str(sample.p), "sample_seed": sample.seed, "r": r, "D": d, "p_threshold": threshold}
    cap = _budget.resolve(budget)
    nb = sample.graph.neighbour_masks

    def count(vs) -> int:
        acc = -1
        for v in vs:
            acc &= nb[v]
        return acc.bit_count() if acc != -1 else n

    if r == 2 and n * n <= cap:
        adj = np.zeros((n, n), dtype=np.float64)
        for u, v in sample.graph.edges:
            adj[u, v] = adj[v, u] = 1.0
        common = adj @ adj
        iu, ju = np.triu_indices(n, k=1)
        vals = common[iu, ju]
        bad = np.nonzero(vals < need)[0]
        report = ProbeReport("common_neighbours", params, None, len(iu), in_regime=in_regime)
        for idx in bad.tolist():
            report.add_failure({"set": [int(iu[idx]), int(ju[idx])], "common": int(vals[idx])})
        report.measured = {"mode": "exhaustive", "min_common": int(vals.min()) if len(vals) else None}
        return report
    if math.comb(n, r) <= cap:
        report = ProbeReport("common_neighbours", params, None, 0, in_regime=in_regime)
        low = None
        for s in combinations(range(n), r):
            report.trials += 1
            c = count(s)
            low = c if low is None else min(low, c)
            if c < need:
                report.add_failure({"set": list(s), "common": c})
        report.measured = {"mode": "exhaustive", "min_common": low}
        return report
    rng = np.random.default_rng(seed)
    report = ProbeReport("common_neighbours", params, seed, trials, in_regime=in_regime)
    low = None
    for _ in range(trials):
        s = sorted(int(x) for x in rng.choice(n, size=r, replace=False))
        c = count(s)
        low = c if low is None else min(low, c)
        if c < need:
            report.add_failure({"set": s, "common": c})
    report.measured = {"mode": "sampled", "min_common": low}
    return report


def verify_common_neighbour_certificate(graph: Graph, vertices, claimed: int) -> bool:
    nb = graph.neighbour_masks
    acc = -1
    for v in vertices:
        acc &= nb[v]
    return acc.bit_count() == claimed and claimed < math.log(graph.n)


# --- independent sets without common neighbours ------------------------------

def verify_independent_no_common(graph: Graph, s, k: int) -> bool:
    """Exhaustive re-check: S independent and no k-subset of S has a common neighbour."""
    nb = graph.neighbour_masks
    smask = to_mask(s)
    if any(nb[v] & smask for v in s):
        return False
    for sub in combinations(s, k):
        acc = -1
        for v in sub:
            acc &= nb[v]
        if acc != -1 and acc:
            return False
    return True


def find_independent_no_common(
    sample: GnpSample | Graph,
    k: int,
    m: int,
    restarts: int = 100,
    seed: int = 0,
) -> tuple[int, ...] | None:
    """Randomised greedy search for an independent m-set in which no k
    vertices have a common neighbour (each vertex sees fewer than k of S)."""
    if not m > k >= 2:
        raise InputError("need m > k >= 2")
    graph = sample.graph if isinstance(sample, GnpSample) else sample
    n = graph.n
    nb = graph.neighbour_masks
    neighbours = [from_mask(x) for x in nb]
    for attempt in range(restarts):
        rng = _trial_rng(seed, attempt)
        order = rng.permutation(n).tolist()
        chosen: list[int] = []
        blocked = 0
        seen = [0] * n
        for v in order:
            if blocked >> v & 1:
                continue
            if any(seen[w] >= k - 1 for w in neighbours[v]):
                continue
            chosen.append(v)
            blocked |= nb[v] | (1 << v)
            for w in neighbours[v]:
                seen[w] += 1
            if len(chosen) == m:
                s = tuple(sorted(chosen))
                if not verify_independent_no_common(graph, s, k):
                    raise AssertionError("greedy set failed re-verification")
                return s
    return None


# --- common-neighbour depth at scale -----------------------------------------

def _closed_depth_lower(graph: Graph, kmax: int = 3) -> int:
    """Largest k <= kmax such that every k vertices have a common closed
    neighbour, checked exhaustively with dense matrix products."""
    n = graph.n
    closed = np.eye(n, dtype=np.float64)
    for u, v in graph.edges:
        closed[u, v] = closed[v, u] = 1.0
    level = 1
    if kmax < 2 or n < 2:
        return min(level, n)
    pair = closed.T @ closed
    if (pair == 0).any():
        return level
    level = 2
    if kmax < 3 or n < 3:
        return level
    for i in range(n):
        rows = closed[closed[:, i] > 0]
        counts = rows.T @ rows
        if (counts[i + 1:, i + 1:] == 0).any():
            return level
    return 3


def depth_bounds(graph: Graph, budget: int | None = None) -> tuple[int, int]:
    """Certified (lower, upper) bounds on the closed common-neighbour depth."""
    try:
        k = common_neighbour_depth(graph, True, budget)
        return k, k
    except BudgetExceeded as exc:
        upper = int(exc.upper) - 1 if exc.upper is not None else graph.n
        lower = max(int(exc.lower or 1) - 1, _closed_depth_lower(graph, 3))
        return min(lower, upper), upper


# --- pipelines ---------------------------------------------------------------

def tc_upper_pipeline(
    sample: GnpSample,
    r: int,
    colourings: int = 20,
    seed: int = 0,
    family_trials: int = 200,
    budget: int | None = None,
    depth_budget: int = 200_000,
) -> ProbeReport:
    """Common-neighbour depth, then per random colouring: sampled pcp(r,k)
    on the auxiliary hypergraph and an optimal component cover."""
    graph = sample.graph
    if graph.n == 0:
        raise InputError("empty sample")
    low, high = depth_bounds(graph, depth_budget)
    k = low
    params = {"n": graph.n, "p": str(sample.p), "sample_seed": sample.seed, "r": r, "colourings": colourings}
    report = ProbeReport("tc_upper_pipeline", params, seed, colourings, in_regime=UNSPECIFIED)
    sizes = []
    for trial in range(colourings):
        g = random_colouring(graph, r, _trial_rng(seed, trial))
        aux = aux_hypergraph(g)
        if k >= 1:
            verdict = has_partite_cover_property(
                aux.hypergraph, None, k, mode="sampled", trials=family_trials, seed=seed + trial, budget=budget
            )
            if not verdict.holds:
                report.add_failure({"trial": trial, "pcp_witness": list(verdict.witness)})
        cover = cover_for_colouring(g, budget)
        if not cover.complete:
            raise AssertionError("component cover misses a vertex")
        sizes.append(cover.size)
    report.measured = {
        "depth": k,
        "depth_upper": high,
        "depth_exact": low == high,
        "cover_sizes": sizes,
        "max_cover": max(sizes) if sizes else None,
        "reference_lower": r * r / (20 * math.log(k)) if k > 1 else None,
        "reference_upper": 16 * r * r * math.log(r) / math.log(k) if k > 1 and r > 1 else None,
        "log": "natural",
    }
    return report


def cascade_threshold_note(n: int, r: int) -> str:
    return f"p > (C ln n / n)^(1/r) with C {UNSPECIFIED}"


def cascade_alpha_probe(
    sample: GnpSample,
    r: int,
    colourings: int = 20,
    seed: int = 0,
    max_n: int = 60,
) -> ProbeReport:
    """alpha of the transitive closure against 3r - 2 for random colourings."""
    graph = sample.graph
    if graph.n > max_n:
        raise BudgetExceeded(f"exact alpha limited to n <= {max_n}", consumed=0)
    bound = 3 * r - 2
    params = {"n": graph.n, "p": str(sample.p), "sample_seed": sample.seed, "r": r, "bound": bound}
    report = ProbeReport("cascade_alpha", params, seed, colourings, in_regime=UNSPECIFIED)
    alphas = []
    for trial in range(colourings):
        g = random_colouring(graph, r, _trial_rng(seed, trial))
        a, witness = multigraph_alpha(transitive_closure(g))
        alphas.append(a)
        if a > bound:
            report.add_failure({"trial": trial, "independent_set": list(witness)})
    report.measured = {"alphas": alphas, "max_alpha": max(alphas) if alphas else None, "regime": cascade_threshold_note(graph.n, r)}
    return report
