"""The acceptance checks, runnable from pytest or ``hellycover verify``.

Each check returns a :class:`CheckResult`; a check passes only when every
instance agrees and it finished inside its time limit. The ``fast`` suite
runs the same checks on fewer random instances.
"""

from __future__ import annotations

import math
import time
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

import numpy as np

from .colour import (
    EdgeColouredGraph,
    Graph,
    adversarial_colouring,
    adversarial_host,
    brute_force_component_cover,
    check_host,
    cover_for_colouring,
    min_degree_distinct_cover,
    tc_exact_small,
    transitive_closure,
)
from .constructions import (
    complete_r_graph,
    complete_r_partite,
    corpus,
    h_rtm,
    sum_hypergraph,
    two_copy_partite,
)
from .errors import InputError
from .helly import covering_hypergraph, has_cover_property, has_partite_cover_property, smallest_violating_k
from .hypergraph import Hypergraph, is_cover
from .solvers import (
    InverseRoot,
    critical_edge_bound,
    critical_reduce,
    greedy_ell_cover,
    tau_exact,
    tau_fractional,
    transversal_cover,
)

SUITES = ("fast", "full")
BIG_BUDGET = 50_000_000


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    elapsed: float
    limit: float
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        text = f"[{verdict}] criterion {self.number:2d} {self.name}: {self.cases} cases, {self.elapsed:.1f}s (limit {self.limit:.0f}s)"
        if self.failures:
            text += f"; first failure: {self.failures[0]}"
        return text


def _run(number: int, name: str, limit: float, body: Callable[[list], int]) -> CheckResult:
    failures: list = []
    start = time.perf_counter()
    cases = body(failures)
    elapsed = time.perf_counter() - start
    if elapsed >= limit:
        failures.append(f"took {elapsed:.1f}s, limit {limit}s")
    return CheckResult(number, name, not failures, elapsed, limit, cases, failures)


# --- random instances ---------------------------------------------------------

def random_hypergraph(rng: np.random.Generator, max_n: int = 8, max_e: int = 12) -> Hypergraph:
    """Distinct nonempty edges of random sizes on 2..max_n vertices."""
    n = int(rng.integers(2, max_n + 1))
    e = int(rng.integers(1, max_e + 1))
    edges = set()
    for _ in range(20 * e):
        if len(edges) == e:
            break
        size = int(rng.integers(1, min(n, 4) + 1))
        edges.add(tuple(sorted(int(v) for v in rng.choice(n, size=size, replace=False))))
    return Hypergraph(n, tuple(sorted(edges)))


def random_coloured_graph(rng: np.random.Generator, max_n: int = 14, max_r: int = 3) -> EdgeColouredGraph:
    n = int(rng.integers(1, max_n + 1))
    r = int(rng.integers(1, max_r + 1))
    p = float(rng.uniform(0.1, 0.9))
    edges = []
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            edges.append((u, v, int(rng.integers(1, r + 1))))
    return EdgeColouredGraph(n, r, tuple(edges))


def min_degree_graph(rng: np.random.Generator, n: int, r: int) -> Graph:
    """Random deletions from K_n that keep every degree >= (1 - 2^-r) n."""
    need = math.ceil((1 - 2.0**-r) * n)
    deg = [n - 1] * n
    edges = set(combinations(range(n), 2))
    pairs = list(combinations(range(n), 2))
    for idx in rng.permutation(len(pairs)).tolist():
        u, v = pairs[idx]
        if deg[u] > need and deg[v] > need:
            edges.discard((u, v))
            deg[u] -= 1
            deg[v] -= 1
    return Graph(n, tuple(sorted(edges)))


def random_colouring_of(graph: Graph, r: int, rng: np.random.Generator) -> EdgeColouredGraph:
    cols = rng.integers(1, r + 1, size=len(graph.edges))
    return EdgeColouredGraph(graph.n, r, tuple((u, v, int(c)) for (u, v), c in zip(graph.edges, cols)))


# --- the checks ----------------------------------------------------------------

def check_h_rtm(suite: str = "full") -> CheckResult:
    def body(fail: list) -> int:
        cases = 0
        for r in (2, 3, 4, 5):
            for t in range(r):
                for m in (1, 2, 3):
                    c = h_rtm(r, t, m)
                    res = tau_exact(c.hypergraph, BIG_BUDGET)
                    cases += 1
                    if res.value != (t + 1) * m or not is_cover(c.hypergraph, res.witness):
                        fail.append(f"H({r},{t},{m}): tau={res.value}, expected {(t + 1) * m}")
        return cases

    return _run(1, "cover number of H_{r,t,m} is (t+1)m", 60, body)


def check_sum_hypergraph(suite: str = "full") -> CheckResult:
    def body(fail: list) -> int:
        cases = 0
        for r in (2, 3, 4):
            for s in range(5):
                res = tau_exact(sum_hypergraph(r, s).hypergraph, BIG_BUDGET)
                cases += 1
                if res.value != s + 1:
                    fail.append(f"S({r},{s}): tau={res.value}, expected {s + 1}")
        return cases

    return _run(2, "cover number of the sum hypergraph S_{r,s} is s+1", 30, body)


def check_complete_graph_property(suite: str = "full") -> CheckResult:
    family_cap = 10**6 if suite == "full" else 10**4

    def body(fail: list) -> int:
        cases = 0
        for r in (2, 3):
            for ell in (2, 3):
                for t in range(ell, 6):
                    c = complete_r_graph(t + r, r)
                    h = c.hypergraph
                    tau = tau_exact(h, BIG_BUDGET).value
                    cases += 1
                    if tau != t + 1:
                        fail.append(f"K^{r}_{t + r}: tau={tau}, expected {t + 1}")
                    # k < C(t+r, ell) / C(t, ell)
                    k_max = -(-math.comb(t + r, ell) // math.comb(t, ell)) - 1
                    for k in range(1, k_max + 1):
                        if math.comb(h.e, k) > family_cap:
                            continue
                        verdict = has_cover_property(h, k, ell, budget=BIG_BUDGET)
                        cases += 1
                        if not verdict.holds:
                            fail.append(f"K^{r}_{t + r}: cp({k},{ell}) fails at {verdict.witness}")
        return cases

    return _run(3, "complete r-graphs: tau = t+1 and cp(k, ell) below the counting bound", 300, body)


def check_complete_partite(suite: str = "full") -> CheckResult:
    def body(fail: list) -> int:
        cases = 0
        for r in (2, 3, 4):
            c = complete_r_partite(r, 2)
            verdict = has_partite_cover_property(c.hypergraph, None, 2**r - 1, budget=BIG_BUDGET)
            cases += 1
            if not verdict.holds:
                fail.append(f"r={r}: pcp(r, 2^r-1) fails at {verdict.witness}")
            if transversal_cover(c.hypergraph) is not None:
                fail.append(f"r={r}: unexpected transversal cover")
        return cases

    return _run(4, "complete r-partite with 2 per part: pcp(r, 2^r-1) without a transversal cover", 120, body)


def check_two_copy(suite: str = "full") -> CheckResult:
    def body(fail: list) -> int:
        cases = 0
        for r in (2, 3, 4):
            h = two_copy_partite(r).hypergraph
            tau = tau_exact(h, BIG_BUDGET).value
            cases += 1
            if tau != r + 1:
                fail.append(f"r={r}: tau={tau}, expected {r + 1}")
            for i in range(h.e):
                if transversal_cover(h.delete_edge(i)) is None:
                    fail.append(f"r={r}: H minus edge {i} has no transversal cover")
                cases += 1
        return cases

    return _run(5, "two-copy partite family: tau = r+1, every H - e has a transversal cover", 120, body)


def check_lb_start0(suite: str = "full") -> CheckResult:
    def body(fail: list) -> int:
        cases = 0
        for r, ell in ((2, 2), (2, 3), (3, 2)):
            h = complete_r_graph(r * ell - 1 + r, r).hypergraph
            tau = tau_exact(h, BIG_BUDGET).value
            verdict = has_cover_property(h, ell + 1, ell, budget=BIG_BUDGET)
            cases += 1
            if tau != r * ell:
                fail.append(f"(r,ell)=({r},{ell}): tau={tau}, expected {r * ell}")
            if not verdict.holds:
                fail.append(f"(r,ell)=({r},{ell}): cp(ell+1, ell) fails at {verdict.witness}")
        return cases

    return _run(6, "complete r-graph on r*ell-1+r vertices: tau = r*ell with cp(ell+1, ell)", 120, body)


def _ascending_violation(h: Hypergraph, ell: int) -> int | None:
    for k in range(1, h.e + 1):
        if not has_cover_property(h, k, ell, budget=BIG_BUDGET).holds:
            return k
    return None


def check_covering_hypergraph(suite: str = "full", seed: int = 2024) -> CheckResult:
    count = 50 if suite == "full" else 10

    def body(fail: list) -> int:
        rng = np.random.default_rng(seed)
        cases = 0
        for i in range(count):
            h = random_hypergraph(rng)
            tau = tau_exact(h, BIG_BUDGET).value
            for ell in range(1, min(3, h.n) + 1):
                via_tau = smallest_violating_k(h, ell, BIG_BUDGET)
                direct = _ascending_violation(h, ell)
                cases += 1
                if via_tau != direct:
                    fail.append(f"instance {i}, ell={ell}: tau(CH)={via_tau}, ascending search={direct}")
                ch = covering_hypergraph(h, ell)
                for t in (1, 2, 3):
                    cases += 1
                    if (tau > t * ell) != ch.is_t_intersecting(t):
                        fail.append(f"instance {i}, ell={ell}, t={t}: tau={tau} disagrees with intersection")
        return cases

    return _run(7, "covering hypergraph: violating k and intersection match direct search", 300, body)


def lovasz_holds(tau: int, tau_star: Fraction, d: int) -> bool:
    if not tau_star <= tau:
        return False
    if d <= 1:
        return tau <= tau_star
    return tau <= (1 + math.log(d)) * float(tau_star) + 1e-9


def check_lovasz(suite: str = "full", seed: int = 7) -> CheckResult:
    count = 100 if suite == "full" else 20

    def body(fail: list) -> int:
        rng = np.random.default_rng(seed)
        instances = [(f"random {i}", random_hypergraph(rng)) for i in range(count)]
        instances += [(f"{c.family}{c.params}", c.hypergraph) for c in corpus()]
        for name, h in instances:
            tau = tau_exact(h, BIG_BUDGET).value
            frac = tau_fractional(h).value
            if not lovasz_holds(tau, frac, h.max_degree):
                fail.append(f"{name}: tau={tau}, tau*={frac}, d={h.max_degree}")
        return len(instances)

    return _run(8, "tau* <= tau <= (1 + ln d) tau*", 300, body)


def check_fractional_ch(suite: str = "full") -> CheckResult:
    def body(fail: list) -> int:
        cases = 0
        for r, ell, t in ((2, 2, 2), (2, 2, 3), (3, 2, 2)):
            h = complete_r_graph(t + r, r).hypergraph
            ch = covering_hypergraph(h, ell)
            value = tau_fractional(ch.derived).value
            expected = Fraction(math.comb(t + r, ell), math.comb(t, ell))
            cases += 1
            if ch.dropped or value != expected:
                fail.append(f"(r,ell,t)=({r},{ell},{t}): tau*={value}, expected {expected}")
        return cases

    return _run(9, "fractional cover number of CH_ell(complete r-graph)", 120, body)


def check_bridge(suite: str = "full", seed: int = 11) -> CheckResult:
    count = 200 if suite == "full" else 30

    def body(fail: list) -> int:
        rng = np.random.default_rng(seed)
        for i in range(count):
            g = random_coloured_graph(rng)
            size = cover_for_colouring(g, BIG_BUDGET).size
            brute = brute_force_component_cover(g)
            closure = transitive_closure(g)
            size_tc = cover_for_colouring(closure, BIG_BUDGET).size
            brute_tc = brute_force_component_cover(closure)
            if not size == brute == size_tc == brute_tc:
                fail.append(f"graph {i}: solver {size}, brute {brute}, closure {size_tc}/{brute_tc}")
        return count

    return _run(10, "component cover via hypergraph equals brute force, also on the closure", 600, body)


def check_tc_complete(suite: str = "full") -> CheckResult:
    def body(fail: list) -> int:
        for n in (3, 4, 5):
            value = tc_exact_small(Graph(n, tuple(combinations(range(n), 2))), 2, BIG_BUDGET)
            if value != 1:
                fail.append(f"tc_2(K_{n}) = {value}, expected 1")
        return 3

    return _run(11, "tc_2(K_n) = 1 for n = 3, 4, 5", 600, body)


def check_min_degree(suite: str = "full", seed: int = 5) -> CheckResult:
    graphs, colourings = (100, 100) if suite == "full" else (5, 10)

    def body(fail: list) -> int:
        cases = 0
        for r in (2, 3):
            rng = np.random.default_rng([seed, r])
            for gi in range(graphs):
                n = int(rng.integers(2**r, 17))
                graph = min_degree_graph(rng, n, r)
                for _ in range(colourings):
                    g = random_colouring_of(graph, r, rng)
                    cover = min_degree_distinct_cover(g, BIG_BUDGET)
                    cases += 1
                    if not (cover.complete and cover.distinct_colours):
                        fail.append(f"r={r}, graph {gi}: cover {cover.to_dict()}")
        return cases

    return _run(12, "high minimum degree: cover by components of distinct colours", 600, body)


def check_adversarial(suite: str = "full") -> CheckResult:
    def body(fail: list) -> int:
        c = two_copy_partite(2)
        h = c.hypergraph
        k = int(c.predicted_properties[0].k)
        if not has_partite_cover_property(h, None, k).holds:
            fail.append(f"two_copy_partite(2) lacks pcp(2,{k})")
            return 1
        host = adversarial_host(h.e, k)
        problems = check_host(host.graph, host.s_vertices, k, host.w)
        if problems:
            fail.append(f"host rejected: {problems}")
            return 1
        g = adversarial_colouring(h, None, k, host.graph, host.s_vertices, host.w)
        tau = tau_exact(h).value
        size = cover_for_colouring(g).size
        brute = brute_force_component_cover(g)
        if g.r != 3 or size != brute or size < tau + 1 or tau + 1 != 4:
            fail.append(f"colours={g.r}, cover={size}, brute={brute}, tau+1={tau + 1}")
        return 1

    return _run(13, "adversarial colouring needs tau(h)+1 = 4 components with 3 colours", 300, body)


def check_critical(suite: str = "full") -> CheckResult:
    def body(fail: list) -> int:
        instances = corpus()
        for c in instances:
            h = critical_reduce(c.hypergraph, BIG_BUDGET)
            tau = tau_exact(h, BIG_BUDGET).value
            if tau >= 1 and h.e > critical_edge_bound(h.rank, tau):
                fail.append(f"{c.family}{c.params}: {h.e} edges > C(r+t, t) = {critical_edge_bound(h.rank, tau)}")
        return len(instances)

    return _run(14, "critical subhypergraphs have at most C(r+t, t) edges", 300, body)


def check_greedy(suite: str = "full") -> CheckResult:
    def body(fail: list) -> int:
        cases = 0
        for c in corpus():
            h = c.hypergraph
            r = h.rank
            if h.e < 2:
                continue
            for ell in (1, 2, 3):
                if ell > h.n:
                    continue
                run = greedy_ell_cover(h, ell, 0.5)
                if not is_cover(h, run.cover):
                    fail.append(f"{c.family}{c.params}, ell={ell}: greedy output is not a cover")
                for j in sorted({t // ell for t in range(ell, r * ell + 1)}):
                    x = InverseRoot(h.e, j)
                    met = all(x.keeps_fewer(rd.edges_after, rd.edges_before) for rd in run.trace)
                    cases += 1
                    if met and run.rounds > j:
                        fail.append(f"{c.family}{c.params}, ell={ell}, j={j}: {run.rounds} rounds")
        return cases

    return _run(15, "greedy peeling finishes within floor(t/ell) rounds when thresholds hold", 300, body)


CHECKS = (
    check_h_rtm,
    check_sum_hypergraph,
    check_complete_graph_property,
    check_complete_partite,
    check_two_copy,
    check_lb_start0,
    check_covering_hypergraph,
    check_lovasz,
    check_fractional_ch,
    check_bridge,
    check_tc_complete,
    check_min_degree,
    check_adversarial,
    check_critical,
    check_greedy,
)


def run_suite(suite: str = "fast", only: set[int] | None = None, echo: Callable[[str], None] | None = None) -> list[CheckResult]:
    if suite not in SUITES:
        raise InputError(f"suite must be one of {SUITES}")
    results = []
    for number, check in enumerate(CHECKS, start=1):
        if only and number not in only:
            continue
        res = check(suite)
        results.append(res)
        if echo is not None:
            echo(res.line)
    return results


def junit_xml(results: list[CheckResult], suite: str) -> str:
    root = ET.Element(
        "testsuite",
        name=f"hellycover-{suite}",
        tests=str(len(results)),
        failures=str(sum(not r.passed for r in results)),
        time=f"{sum(r.elapsed for r in results):.3f}",
    )
    for r in results:
        case = ET.SubElement(root, "testcase", classname="acceptance", name=f"criterion_{r.number:02d}", time=f"{r.elapsed:.3f}")
        if not r.passed:
            fail = ET.SubElement(case, "failure", message=r.name)
            fail.text = "\n".join(str(f) for f in r.failures[:20])
    return ET.tostring(root, encoding="unicode")
