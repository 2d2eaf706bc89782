"""Edge-coloured graphs and their partite-hypergraph dictionary.

Colours are ``1..r``. A cover of an auxiliary hypergraph by vertices is the
same thing as a cover of the graph by monochromatic components, which is what
lets the hypergraph solvers answer colouring questions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import budget as _budget
from .errors import BudgetExceeded, InputError, InvariantViolation
from .hypergraph import Hypergraph, PartiteStructure, from_mask, require_partite, to_mask
from .solvers import min_cover, tau_exact, transversal_cover


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``0..n-1``."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        canon = []
        seen = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InputError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge ({u},{v}) outside 0..{self.n - 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"parallel edge {key} in a simple graph")
            seen.add(key)
            canon.append(key)
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def neighbour_masks(self) -> list[int]:
        nb = [0] * self.n
        for u, v in self.edges:
            nb[u] |= 1 << v
            nb[v] |= 1 << u
        return nb

    @property
    def min_degree(self) -> int:
        return min((m.bit_count() for m in self.neighbour_masks), default=0)

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in set(self.edges)


@dataclass(frozen=True)
class EdgeColouredGraph:
    """Edges ``(u, v, colour)``; with ``multi`` set, parallel edges of distinct
    colours are allowed (transitive closures and A(H) are such multigraphs)."""

    n: int
    r: int
    edges: tuple[tuple[int, int, int], ...] = ()
    multi: bool = False

    def __post_init__(self):
        canon = []
        seen: set = set()
        for u, v, c in self.edges:
            u, v, c = int(u), int(v), int(c)
            if u == v:
                raise InputError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge ({u},{v}) outside 0..{self.n - 1}")
            if not 1 <= c <= self.r:
                raise InputError(f"colour {c} outside 1..{self.r}")
            a, b = min(u, v), max(u, v)
            key = (a, b, c) if self.multi else (a, b)
            if key in seen:
                raise InputError(f"repeated edge {key}")
            seen.add(key)
            canon.append((a, b, c))
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def underlying(self) -> Graph:
        return Graph(self.n, tuple(sorted({(u, v) for u, v, _ in self.edges})))

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "multi": self.multi, "edges": [list(e) for e in self.edges]}


ColouredMultigraph = EdgeColouredGraph


def _components(n: int, pairs: Iterable[tuple[int, int]]) -> list[tuple[int, ...]]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def monochromatic_components(g: EdgeColouredGraph) -> list[list[tuple[int, ...]]]:
    """Per colour (index ``c - 1``), the components ordered by least vertex."""
    return [
        _components(g.n, ((u, v) for u, v, col in g.edges if col == c))
        for c in range(1, g.r + 1)
    ]


@dataclass(frozen=True)
class AuxHypergraph:
    """H(G, c): one vertex per monochromatic component, one edge per graph vertex.

    ``components[x]`` is ``(colour, members)`` for hypergraph vertex ``x``;
    part ``c - 1`` holds the colour-c components.
    """

    hypergraph: Hypergraph
    components: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def partition(self) -> PartiteStructure:
        return self.hypergraph.parts


def aux_hypergraph(g: EdgeColouredGraph) -> AuxHypergraph:
    comps = monochromatic_components(g)
    index: list[tuple[int, tuple[int, ...]]] = []
    where = [[0] * g.n for _ in range(g.r)]
    parts = []
    for c, clist in enumerate(comps):
        part = []
        for comp in clist:
            x = len(index)
            index.append((c + 1, comp))
            part.append(x)
            for v in comp:
                where[c][v] = x
        parts.append(tuple(part))
    edges = tuple(tuple(where[c][v] for c in range(g.r)) for v in range(g.n))
    h = Hypergraph(len(index), edges, g.r, True, PartiteStructure(tuple(parts)))
    return AuxHypergraph(h, tuple(index))


@dataclass(frozen=True)
class ComponentCover:
    components: tuple[tuple[int, int, tuple[int, ...]], ...]  # (colour, id = least vertex, members)
    covered: tuple[bool, ...]
    optimal: bool = False

    @property
    def size(self) -> int:
        return len(self.components)

    @property
    def complete(self) -> bool:
        return all(self.covered)

    @property
    def distinct_colours(self) -> bool:
        colours = [c for c, _, _ in self.components]
        return len(colours) == len(set(colours))

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "complete": self.complete,
            "distinct_colours": self.distinct_colours,
            "optimal": self.optimal,
            "components": [{"colour": c, "id": i, "vertices": list(m)} for c, i, m in self.components],
        }


def _as_cover(n: int, chosen: Iterable[tuple[int, tuple[int, ...]]], optimal: bool) -> ComponentCover:
    covered = [False] * n
    comps = []
    for colour, members in chosen:
        comps.append((colour, members[0], members))
        for v in members:
            covered[v] = True
    comps.sort(key=lambda x: (x[0], x[1]))
    return ComponentCover(tuple(comps), tuple(covered), optimal)


def cover_for_colouring(g: EdgeColouredGraph, budget: int | None = None) -> ComponentCover:
    """Minimum cover of V(G) by monochromatic components."""
    if g.n == 0:
        return ComponentCover((), (), True)
    aux = aux_hypergraph(g)
    res = tau_exact(aux.hypergraph, budget)
    return _as_cover(g.n, (aux.components[x] for x in res.witness), True)


def _restricted_growth(length: int, r: int):
    """Colour sequences where colours first appear in increasing order."""
    seq = [0] * length

    def rec(i: int, used: int):
        if i == length:
            yield tuple(c + 1 for c in seq)
            return
        for c in range(min(used + 1, r)):
            seq[i] = c
            yield from rec(i + 1, max(used, c + 1))

    yield from rec(0, 0)


def _restricted_growth_count(length: int, r: int) -> int:
    """Sum of Stirling numbers S(length, j) for j <= r."""
    row = [1] + [0] * r  # S(0, j)
    for _ in range(length):
        row = [0] + [j * row[j] + row[j - 1] for j in range(1, r + 1)]
    return sum(row)


def tc_exact_small(graph: Graph, r: int, budget: int | None = None) -> int:
    """Worst case over all r-colourings of the optimal component cover size.

    Colourings equal up to renaming colours give the same answer, so only
    sequences where colours first appear in order 1, 2, ... are visited.
    """
    if r < 1:
        raise InputError("r must be positive")
    cap = _budget.resolve(budget)
    count = _restricted_growth_count(len(graph.edges), r)
    if count > cap:
        raise BudgetExceeded(f"{count} colourings exceed budget {cap}", consumed=0)
    if not graph.edges:
        return graph.n
    worst = 0
    for cols in _restricted_growth(len(graph.edges), r):
        g = EdgeColouredGraph(graph.n, r, tuple((u, v, c) for (u, v), c in zip(graph.edges, cols)))
        worst = max(worst, cover_for_colouring(g, budget).size)
    return worst


def common_neighbour_depth(graph: Graph, self_adjacent: bool, budget: int | None = None) -> int:
    """Largest k such that every k vertices have a common neighbour (at most n).

    A vertex set S has no common neighbour iff it meets every non-neighbourhood
    V - N(w). So the least bad set is a minimum cover of the non-neighbourhoods.
    """
    if graph.n == 0:
        raise InputError("graph must be nonempty")
    nb = graph.neighbour_masks
    full = (1 << graph.n) - 1
    non = []
    for w in range(graph.n):
        closed = nb[w] | (1 << w) if self_adjacent else nb[w]
        miss = full & ~closed
        if not miss:
            return graph.n
        non.append(miss)
    return len(min_cover(non, budget)) - 1


def min_degree_distinct_cover(g: EdgeColouredGraph, budget: int | None = None) -> ComponentCover:
    """Cover by components of pairwise distinct colours when
    delta(G) >= (1 - 2^-r) n, via a transversal cover of H(G, c)."""
    n, r = g.n, g.r
    under = g.underlying
    if under.min_degree * 2**r < (2**r - 1) * n:
        raise InputError(f"minimum degree {under.min_degree} below (1 - 1/2^{r}) * {n}")
    depth = common_neighbour_depth(under, True, budget)
    if depth < min(2**r, n):
        raise InvariantViolation(f"common-neighbour depth {depth} < 2^{r} under the degree condition")
    aux = aux_hypergraph(g)
    t = transversal_cover(aux.hypergraph)
    if t is None:
        raise InvariantViolation("no transversal cover despite the degree condition")
    chosen = [aux.components[x] for x in t]
    # drop components the others make redundant
    kept = list(chosen)
    for comp in chosen:
        rest = [c for c in kept if c is not comp]
        if set().union(*(m for _, m in rest)) == set(range(n)):
            kept = rest
    return _as_cover(n, kept, False)


def indep_cover(g: EdgeColouredGraph) -> ComponentCover:
    """All components meeting a greedy maximal independent set."""
    nb = g.underlying.neighbour_masks
    chosen_vertices = []
    blocked = 0
    for v in range(g.n):
        if not blocked >> v & 1:
            chosen_vertices.append(v)
            blocked |= nb[v] | (1 << v)
    comps = monochromatic_components(g)
    picked = {}
    for c, clist in enumerate(comps):
        for comp in clist:
            if any(v in comp for v in chosen_vertices):
                picked[(c + 1, comp[0])] = (c + 1, comp)
    return _as_cover(g.n, picked.values(), False)


def transitive_closure(g: EdgeColouredGraph) -> EdgeColouredGraph:
    """Colour-c edge between every two vertices of a colour-c component."""
    edges = []
    for c, clist in enumerate(monochromatic_components(g)):
        for comp in clist:
            edges.extend((u, v, c + 1) for u, v in combinations(comp, 2))
    edges.sort()
    return EdgeColouredGraph(g.n, g.r, tuple(edges), True)


def independence_number(n: int, neighbour_masks: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Maximum independent set by branch and bound on bitmasks."""
    best: list[int] = []

    def rec(cand: int, chosen: list[int]) -> None:
        nonlocal best
        if not cand:
            if len(chosen) > len(best):
                best = list(chosen)
            return
        if len(chosen) + cand.bit_count() <= len(best):
            return
        # vertex of minimum degree inside the candidate set
        v = min(from_mask(cand), key=lambda x: ((neighbour_masks[x] & cand).bit_count(), x))
        chosen.append(v)
        rec(cand & ~neighbour_masks[v] & ~(1 << v), chosen)
        chosen.pop()
        # excluding v only helps if some neighbour of v is then used
        if neighbour_masks[v] & cand:
            rec(cand & ~(1 << v), chosen)

    rec((1 << n) - 1, [])
    return len(best), tuple(sorted(best))


def multigraph_alpha(g: EdgeColouredGraph) -> tuple[int, tuple[int, ...]]:
    nb = [0] * g.n
    for u, v, _ in g.edges:
        nb[u] |= 1 << v
        nb[v] |= 1 << u
    return independence_number(g.n, nb)


def aux_multigraph(h: Hypergraph, p: PartiteStructure | None = None) -> EdgeColouredGraph:
    """A(H): colour-i edge between two H-edges meeting in part i."""
    p = require_partite(h, p)
    where = p.part_of
    edges = []
    for a, b in combinations(range(h.e), 2):
        for v in set(h.edges[a]) & set(h.edges[b]):
            edges.append((a, b, where[v] + 1))
    edges.sort()
    return EdgeColouredGraph(h.e, p.r, tuple(edges), True)


@dataclass(frozen=True)
class AdversarialHost:
    graph: Graph
    s_vertices: tuple[int, ...]
    w: int


def adversarial_host(edge_count: int, k: int) -> AdversarialHost:
    """A host for :func:`adversarial_colouring`.

    Vertices ``0..edge_count-1`` form the independent set S; one vertex of T
    per k-subset of S is joined to exactly that subset (all of S when
    ``edge_count <= k``); a last vertex w sees only T; T is a clique.
    """
    if edge_count < 1 or k < 1:
        raise InputError("need edge_count >= 1 and k >= 1")
    s = tuple(range(edge_count))
    subsets = list(combinations(s, min(k, edge_count)))
    t_start = edge_count
    t_vertices = list(range(t_start, t_start + len(subsets) + 1))
    w = t_vertices[-1]
    edges = []
    for idx, sub in enumerate(subsets):
        edges.extend((x, t_start + idx) for x in sub)
    edges.extend(combinations(t_vertices, 2))
    return AdversarialHost(Graph(t_vertices[-1] + 1, tuple(edges)), s, w)


def check_host(graph: Graph, s_vertices: Sequence[int], k: int, w: int | None) -> list[str]:
    """Violated hypotheses of the adversarial construction (empty when fine)."""
    problems = []
    nb = graph.neighbour_masks
    smask = to_mask(s_vertices)
    if len(set(s_vertices)) != len(s_vertices):
        problems.append("S has repeated vertices")
    for x in s_vertices:
        if nb[x] & smask:
            problems.append(f"S is not independent (vertex {x} has a neighbour in S)")
            break
    for v in range(graph.n):
        if (nb[v] & smask).bit_count() > k:
            problems.append(f"vertex {v} is a common neighbour of more than k={k} vertices of S")
            break
    if w is not None:
        if w in s_vertices:
            problems.append(f"w={w} lies in S")
        elif nb[w] & smask:
            problems.append(f"w={w} is adjacent to S")
    elif not any(v not in s_vertices and not nb[v] & smask for v in range(graph.n)):
        problems.append("no vertex outside S is non-adjacent to S")
    return problems


def adversarial_colouring(
    h: Hypergraph,
    p: PartiteStructure | None,
    k: int,
    host: Graph,
    s_vertices: Sequence[int],
    w: int | None = None,
) -> EdgeColouredGraph:
    """(r+1)-colouring of ``host`` needing at least tau(h) + 1 components.

    S-vertex ``s_vertices[j]`` plays H-edge ``j``. Edges inside T = V - S get
    colour r+1; each T-vertex splits its S-neighbours by the lexicographically
    least transversal cover of the corresponding H-edges and colours the edge
    to an S-vertex by the part whose chosen vertex hits that H-edge.
    """
    p = require_partite(h, p)
    r = p.r
    if len(s_vertices) != h.e:
        raise InputError(f"|S| = {len(s_vertices)} must equal e(h) = {h.e}")
    problems = check_host(host, s_vertices, k, w)
    if problems:
        raise InputError("host violates hypotheses: " + "; ".join(problems))
    slot = {x: j for j, x in enumerate(s_vertices)}
    where = p.part_of
    nb = host.neighbour_masks
    coloured = []
    for u, v in host.edges:
        if u not in slot and v not in slot:
            coloured.append((u, v, r + 1))
    for t in range(host.n):
        if t in slot:
            continue
        s_nbrs = [x for x in s_vertices if nb[t] >> x & 1]
        if not s_nbrs:
            continue
        family = [h.edges[slot[x]] for x in s_nbrs]
        cover = transversal_cover(Hypergraph(h.n, family, h.r, True, p), p)
        if cover is None:
            raise InputError(f"edges {[slot[x] for x in s_nbrs]} have no transversal cover: h lacks pcp(r,{k})")
        for x in s_nbrs:
            edge = set(h.edges[slot[x]])
            colour = next(where[c] for c in cover if c in edge) + 1
            coloured.append((min(t, x), max(t, x), colour))
    coloured.sort()
    return EdgeColouredGraph(host.n, r + 1, tuple(coloured))


def brute_force_component_cover(g: EdgeColouredGraph) -> int:
    """Smallest number of monochromatic components covering V(G), by
    enumerating subsets of the inclusion-maximal component vertex sets."""
    sets = {frozenset(comp) for clist in monochromatic_components(g) for comp in clist}
    maximal = [s for s in sets if not any(s < o for o in sets)]
    masks = sorted(to_mask(s) for s in maximal)
    full = (1 << g.n) - 1
    if g.n == 0:
        return 0
    for size in range(1, len(masks) + 1):
        for combo in combinations(masks, size):
            acc = 0
            for m in combo:
                acc |= m
            if acc == full:
                return size
    raise AssertionError("components always cover the vertex set")
