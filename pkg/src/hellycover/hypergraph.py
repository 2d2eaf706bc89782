"""Finite hypergraphs, r-partitions and the primitive set operations on them.

Vertices are dense integers ``0..n-1``. Edges keep insertion order and are
stored as sorted tuples; bitmask views are cached for the solvers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InputError

Edge = tuple[int, ...]


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def canonical_set(vertices: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(int(v) for v in vertices)))


@dataclass(frozen=True)
class PartiteStructure:
    """An ordered list of disjoint vertex classes."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "parts", tuple(tuple(sorted(int(v) for v in p)) for p in self.parts)
        )

    @property
    def r(self) -> int:
        return len(self.parts)

    @cached_property
    def part_of(self) -> dict[int, int]:
        return {v: i for i, part in enumerate(self.parts) for v in part}

    def diagnostics(self, n: int) -> list[str]:
        out = []
        seen: dict[int, int] = {}
        for i, part in enumerate(self.parts):
            for v in part:
                if not 0 <= v < n:
                    out.append(f"part {i}: vertex {v} outside universe 0..{n - 1}")
                elif v in seen:
                    out.append(f"part {i}: vertex {v} already in part {seen[v]}")
                else:
                    seen[v] = i
        missing = [v for v in range(n) if v not in seen]
        if missing:
            out.append(f"partition misses vertices {missing}")
        return out


@dataclass(frozen=True)
class Hypergraph:
    """A hypergraph on ``{0..n-1}``.

    ``r`` is the declared uniformity (``None`` for mixed edge sizes), ``multi``
    allows repeated edges and ``parts`` optionally attaches an r-partition.
    Construction never raises on invariant violations; use :func:`validate`.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    r: int | None = None
    multi: bool = False
    parts: PartiteStructure | None = field(default=None, compare=True)

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(
            self, "edges", tuple(tuple(sorted(int(v) for v in e)) for e in self.edges)
        )
        if self.parts is not None and not isinstance(self.parts, PartiteStructure):
            object.__setattr__(self, "parts", PartiteStructure(tuple(self.parts)))

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def rank(self) -> int:
        """Largest edge size (0 for an edgeless hypergraph)."""
        return max((len(e) for e in self.edges), default=0)

    @property
    def uniformity(self) -> int | None:
        if self.r is not None:
            return self.r
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(to_mask(e) for e in self.edges)

    @cached_property
    def incidence(self) -> tuple[int, ...]:
        """For each vertex, a bitmask over edge indices containing it."""
        inc = [0] * self.n
        for i, e in enumerate(self.edges):
            for v in e:
                if 0 <= v < self.n:
                    inc[v] |= 1 << i
        return tuple(inc)

    def degree(self, v: int) -> int:
        return self.incidence[v].bit_count()

    @property
    def max_degree(self) -> int:
        return max((m.bit_count() for m in self.incidence), default=0)

    def isolated_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, m in enumerate(self.incidence) if m == 0)

    def with_edges(self, edges: Sequence[Edge]) -> "Hypergraph":
        return Hypergraph(self.n, tuple(edges), self.r, self.multi, self.parts)

    def delete_edge(self, index: int) -> "Hypergraph":
        return self.with_edges(self.edges[:index] + self.edges[index + 1:])

    def strip_isolated(self) -> "Hypergraph":
        """Relabel onto the non-isolated vertices (drops any partition)."""
        keep = [v for v, m in enumerate(self.incidence) if m]
        relabel = {v: i for i, v in enumerate(keep)}
        return Hypergraph(
            len(keep), tuple(tuple(relabel[v] for v in e) for e in self.edges), self.r, self.multi
        )


def validate(h: Hypergraph, p: PartiteStructure | None = None) -> list[str]:
    """Return one diagnostic per violated invariant (empty when well formed)."""
    p = p if p is not None else h.parts
    out: list[str] = []
    if h.n < 0:
        out.append(f"negative vertex count {h.n}")
    if h.r is not None and h.r < 1:
        out.append(f"uniformity must be positive, got {h.r}")
    seen: dict[Edge, int] = {}
    for i, e in enumerate(h.edges):
        if not e:
            out.append(f"empty edge at edge {i}")
            continue
        bad = [v for v in e if not 0 <= v < h.n]
        if bad:
            out.append(f"vertex out of range at edge {i}: {bad}")
        if len(set(e)) != len(e):
            out.append(f"repeated vertex at edge {i}")
        if h.r is not None and len(set(e)) != h.r:
            out.append(f"uniformity violation at edge {i}: size {len(set(e))} != {h.r}")
        key = tuple(sorted(set(e)))
        if key in seen and not h.multi:
            out.append(f"duplicate edge at edge {i} (same as edge {seen[key]})")
        seen.setdefault(key, i)
    if p is not None:
        out.extend(p.diagnostics(h.n))
        if h.r is not None and p.r != h.r:
            out.append(f"partition has {p.r} parts but uniformity is {h.r}")
        where = p.part_of
        for i, e in enumerate(h.edges):
            counts = [0] * p.r
            for v in e:
                if v in where:
                    counts[where[v]] += 1
            for j, c in enumerate(counts):
                if c == 0:
                    out.append(f"partite violation: edge {i} misses part {j}")
                elif c > 1:
                    out.append(f"partite violation: edge {i} meets part {j} {'twice' if c == 2 else f'{c} times'}")
    return out


def require_valid(h: Hypergraph, p: PartiteStructure | None = None) -> None:
    problems = validate(h, p)
    if problems:
        raise InputError("invalid hypergraph: " + "; ".join(problems[:5]))


def require_partite(h: Hypergraph, p: PartiteStructure | None = None) -> PartiteStructure:
    p = p if p is not None else h.parts
    if p is None:
        raise InputError("hypergraph has no r-partition")
    problems = validate(h, p)
    if problems:
        raise InputError("not r-partite r-uniform: " + "; ".join(problems[:5]))
    return p


def _check_set(h: Hypergraph, s: Iterable[int]) -> tuple[int, ...]:
    members = canonical_set(s)
    bad = [v for v in members if not 0 <= v < h.n]
    if bad:
        raise InputError(f"vertices {bad} outside universe 0..{h.n - 1}")
    return members


def covered_edges(h: Hypergraph, s: Iterable[int]) -> int:
    """Number of edges meeting ``s``."""
    mask = to_mask(_check_set(h, s))
    return sum(1 for m in h.masks if m & mask)


def is_cover(h: Hypergraph, s: Iterable[int]) -> bool:
    mask = to_mask(s)
    return all(m & mask for m in h.masks)


def remove_vertices(h: Hypergraph, s: Iterable[int]) -> Hypergraph:
    """Delete every edge touching ``s``; the vertex universe is unchanged."""
    mask = to_mask(_check_set(h, s))
    return h.with_edges([e for e, m in zip(h.edges, h.masks) if not m & mask])


def disjoint_union(hs: Sequence[Hypergraph]) -> Hypergraph:
    """Disjoint union with shifted universes.

    When every input carries a partition with the same number of parts, the
    result is partitioned part-wise (part i of the union is the union of the
    inputs' parts i), so r-partite inputs stay r-partite.
    """
    offset = 0
    edges: list[Edge] = []
    shifted_parts: list[list[int]] | None = None
    rs = {h.r for h in hs}
    partite = bool(hs) and all(h.parts is not None for h in hs) and len({h.parts.r for h in hs}) == 1
    if partite:
        shifted_parts = [[] for _ in range(hs[0].parts.r)]
    for h in hs:
        edges.extend(tuple(v + offset for v in e) for e in h.edges)
        if shifted_parts is not None:
            for i, part in enumerate(h.parts.parts):
                shifted_parts[i].extend(v + offset for v in part)
        offset += h.n
    r = rs.pop() if len(rs) == 1 else None
    parts = PartiteStructure(tuple(tuple(p) for p in shifted_parts)) if shifted_parts is not None else None
    return Hypergraph(offset, tuple(edges), r, any(h.multi for h in hs), parts)


def complete_graph_edges(n: int) -> tuple[Edge, ...]:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))
