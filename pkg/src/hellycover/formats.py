"""Reading and writing hypergraphs and coloured graphs.

Text format: a header ``n=<int> r=<int|_> multi=<0|1>``, an optional
``parts=0,1;2,3`` line, then one comma-separated edge per line. The JSON
mirror has keys ``n``, ``r``, ``multi``, ``parts``, ``edges``. Coloured graphs
are JSON only: ``{"n", "r", "edges": [[u, v, colour], ...]}``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .colour import EdgeColouredGraph
from .errors import InputError
from .hypergraph import Hypergraph, PartiteStructure


def hypergraph_to_dict(h: Hypergraph) -> dict:
    return {
        "n": h.n,
        "r": h.r,
        "multi": h.multi,
        "parts": None if h.parts is None else [list(p) for p in h.parts.parts],
        "edges": [list(e) for e in h.edges],
    }


def hypergraph_from_dict(d: dict) -> Hypergraph:
    # records written by ``construct`` and ``bridge aux`` nest the hypergraph
    if isinstance(d, dict) and isinstance(d.get("hypergraph"), dict):
        d = d["hypergraph"]
    try:
        n = int(d["n"])
        edges = [tuple(int(v) for v in e) for e in d["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed hypergraph record: {exc}") from None
    r = d.get("r")
    parts = d.get("parts")
    ps = None if parts is None else PartiteStructure(tuple(tuple(int(v) for v in p) for p in parts))
    return Hypergraph(n, tuple(edges), None if r is None else int(r), bool(d.get("multi", False)), ps)


def hypergraph_to_text(h: Hypergraph) -> str:
    r = "_" if h.r is None else str(h.r)
    lines = [f"n={h.n} r={r} multi={int(h.multi)}"]
    if h.parts is not None:
        lines.append("parts=" + ";".join(",".join(map(str, p)) for p in h.parts.parts))
    lines.extend(",".join(map(str, e)) for e in h.edges)
    return "\n".join(lines) + "\n"


def hypergraph_from_text(text: str) -> Hypergraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty hypergraph file")
    header = {}
    for tok in lines[0].split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise InputError(f"bad header token {tok!r}")
        header[key] = val
    if set(header) != {"n", "r", "multi"}:
        raise InputError(f"header must be 'n=<int> r=<int|_> multi=<0|1>', got {lines[0]!r}")
    try:
        n = int(header["n"])
        r = None if header["r"] == "_" else int(header["r"])
        multi = {"0": False, "1": True}[header["multi"]]
    except (ValueError, KeyError):
        raise InputError(f"bad header {lines[0]!r}") from None
    body = lines[1:]
    parts = None
    if body and body[0].startswith("parts="):
        layout = body[0][len("parts="):]
        parts = PartiteStructure(tuple(_int_list(chunk) for chunk in layout.split(";")))
        body = body[1:]
    edges = tuple(_int_list(line) for line in body)
    return Hypergraph(n, edges, r, multi, parts)


def _int_list(chunk: str) -> tuple[int, ...]:
    chunk = chunk.strip()
    if not chunk:
        return ()
    try:
        return tuple(int(x) for x in chunk.split(","))
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {chunk!r}") from None


def load_hypergraph(path: str | Path) -> Hypergraph:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            return hypergraph_from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from None
    return hypergraph_from_text(text)


def coloured_graph_from_dict(d: dict) -> EdgeColouredGraph:
    try:
        edges = tuple((int(u), int(v), int(c)) for u, v, c in d["edges"])
        return EdgeColouredGraph(int(d["n"]), int(d["r"]), edges, bool(d.get("multi", False)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed coloured graph record: {exc}") from None


def load_coloured_graph(path: str | Path) -> EdgeColouredGraph:
    try:
        return coloured_graph_from_dict(json.loads(Path(path).read_text()))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def jsonable(value):
    """Map infinities and fractions onto the JSON vocabulary used by the CLI."""
    if isinstance(value, float) and math.isinf(value):
        return "unbounded"
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, (int, bool)):
        return str(value)
    return value
