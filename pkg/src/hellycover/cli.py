"""``hellycover`` command-line entry point.

Exit codes: 0 success, 1 a check failed (a property is false, a pipeline
invariant broke, a manifest rerun differs), 2 usage or input error,
3 a search budget ran out.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import budget as _budget
from .errors import BudgetExceeded, InputError, InvariantViolation
from .formats import (
    hypergraph_to_dict,
    hypergraph_to_text,
    jsonable,
    load_coloured_graph,
    load_hypergraph,
)
from .manifest import RunManifest, sha256_bytes, sha256_file

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class Outcome:
    record: dict | list | None = None
    text: str | None = None  # preferred rendering for --format text
    code: int = EXIT_OK
    files: dict = field(default_factory=dict)  # extra output files, name -> content


# --- rendering -------------------------------------------------------------

def _render(outcome: Outcome, fmt: str) -> str:
    if fmt == "text" and outcome.text is not None:
        return outcome.text
    record = jsonable(outcome.record)
    if fmt == "json":
        return json.dumps(record, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        rows = record if isinstance(record, list) else record.get("rows") if isinstance(record, dict) and "rows" in record else [record]
        return _csv(rows)
    return _as_text(record)


def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return "" if v is None else str(v)


def _csv(rows: list) -> str:
    buf = io.StringIO()
    keys: list[str] = []
    for row in rows:
        for k in row:
            if k not in keys:
                keys.append(k)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(keys)
    for row in rows:
        w.writerow([_cell(row.get(k)) for k in keys])
    return buf.getvalue()


def _as_text(record) -> str:
    if isinstance(record, list):
        return "".join(_as_text(r) + "\n" for r in record)
    if isinstance(record, dict):
        return "".join(f"{k}: {_cell(v)}\n" for k, v in record.items())
    return f"{record}\n"


# --- argument helpers ------------------------------------------------------

def _key_values(pairs: list[str]) -> dict:
    out = {}
    for item in pairs:
        key, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"expected key=value, got {item!r}")
        try:
            out[key] = int(val)
        except ValueError:
            raise InputError(f"parameter {key} must be an integer, got {val!r}") from None
    return out


def _parse_x(text: str | None, rounds: int | None, edges: int):
    from .solvers import InverseRoot

    if rounds is not None:
        return InverseRoot(edges, rounds)
    if text is None:
        raise InputError("give --x or --rounds")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--x must be a rational like 1/2, got {text!r}") from None


# --- subcommands -----------------------------------------------------------

def cmd_construct(args) -> Outcome:
    from .constructions import build, copies

    params = _key_values(args.params)
    if args.family == "copies":
        # external base family, e.g. an intersecting r-partite r-graph supplied as a file
        if args.base is None or "count" not in params:
            raise InputError("copies needs --base FILE and count=<int>")
        c = copies(load_hypergraph(args.base), params["count"])
    else:
        c = build(args.family, **params)
    sidecar = c.sidecar()
    record = {"hypergraph": hypergraph_to_dict(c.hypergraph), "sidecar": sidecar}
    files = {"sidecar.json": json.dumps(jsonable(sidecar), sort_keys=True, indent=2) + "\n"}
    return Outcome(record, hypergraph_to_text(c.hypergraph), files=files)


def cmd_solve(args) -> Outcome:
    from . import solvers

    h = load_hypergraph(args.file)
    b = args.budget
    if args.what == "tau":
        return Outcome(solvers.tau_exact(h, b).to_dict())
    if args.what == "nu":
        return Outcome(solvers.nu_exact(h, b).to_dict())
    if args.what == "taustar":
        return Outcome(solvers.tau_fractional(h).to_dict())
    if args.what == "transversal":
        t = solvers.transversal_cover(h)
        return Outcome({"value": None if t is None else len(t), "witness": None if t is None else list(t), "optimal": True, "stats": {}},
                       code=EXIT_OK if t is not None else EXIT_CHECK)
    if args.what == "critical":
        crit = solvers.critical_reduce(h, b)
        tau = solvers.tau_exact(crit, b).value
        record = {"value": tau, "witness": hypergraph_to_dict(crit), "optimal": True,
                  "stats": {"edges_before": h.e, "edges_after": crit.e, "edge_bound": solvers.critical_edge_bound(crit.rank, tau) if tau else 0}}
        return Outcome(record)
    if args.ell is None:
        raise InputError("greedy needs --ell")
    x = _parse_x(args.x, args.rounds, h.e)
    res = solvers.greedy_ell_cover(h, args.ell, x, args.mode, args.samples, args.seed)
    record = {"value": len(res.cover), "witness": list(res.cover), "optimal": False,
              "stats": {"rounds": res.rounds, "all_thresholds_met": res.all_thresholds_met, "x": str(x), **res.to_dict()}}
    return Outcome(record)


def cmd_property(args) -> Outcome:
    from . import helly

    h = load_hypergraph(args.file)
    b = args.budget
    if args.what in ("cp", "pcp"):
        if args.k is None:
            raise InputError(f"{args.what} needs --k")
        if args.what == "cp":
            if args.ell is None:
                raise InputError("cp needs --ell")
            v = helly.has_cover_property(h, args.k, args.ell, args.mode, args.trials, args.seed, b)
        else:
            v = helly.has_partite_cover_property(h, None, args.k, args.mode, args.trials, args.seed, b, args.require_edge)
        return Outcome(v.to_dict(), code=EXIT_OK if v.holds else EXIT_CHECK)
    if args.what == "violating-k":
        if args.ell is None:
            raise InputError("violating-k needs --ell")
        k = helly.smallest_violating_k(h, args.ell, b)
        return Outcome({"ell": args.ell, "smallest_violating_k": "never" if k is None else k})
    if args.what == "lbbound":
        if args.g is None:
            raise InputError("lbbound needs --g FILE")
        g = load_hypergraph(args.g)
        return Outcome({"k": helly.lb_counting_bound(h, g)})
    if args.t is None:
        return Outcome({"intersecting_level": helly.intersecting_level(h, b)})
    rep = helly.intersecting_tau_bound_check(h, args.t, b)
    return Outcome(rep.to_dict(), code=EXIT_OK if rep.holds else EXIT_CHECK)


def cmd_bridge(args) -> Outcome:
    from . import colour

    b = args.budget
    if args.what == "tc":
        data = json.loads(Path(args.file).read_text())
        try:
            graph = colour.Graph(int(data["n"]), tuple((int(e[0]), int(e[1])) for e in data["edges"]))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise InputError(f"malformed graph record: {exc}") from None
        if args.r is None:
            raise InputError("tc needs --r")
        return Outcome({"r": args.r, "tc": colour.tc_exact_small(graph, args.r, b)})
    if args.what == "adversary":
        from .helly import has_partite_cover_property
        from .solvers import tau_exact

        h = load_hypergraph(args.file)
        if args.k is None:
            raise InputError("adversary needs --k")
        if not has_partite_cover_property(h, None, args.k, budget=b).holds:
            raise InputError(f"hypergraph lacks pcp(r,{args.k})")
        host = colour.adversarial_host(h.e, args.k)
        g = colour.adversarial_colouring(h, None, args.k, host.graph, host.s_vertices, host.w)
        cover = colour.cover_for_colouring(g, b)
        tau = tau_exact(h, b).value
        record = {"colouring": g.to_dict(), "cover": cover.to_dict(), "tau": tau, "required": tau + 1,
                  "holds": cover.size >= tau + 1}
        return Outcome(record, code=EXIT_OK if record["holds"] else EXIT_CHECK)
    g = load_coloured_graph(args.file)
    if args.what == "aux":
        aux = colour.aux_hypergraph(g)
        record = {"hypergraph": hypergraph_to_dict(aux.hypergraph),
                  "components": [{"colour": c, "vertices": list(m)} for c, m in aux.components]}
        return Outcome(record, hypergraph_to_text(aux.hypergraph))
    if args.what == "cover":
        cover = colour.indep_cover(g) if args.indep else colour.cover_for_colouring(g, b)
        return Outcome(cover.to_dict())
    try:
        cover = colour.min_degree_distinct_cover(g, b)
    except InvariantViolation as exc:
        return Outcome({"error": str(exc)}, code=EXIT_CHECK)
    return Outcome(cover.to_dict())


def cmd_lab(args) -> Outcome:
    from . import random_lab as lab

    if args.n is None or args.p is None:
        raise InputError("lab needs --n and --p")
    try:
        p = Fraction(args.p)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--p must be a probability like 0.4 or 2/5, got {args.p!r}") from None
    sample = lab.gnp_sample(args.n, p, args.seed)
    if args.what == "gnp":
        return Outcome({"n": sample.n, "p": str(sample.p), "seed": sample.seed, "edges": len(sample.graph.edges),
                        "edge_list": [list(e) for e in sample.graph.edges]})
    if args.what == "pipeline":
        rep = lab.tc_upper_pipeline(sample, args.r, args.trials, args.seed, budget=args.budget)
    elif args.probe == "edge-between":
        rep = lab.probe_edge_between_sets(sample, args.size, args.trials, args.seed, args.budget)
    elif args.probe == "common-neighbours":
        rep = lab.probe_common_neighbours(sample, args.r, args.d, args.trials, args.seed, args.budget)
    elif args.probe == "cascade":
        rep = lab.cascade_alpha_probe(sample, args.r, args.trials, args.seed)
    else:
        if args.k is None or args.m is None:
            raise InputError("independent probe needs --k and --m")
        found = lab.find_independent_no_common(sample, args.k, args.m, args.trials, args.seed)
        return Outcome({"n": sample.n, "p": str(sample.p), "seed": args.seed, "k": args.k, "m": args.m,
                        "found": found is not None, "set": None if found is None else list(found)})
    return Outcome(rep.to_dict(), rep.to_json() + "\n")


def cmd_table(args) -> Outcome:
    from . import table

    kinds = ("h", "hp") if args.kind == "both" else (args.kind,)
    budget = args.budget if args.budget is not None else 200_000
    cells = table.build_table(args.r_max, args.r_min, budget, kinds)
    rows = [c.to_dict() for c in cells]
    ok = all(table.cell_consistent(c) for c in cells)
    return Outcome({"rows": rows}, code=EXIT_OK if ok else EXIT_CHECK)


def cmd_verify(args) -> Outcome:
    from . import acceptance

    only = set(args.only) if args.only else None
    results = acceptance.run_suite(args.suite, only, echo=lambda line: print(line, file=sys.stderr))
    # timings go to stderr and the JUnit file only, so reruns can be compared
    rows = [{"criterion": r.number, "name": r.name, "passed": r.passed, "limit": r.limit,
             "cases": r.cases, "failures": r.failures[:5]} for r in results]
    if args.junit:
        Path(args.junit).write_text(acceptance.junit_xml(results, args.suite))
    code = EXIT_OK if all(r.passed for r in results) else EXIT_CHECK
    text = "".join(f"{'PASS' if r.passed else 'FAIL'} {r.number} {r.name}\n" for r in results)
    return Outcome({"suite": args.suite, "passed": code == EXIT_OK, "rows": rows}, text, code)


# --- parser ----------------------------------------------------------------

def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=d(0), help="seed for every randomised step")
    p.add_argument("--budget", type=int, default=d(None), help="search node budget (env HELLYCOVER_BUDGET)")
    p.add_argument("--format", choices=("json", "csv", "text"), default=d("json"))
    p.add_argument("--out", default=d(None), help="write result, extra files and manifest.json here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hellycover", description="Hypergraph covers, Helly-type properties and monochromatic component covers.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_flags(parser, suppress=False)
    parser.add_argument("--from-manifest", default=None, help="rerun a recorded invocation and compare outputs")
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("construct", parents=[common], help="generate an extremal family")
    p.add_argument("family")
    p.add_argument("params", nargs="*", metavar="key=value")
    p.add_argument("--base", help="copies: hypergraph file to copy")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("solve", parents=[common], help="cover, matching and fractional solvers")
    p.add_argument("what", choices=("tau", "nu", "taustar", "transversal", "critical", "greedy"))
    p.add_argument("file")
    p.add_argument("--ell", type=int)
    p.add_argument("--x", help="greedy ratio as a rational, e.g. 1/2")
    p.add_argument("--rounds", type=int, help="greedy ratio e(h)^(-1/rounds) instead of --x")
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("property", parents=[common], help="Helly-type cover properties")
    p.add_argument("what", choices=("cp", "pcp", "violating-k", "lbbound", "intersecting"))
    p.add_argument("file")
    p.add_argument("--k", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--t", type=int, help="with intersecting: also check tau against n^(1/t)(1 + ln d)")
    p.add_argument("--g", help="second hypergraph for lbbound")
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--require-edge", action="store_true", help="pcp: the transversal must be an edge")
    p.set_defaults(func=cmd_property)

    p = sub.add_parser("bridge", parents=[common], help="coloured graphs and their hypergraphs")
    p.add_argument("what", choices=("aux", "cover", "tc", "mindeg", "adversary"))
    p.add_argument("file")
    p.add_argument("--r", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--indep", action="store_true", help="cover: use the independent-set cover")
    p.set_defaults(func=cmd_bridge)

    p = sub.add_parser("lab", parents=[common], help="seeded G(n,p) probes")
    p.add_argument("what", choices=("gnp", "probe", "pipeline"))
    p.add_argument("--n", type=int)
    p.add_argument("--p")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--probe", choices=("edge-between", "common-neighbours", "independent", "cascade"), default="edge-between")
    p.add_argument("--size", type=int)
    p.add_argument("--d", type=float, default=1.0)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_lab)

    p = sub.add_parser("table", parents=[common], help="bounds on h_r(k,r) and hp_r(k)")
    p.add_argument("--r-max", type=int, default=6)
    p.add_argument("--r-min", type=int, default=2)
    p.add_argument("--kind", choices=("h", "hp", "both"), default="both")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("--suite", choices=("fast", "full"), default="fast")
    p.add_argument("--junit", help="also write a JUnit XML summary here")
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    p.set_defaults(func=cmd_verify)
    return parser


_INPUT_FLAGS = ("file", "g", "base")


def _manifest_for(args, argv: list[str]) -> RunManifest:
    skip = {"func", "command", "what", "seed", "budget", "format", "out", "from_manifest"}
    params = {k: v for k, v in vars(args).items() if k not in skip}
    inputs = {}
    for key in _INPUT_FLAGS:
        path = getattr(args, key, None)
        if path and Path(path).is_file():
            inputs[path] = sha256_file(path)
    what = getattr(args, "what", None)
    return RunManifest(
        [args.command] + ([what] if what else []),
        argv,
        jsonable(params),
        {"seed": args.seed},
        {"budget": _budget.resolve(args.budget)},
        __version__,
        inputs,
    )


def _execute(argv: list[str]) -> tuple[int, RunManifest | None, dict]:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.from_manifest:
        return _rerun(args.from_manifest)
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE, None, {}
    manifest = _manifest_for(args, argv)
    outcome = args.func(args)
    if args.out and isinstance(outcome.record, dict):
        # the digest covers everything except outputs, so embedding it is not circular
        outcome.record = {**outcome.record, "run_digest": manifest.run_digest()}
    ext = {"json": "json", "csv": "csv", "text": "txt"}[args.format]
    outputs = {f"result.{ext}": _render(outcome, args.format), **outcome.files}
    manifest.outputs = {name: sha256_bytes(body.encode()) for name, body in outputs.items()}
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name, body in outputs.items():
            (out / name).write_text(body)
        (out / "manifest.json").write_text(manifest.to_json() + "\n")
    else:
        sys.stdout.write(outputs[f"result.{ext}"])
        print(f"manifest {json.dumps(manifest.to_dict(), sort_keys=True)}", file=sys.stderr)
    return outcome.code, manifest, outputs


def _rerun(path: str) -> tuple[int, RunManifest | None, dict]:
    old = RunManifest.load(path)
    for name, digest in old.inputs.items():
        if not Path(name).is_file() or sha256_file(name) != digest:
            print(f"input {name} is missing or changed since the recorded run", file=sys.stderr)
            return EXIT_CHECK, None, {}
    code, new, outputs = _execute(list(old.argv))
    if new is None:
        return code, new, outputs
    same = new.outputs == old.outputs
    print(f"rerun {'reproduced' if same else 'DIFFERS from'} the recorded outputs", file=sys.stderr)
    return (code if same else EXIT_CHECK), new, outputs


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        code, _, _ = _execute(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc} (lower={exc.lower}, upper={exc.upper})", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except SystemExit as exc:  # argparse
        return int(exc.code or 0) if isinstance(exc.code, int) else EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
