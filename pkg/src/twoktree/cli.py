"""Command-line front end: check, solve, construct, verify, gen, thresholds.

Exit codes
  check       0 ok, 2 unreadable input
  solve       0 found, 1 none, 3 budget exhausted, 2 unreadable input
  construct   0 built, 4 hypotheses fail, 5 internal invariant broken, 2 unreadable input
  verify      0 full [2,k]-ST, 1 valid tree but not full, 2 invalid or unreadable
  gen         0 written, 2 bad parameters
  thresholds  0
With several input files the worst (largest) code wins.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .certificate import TreeCertificate, classify
from .constructive import HypothesisError, ProofInvariantError, construct_2k_st
from .families import CASE_LABELS, VARIANTS, ExtremalParams, build_h, case_family, random_graph
from .graph import Graph, GraphError, ParseError, hypothesis_report, read_graph
from .solver import SearchBudget, solve_exact, solve_naive
from .thresholds import thresholds

EXIT_OK = 0
EXIT_NONE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_HYPOTHESIS = 4
EXIT_INVARIANT = 5

DEFAULT_SEED = 20240229


@dataclass
class RunReport:
    command: list[str]
    inputs: list[dict] = field(default_factory=list)
    outcome: dict = field(default_factory=dict)
    timing: dict | None = None

    def to_json(self) -> str:
        data = asdict(self)
        if data["timing"] is None:
            del data["timing"]
        return json.dumps(data, indent=2, sort_keys=True)


def _digest(path: str, g: Graph) -> dict:
    return {"path": path, "n": g.n, "m": g.m, "sha256": g.digest()}


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


def _finish(args, report: RunReport, started: float, code: int) -> int:
    if not args.no_timing:
        report.timing = {"seconds": round(time.perf_counter() - started, 6)}
    text = report.to_json()
    _write(args.report, text + "\n")
    if args.json:
        print(text)
    return code


def _load(path: str):
    """Graph or an error message; parse errors keep their line numbers."""
    try:
        return read_graph(path), None
    except ParseError as err:
        return None, f"{path}: {err}"
    except OSError as err:
        return None, f"{path}: {err.strerror}"


def _map(func, items, jobs: int):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(func, items))
    return [func(x) for x in items]


def _per_file(path: str, out: str | None, idx: int, total: int) -> str | None:
    if out is None or total == 1:
        return out
    p = Path(out)
    return str(p.with_name(f"{p.stem}.{idx}{p.suffix}"))


# -- check -------------------------------------------------------------------------------


def _check_one(job):
    path, k = job
    g, err = _load(path)
    if err:
        return EXIT_INPUT, {"path": path, "error": err}, None
    rep = hypothesis_report(g, k)
    return EXIT_OK, rep.to_dict(), _digest(path, g)


def _table(rep: dict) -> str:
    rows = [("n", rep["n"]), ("k", rep["k"]), ("delta", rep["delta"]), ("sigma", rep["sigma"]),
            ("nc", rep["nc"]), ("connected", rep["connected"])]
    for name, ok in rep["flags"].items():
        why = "; ".join(rep["reasons"][name])
        rows.append((name, f"{ok}" + (f"  ({why})" if why else "")))
    width = max(len(r[0]) for r in rows)
    return "\n".join(f"{name:<{width}}  {val}" for name, val in rows)


def cmd_check(args) -> int:
    started = time.perf_counter()
    results = _map(_check_one, [(p, args.k) for p in args.graphs], args.jobs)
    report = RunReport(command=["check", *args.graphs, "-k", str(args.k)])
    code = EXIT_OK
    for path, (c, rep, dig) in zip(args.graphs, results):
        code = max(code, c)
        if c != EXIT_OK:
            print(rep["error"], file=sys.stderr)
            continue
        report.inputs.append(dig)
        report.outcome[path] = rep
        if len(args.graphs) > 1:
            print(f"== {path}")
        print(_table(rep))
        print(json.dumps(rep, sort_keys=True))
    return _finish(args, report, started, code)


# -- solve -------------------------------------------------------------------------------


def _solve_one(job):
    path, k, naive, node_limit, time_limit, backend = job
    g, err = _load(path)
    if err:
        return EXIT_INPUT, {"error": err}, None, None
    if naive:
        out = solve_naive(g, k, backend=backend)
    else:
        out = solve_exact(g, k, SearchBudget(node_limit, time_limit), backend=backend)
    code = {"found": EXIT_OK, "none": EXIT_NONE, "budget_exhausted": EXIT_BUDGET}[out.status]
    cert = out.certificate.to_text() if out.certificate else None
    return code, out.to_dict(), _digest(path, g), cert


def cmd_solve(args) -> int:
    started = time.perf_counter()
    jobs = [(p, args.k, args.naive, args.node_limit, args.time_limit, args.backend) for p in args.graphs]
    try:
        results = _map(_solve_one, jobs, args.jobs)
    except (ValueError, GraphError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    report = RunReport(command=["solve", *args.graphs, "-k", str(args.k)])
    code = EXIT_OK
    for i, (path, (c, out, dig, cert)) in enumerate(zip(args.graphs, results)):
        code = max(code, c)
        if dig is None:
            print(out["error"], file=sys.stderr)
            continue
        report.inputs.append(dig)
        out.pop("certificate", None)
        target = _per_file(path, args.out, i, len(args.graphs))
        if cert and target:
            _write(target, cert)
            out["certificate_path"] = target
        if cert and args.dot:
            g = read_graph(path)
            _write(_per_file(path, args.dot, i, len(args.graphs)),
                   g.to_dot(TreeCertificate.from_text(cert).edges))
        report.outcome[path] = out
        print(f"{path}: {out['status']} (nodes={out['nodes']})")
    return _finish(args, report, started, code)


# -- construct ---------------------------------------------------------------------------


def cmd_construct(args) -> int:
    started = time.perf_counter()
    g, err = _load(args.graph)
    if err:
        print(err, file=sys.stderr)
        return EXIT_INPUT
    report = RunReport(command=["construct", args.graph, "-k", str(args.k)],
                       inputs=[_digest(args.graph, g)])
    try:
        cert, trace = construct_2k_st(g, args.k, fallback_exact=args.fallback_exact)
    except HypothesisError as err:
        print(f"hypotheses not met: {err}", file=sys.stderr)
        report.outcome = {"status": "hypothesis_violation", "reason": str(err)}
        return _finish(args, report, started, EXIT_HYPOTHESIS)
    except ProofInvariantError as err:
        print(f"internal invariant failed: {err}", file=sys.stderr)
        report.outcome = {"status": "invariant_violation", "reason": str(err),
                          "trace": err.trace.to_dict()}
        if args.trace:
            _write(args.trace, err.trace.to_json() + "\n")
        return _finish(args, report, started, EXIT_INVARIANT)
    _write(args.cert, cert.to_text())
    _write(args.trace, trace.to_json() + "\n")
    if args.dot:
        _write(args.dot, g.to_dot(cert.edges))
    report.outcome = {"status": "found", "case": trace.label, "certificate_path": args.cert,
                      "trace_path": args.trace}
    print(f"{args.graph}: [2,{args.k}]-ST built via {trace.label}")
    return _finish(args, report, started, EXIT_OK)


# -- verify ------------------------------------------------------------------------------


def cmd_verify(args) -> int:
    g, err = _load(args.graph)
    if err:
        print(err, file=sys.stderr)
        return EXIT_INPUT
    try:
        cert = TreeCertificate.from_text(Path(args.cert).read_text(encoding="utf-8"))
    except (OSError, ValueError) as err:
        print(f"{args.cert}: {err}", file=sys.stderr)
        return EXIT_INPUT
    kind = classify(g, cert, args.k or cert.k)
    print(str(kind))
    if kind.is_full:
        return EXIT_OK
    return EXIT_NONE if kind.is_valid_tree else EXIT_INPUT


# -- gen ---------------------------------------------------------------------------------


def cmd_gen(args) -> int:
    try:
        if args.family == "h":
            g = build_h(ExtremalParams(args.k, args.n, strict=not args.relaxed))
        elif args.family == "random":
            g = random_graph(args.n, args.p, args.seed)
        elif args.family.startswith("case:"):
            g = case_family(args.family[len("case:"):], args.k, args.n, args.variant,
                            verify=args.verify)
        else:
            raise GraphError(f"unknown family {args.family!r}")
    except (GraphError, RuntimeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    text = g.to_edge_list()
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    if args.dot:
        _write(args.dot, g.to_dot())
    return EXIT_OK


# -- thresholds --------------------------------------------------------------------------


def cmd_thresholds(args) -> int:
    ks = list(args.k) if args.k else list(range(args.range[0], args.range[1] + 1))
    rows = [thresholds(k).to_dict() for k in ks]
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'k':>3}  {'c_k':>12}  {'n0':>8}  {'n1':>8}  {'16k^3':>8}")
        for r in rows:
            print(f"{r['k']:>3}  {r['c_k']:>12.6f}  {r['n0']:>8}  {r['n1']:>8}  {16 * r['k'] ** 3:>8}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------


def _positive_k(text: str) -> int:
    k = int(text)
    if k < 2:
        raise argparse.ArgumentTypeError("k must be at least 2")
    return k


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twoktree", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def reporting(sp):
        sp.add_argument("--report", help="write the JSON run report here")
        sp.add_argument("--json", action="store_true", help="print the JSON run report")
        sp.add_argument("--no-timing", action="store_true",
                        help="omit wall-clock timing so reports are byte-stable")

    sp = sub.add_parser("check", help="evaluate the degree and neighbourhood hypotheses")
    sp.add_argument("graphs", nargs="+")
    sp.add_argument("-k", type=_positive_k, default=2)
    sp.add_argument("--jobs", type=int, default=1)
    reporting(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("solve", help="exact search for a [2,k]-ST")
    sp.add_argument("graphs", nargs="+")
    sp.add_argument("-k", type=_positive_k, default=2)
    sp.add_argument("--naive", action="store_true", help="enumerate spanning trees instead (n <= 10)")
    sp.add_argument("--node-limit", type=int, default=5_000_000)
    sp.add_argument("--time-limit", type=float, default=None)
    sp.add_argument("--backend", choices=["python", "cython"], default=None)
    sp.add_argument("--out", help="certificate file (suffixed per input when several)")
    sp.add_argument("--dot", help="DOT file with the tree edges highlighted")
    sp.add_argument("--jobs", type=int, default=1)
    reporting(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("construct", help="build a [2,k]-ST along the case analysis")
    sp.add_argument("graph")
    sp.add_argument("-k", type=_positive_k, default=2)
    sp.add_argument("--fallback-exact", action="store_true",
                    help="fall back to exact search when an internal invariant fails")
    sp.add_argument("--cert", help="certificate output file")
    sp.add_argument("--trace", help="trace output file (JSON)")
    sp.add_argument("--dot", help="DOT file with the tree edges highlighted")
    reporting(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="classify a certificate against a graph")
    sp.add_argument("graph")
    sp.add_argument("cert")
    sp.add_argument("-k", type=_positive_k, default=None, help="defaults to the certificate header")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="generate a graph in edge-list format")
    sp.add_argument("--family", required=True,
                    help="h | random | case:<label> with label one of " + ", ".join(CASE_LABELS))
    sp.add_argument("-k", type=_positive_k, default=2)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--p", type=float, default=0.5, help="edge probability for random graphs")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--variant", choices=VARIANTS, default="plain")
    sp.add_argument("--relaxed", action="store_true", help="allow k > n/6 for the extremal family")
    sp.add_argument("--verify", action="store_true", help="check the case fixture routes as labelled")
    sp.add_argument("--out")
    sp.add_argument("--dot")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("thresholds", help="print c_k, n0(k), n1(k)")
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("-k", type=_positive_k, nargs="+")
    grp.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_thresholds)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
