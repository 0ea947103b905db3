"""Command-line front end: ``forestlab <subcommand> [options]``.

Graphs are read from ``--graph FILE`` or standard input in the text format
(or JSON), so commands compose through pipes::

    forestlab build --family md --D 1 --k 0 | forestlab solve --mode dff

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .census import find_critical_graphs
from .coloring import ColorMode, Verdict, is_critical, solve
from .constructions import ExpansionStyle, FamilyId, build_family, expand_weights_to_gadgets
from .discharging import audit_configurations, discharge_R1, initial_charges
from .errors import BudgetExceeded, ForestLabError
from .graph import WeightedMultigraph, graph_to_json, parse_graph, serialize_graph
from .potential import PotentialFlavor, audit_gap_predicates, check_flavor_for_graph, min_potential_subset, potential
from .sparsity import certify_sparsity, mad

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r} (use P/Q)") from None


def _subset(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad vertex list {text!r}; expected e.g. 0,3,5") from None


def _load_graph(args) -> WeightedMultigraph:
    if args.graph and args.graph != "-":
        try:
            with open(args.graph, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read graph file: {exc}") from None
    else:
        if sys.stdin.isatty():
            raise UsageError("no graph given: pass --graph FILE or pipe one on stdin")
        text = sys.stdin.read()
    G = parse_graph(text)
    if getattr(args, "D", None) is not None and args.command not in ("build", "census"):
        G = G.with_D(args.D)
    return G


def _emit(args, data: dict, lines: list[str] | None = None) -> None:
    if args.json or lines is None:
        print(json.dumps(data, indent=None if args.json else 2, default=str))
    else:
        print("\n".join(lines))


def _fmt_set(values) -> str:
    return "{" + ", ".join(str(v) for v in values) + "}"


# --------------------------------------------------------------------------
# handlers, each returning an exit code


def cmd_solve(args) -> int:
    G = _load_graph(args)
    res = solve(G, args.mode, args.budget)
    data = res.to_json()
    lines = [data["result"], f"nodes: {res.nodes}"]
    if res.partition is not None:
        lines += [f"M: {_fmt_set(sorted(res.partition.M))}", f"F: {_fmt_set(sorted(res.partition.F))}"]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_critical(args) -> int:
    G = _load_graph(args)
    rep = is_critical(G, args.mode, args.budget)
    data = rep.to_json()
    lines = [f"verdict: {rep.verdict.value}", f"nodes: {rep.nodes}"]
    if rep.failing_edge:
        lines.append(f"uncolorable after deleting edge {rep.failing_edge[0]}-{rep.failing_edge[1]}")
    if rep.failing_vertex is not None:
        lines.append(f"isolated vertex {rep.failing_vertex}")
    _emit(args, data, lines)
    return EXIT_FAIL if rep.verdict is Verdict.UNKNOWN else EXIT_OK


def cmd_potential(args) -> int:
    G = _load_graph(args)
    flavor = check_flavor_for_graph(G, args.flavor)
    A = args.subset if args.subset is not None else list(G.vertices())
    value = potential(G, flavor, A)
    _emit(args, {"flavor": flavor.value, "D": G.D, "subset": sorted(A), "potential": value}, [f"rho({_fmt_set(sorted(A))}) = {value}"])
    return EXIT_OK


def cmd_minpot(args) -> int:
    G = _load_graph(args)
    S, value = min_potential_subset(G, args.flavor, args.min_size, not args.allow_whole)
    _emit(args, {"flavor": args.flavor, "D": G.D, "subset": S, "potential": value}, [f"min rho = {value} at {_fmt_set(S)}"])
    return EXIT_OK


def cmd_gaps(args) -> int:
    G = _load_graph(args)
    rep = audit_gap_predicates(G, args.flavor)
    lines = [f"{r.predicate}: {'holds' if r.holds else 'FAILS'} (value {r.value}, threshold {r.threshold}, set {r.subset})" for r in rep.records]
    _emit(args, rep.to_json(), lines)
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_sparsity(args) -> int:
    G = _load_graph(args)
    cert = certify_sparsity(G, args.a, args.b, args.method)
    lines = [cert.verdict, f"max excess: {cert.max_excess}"]
    if not cert.sparse:
        lines.append(f"witness {_fmt_set(cert.subset)} spans {cert.edges} edges > {cert.bound}")
    _emit(args, cert.to_json(), lines)
    return EXIT_OK if cert.sparse else EXIT_FAIL


def cmd_mad(args) -> int:
    G = _load_graph(args)
    value = mad(G)
    _emit(args, {"mad": str(value)}, [f"mad = {value}"])
    return EXIT_OK


def cmd_build(args) -> int:
    G = build_family(args.family, args.D, args.k)
    text = json.dumps(graph_to_json(G)) if args.json else serialize_graph(G)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_expand(args) -> int:
    G = expand_weights_to_gadgets(_load_graph(args), args.style)
    print(json.dumps(graph_to_json(G)) if args.json else serialize_graph(G))
    return EXIT_OK


def cmd_charges(args) -> int:
    G = _load_graph(args)
    ledger = discharge_R1(G) if args.r1 else initial_charges(G, args.flavor)
    lines = [f"stage: {ledger.stage}", f"total: {ledger.total}"]
    lines += [f"  {v}: {c}" for v, c in enumerate(ledger.charges)]
    _emit(args, ledger.to_json(), lines)
    return EXIT_OK


def cmd_audit(args) -> int:
    G = _load_graph(args)
    audit = audit_configurations(G, args.flavor, args.mode, verdict=None)
    failures = audit.failures()
    lines = [f"verdict: {audit.verdict}", f"inference: {'applicable' if audit.inference_applicable else 'NotApplicable-for-inference'}"]
    lines += [f"  {e['lemma']} [{e['hypothesis']}]: {e['witness']}" for e in failures] or ["  no violations"]
    _emit(args, audit.to_json(), lines)
    # only a critical graph breaking a criticality-only conclusion is a failure
    broken = audit.inference_applicable and bool(audit.failures("critical"))
    return EXIT_FAIL if broken else EXIT_OK


def cmd_census(args) -> int:
    census = find_critical_graphs(
        args.n, args.D, args.mode, max_mult=args.max_mult, simple=args.simple,
        restrict=not args.unrestricted, threads=args.threads, budget=args.budget,
    )
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for entry in census.entries:
            out.write(json.dumps(entry.to_json()) + "\n")
        out.write(json.dumps({"summary": census.stats()}) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_FAIL if census.violations or census.unknown else EXIT_OK


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1, help="worker processes for census runs")
    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--graph", metavar="FILE", help="graph file; stdin when omitted or '-'")
    graph.add_argument("--D", type=int, help="override the D recorded in the graph")
    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--budget", type=int, default=10**8, help="search node budget")
    mode = argparse.ArgumentParser(add_help=False)
    mode.add_argument("--mode", required=True, choices=[m.value for m in ColorMode])
    flavor = argparse.ArgumentParser(add_help=False)
    flavor.add_argument("--flavor", required=True, choices=[f.value for f in PotentialFlavor])

    parser = argparse.ArgumentParser(prog="forestlab", description="Forest-partition coloring lab.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common, graph, budget, mode], help="decide colorability")
    p.set_defaults(func=cmd_solve)
    p = sub.add_parser("critical", parents=[common, graph, budget, mode], help="check criticality")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("potential", parents=[common, graph, flavor], help="potential of a vertex set")
    p.add_argument("--subset", type=_subset, help="comma-separated vertices; all when omitted")
    p.set_defaults(func=cmd_potential)
    p = sub.add_parser("minpot", parents=[common, graph, flavor], help="least-potential vertex set")
    p.add_argument("--min-size", type=int, default=2)
    p.add_argument("--allow-whole", action="store_true", help="also consider S = V")
    p.set_defaults(func=cmd_minpot)
    p = sub.add_parser("gaps", parents=[common, graph, flavor], help="evaluate gap predicates")
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("sparsity", parents=[common, graph], help="certify (a,b)-sparsity")
    p.add_argument("--a", type=_fraction, required=True)
    p.add_argument("--b", type=_fraction, required=True)
    p.add_argument("--method", choices=["auto", "exact", "cut"], default="auto")
    p.set_defaults(func=cmd_sparsity)
    p = sub.add_parser("mad", parents=[common, graph], help="maximum average degree")
    p.set_defaults(func=cmd_mad)

    p = sub.add_parser("build", parents=[common], help="build a sharpness family member")
    p.add_argument("--family", required=True, choices=[f.value for f in FamilyId])
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_build)
    p = sub.add_parser("expand", parents=[common, graph], help="replace weights by gadgets")
    p.add_argument("--style", required=True, choices=[s.value for s in ExpansionStyle])
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("charges", parents=[common, graph], help="charge ledger")
    p.add_argument("--flavor", choices=[f.value for f in PotentialFlavor], default="me")
    p.add_argument("--r1", action="store_true", help="apply the light-vertex rule (odd D)")
    p.set_defaults(func=cmd_charges)
    p = sub.add_parser("audit", parents=[common, graph, mode, flavor], help="configuration audits")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("census", parents=[common, mode], help="critical-graph census (JSON lines)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--simple", action="store_true")
    p.add_argument("--max-mult", type=int, default=3)
    p.add_argument("--unrestricted", action="store_true", help="check all graphs, not only connected with min degree 2")
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_census)
    return parser


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--b -1/1`` into ``--b=-1/1``; argparse reads ``-1/1`` as an option."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--a", "--b") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else list(argv)))
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"forestlab {args.command}: unknown, {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ForestLabError, ValueError) as exc:
        print(f"forestlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
