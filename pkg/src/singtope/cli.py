"""Command-line front end.

Exit codes: 0 success, 1 census found a counterexample, 2 bad input or
parameters, 3 refused verdict (non-rational graph where conicality or a
decomposition was required, or a non-definite graph given to ``trace``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .census import CensusBoundsError, census
from .classify import NotRationalError, analyze, thick_thin
from .family import InvalidFamilyParams, generate, parse_params
from .formats import format_dot, format_json, format_text, parse_graph, parse_star
from .graph import GraphError, WeightedGraph, graph_is_negative_definite
from .laufer import STEP_BUDGET_ENV, StepBudgetExceeded, laufer_zmin

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _seed(text: str) -> None:
    if text.lower() != "none":
        raise argparse.ArgumentTypeError("the tool is deterministic; only 'none' is accepted")
    return None


def _common(defaults: bool) -> argparse.ArgumentParser:
    # shared by the top level and every subcommand; subcommands only override when given
    p = argparse.ArgumentParser(add_help=False)
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    p.add_argument("--format", choices=("json", "text", "dot"), **({"default": "json"} if defaults else kw))
    p.add_argument("--jobs", type=int, **({"default": 1} if defaults else kw), help="census workers")
    p.add_argument("--seed", type=_seed, **({"default": None} if defaults else kw), help="only 'none'")
    return p


def _graph_source(p: argparse.ArgumentParser):
    p.add_argument("input", nargs="?", help="graph file, '-' for stdin, or inline graph text")
    p.add_argument("--star", help='star shorthand, e.g. "center=-2 arms=[-2|-2|-2]"')
    p.add_argument("--family", metavar="N,K,L", help="use the family graph G(n,k,l)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singtope",
        parents=[_common(True)],
        description="Resolution graphs of surface singularities: fundamental cycle, "
        "rationality, thick-thin decomposition and conicality.",
        epilog=f"Set {STEP_BUDGET_ENV} to override the Laufer step cap.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(False)

    p = sub.add_parser("analyze", parents=[common], help="full report for one graph")
    _graph_source(p)
    p.add_argument(
        "--require-conical",
        action="store_true",
        help="exit 3 when the conicality verdict is refused (non-rational graph)",
    )

    p = sub.add_parser("family", parents=[common], help="generate G(n,k,l)")
    p.add_argument("params", metavar="N,K,L")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--emit", action="store_true", help="print the graph (default)")
    mode.add_argument("--analyze", action="store_true", help="print its analysis")

    p = sub.add_parser("census", parents=[common], help="exhaustive check on small trees")
    p.add_argument("--max-vertices", type=int, default=9)
    p.add_argument("--min-weight", type=int, default=-5)
    shape = p.add_mutually_exclusive_group()
    shape.add_argument("--stars", dest="shape", action="store_const", const="stars",
                       help="star-shaped trees only")
    shape.add_argument("--bamboos", dest="shape", action="store_const", const="bamboos",
                       help="bamboos with 2 or more vertices")
    shape.add_argument("--trees", dest="shape", action="store_const", const="trees",
                       help="all trees (default)")
    p.add_argument("--decompose", action="store_true",
                   help="also compare conicality with the thick-thin decomposition")
    p.set_defaults(shape="trees")

    p = sub.add_parser("trace", parents=[common], help="step table of Laufer's algorithm")
    _graph_source(p)
    p.add_argument("--tie-break", choices=("max", "min"), default="max")

    p = sub.add_parser("decompose", parents=[common], help="thick-thin decomposition")
    _graph_source(p)
    return parser


def _load_graph(args) -> WeightedGraph:
    given = [x for x in (args.input, args.star, args.family) if x is not None]
    if len(given) != 1:
        raise CliError("give exactly one of: an input graph, --star, --family")
    if args.family is not None:
        return generate(parse_params(args.family))
    if args.star is not None:
        return parse_star(args.star)
    src = args.input
    if src == "-":
        text = sys.stdin.read()
    elif os.path.isfile(src):
        with open(src, encoding="utf-8") as fh:
            text = fh.read()
    elif any(c in src for c in "{\n=:"):
        text = src
    else:
        raise CliError(f"no such file: {src}")
    return parse_graph(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _report_text(rep) -> str:
    d = rep.to_dict()
    lines = [f"graph: {format_text(rep.graph).strip().replace(chr(10), '; ')}"]
    for key in ("negative_definite", "zmin", "rational", "l_nodes", "node_count",
                "metrically_conical", "multeq_consistent", "lcm_property"):
        lines.append(f"{key}: {d[key]}")
    fam = rep.family
    lines.append(f"family: {fam if fam is None else f'G({fam})'}")
    if rep.decomposition is not None:
        dec = rep.decomposition
        lines.append(
            f"decomposition: {len(dec.thick_pieces)} thick, {len(dec.thin_pieces)} thin, "
            f"{dec.blowups_performed} blow-ups"
        )
    for msg in rep.diagnostics:
        lines.append(f"note: {msg}")
    return "\n".join(lines)


def _emit_graph(g: WeightedGraph, fmt: str) -> str:
    if fmt == "dot":
        return format_dot(g).rstrip("\n")
    if fmt == "text":
        return format_text(g).rstrip("\n")
    return format_json(g)


def cmd_analyze(args) -> int:
    g = _load_graph(args)
    rep = analyze(g)
    if args.format == "dot":
        print(format_dot(g).rstrip("\n"))
    elif args.format == "text":
        print(_report_text(rep))
    else:
        print(_dump(rep.to_dict()))
    if getattr(args, "require_conical", False) and rep.rational is not True:
        print("error: conicality not topologically determined (graph is not rational)", file=sys.stderr)
        return EXIT_REFUSED
    return EXIT_OK


def cmd_family(args) -> int:
    params = parse_params(args.params)
    g = generate(params)
    if args.analyze:
        rep = analyze(g)
        print(_report_text(rep) if args.format == "text" else _dump(rep.to_dict()))
    else:
        print(_emit_graph(g, args.format))
    return EXIT_OK


def cmd_census(args) -> int:
    rep = census(args.max_vertices, args.min_weight, args.shape, jobs=args.jobs, decompose=args.decompose)
    if args.format == "text":
        d = rep.to_dict()
        for key in ("total", "negative_definite", "rational", "conical", "family_matched"):
            print(f"{key}: {d[key]}")
        print(f"counterexamples: {len(rep.counterexamples)}")
        print(f"lcm_violations: {len(rep.lcm_violations)}")
        if args.decompose:
            print(f"decomposition_mismatches: {len(rep.decomposition_mismatches)}")
        for e in rep.counterexamples:
            print("counterexample: " + json.dumps(e))
    else:
        print(rep.to_json())
    return EXIT_OK if rep.ok else EXIT_COUNTEREXAMPLE


def cmd_trace(args) -> int:
    g = _load_graph(args)
    if not graph_is_negative_definite(g):
        print("error: intersection form is not negative definite", file=sys.stderr)
        return EXIT_REFUSED
    tr = laufer_zmin(g, tie_break=args.tie_break, check_definite=False)
    if args.format == "json":
        print(_dump(tr.to_dict()))
        return EXIT_OK
    z = [1] * len(g)
    print(f"{'step':>4}  {'vertex':>6}  {'dot':>3}  multiplicities")
    print(f"{'':>4}  {'':>6}  {'':>3}  {z}")
    for s in tr.steps:
        z[s.vertex] += 1
        print(f"{s.i:>4}  {s.vertex:>6}  {s.dot:>3}  {z}")
    print(f"zmin: {list(tr.final_cycle)}")
    print(f"rational: {str(tr.rational).lower()}")
    if tr.violation is not None:
        v = tr.violation
        print(f"violation: step {v.step}, vertex {v.vertex}, intersection {v.value}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = _load_graph(args)
    if not graph_is_negative_definite(g):
        print("error: intersection form is not negative definite", file=sys.stderr)
        return EXIT_REFUSED
    dec = thick_thin(g)
    if args.format == "dot":
        print(format_dot(dec.graph).rstrip("\n"))
    elif args.format == "text":
        print(f"blowups_performed: {dec.blowups_performed}")
        print(f"zmin: {list(dec.zmin)}")
        print(f"l_nodes: {sorted(dec.l_nodes)}")
        for t in dec.thick_pieces:
            print(f"thick: L-node {t.l_node}, bamboos {[list(b) for b in t.bamboos]}")
        for c in dec.thin_pieces:
            print(f"thin: {list(c)}")
        print(f"conical: {str(dec.conical).lower()}")
    else:
        print(_dump(dec.to_dict()))
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "family": cmd_family,
    "census": cmd_census,
    "trace": cmd_trace,
    "decompose": cmd_decompose,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "dot" and args.command in ("census", "trace"):
        parser.error(f"--format dot is not available for {args.command}")
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except NotRationalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (GraphError, InvalidFamilyParams, CensusBoundsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StepBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
