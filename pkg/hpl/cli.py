# hpl/cli.py
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from collections.abc import Sequence

from .config import resolve_config
from .core.types import format_type
from .engines.factory import ENGINES
from .errors import BudgetExceeded, HplError, NotIncrementallyBound
from .models import CheckReport
from .pda.pdafile import format_pda
from .scheme.printer import format_scheme
from .workbench import Workbench

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_REFUSED = 3

DEPTH_HELP = "terminal levels above CUT; a prefix with CUT on level D is --depth D-1"


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _branch(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"branch must be comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hpl", description="Recursion schemes and their pushdown automata.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str, file_help: str | None = "scheme file") -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if file_help:
            p.add_argument("file", metavar="FILE", help=file_help)
        return p

    p = command("check", "homogeneity, safety and incremental binding")
    p.add_argument("--require", choices=["safe", "ib", "homogeneous", "all"], default="safe")
    p.add_argument("--unfold", action="store_true", help="also run the unfolding binder check")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = command("tree", "value-tree prefix")
    p.add_argument("--engine", choices=ENGINES, default="rewrite")
    p.add_argument("--depth", type=int, help=DEPTH_HELP)
    p.add_argument("--budget", type=int)
    p.add_argument("--unchecked", action="store_true", help="run the pda engine without the binder check")
    p.add_argument("--format", choices=["sexpr", "json"], default="sexpr")

    p = command("to-pda", "collapse-free PDA(G), normalized, in the PDA file grammar")
    p.add_argument("--uniform", action="store_true", help="pop n-ord+1 at every collapse")
    p.add_argument("--unchecked", action="store_true")

    p = command("to-hors", "safe scheme accepted by a PDA file", file_help="PDA file")
    p.add_argument("--every-state", action="store_true", help="one continuation per state, not per pop target")

    p = command("roundtrip", "scheme -> CPDA -> PDA -> safe scheme, with a tree comparison")
    p.add_argument("--depth", type=int, help=DEPTH_HELP)
    p.add_argument("--uniform", action="store_true")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = command("monitor", "check every reachable CPDA configuration")
    p.add_argument("--steps", type=int)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = command("lockstep", "run CPDA(G) and PDA(G) side by side")
    p.add_argument("--steps", type=int)
    p.add_argument("--uniform", action="store_true")
    p.add_argument("--unchecked", action="store_true")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = command("views", "traversal log and views along one branch")
    p.add_argument("--steps", type=int)
    p.add_argument("--branch", type=_branch, default=None, help="child to follow at each output, e.g. 2,1")
    p.add_argument("--trace", action="store_true", help="print one line per step instead")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = command("graph", "computation graph")
    p.add_argument("--format", choices=["dot", "text"], default="dot")
    p.add_argument("--binders", action="store_true", help="draw binder edges")

    p = command("characterize", "binder characterization over random schemes", file_help=None)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def _configure_logging(verbose: int) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, os.getenv("HPL_LOG_LEVEL", "WARNING").upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        wb = Workbench(resolve_config())
        return _COMMANDS[args.command](wb, args)
    except NotIncrementallyBound as e:
        print(f"refused: {e}", file=sys.stderr)
        for v in e.violations[:10]:
            print(f"  {v.rule}: {v.variable}#{v.variable_node} bound past {v.lambda_label}#{v.lambda_node}", file=sys.stderr)
        return EXIT_REFUSED
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except (HplError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


# ----- subcommands ----- #


def _check(wb: Workbench, args) -> int:
    g = wb.scheme(args.file)
    report = wb.check(g, unfold=args.unfold)
    if args.format == "json":
        print(report.model_dump_json(indent=2))
    else:
        print(_check_text(g, report))
    holds = {
        "safe": report.is_safe,
        "ib": report.is_incrementally_bound,
        "homogeneous": report.is_homogeneous,
        "all": report.is_safe and report.is_incrementally_bound,
    }[args.require]
    return EXIT_OK if holds else EXIT_FAILED


def _check_text(g, report: CheckReport) -> str:
    lines = [
        f"order: {report.order}",
        f"homogeneous: {_yes(report.is_homogeneous)}",
    ]
    for name, ok in report.homogeneous.items():
        lines.append(f"  {name} : {format_type(g.nonterminals[name])}  {_yes(ok)}")
    lines.append(f"safe: {_yes(report.is_safe)}")
    for v in report.safety_violations:
        lines.append(
            f"  {v.rule}: operand {v.subterm} of order {v.subterm_order} "
            f"holds {v.parameter} of order {v.parameter_order}"
        )
    lines.append(f"incrementally-bound: {_yes(report.is_incrementally_bound)}")
    for v in report.ib_violations:
        lines.append(
            f"  {v.rule}: {v.variable}#{v.variable_node} (order {v.variable_order}) is bound past "
            f"{v.lambda_label}#{v.lambda_node} (order {v.lambda_order})"
        )
    if report.unfold_checked:
        nodes = " ".join(f"#{v}" for v in report.unfold_disagreements)
        lines.append("unfolding check: " + (f"disagrees at {nodes}" if nodes else "agrees"))
    lines.append("dead rules: " + (" ".join(report.dead_rules) or "none"))
    return "\n".join(lines)


def _tree(wb: Workbench, args) -> int:
    g = wb.scheme(args.file)
    tree = wb.tree(g, args.engine, args.depth, args.budget, check=not args.unchecked)
    if args.format == "json":
        print(json.dumps({"engine": args.engine, "tree": tree.to_sexpr()}, indent=2))
    else:
        print(tree.to_sexpr())
    return EXIT_OK


def _to_pda(wb: Workbench, args) -> int:
    g = wb.scheme(args.file)
    pda = wb.to_pda(g, uniform=args.uniform, check=not args.unchecked)
    sys.stdout.write(format_pda(pda, header=f"PDA({g.start}) of {args.file}"))
    return EXIT_OK


def _to_hors(wb: Workbench, args) -> int:
    pda = wb.pda(args.file)
    sys.stdout.write(format_scheme(wb.to_hors(pda, args.every_state), header=f"safe scheme of {args.file}"))
    return EXIT_OK


def _roundtrip(wb: Workbench, args) -> int:
    g = wb.scheme(args.file)
    target, report = wb.roundtrip(g, args.depth, uniform=args.uniform)
    if args.format == "json":
        print(report.model_dump_json(indent=2))
    else:
        sys.stdout.write(format_scheme(target, header=f"safe scheme equivalent to {args.file}"))
        print(
            f"# homogeneous: {_yes(report.target_homogeneous)}, safe: {_yes(report.target_safe)}, "
            f"incrementally-bound: {_yes(report.target_incrementally_bound)}"
        )
        print(f"# depth {report.depth}: {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_FAILED


def _monitor(wb: Workbench, args) -> int:
    report = wb.monitor(wb.scheme(args.file), args.steps)
    if args.format == "json":
        print(report.model_dump_json(indent=2))
    else:
        print(
            f"configurations: {report.configurations}, variable tops: {report.variable_tops}, "
            f"max link height: {report.max_link_height}, violations: {len(report.violations)}"
        )
        for v in report.violations:
            print(f"  step {v.step} branch {v.branch} [{v.kind}] at {v.top}: {v.detail}")
            if v.stack:
                print(f"    {v.stack}")
    return EXIT_OK if report.ok else EXIT_FAILED


def _lockstep(wb: Workbench, args) -> int:
    g = wb.scheme(args.file)
    report = wb.lockstep(g, args.steps, uniform=args.uniform, check=not args.unchecked)
    if args.format == "json":
        print(report.model_dump_json(indent=2))
    else:
        print(f"steps: {report.steps}, collapses: {report.collapses}, mismatches: {len(report.mismatches)}")
        for m in report.mismatches:
            print(f"  step {m.step} branch {m.branch} [{m.kind}]: {m.detail}")
    return EXIT_OK if report.ok else EXIT_FAILED


def _views(wb: Workbench, args) -> int:
    g = wb.scheme(args.file)
    if args.trace:
        for line in wb.trace(g, args.steps, args.branch):
            print(line)
        return EXIT_OK
    views = wb.views(g, args.steps, args.branch)
    if args.format == "json":
        print(json.dumps(views, indent=2, ensure_ascii=False))
        return EXIT_OK
    for index, label, justifier in views["log"]:
        print(f"{index:>5} {label}" + (f" -> {justifier}" if justifier is not None else ""))
    for key in ("pview", "oview", "long_oview"):
        if key in views:
            print(f"{key}: {' '.join(views[key])}")
    if "stuck" in views:
        print(f"stuck: {views['stuck']}")
    return EXIT_OK


def _graph(wb: Workbench, args) -> int:
    g = wb.scheme(args.file)
    if args.format == "dot":
        print(wb.dot(g, binders=args.binders))
        return EXIT_OK
    graph = wb.graph(g)
    for node in graph.nodes:
        extra = f" binder={node.binder} span={node.span}" if node.binder is not None else ""
        prime = " prime" if node.prime else ""
        print(f"{node.id:>4} {node.render():<12} order={node.order} children={node.children}{prime}{extra}")
    return EXIT_OK


def _characterize(wb: Workbench, args) -> int:
    report = wb.characterize(args.count, args.seed)
    if args.format == "json":
        print(report.model_dump_json(indent=2))
    else:
        print(
            f"schemes: {report.schemes}, safe: {report.safe}, counterexamples: "
            f"{len(report.counterexamples)}, unfold disagreements: {len(report.unfold_disagreements)}"
        )
        for c in report.counterexamples + report.unfold_disagreements:
            print(c)
    return EXIT_OK if report.ok else EXIT_FAILED


_COMMANDS = {
    "check": _check,
    "tree": _tree,
    "to-pda": _to_pda,
    "to-hors": _to_hors,
    "roundtrip": _roundtrip,
    "monitor": _monitor,
    "lockstep": _lockstep,
    "views": _views,
    "graph": _graph,
    "characterize": _characterize,
}


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
