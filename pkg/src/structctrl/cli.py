"""Command line interface.

Exit codes: 0 structurally controllable (or success), 1 not
controllable (or crosscheck failures), 2 undecided because a size limit
was hit, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import replace
from typing import Optional, Sequence

from . import __version__
from .analysis import CONDITIONS, analyze, format_report
from .crosscheck import crosscheck
from .dot import export_dot
from .instances import MODES, generate_random, load_instance, serialize_instance
from .model import InstanceError, SizeLimitExceeded, graph_of_pair, validate_scg
from .reach import build_cactus_union
from .subgraphs import DEFAULT_LIMITS, enumerate_mcs, first_mcs, similarity_classes
from .transfer import build_transfer_graph

EXIT_YES, EXIT_NO, EXIT_UNDECIDED, EXIT_INPUT = 0, 1, 2, 3


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _limits(args):
    if getattr(args, "max_enum", None) is None:
        return DEFAULT_LIMITS
    return replace(DEFAULT_LIMITS, max_subgraphs=args.max_enum)


def _load(path: str):
    return load_instance(path, allow_nonbinary=True)


def cmd_validate(args) -> int:
    pair = _load(args.file)
    rep = validate_scg(graph_of_pair(pair))
    print(f"n={pair.n} m={pair.m} q={pair.q}  binary={'yes' if pair.is_binary else 'no'}")
    for e in pair.eliminated:
        coeffs = ", ".join(f"{c}*p{k}" for k, c in sorted(e.combination.items()))
        print(f"term p{e.label} is dependent and was folded into: {coeffs}")
    if rep.valid:
        print("graph: valid")
        return EXIT_YES
    for v in rep.violations:
        print(f"graph violation: {v}")
    return EXIT_INPUT


def cmd_analyze(args) -> int:
    pair = _load(args.file)
    rep = analyze(pair, args.condition, trials=args.trials, seed=args.seed, limits=_limits(args))
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2))
    else:
        print(format_report(rep, witness=args.witness, color=_use_color(sys.stdout)))
    if rep.verdict is None:
        return EXIT_UNDECIDED
    return EXIT_YES if rep.verdict else EXIT_NO


def cmd_enumerate(args) -> int:
    pair = _load(args.file)
    subs = enumerate_mcs(graph_of_pair(pair), _limits(args))
    classes = similarity_classes(subs)
    print(f"{len(subs)} multi-colored subgraphs in {len(classes)} similarity classes")
    for cls in classes:
        state = "balanced" if cls.balanced else "unbalanced"
        print(
            f"sinks {list(cls.sink_set)} colors {list(cls.color_set)}: "
            f"{len(cls.members)} member(s), odd {cls.odd_count}, even {cls.even_count}, {state}"
        )
        for s, p in zip(cls.members, cls.parities):
            print(f"  {p.value:<5}" + " ".join(f"({j},{i})_{k}" for j, i, k in s.arcs))
    return EXIT_YES


def cmd_gen(args) -> int:
    try:
        pair = generate_random(args.n, args.m, args.q, args.density, args.seed, args.mode)
    except ValueError as exc:
        raise InstanceError(str(exc)) from None
    text = serialize_instance(pair)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


def cmd_crosscheck(args) -> int:
    summary = crosscheck(
        args.count, args.max_n, args.max_m, args.max_q, args.seed, args.mode, args.jobs, not args.no_properties
    )
    print("\n".join(summary.lines()))
    return EXIT_NO if summary.failures else EXIT_YES


def cmd_export_dot(args) -> int:
    pair = _load(args.file)
    scg = graph_of_pair(pair)
    if args.what == "graph":
        text = export_dot(scg)
    elif args.what == "mcs":
        if args.index is None:
            sub = first_mcs(scg, _limits(args))
        else:
            subs = enumerate_mcs(scg, _limits(args))
            sub = subs[args.index] if 0 <= args.index < len(subs) else None
        if sub is None:
            print("no such multi-colored subgraph", file=sys.stderr)
            return EXIT_NO
        text = export_dot(sub)
    elif args.what == "cactus":
        decomp = build_cactus_union(scg, None, _limits(args))
        if decomp is None:
            print("no cactus union: forest or multi-colored subgraph missing", file=sys.stderr)
            return EXIT_NO
        text = export_dot(decomp, n=pair.n, m=pair.m)
    else:
        text = export_dot(build_transfer_graph(pair))
    sys.stdout.write(text)
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="structctrl", description="Structural controllability of binary linearly parameterized pairs.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log debug messages to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse an instance and check its graph")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="decide structural controllability")
    p.add_argument("file")
    p.add_argument("--condition", choices=list(CONDITIONS) + ["all"], default="all")
    p.add_argument("--witness", action="store_true", help="print certificates: class, cactus, transfer tree")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--seed", type=int, default=0, help="seed for the randomized check")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--max-enum", type=int, default=None, help="limit on enumerated subgraphs")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("enumerate", help="list multi-colored subgraphs by similarity class")
    p.add_argument("file")
    p.add_argument("--max-enum", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=MODES, default="binary")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("crosscheck", help="run all checks on a seeded random corpus")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-m", type=int, default=2)
    p.add_argument("--max-q", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=MODES, default="binary")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-properties", action="store_true", help="only compare the verdicts")
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("export-dot", help="write Graphviz DOT text")
    p.add_argument("file")
    p.add_argument("--what", choices=["graph", "mcs", "cactus", "transfer"], default="graph")
    p.add_argument("--index", type=int, default=None, help="subgraph position in enumeration order")
    p.add_argument("--max-enum", type=int, default=None)
    p.set_defaults(func=cmd_export_dot)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InstanceError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizeLimitExceeded as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED


if __name__ == "__main__":
    sys.exit(main())
