"""Command line entry point.

``freejoin run --config exp.json`` runs every task of a configuration.  The
other subcommands run one task built from their arguments against the systems
and joinings of ``--config``; without task arguments they run the config's
tasks of that type.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from .config import load_config, parse_config
from .errors import FreeJoinError
from .freegroup import parse_word
from .tasks import run_config

SUBCOMMAND_TASK = {
    "eval": "eval",
    "verify-joining": "verify",
    "split-check": "split-check",
    "ergodic": "ergodic",
    "correlate": "correlate",
    "kmixing": "kmixing",
    "folner": "folner",
    "gns-check": "gns-check",
}


def _range(text: str) -> list[int]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    return [int(lo), int(hi)]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="experiment configuration (JSON)")
    common.add_argument("--out", default=os.environ.get("FREEJOIN_OUT"), help="output directory (default $FREEJOIN_OUT)")
    common.add_argument("--seed", type=int, help="sampling seed, overrides the config's seed")
    common.add_argument("--format", choices=("json", "csv"), default="json", help="stdout format")

    parser = argparse.ArgumentParser(prog="freejoin", description="Exact free-product joinings of group systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="print the reduced form of words")
    p.add_argument("words", nargs="+")

    sub.add_parser("run", parents=[common], help="run every task of a configuration")

    p = sub.add_parser("eval", parents=[common], help="evaluate a joining on elements")
    p.add_argument("--joining")
    p.add_argument("elements", nargs="*")

    p = sub.add_parser("verify-joining", parents=[common], help="check the joining axioms")
    p.add_argument("--joining")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--n-range", type=_range, default=[-3, 3], metavar="LO:HI", help="write negative ranges as --n-range=-3:3")

    p = sub.add_parser("split-check", parents=[common], help="test tensorial splitting")
    p.add_argument("--joining")
    p.add_argument("--a1", nargs="+", default=[])
    p.add_argument("--a2", nargs="+", default=[])
    p.add_argument("--expect", choices=("split", "violation"), default="split")

    p = sub.add_parser("ergodic", parents=[common], help="ergodicity and mixing of a system")
    p.add_argument("--system")

    helps = {
        "correlate": "tabulate a correlation over a box of times",
        "kmixing": "check k-fold mixing beyond the gap threshold",
        "folner": "Folner box averages and their limits",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--system")
        p.add_argument("--k", type=int)
        p.add_argument("--monomial", action="append", default=[], help="tagged word, e.g. '1:s[0] 2:s[0]^-1'")
        if name == "correlate":
            p.add_argument("--box", type=_range, action="append", default=[], metavar="LO:HI", help="one range per copy; write negative ranges as --box=-3:3")
        elif name == "kmixing":
            p.add_argument("--size", type=int, default=5)
        else:
            p.add_argument("--boxes", default="shifted", help="shifted, plain, or comma-separated offsets such as 2,4")
            p.add_argument("--n-max", type=int, default=10)
            p.add_argument("--window", type=int, default=2)
            p.add_argument("--shift", type=int, nargs="+")

    p = sub.add_parser("gns-check", parents=[common], help="conditional expectations in the GNS model")
    p.add_argument("--joining")
    p.add_argument("--iota", type=int, default=1)
    p.add_argument("--kappa", type=int, default=2)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--n-range", type=_range, default=[-3, 3], metavar="LO:HI", help="write negative ranges as --n-range=-3:3")
    p.add_argument("--fixed-projection", action="store_true")
    return parser


def task_from_args(args: argparse.Namespace) -> dict[str, Any] | None:
    """The single task described by the arguments, or None to use the config's."""
    cmd = args.command
    t: dict[str, Any] = {"type": SUBCOMMAND_TASK[cmd], "name": cmd}
    if cmd in ("eval", "verify-joining", "split-check", "gns-check"):
        if args.joining is None:
            return None
        t["joining"] = args.joining
    else:
        if args.system is None:
            return None
        t["system"] = args.system
    if cmd == "eval":
        t["elements"] = args.elements
    elif cmd == "verify-joining":
        t["sampling"] = {"count": args.count}
        t["n_range"] = args.n_range
    elif cmd == "split-check":
        t.update(a1=args.a1, a2=args.a2, expect=args.expect)
    elif cmd in ("correlate", "kmixing", "folner"):
        t["k"] = args.k
        if cmd == "folner":
            t["monomials"] = args.monomial
            boxes = args.boxes
            t["boxes"] = boxes if boxes in ("shifted", "plain") else [int(c) for c in boxes.split(",")]
            t.update(N_max=args.n_max, window=args.window)
            if args.shift:
                t["shift"] = args.shift
        else:
            if len(args.monomial) != 1:
                raise SystemExit(f"{cmd}: give exactly one --monomial")
            t["monomial"] = args.monomial[0]
            if cmd == "correlate":
                t["box"] = args.box
            else:
                t["size"] = args.size
    elif cmd == "gns-check":
        t.update(iota=args.iota, kappa=args.kappa, n_range=args.n_range, vectors={"count": args.count})
        if args.fixed_projection:
            t["fixed_projection"] = True
    return {k: v for k, v in t.items() if v is not None}


def _emit(results, fmt: str) -> None:
    if fmt == "csv" and all(r.table is not None for r in results):
        for r in results:
            sys.stdout.write(r.csv_text())
        return
    for r in results:
        sys.stdout.write(r.json_text())


def _reduce(args) -> int:
    reduced = [str(parse_word(w)) for w in args.words]
    if args.format == "json":
        print(json.dumps(reduced))
    else:
        print("\n".join(reduced))
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "reduce":
            return _reduce(args)
        if args.config is None:
            raise SystemExit(f"{args.command}: --config is required")
        if args.command == "run":
            cfg = load_config(args.config)
        else:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
            try:
                doc = json.loads(text)
            except json.JSONDecodeError:
                parse_config(text)  # raises with the line and column
            task = task_from_args(args)
            if task is None:
                kind = SUBCOMMAND_TASK[args.command]
                doc["tasks"] = [t for t in doc.get("tasks", []) if t.get("type") == kind]
            else:
                doc["tasks"] = [task]
            cfg = parse_config(json.dumps(doc))
        status, results = run_config(cfg, args.out, args.seed)
    except FreeJoinError as e:
        print(f"freejoin: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"freejoin: error: {e}", file=sys.stderr)
        return 2
    if args.command == "run":
        for r in results:
            print(f"{r.report.status}  {r.task.name}")
    else:
        _emit(results, args.format)
    return status


if __name__ == "__main__":
    sys.exit(main())
