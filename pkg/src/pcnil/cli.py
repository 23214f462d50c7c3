"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .commutators import maltsev_basis, tree_from_text, tree_to_text, weight
from .graph import GraphError, example_graph, load_graph
from .group import NormalForm, WordSyntaxError, collector, parse_word
from .verify import verify_report


class InputError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _graph(path: str):
    try:
        return load_graph(path)
    except OSError as exc:
        raise InputError(f"cannot read graph file: {exc}") from None
    except GraphError as exc:
        raise InputError(f"bad graph file {path}: {exc}") from None


def _word(g, text: str):
    try:
        return parse_word(g, text)
    except WordSyntaxError as exc:
        raise InputError(f"cannot parse word {text!r}: {exc}") from None


def format_basis(basis) -> str:
    lines = []
    for k in range(1, basis.nilpotency_class + 1):
        items = ", ".join(tree_to_text(c) for c in basis.of_weight(k))
        lines.append(f"weight {k}: {items}" if items else f"weight {k}: -")
    lines.append(f"total: {len(basis)}")
    return "\n".join(lines)


def format_nf(nf: NormalForm) -> str:
    return nf.to_text() if not nf.is_identity() else "identity"


def cmd_basis(args) -> int:
    basis = maltsev_basis(_graph(args.graph), args.nilpotency_class)
    print(basis.dumps() if args.json else format_basis(basis))
    return 0


def _emit_nf(args, nf: NormalForm) -> int:
    print(nf.dumps() if args.json else format_nf(nf))
    return 0


def cmd_nf(args) -> int:
    g = _graph(args.graph)
    col = collector(g, args.nilpotency_class)
    return _emit_nf(args, col.collect(_word(g, args.word)))


def cmd_op(args) -> int:
    g = _graph(args.graph)
    col = collector(g, args.nilpotency_class)
    a = col.collect(_word(g, args.a))
    if args.command == "inv":
        out = col.inv(a)
    elif args.command == "pow":
        out = col.pow(a, args.exponent)
    else:
        b = col.collect(_word(g, args.b))
        out = col.mul(a, b) if args.command == "mul" else col.comm(a, b)
    return _emit_nf(args, out)


def cmd_verify(args) -> int:
    report = verify_report(_graph(args.graph), args.nilpotency_class, args.trials, args.seed)
    print(json.dumps(report, indent=2))
    return 0 if report["pass"] else 1


def load_golden(path: str | None) -> set[str]:
    if path is None:
        text = resources.files("pcnil").joinpath("data/example_golden.json").read_text()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read golden file: {exc}") from None
    try:
        doc = json.loads(text)
        return {tree_to_text(tree_from_text(t)) for t in doc["basis"]}
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad golden file: {exc}") from None


def cmd_example(args) -> int:
    g = example_graph()
    basis = maltsev_basis(g, 3)
    golden = load_golden(args.golden)
    got = {tree_to_text(c) for c in basis}
    print("graph: vertices x1 > x2 > x3, edge {x1,x2}; class 3")
    print(format_basis(basis))
    if got == golden and len(got) == len(basis):
        print("golden: match")
        return 0
    for t in sorted(golden - got):
        print(f"golden: missing {t}")
    for t in sorted(got - golden):
        print(f"golden: unexpected {t}")
    return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pcnil", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, json_flag=True):
        sp.add_argument("--graph", required=True, help="graph JSON file")
        sp.add_argument("--class", dest="nilpotency_class", type=_positive, required=True,
                        help="nilpotency class m")
        if json_flag:
            sp.add_argument("--json", action="store_true", help="emit JSON")

    sp = sub.add_parser("basis", help="list the Maltsev basis")
    common(sp)
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("nf", help="normal form of a word")
    common(sp)
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=cmd_nf)

    for name, arity in (("mul", 2), ("comm", 2), ("inv", 1)):
        sp = sub.add_parser(name, help=f"{name} of normal forms")
        common(sp)
        sp.add_argument("a")
        if arity == 2:
            sp.add_argument("b")
        sp.set_defaults(func=cmd_op)
    sp = sub.add_parser("pow", help="integer power of a normal form")
    common(sp)
    sp.add_argument("a")
    sp.add_argument("exponent", type=int)
    sp.set_defaults(func=cmd_op)

    sp = sub.add_parser("verify", help="run the consistency checks")
    common(sp, json_flag=False)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("example", help="reproduce the three-vertex example")
    sp.add_argument("--golden", help="golden basis file (defaults to the bundled one)")
    sp.set_defaults(func=cmd_example)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"pcnil: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
