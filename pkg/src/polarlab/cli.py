"""``polarlab`` command line.

Exit status: 0 success, 1 a verification did not reproduce (or the search
budget ran out), 2 bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from polarlab import constructions as cons
from polarlab import verify
from polarlab.canon import BudgetExceeded, automorphism_order, canonical_form, isomorphism
from polarlab.graphcore import (
    SchemeError,
    SrgError,
    decode_graph6,
    edge_list,
    encode_graph6,
    labels_json,
    srg_params,
    verify_scheme,
)

LONG_THRESHOLD = 64


class UsageError(Exception):
    pass


def _read_graph(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return decode_graph6(data)
    except ValueError as e:
        raise UsageError(f"{path}: malformed graph6: {e}") from None


def _emit(text: str | bytes, out: str | None) -> None:
    if out is None:
        if isinstance(text, bytes):
            text = text.decode("ascii")
        sys.stdout.write(text)
        return
    mode = "wb" if isinstance(text, bytes) else "w"
    with open(out, mode) as fh:
        fh.write(text)


def cmd_build(args) -> int:
    try:
        g = cons.build(args.construction, args.n)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.format == "graph6":
        _emit(encode_graph6(g) + b"\n", args.out)
    elif args.format == "edges":
        _emit(edge_list(g), args.out)
    else:
        payload = {
            "construction": args.construction,
            "n": args.n,
            "order": g.order,
            "labels": list(g.labels),
            "edges": [list(e) for e in g.edges()],
            "graph6": encode_graph6(g).decode("ascii"),
        }
        _emit(json.dumps(payload, indent=1) + "\n", args.out)
    if args.out is not None and args.format != "json":
        Path(args.out + ".labels.json").write_text(labels_json(g))
    return 0


def cmd_check(args) -> int:
    g = _read_graph(args.input)
    try:
        p = srg_params(g)
    except SrgError as e:
        print(f"NOT STRONGLY REGULAR ({e.kind}): {e}")
        return 1
    print(p)
    return 0


def cmd_canon(args) -> int:
    g = _read_graph(args.input)
    res = canonical_form(g)
    print(res.certificate.decode("ascii"))
    print("labeling " + " ".join(map(str, res.labeling)))
    return 0


def cmd_iso(args) -> int:
    g = _read_graph(args.a)
    h = _read_graph(args.b)
    phi = isomorphism(g, h)
    if phi is None:
        print("NON-ISOMORPHIC")
    else:
        print("ISOMORPHIC")
        print("map " + " ".join(map(str, phi)))
    return 0


def cmd_aut(args) -> int:
    g = _read_graph(args.input)
    if g.order > LONG_THRESHOLD and not args.allow_long:
        raise UsageError(f"graph has {g.order} vertices; pass --allow-long to run the group search")
    print(automorphism_order(g))
    return 0


def cmd_scheme(args) -> int:
    try:
        s = cons.build_antiflag_scheme(args.n)
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(f"antiflags {s.order}")
    print("valencies " + " ".join(map(str, s.valencies())))
    try:
        p = verify_scheme(s)
    except SchemeError as e:
        print(f"FAILED {e.axiom}: {e} witness={list(e.witness)}")
        return 1
    for k in range(p.shape[0]):
        print(f"p^{k} " + " | ".join(" ".join(map(str, row)) for row in p[k].tolist()))
    return 0


def cmd_verify_all(args) -> int:
    report = verify.verify_all(args.n)
    for line in verify.table_lines(report):
        print(line)
    if args.report:
        Path(args.report).write_text(verify.dumps(report))
    return 0 if report["ok"] else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polarlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build one construction and write it out")
    p.add_argument("--construction", required=True, choices=[c.value for c in cons.ConstructionId])
    p.add_argument("--n", type=int, default=3, choices=(2, 3, 4))
    p.add_argument("--format", required=True, choices=("graph6", "edges", "json"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", help="certify strong regularity")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("canon", help="print the canonical graph6 form")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("iso", help="test two graph6 files for isomorphism")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("aut", help="order of the automorphism group")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--allow-long", action="store_true")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("scheme", help="antiflag association scheme")
    p.add_argument("--n", type=int, required=True, choices=(3, 4))
    p.set_defaults(func=cmd_scheme)

    p = sub.add_parser("verify-all", help="run every check and report")
    p.add_argument("--n", type=int, default=3, choices=(3, 4))
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify_all)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args)
    except UsageError as e:
        print(f"polarlab: error: {e}", file=sys.stderr)
        return 2
    except BudgetExceeded as e:
        print(f"polarlab: budget exceeded: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
