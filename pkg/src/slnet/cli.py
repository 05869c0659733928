"""Command-line front end."""

from __future__ import annotations

import argparse
import sys

from .altpath import detect_altpath, format_tree, make_pair, parse_tree
from .blobs import pendant_candidates
from .errors import NetworkError
from .iso import is_isomorphic
from .metrics import format_matrix, parse_matrix, shortest_matrix, sl_matrix
from .network import format_network, parse_network, to_dot
from .reconstruct import AMBIGUOUS, UNIQUE, reconstruct_genside, reconstruct_shortest, reconstruct_sl
from .splits import all_splits
from .testkit import GenParams, random_network, verify_roundtrip

EXIT_OK = 0
EXIT_NONE = 1
EXIT_AMBIGUOUS = 10
EXIT_UNREALIZABLE = 20
EXIT_USAGE = 64
EXIT_BAD_INPUT = 65

_STATUS_CODES = {UNIQUE: EXIT_OK, AMBIGUOUS: EXIT_AMBIGUOUS}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _network(path: str):
    net = parse_network(_read(path))
    net.require_valid()
    return net


def cmd_distances(args) -> int:
    net = _network(args.input)
    m = shortest_matrix(net) if args.shortest else sl_matrix(net)
    _write(args.out, format_matrix(m))
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    m = parse_matrix(_read(args.input))
    if args.mode == "sl":
        if not m.is_sl:
            raise NetworkError("sl mode needs a matrix with longest distances")
        result = reconstruct_sl(m)
    elif args.mode == "shortest":
        result = reconstruct_shortest(m.shortest())
    else:
        result = reconstruct_genside(m.shortest())
    if result.status == UNIQUE:
        _write(args.out, format_network(result.network))
    elif result.status == AMBIGUOUS:
        print(f"ambiguous: {len(result.networks)} networks realize the matrix", file=sys.stderr)
        if args.all:
            blocks = [f"# network {i + 1}\n" + format_network(n) for i, n in enumerate(result.networks)]
            _write(args.out, "\n".join(blocks))
    else:
        print(f"unrealizable: {result.reason}", file=sys.stderr)
    return _STATUS_CODES.get(result.status, EXIT_UNREALIZABLE)


def cmd_check_splits(args) -> int:
    m = parse_matrix(_read(args.input))
    splits = sorted(str(s) for s in all_splits(m, exhaustive=args.exhaustive) if args.trivial or s.nontrivial)
    _write(args.out, "".join(s + "\n" for s in splits))
    return EXIT_OK


def cmd_classify_pendant(args) -> int:
    m = parse_matrix(_read(args.input))
    part = [t for t in args.part.split(",") if t]
    forms = pendant_candidates(m, part)
    for form in forms:
        print(form)
    if not forms:
        print("no pendant blob fits the part", file=sys.stderr)
        return EXIT_UNREALIZABLE
    return EXIT_OK if len(forms) == 1 else EXIT_AMBIGUOUS


def cmd_altpath_detect(args) -> int:
    emb = detect_altpath(_network(args.input))
    if emb is None:
        print("no alt-path structure")
        return EXIT_NONE
    tree = emb.tree()
    print(f"alt-path structure with {len(emb.parts)} parts")
    sys.stdout.write(format_tree(tree))
    return EXIT_OK


def cmd_altpath_make_pair(args) -> int:
    t = parse_tree(_read(args.tree))
    n1, n2 = make_pair(t)
    _write(args.out1, format_network(n1))
    _write(args.out2, format_network(n2))
    return EXIT_OK


def cmd_random(args) -> int:
    lo = args.leaves if args.leaves is not None else args.min_leaves
    hi = args.leaves if args.leaves is not None else args.max_leaves
    p = GenParams(
        min_leaves=lo, max_leaves=hi, max_blobs=args.max_blobs, max_chain=args.max_chain,
        allow_bad_blobs=not args.no_bad_blobs, require_leaf_every_side=args.genside,
        max_level=args.max_level if args.max_level is not None else (3 if args.genside else 2),
        seed=args.seed,
    )
    _write(args.out, format_network(random_network(p)))
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_roundtrip(_network(args.input), args.mode)
    print(report)
    return EXIT_OK if report.passed else EXIT_UNREALIZABLE


def cmd_iso(args) -> int:
    same = is_isomorphic(_network(args.first), _network(args.second))
    print("isomorphic" if same else "not isomorphic")
    return EXIT_OK if same else EXIT_NONE


def cmd_dot(args) -> int:
    _write(args.out, to_dot(_network(args.input), args.name))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="slnet", description="Distance matrices and reconstruction of level-2 phylogenetic networks.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("distances", help="write the distance matrix of a network")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--shortest", action="store_true", help="shortest distances only")
    p.set_defaults(func=cmd_distances)

    p = sub.add_parser("reconstruct", help="rebuild a network from a matrix")
    p.add_argument("--mode", choices=["sl", "shortest", "genside"], default="sl")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--all", action="store_true", help="print every network of an ambiguous result")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("check-splits", help="list the cut-edge splits of a matrix")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--trivial", action="store_true", help="include single-leaf splits")
    p.set_defaults(func=cmd_check_splits)

    p = sub.add_parser("classify-pendant", help="pendant blob forms fitting a minimal part")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--part", required=True, help="comma-separated taxa")
    p.set_defaults(func=cmd_classify_pendant)

    p = sub.add_parser("altpath", help="alt-path structures")
    alt = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = alt.add_parser("detect")
    q.add_argument("--in", dest="input", required=True)
    q.set_defaults(func=cmd_altpath_detect)
    q = alt.add_parser("make-pair")
    q.add_argument("--tree", required=True)
    q.add_argument("--out1", required=True)
    q.add_argument("--out2", required=True)
    q.set_defaults(func=cmd_altpath_make_pair)

    p = sub.add_parser("random", help="sample a random network")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--leaves", type=int)
    p.add_argument("--min-leaves", type=int, default=5)
    p.add_argument("--max-leaves", type=int, default=20)
    p.add_argument("--max-blobs", type=int, default=6)
    p.add_argument("--max-chain", type=int, default=3)
    p.add_argument("--max-level", type=int)
    p.add_argument("--no-bad-blobs", action="store_true")
    p.add_argument("--genside", action="store_true", help="leaf on every generator side")
    p.add_argument("--out")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("verify", help="round-trip a network through its matrix")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--mode", choices=["sl", "shortest", "genside"], default="sl")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("iso", help="test two networks for isomorphism")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("dot", help="export a network in DOT format")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--name", default="N")
    p.set_defaults(func=cmd_dot)
    return ap


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except NetworkError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
