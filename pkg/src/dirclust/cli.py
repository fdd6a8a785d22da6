"""Command-line interface.

Exit codes: 0 success, 1 a selected check failed, 2 unparsable input or bad
parameters, 3 input violates a network/ultrametric invariant, 4 method not
applicable to the input (single linkage on an asymmetric network).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import harness
from .errors import BadParams, BadPermutation, DirclustError, NotSymmetric, ValidationError
from .io import ParseError, matrix_to_text, network_to_text, parse_matrix, parse_network
from .methods import MethodId, cluster
from .network import (
    CanonicalSpec,
    canonical_network,
    is_symmetric,
    min_loop_cost,
    separation,
)
from .ultrametric import (
    Ultrametric,
    format_number,
    merges_to_text,
    to_dendrogram,
    to_newick,
    validate_ultrametric,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_MISMATCH = 4

CHECKS = ("ultrametric", "P1", "P1'", "thm3", "thm6")


class _Exit(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def _read_text(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise _Exit(EXIT_PARSE, f"cannot read {path}: {exc}") from None


def _load_network(path, fmt):
    try:
        return parse_network(_read_text(path), fmt)
    except ParseError as exc:
        raise _Exit(EXIT_PARSE, f"parse error: {exc}") from None
    except ValidationError as exc:
        raise _Exit(EXIT_INVALID, f"invalid network ({type(exc).__name__}): {exc}") from None


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_cluster(args):
    net = _load_network(args.input, args.format)
    try:
        u = cluster(args.method, net)
    except NotSymmetric as exc:
        raise _Exit(EXIT_MISMATCH, f"{exc}; use reciprocal, nonreciprocal or unilateral") from None
    if args.output == "matrix":
        text = matrix_to_text(u.labels, u.values)
    else:
        d = to_dendrogram(u)
        if not d.complete and d.n > 1:
            print(f"note: {len(d.roots())} clusters never merge (inf)", file=sys.stderr)
        text = merges_to_text(d) if args.output == "merges" else to_newick(d)
    _write(text, args.out)
    return EXIT_OK


def cmd_info(args):
    net = _load_network(args.input, args.format)
    lines = [f"nodes\t{net.n}", f"symmetric\t{str(is_symmetric(net)).lower()}"]
    if net.n >= 2:
        lines.append(f"separation\t{format_number(separation(net))}")
        lines.append(f"min_loop_cost\t{format_number(min_loop_cost(net))}")
    else:
        lines += ["separation\tn/a", "min_loop_cost\tn/a"]
    print("\n".join(lines))
    return EXIT_OK


def _parse_checks(spec):
    names = [c.strip() for c in spec.split(",") if c.strip()]
    unknown = [c for c in names if c not in CHECKS]
    if unknown:
        raise _Exit(EXIT_PARSE, f"unknown check {unknown[0]!r}; choose from {', '.join(CHECKS)}")
    return names


def cmd_check(args):
    checks = _parse_checks(args.checks)
    net = _load_network(args.network, args.format)
    try:
        labels, values = parse_matrix(_read_text(args.ultrametric))
    except ParseError as exc:
        raise _Exit(EXIT_PARSE, f"parse error in ultrametric: {exc}") from None
    labels = tuple(labels) if labels is not None else net.nodes
    if values.shape != (net.n, net.n) or labels != net.nodes:
        raise _Exit(EXIT_INVALID, "ultrametric and network node sets differ")
    reports = []
    if "ultrametric" in checks:
        try:
            validate_ultrametric(labels, values)
            reports.append(harness.AxiomReport("ultrametric", True))
        except ValidationError as exc:
            reports.append(
                harness.AxiomReport("ultrametric", False, {"error": type(exc).__name__, "message": str(exc)})
            )
    else:
        validate_ultrametric(labels, values)  # the other checks assume a valid ultrametric
    values = np.array(values)
    values.flags.writeable = False
    u = Ultrametric(labels, values)
    for c in checks:
        if c in ("P1", "P1'"):
            reports.append(harness.check_influence(u, net, c))
        elif c in ("thm3", "thm6"):
            reports.append(harness.check_sandwich(u, net, c))
    text = harness.reports_to_json(reports) if args.report == "json" else harness.reports_to_text(reports)
    sys.stdout.write(text)
    return EXIT_OK if all(reports) else EXIT_CHECK_FAILED


def _parse_perm(text, n):
    if text is None:
        return None
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise _Exit(EXIT_PARSE, f"--perm must be comma-separated integers, got {text!r}") from None


def cmd_generate(args):
    if args.n is None:
        raise _Exit(EXIT_PARSE, "--n is required")
    if args.kind == "canonical":
        if args.alpha is None or args.beta is None:
            raise _Exit(EXIT_PARSE, "canonical networks need --alpha and --beta")
        spec = CanonicalSpec(args.n, args.alpha, args.beta, _parse_perm(args.perm, args.n))
        net = canonical_network(spec)
    else:
        net = harness.random_network(args.n, args.density, args.seed)
    _write(network_to_text(net), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dirclust",
        description="Hierarchical clustering of asymmetric dissimilarity networks.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_format(sp):
        sp.add_argument("--format", choices=("matrix", "edges"), default="matrix",
                        help="network input format (default: matrix)")

    c = sub.add_parser("cluster", help="cluster a network")
    c.add_argument("input", help="network file ('-' for stdin)")
    c.add_argument("--method", required=True,
                   choices=("reciprocal", "nonreciprocal", "unilateral", "single-linkage"))
    c.add_argument("--output", choices=("matrix", "merges", "newick"), default="matrix")
    c.add_argument("-o", "--out", help="output file (default: stdout)")
    add_format(c)
    c.set_defaults(func=cmd_cluster)

    i = sub.add_parser("info", help="print network statistics")
    i.add_argument("input")
    add_format(i)
    i.set_defaults(func=cmd_info)

    k = sub.add_parser("check", help="verify an ultrametric against a network")
    k.add_argument("network")
    k.add_argument("ultrametric", help="dense matrix file")
    k.add_argument("--checks", default=",".join(CHECKS),
                   help=f"comma-separated subset of {', '.join(CHECKS)} (default: all)")
    k.add_argument("--report", choices=("text", "json"), default="text")
    add_format(k)
    k.set_defaults(func=cmd_check)

    g = sub.add_parser("generate", help="write a canonical or random network")
    g.add_argument("kind", choices=("canonical", "random"))
    g.add_argument("--n", type=int)
    g.add_argument("--alpha", type=float)
    g.add_argument("--beta", type=float)
    g.add_argument("--perm", help="0-based permutation, e.g. 2,0,1")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--density", type=float, default=1.0)
    g.add_argument("-o", "--out")
    g.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors already exit with 2
        return int(exc.code or 0)
    if getattr(args, "method", None):
        args.method = MethodId.parse(args.method)
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (BadParams, BadPermutation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DirclustError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
