"""Command-line front end.

    domlab cap "Z_2 + Z^2"
    domlab depth F_3 --format json
    domlab brute tests/fixtures/s3.txt --what all
    domlab poly --dim 2 --pi1 "Z_2 + Z^2" --h 2=Z
    domlab selftest --max-order 32

Exit status: 0 on success, 2 for bad input, 3 when an internal invariant
check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import abelian, finite, free, poset, polyhedra, selftest
from .abelian import AbelianGroup
from .errors import DomlabError, InputError, InvariantError
from .expr import parse_expression
from .free import FreeGroup

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 2, 3
ENUMERATION_LIMIT = 10**6
ENDOMORPHISM_SEARCH_LIMIT = 2**18

# fixture whose published strong capacity is misprinted as a second capacity
_SC_TYPO_GROUP = abelian.canonicalize([(2, 1), (0, 2)])
_SC_TYPO_WARNING = (
    "the reference value list for Z^2 + Z_2 prints 'C(G)=6, C(G)=5'; "
    "the 5 is the strong capacity"
)


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, command, input, result, witness=None, warnings=()):
        if self.fmt == "json":
            record = {"command": command, "input": input, "result": result}
            if witness is not None:
                record["witness"] = witness
            record["warnings"] = list(warnings)
            print(json.dumps(record), file=self.stream)
            return
        print(f"{command}: {input}", file=self.stream)
        for key, value in result.items():
            if isinstance(value, list):
                value = ", ".join(str(v) for v in value) if value else "(none)"
            print(f"  {key}: {value}", file=self.stream)
        if witness is not None:
            print(f"  witness: {' < '.join(witness)}", file=self.stream)
        for w in warnings:
            print(f"  warning: {w}", file=self.stream)


def _group(text: str):
    return parse_expression(text)


def _warnings(G) -> list[str]:
    return [_SC_TYPO_WARNING] if G == _SC_TYPO_GROUP else []


def cmd_cap(args, out: Output):
    G = _group(args.expr)
    mod = abelian if isinstance(G, AbelianGroup) else free
    out.emit(
        "cap",
        G.render(),
        {"capacity": mod.capacity(G), "strong_capacity": mod.strong_capacity(G)},
        warnings=_warnings(G),
    )


def cmd_depth(args, out: Output):
    G = _group(args.expr)
    mod = abelian if isinstance(G, AbelianGroup) else free
    out.emit("depth", G.render(), {"depth": mod.depth(G), "strong_depth": mod.strong_depth(G)})


def cmd_summands(args, out: Output):
    G = _group(args.expr)
    if isinstance(G, FreeGroup):
        raise InputError("summands is defined for abelian expressions; use 'chain' for free groups")
    if abelian.capacity(G) > ENUMERATION_LIMIT:
        raise InputError(f"{abelian.capacity(G)} summand classes is too many to list")
    classes = [H.render() for H in abelian.direct_summands(G)]
    out.emit("summands", G.render(), {"count": len(classes), "summands": classes})


def cmd_chain(args, out: Output):
    G = _group(args.expr)
    mod = abelian if isinstance(G, AbelianGroup) else free
    if mod.depth(G) > ENUMERATION_LIMIT:
        raise InputError(f"a chain of length {mod.depth(G)} is too long to list")
    chain = [H.render() for H in mod.witness_chain(G)]
    if len(chain) != mod.depth(G):
        raise InvariantError("witness chain length differs from the depth")
    out.emit("chain", G.render(), {"depth": mod.depth(G)}, witness=chain)


def cmd_brute(args, out: Output):
    try:
        T = finite.load_table(args.file)
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    finite.check_order_cap(T, None)
    what = args.what
    result: dict = {"order": T.order, "group": finite.describe(T)}
    witness = None
    warnings = []
    if what in ("endos", "all"):
        size = finite.endomorphism_search_size(T)
        if size <= ENDOMORPHISM_SEARCH_LIMIT:
            result["endomorphisms"] = sum(1 for _ in finite.endomorphisms(T))
        elif what == "endos":
            raise InputError(f"endomorphism search space of {size} candidates is too large")
        else:
            warnings.append(f"endomorphism count skipped: {size} candidates to search")
    if what in ("idem", "all"):
        result["idempotents"] = finite.idempotent_count(T)
    if what in ("retracts", "all"):
        result["retracts"] = [finite.describe(c.representative) for c in finite.retract_classes(T)]
    if what in ("cap", "all"):
        result["capacity"] = finite.capacity_bruteforce(T)
    if what in ("depth", "all"):
        dag = finite.retract_dag(T)
        length, path = poset.longest_chain(dag)
        if not poset.verify_chain(path, dag).ok:
            raise InvariantError("brute-force longest chain failed verification")
        result["depth"] = length
        witness = [str(node) for node in path]
    if what == "all":
        holds = result["capacity"] <= result["idempotents"]
        result["capacity_le_idempotents"] = holds
        if not holds:
            out.emit("brute", args.file, result, witness, warnings)
            raise InvariantError("capacity exceeds the number of idempotents")
    out.emit("brute", args.file, result, witness, warnings)


def _index_pair(text: str, flag: str) -> tuple[int, str]:
    index, sep, value = text.partition("=")
    if not sep:
        raise InputError(f"{flag} expects I=VALUE, got {text!r}")
    try:
        return int(index), value
    except ValueError:
        raise InputError(f"{flag}: bad index {index!r}") from None


def _positive(text: str, what: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise InputError(f"{what} must be an integer, got {text!r}") from None
    if value < 1:
        raise InputError(f"{what} must be >= 1")
    return value


def cmd_poly(args, out: Output):
    if (args.pi1 is None) == (args.pi1_depth is None):
        raise InputError("give exactly one of --pi1 and --pi1-depth")
    if args.pi1 is not None:
        pi1 = _group(args.pi1)
    else:
        pi1 = polyhedra.AssertedDepth(_positive(args.pi1_depth, "--pi1-depth"), args.hopfian)
    homology: dict = {}
    for item in args.h:
        i, text = _index_pair(item, "--h")
        homology[i] = _group(text)
    for item in args.h_depth:
        i, text = _index_pair(item, "--h-depth")
        homology[i] = polyhedra.AssertedDepth(_positive(text, "--h-depth"), args.hopfian)
    for i, spec in homology.items():
        if isinstance(spec, FreeGroup):
            if spec.rank > 1:
                raise InputError(f"H_{i} is abelian; a free group of rank {spec.rank} cannot occur")
            homology[i] = abelian.canonicalize([(0, spec.rank)])
    desc = polyhedra.PolyhedronDescriptor(args.dim, pi1, homology)
    ks = polyhedra.depths(desc)
    bound = polyhedra.theorem_bound(desc)
    result = {"dimension": args.dim, "depths": ks, "bound": bound}

    h_abelian = all(isinstance(s, AbelianGroup) for s in homology.values())
    t_h = []
    if h_abelian:
        t_h = [
            polyhedra.factor_count(homology[i]) if i in homology else 0
            for i in range(2, args.dim + 1)
        ]
    pi1_finite = (isinstance(pi1, AbelianGroup) and pi1.is_finite) or pi1 == FreeGroup(0)
    checks = {}
    if pi1_finite and h_abelian:
        checks["finite_pi1"] = polyhedra.corollary_finite_pi1(ks[0], t_h)
    if isinstance(pi1, AbelianGroup):
        checks["abelian_pi1"] = polyhedra.corollary_abelian_pi1(polyhedra.factor_count(pi1), ks[1:])
        if h_abelian:
            checks["all_abelian"] = polyhedra.corollary_abelian([polyhedra.factor_count(pi1)] + t_h)
    result["corollaries"] = checks
    mismatched = sorted(k for k, v in checks.items() if v != bound)
    if mismatched:
        out.emit("poly", _poly_echo(args), result)
        raise InvariantError(f"corollary bounds {mismatched} disagree with the general bound")
    out.emit("poly", _poly_echo(args), result)


def _poly_echo(args) -> str:
    parts = [f"dim={args.dim}"]
    parts.append(f"pi1={args.pi1}" if args.pi1 is not None else f"pi1_depth={args.pi1_depth}")
    parts += [f"H{item}" for item in args.h]
    parts += [f"H{item}(asserted)" for item in args.h_depth]
    return " ".join(parts)


def _entry_dict(e: polyhedra.CatalogEntry) -> dict:
    return {"name": e.name, "capacity": e.capacity, "depth": e.depth, "source": e.citation}


def cmd_catalog(args, out: Output):
    if args.name:
        e = polyhedra.lookup(args.name)
        out.emit("catalog", args.name, _entry_dict(e))
        return
    for e in polyhedra.catalog():
        out.emit("catalog", e.name, _entry_dict(e))


def cmd_selftest(args, out: Output):
    if args.max_order < 1:
        raise InputError("--max-order must be >= 1")
    report = selftest.run(args.max_order, seed=args.seed)
    result = {
        "max_order": args.max_order,
        "groups": report.groups,
        "checks": report.checks,
        "failures": report.failures,
    }
    out.emit("selftest", f"max_order={args.max_order}", result)
    if not report.ok:
        raise InvariantError(f"{len(report.failures)} self-test checks failed")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized identity checks")

    parser = argparse.ArgumentParser(
        prog="domlab",
        description="Capacity and depth of groups, and depth bounds for polyhedra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, helptext in (
        ("cap", cmd_cap, "capacity and strong capacity"),
        ("depth", cmd_depth, "depth and strong depth"),
        ("summands", cmd_summands, "direct summand classes of an abelian group"),
        ("chain", cmd_chain, "a chain realizing the depth"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("expr")
        p.set_defaults(func=func)

    p = sub.add_parser("brute", parents=[common], help="brute force on a Cayley table file")
    p.add_argument("file")
    p.add_argument(
        "--what", choices=("cap", "depth", "endos", "idem", "retracts", "all"), default="all"
    )
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("poly", parents=[common], help="depth bound for a finite polyhedron")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--pi1")
    p.add_argument("--pi1-depth")
    p.add_argument("--hopfian", action="store_true", help="attest Hopfian retracts for asserted depths")
    p.add_argument("--h", action="append", default=[], metavar="I=EXPR")
    p.add_argument("--h-depth", action="append", default=[], metavar="I=K")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("catalog", parents=[common], help="known capacity/depth values")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("selftest", parents=[common], help="oracle-versus-formula sweep")
    p.add_argument("--max-order", type=int, default=32)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[list[str]] = None, stdout=None, stderr=None) -> int:
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    out = Output(args.format, stdout)
    try:
        args.func(args, out)
    except InvariantError as exc:
        print(f"domlab: invariant failure: {exc}", file=stderr)
        return EXIT_INVARIANT
    except (DomlabError, ValueError) as exc:
        print(f"domlab: error: {exc}", file=stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
