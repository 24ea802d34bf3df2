"""Command-line front end.

Subcommands: type, preceq, min-excluded, equations, member, contains,
gamma, selfcheck.  Exit codes: 0 = success or true verdict, 1 = false
verdict, 2 = usage or data error, 3 = cross-check disagreement.
Output is deterministic byte-for-byte for fixed inputs and seed.
"""

import argparse
import json
import sys

from .equations import i_lambda, i_lambda_z, member_by_equations, reduce_generators
from .partitions import GenComposition, GenPartition, preceq
from .variety import (
    FinitaryPoint,
    PointSetVariety,
    contains,
    format_rational,
    gamma_at,
    theta_member,
    type_of,
    variety_from_json,
)
from . import selfcheck


class UsageError(Exception):
    pass


def _load_variety(path: str, lam: GenPartition) -> PointSetVariety:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            Z = variety_from_json(fh.read())
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read variety file {path}: {exc}") from exc
    if Z.lam.shape() != lam:
        raise UsageError(
            f"variety file ambient {Z.lam.shape()} does not match partition {lam}"
        )
    return Z


def _parse_partition(text: str) -> GenPartition:
    try:
        return GenPartition.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_point(text: str) -> FinitaryPoint:
    try:
        return FinitaryPoint.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    elif text:
        print(text)


def cmd_type(args) -> int:
    x = _parse_point(args.point)
    result = str(type_of(x))
    _emit(args, {"type": result}, result)
    return 0


def cmd_preceq(args) -> int:
    mu = _parse_partition(args.mu)
    lam = _parse_partition(args.lam)
    verdict = preceq(mu, lam)
    _emit(args, {"preceq": verdict}, "true" if verdict else "false")
    return 0 if verdict else 1


def cmd_min_excluded(args) -> int:
    lam = _parse_partition(args.lam)
    try:
        from .partitions import min_excluded

        result = min_excluded(lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, {"min_excluded": [str(a) for a in result]}, "\n".join(str(a) for a in result))
    return 0


def cmd_equations(args) -> int:
    lam = _parse_partition(args.lam)
    if not lam.is_infinite:
        raise UsageError("equations require a partition with an infinite part")
    if args.variety:
        Z = _load_variety(args.variety, lam)
        try:
            ideal = i_lambda_z(lam, Z)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        ideal = i_lambda(lam)
    if args.reduce:
        import random

        rng = random.Random(args.seed)
        battery = [selfcheck.random_point(rng, max_width=4) for _ in range(40)]
        ideal = reduce_generators(ideal, battery)
    payload = {
        "lambda": str(lam),
        "generators": [str(g.product) for g in ideal.generators],
        "provenance": [g.provenance() for g in ideal.generators],
    }
    _emit(args, payload, ideal.render())
    return 0


def cmd_member(args) -> int:
    lam = _parse_partition(args.lam)
    if not lam.is_infinite:
        raise UsageError("membership requires a partition with an infinite part")
    x = _parse_point(args.point)
    comp = GenComposition.from_partition(lam)
    Z = _load_variety(args.variety, lam) if args.variety else None

    def direct() -> bool:
        if Z is None:
            return preceq(type_of(x), lam)
        return theta_member(comp, Z, x)

    def equations() -> bool:
        ideal = i_lambda(lam) if Z is None else i_lambda_z(lam, Z)
        return member_by_equations(ideal, x)

    try:
        if args.method == "direct":
            verdict = direct()
        elif args.method == "equations":
            verdict = equations()
        else:
            a, b = direct(), equations()
            if a != b:
                print(
                    f"cross-check disagreement: direct={a} equations={b}",
                    file=sys.stderr,
                )
                return 3
            verdict = a
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, {"member": verdict}, "true" if verdict else "false")
    return 0 if verdict else 1


def cmd_contains(args) -> int:
    mu = _parse_partition(args.mu)
    lam = _parse_partition(args.lam)
    Z1 = _load_variety(args.file1, mu)
    Z2 = _load_variety(args.file2, lam)
    try:
        verdict = contains(
            GenComposition.from_partition(mu), Z1, GenComposition.from_partition(lam), Z2
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, {"contains": verdict}, "true" if verdict else "false")
    return 0 if verdict else 1


def cmd_gamma(args) -> int:
    lam = _parse_partition(args.lam)
    mu = _parse_partition(args.mu)
    if not lam.is_infinite:
        raise UsageError("the ambient partition must have an infinite part")
    if mu.length == 0:
        raise UsageError("the slice partition must be non-empty")
    Z = _load_variety(args.file, lam)
    result = gamma_at(
        GenComposition.from_partition(lam), Z, GenComposition.from_partition(mu)
    )
    lines = [",".join(format_rational(c) for c in p) for p in result.points]
    payload = {"points": [[format_rational(c) for c in p] for p in result.points]}
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_selfcheck(args) -> int:
    ok = selfcheck.run_all(args.seed, sys.stdout)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symvar",
        description="Exact computations with symmetric-group-stable subvarieties",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(fn=fn)
        return p

    p = add("type", cmd_type, "print the type of a finitary point")
    p.add_argument("point", help="point literal, e.g. 0^inf,1^3")

    p = add("preceq", cmd_preceq, "decide the combining order between partitions")
    p.add_argument("mu")
    p.add_argument("lam", metavar="lambda")

    p = add("min-excluded", cmd_min_excluded, "minimal finite partitions not below lambda")
    p.add_argument("lam", metavar="lambda")

    p = add("equations", cmd_equations, "emit ideal generators")
    p.add_argument("lam", metavar="lambda")
    p.add_argument("--variety", help="JSON variety file for slice equations")
    p.add_argument("--reduce", action="store_true", help="heuristic redundancy pruning")
    p.add_argument("--seed", type=int, default=1729)

    p = add("member", cmd_member, "decide membership of a finitary point")
    p.add_argument("lam", metavar="lambda")
    p.add_argument("point")
    p.add_argument("--variety", help="JSON variety file")
    p.add_argument("--method", choices=["direct", "equations", "both"], default="direct")

    p = add("contains", cmd_contains, "decide containment of classified sets")
    p.add_argument("mu")
    p.add_argument("file1")
    p.add_argument("lam", metavar="lambda")
    p.add_argument("file2")

    p = add("gamma", cmd_gamma, "print a slice of the closure system")
    p.add_argument("lam", metavar="lambda")
    p.add_argument("file")
    p.add_argument("mu")

    p = add("selfcheck", cmd_selfcheck, "run the invariant battery")
    p.add_argument("--seed", type=int, default=1729)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
