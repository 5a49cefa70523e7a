"""Command-line interface.

Verbs:

    seed     print the initial extended cluster
    quiver   print the quiver arcs (or GraphViz with --dot)
    bracket  Poisson bracket and log-canonical coefficient of two seed functions
    mutate   one-step exchange at a mutable label
    check    run verification suites (exit 1 if any check fails)
    cybe     Yang-Baxter and unitarity check for the r tensor

Output is byte-deterministic for fixed inputs, except for the
"seconds" field of JSON check reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Tuple

from .bdseed import (
    BDTriple,
    EqualRoots,
    InvalidRoot,
    initial_cluster,
    normalize_triple,
    standard_cluster,
)
from .poisson import (
    NotLogCanonical,
    poisson_coefficient,
    r_plus_operator,
    sklyanin_bracket,
)
from .quiver import (
    FrozenDirection,
    NotLaurentPolynomial,
    bd_quiver,
    make_seed,
    mutate_seed,
    standard_quiver,
    to_dot,
)
from .verify import Fault, VerificationReport, run_checks

CHECK_NAMES = (
    "logcanon",
    "compat",
    "rank",
    "stable",
    "regular",
    "frozen",
    "somega",
    "bracketdiff",
    "cybe",
    "rplus",
    "all",
)


class CliError(Exception):
    pass


def _parse_label(text: str) -> Tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise CliError(f"label must look like 'i,j', got {text!r}")
    try:
        return (int(parts[0]), int(parts[1]))
    except ValueError:
        raise CliError(f"label must be two integers, got {text!r}") from None


def _add_pair_args(p: argparse.ArgumentParser, pair_optional: bool = False) -> None:
    p.add_argument("--n", type=int, required=True, help="matrix size")
    req = not pair_optional
    p.add_argument("--alpha", type=int, required=req, help="first simple root")
    p.add_argument("--beta", type=int, required=req, help="second simple root")
    p.add_argument("--sl", action="store_true", help="SL mode: drop the determinant vertex")
    p.add_argument(
        "--standard",
        action="store_true",
        help="use the standard structure (with a pair: its standard companion bracket)",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")


def _triple(args) -> Optional[BDTriple]:
    if args.alpha is None and args.beta is None:
        return None
    if args.alpha is None or args.beta is None:
        raise CliError("--alpha and --beta must be given together")
    return normalize_triple(args.n, args.alpha, args.beta)


def _cluster(args):
    triple = _triple(args)
    if triple is None or args.standard:
        return standard_cluster(args.n, sl=args.sl), triple
    return initial_cluster(triple, sl=args.sl), triple


def _cmd_seed(args) -> int:
    cluster, triple = _cluster(args)
    if args.format == "json":
        payload = {
            "n": args.n,
            "alpha": triple.alpha if triple else None,
            "beta": triple.beta if triple else None,
            "transposed": triple.transposed if triple else False,
            "sl": args.sl,
            "standard": cluster.standard,
            "frozen": sorted(f"{i},{j}" for i, j in cluster.frozen),
            "functions": {
                f"{i},{j}": str(cluster.functions[(i, j)]) for i, j in cluster.labels
            },
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for lab in cluster.labels:
            kind = "frozen " if lab in cluster.frozen else "mutable"
            print(f"({lab[0]},{lab[1]}) {kind} {cluster.functions[lab]}")
    return 0


def _cmd_quiver(args) -> int:
    triple = _triple(args)
    if triple is None or args.standard:
        q = standard_quiver(args.n, sl=args.sl)
    else:
        q = bd_quiver(triple, sl=args.sl)
    if args.dot:
        print(to_dot(q))
        return 0
    if args.format == "json":
        payload = {
            "n": args.n,
            "frozen": sorted(f"{i},{j}" for i, j in q.frozen),
            "arcs": [
                {"from": f"{s[0]},{s[1]}", "to": f"{d[0]},{d[1]}", "weight": q.arcs[(s, d)]}
                for s, d in sorted(q.arcs)
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for s, d in sorted(q.arcs):
            w = q.arcs[(s, d)]
            suffix = "" if w == 1 else f" weight {w}"
            print(f"({s[0]},{s[1]}) -> ({d[0]},{d[1]}){suffix}")
        print("frozen: " + " ".join(f"({i},{j})" for i, j in sorted(q.frozen)))
    return 0


def _cmd_bracket(args) -> int:
    cluster, triple = _cluster(args)
    la = _parse_label(args.f)
    lb = _parse_label(args.g)
    for lab in (la, lb):
        if lab not in cluster.functions:
            raise CliError(f"({lab[0]},{lab[1]}) is not a label of this cluster")
    if triple is None:
        op = r_plus_operator(n=args.n, standard=True)
    else:
        op = r_plus_operator(triple, standard=args.standard)
    f, g = cluster.functions[la], cluster.functions[lb]
    br = sklyanin_bracket(f, g, op)
    omega = None
    reason = None
    try:
        omega = poisson_coefficient(f, g, op, bracket=br)
    except NotLogCanonical as e:
        reason = str(e)
    if args.format == "json":
        payload = {
            "f": f"{la[0]},{la[1]}",
            "g": f"{lb[0]},{lb[1]}",
            "bracket": str(br),
            "omega": str(omega) if omega is not None else None,
            "log_canonical": omega is not None,
            "reason": reason,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"{{f,g}} = {br}")
        if omega is not None:
            print(f"omega = {omega}")
        else:
            print(f"not log-canonical: {reason}")
    return 0


def _cmd_mutate(args) -> int:
    cluster, triple = _cluster(args)
    lab = _parse_label(args.at)
    seed = make_seed(cluster)
    try:
        new_seed = mutate_seed(seed, lab)
    except (FrozenDirection, NotLaurentPolynomial) as e:
        raise CliError(str(e)) from None
    new_var = new_seed.cluster.functions[lab]
    if args.format == "json":
        payload = {"at": f"{lab[0]},{lab[1]}", "new_variable": str(new_var)}
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(new_var)
    return 0


def _print_reports(reports: List[VerificationReport], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True))
        return
    for r in reports:
        pair = f" alpha={r.alpha} beta={r.beta}" if r.alpha is not None else ""
        print(f"check={r.check} n={r.n}{pair} status={r.status} witnesses={len(r.witnesses)}")
        for w in r.witnesses:
            print(f"  {w}")


def _cmd_check(args) -> int:
    triple = _triple(args)
    fault = Fault(args.inject_fault) if args.inject_fault else None
    reports = run_checks(
        [args.which],
        triple=triple,
        n=args.n,
        sl=args.sl,
        standard=args.standard,
        fault=fault,
        processes=args.processes,
    )
    _print_reports(reports, args.format)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_cybe(args) -> int:
    triple = _triple(args)
    reports = run_checks(
        ["cybe"], triple=triple, n=args.n, standard=args.standard
    )
    _print_reports(reports, args.format)
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bdcluster",
        description="Exact cluster seeds and Sklyanin brackets for minimal Belavin-Drinfeld pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seed", help="print the initial extended cluster")
    _add_pair_args(p, pair_optional=True)
    p.set_defaults(func=_cmd_seed)

    p = sub.add_parser("quiver", help="print quiver arcs")
    _add_pair_args(p, pair_optional=True)
    p.add_argument("--dot", action="store_true", help="GraphViz output")
    p.set_defaults(func=_cmd_quiver)

    p = sub.add_parser("bracket", help="bracket of two cluster functions")
    _add_pair_args(p, pair_optional=True)
    p.add_argument("--f", required=True, help="label 'i,j' of the first function")
    p.add_argument("--g", required=True, help="label 'i,j' of the second function")
    p.set_defaults(func=_cmd_bracket)

    p = sub.add_parser("mutate", help="one-step exchange at a label")
    _add_pair_args(p, pair_optional=True)
    p.add_argument("--at", required=True, help="mutable label 'i,j'")
    p.set_defaults(func=_cmd_mutate)

    p = sub.add_parser("check", help="run verification suites")
    p.add_argument("which", choices=CHECK_NAMES)
    _add_pair_args(p, pair_optional=True)
    p.add_argument(
        "--inject-fault",
        choices=[f.value for f in Fault],
        default=None,
        help="negative control: plant a defect and watch the checks fail",
    )
    p.add_argument("--processes", type=int, default=None, help="worker processes for sweeps")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("cybe", help="Yang-Baxter and unitarity check")
    _add_pair_args(p, pair_optional=True)
    p.set_defaults(func=_cmd_cybe)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, InvalidRoot, EqualRoots, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
