"""Command-line front end: ``thiele solve|check|convert|gen|oracle``.

Exit codes: 0 ok, 2 malformed input, 3 domain violation or bad witness,
4 weight-flag violation, 5 unsupported conversion, 6 oracle too large.
Results go to standard output as one JSON document; errors go to standard
error and nothing is printed on standard output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from thiele import formats
from thiele.core import Election
from thiele.domains import (
    check_lc_order,
    consecutive_ones_order,
    find_dominations,
    intervals_to_matrix,
    lc_order_to_vcci_intervals,
    tree_model_to_matrix,
    vcci_intervals_to_lc_order,
    vci_to_lc_order,
)
from thiele.domains.models import CONTAINMENT, INTERSECTION
from thiele.errors import (
    DomainViolation,
    EmptyRowOrColumn,
    NotLcWitness,
    ThieleError,
    TooLarge,
    WeightsNegative,
    WeightsNotNonIncreasing,
    WeightsNotStrictlyDecreasingPositive,
)
from thiele.formats import FormatError, rational_to_str
from thiele.hardness import ALL_VERTEX, LEAF_CANDIDATES, LEAF_VOTERS, brute_force_committee
from thiele.hardness import set_cover_to_tr_election
from thiele.solver import solve_extreme_point, solve_thiele

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_DOMAIN = 3
EXIT_WEIGHTS = 4
EXIT_UNSUPPORTED = 5
EXIT_TOO_LARGE = 6

VARIANTS = {"leaf-candidates": LEAF_CANDIDATES, "leaf-voters": LEAF_VOTERS, "all-vertex": ALL_VERTEX}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _one_based(members) -> list[int]:
    return [c + 1 for c in sorted(members)]


def _load_election(args, need_k: bool = True):
    matrix, k, spec = formats.parse_election(formats.load(args.input))
    if getattr(args, "rule", None):
        spec = args.rule
    if getattr(args, "weights_file", None):
        vectors = formats.load(args.weights_file)
        spec = formats.parse_weight_spec(vectors, matrix.n, k)
    if need_k and k is None:
        raise FormatError("election file lacks committee_size")
    if need_k and spec is None:
        raise FormatError("no weights: give --rule, --weights-file or a 'weights' field")
    election = Election(matrix, k) if need_k else None
    return matrix, election, spec


def _trace_doc(trace) -> dict:
    res = trace.residual
    return {
        "lp_x": [rational_to_str(v) for v in trace.lp_point.x],
        "lp_y": [[rational_to_str(v) for v in vec] for vec in trace.lp_point.y],
        "lp_objective": rational_to_str(trace.lp_objective),
        "shift_steps": [
            {"recipient": s.recipient + 1, "donor": s.donor + 1, "amount": rational_to_str(s.amount)}
            for s in trace.shift_steps
        ],
        "shifted_x": [rational_to_str(v) for v in trace.shifted_x],
        "W0": _one_based(res.W0),
        "W1": _one_based(res.W1),
        "C_prime": _one_based(res.C_prime),
        "k_prime": res.k_prime,
        "residual_point": [rational_to_str(v) for v in trace.residual_point],
        "fixed_score": rational_to_str(trace.fixed_score),
        "residual_objective": rational_to_str(trace.residual_objective),
    }


def cmd_solve(args) -> dict:
    _, election, spec = _load_election(args)
    weights = formats.resolve_weights(election, spec)
    if args.mode == "extreme-point":
        committee, score = solve_extreme_point(election, weights)
        trace = None
    else:
        committee, score, trace = solve_thiele(election, weights, args.validate_domain)
    doc = {"committee": _one_based(committee.members), "score": rational_to_str(score), "mode": args.mode}
    if args.trace and trace is not None:
        doc["trace"] = _trace_doc(trace)
    return doc


def cmd_check(args) -> dict:
    matrix, _, _ = _load_election(args, need_k=False)
    prop = args.property
    if prop in ("ci", "vi"):
        order = consecutive_ones_order(matrix, "columns" if prop == "ci" else "rows")
        doc = {"property": prop, "holds": order is not None}
        if order is not None:
            doc["witness"] = [p + 1 for p in order]
        return doc
    if prop == "domination-free":
        pairs = find_dominations(matrix)
        return {
            "property": prop,
            "holds": not pairs,
            "witness": [[a + 1, b + 1] for a, b in pairs],
        }
    if not args.order_file:
        raise FormatError("--property lc-order needs --order-file")
    witness = formats.parse_order(formats.load(args.order_file), matrix.n, matrix.m)
    return {"property": prop, "holds": check_lc_order(matrix, witness)}


def cmd_convert(args) -> dict:
    src, dst = args.source, args.target
    if src in ("intervals-intersection", "intervals-containment"):
        model = formats.parse_intervals(formats.load(args.input))
        expected = INTERSECTION if src == "intervals-intersection" else CONTAINMENT
        if model.mode != expected:
            raise FormatError(f"--from {src} but the file has mode {model.mode!r}")
        if dst == "matrix":
            return formats.election_doc(intervals_to_matrix(model))
        if dst == "lc-order":
            convert = vci_to_lc_order if expected == INTERSECTION else vcci_intervals_to_lc_order
            return formats.order_doc(convert(model))
    elif src == "tree" and dst == "matrix":
        return formats.election_doc(tree_model_to_matrix(formats.parse_tree(formats.load(args.input))))
    elif src == "lc-order" and dst == "vcci-intervals":
        matrix, _, _ = _load_election(args, need_k=False)
        if not args.order_file:
            raise FormatError("--from lc-order needs --order-file")
        witness = formats.parse_order(formats.load(args.order_file), matrix.n, matrix.m)
        return formats.intervals_doc(lc_order_to_vcci_intervals(matrix, witness))
    raise CliError(f"conversion {src} -> {dst} is not supported", EXIT_UNSUPPORTED)


def cmd_gen(args) -> dict:
    instance = formats.parse_set_cover(formats.load(args.set_cover))
    gadget = set_cover_to_tr_election(instance, VARIANTS[args.variant], args.dummy_multiplier)
    target = {
        "schema": "target/1",
        "variant": args.variant,
        "target_score": rational_to_str(gadget.target_score),
    }
    if gadget.dummy_multiplier is not None:
        target["dummy_multiplier"] = gadget.dummy_multiplier
    files = {"tree.json": formats.tree_doc(gadget.tree_model), "target.json": target}
    if gadget.election is not None:
        files["election.json"] = formats.election_doc(
            gadget.election.matrix, gadget.election.k, "cc"
        )
    os.makedirs(args.out_dir, exist_ok=True)
    written = {}
    for name, doc in files.items():
        path = os.path.join(args.out_dir, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(formats.dumps(doc) + "\n")
        written[name.split(".")[0]] = path
    return {**target, "files": written}


def cmd_oracle(args) -> dict:
    _, election, spec = _load_election(args)
    weights = formats.resolve_weights(election, spec)
    optimum, winners = brute_force_committee(election, weights)
    return {
        "optimum": rational_to_str(optimum),
        "maximizers": [_one_based(w.members) for w in winners],
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thiele", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def weight_flags(p):
        group = p.add_mutually_exclusive_group()
        group.add_argument("--rule", choices=("av", "cc", "pav"))
        group.add_argument("--weights-file", help="JSON object {rule: explicit, vectors: [...]}")

    p = sub.add_parser("solve", help="optimal committee of an election")
    p.add_argument("input")
    weight_flags(p)
    p.add_argument("--mode", choices=("algorithm", "extreme-point"), default="algorithm")
    p.add_argument("--validate-domain", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="test a structural property of the approval matrix")
    p.add_argument("input")
    p.add_argument("--property", required=True, choices=("ci", "vi", "domination-free", "lc-order"))
    p.add_argument("--order-file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("convert", help="convert between interval, tree, order and matrix forms")
    p.add_argument("input")
    p.add_argument(
        "--from",
        dest="source",
        required=True,
        choices=("intervals-intersection", "intervals-containment", "tree", "lc-order"),
    )
    p.add_argument("--to", dest="target", required=True, choices=("matrix", "lc-order", "vcci-intervals"))
    p.add_argument("--order-file")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("gen", help="set-cover gadget on a star tree")
    p.add_argument("--set-cover", required=True)
    p.add_argument("--variant", required=True, choices=tuple(VARIANTS))
    p.add_argument("--dummy-multiplier", type=int)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="brute-force optimum and all maximizers")
    p.add_argument("input")
    weight_flags(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, CliError):
        return exc.code
    if isinstance(exc, (DomainViolation, NotLcWitness, EmptyRowOrColumn)):
        return EXIT_DOMAIN
    if isinstance(
        exc, (WeightsNotStrictlyDecreasingPositive, WeightsNotNonIncreasing, WeightsNegative)
    ):
        return EXIT_WEIGHTS
    if isinstance(exc, TooLarge):
        return EXIT_TOO_LARGE
    return EXIT_MALFORMED


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    try:
        doc = args.func(args)
    except (CliError, FormatError, ThieleError, ValueError) as exc:
        code = _exit_code(exc)
        detail = f" ({exc.certificate})" if isinstance(exc, DomainViolation) else ""
        print(f"thiele: {exc}{detail}", file=sys.stderr)
        return code
    print(json.dumps(doc, indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
