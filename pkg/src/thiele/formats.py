"""JSON documents exchanged by the command-line tool.

Every document is one object with a ``"schema"`` field.  Indices are 1-based
and rationals are strings ``"p/q"`` or ``"p"``.  Parsing is strict: unknown
fields, wrong types and out-of-range indices raise :class:`FormatError`.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from thiele.core import RULES, ApprovalMatrix, Election, WeightSystem, make_rule_weights
from thiele.domains.models import CONTAINMENT, INTERSECTION, IntervalModel, LinearOrderWitness, TreeModel
from thiele.hardness import SetCoverInstance

ELECTION = "election/1"
INTERVALS = "intervals/1"
TREE = "tree/1"
SETCOVER = "setcover/1"
ORDER = "order/1"

_RATIONAL = re.compile(r"-?\d+(/\d+)?")


class FormatError(ValueError):
    """Malformed input document."""


def rational_to_str(value) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def parse_rational(text, what: str = "value") -> Fraction:
    if not isinstance(text, str) or not _RATIONAL.fullmatch(text):
        raise FormatError(f"{what} must be a rational string like '3/4', got {text!r}")
    value = text.split("/")
    if len(value) == 2 and int(value[1]) == 0:
        raise FormatError(f"{what} has zero denominator")
    return Fraction(text)


def _fields(doc, schema: str, required: tuple, optional: tuple = ()) -> dict:
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object")
    if doc.get("schema") != schema:
        raise FormatError(f"expected schema {schema!r}, got {doc.get('schema')!r}")
    allowed = {"schema", *required, *optional}
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise FormatError(f"unknown fields in {schema} document: {unknown}")
    missing = [k for k in required if k not in doc]
    if missing:
        raise FormatError(f"missing fields in {schema} document: {missing}")
    return doc


def _int(value, what: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise FormatError(f"{what} must be an integer >= {minimum}, got {value!r}")
    return value


def _list(value, what: str) -> list:
    if not isinstance(value, list):
        raise FormatError(f"{what} must be a list")
    return value


def _indices(value, limit: int, what: str) -> list[int]:
    """1-based indices in ``[1, limit]`` to 0-based ints."""
    out = []
    for v in _list(value, what):
        if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= limit:
            raise FormatError(f"{what} entry {v!r} is not an index in [1, {limit}]")
        out.append(v - 1)
    if len(set(out)) != len(out):
        raise FormatError(f"{what} repeats an index")
    return out


def _one_based(values) -> list[int]:
    return [v + 1 for v in sorted(values)]


# elections


def parse_election(doc) -> tuple[ApprovalMatrix, int | None, Any]:
    """Return ``(matrix, committee_size or None, weight spec or None)``.

    The weight spec is a rule name or a list of explicit Fraction vectors.
    """
    doc = _fields(
        doc,
        ELECTION,
        ("num_voters", "num_candidates", "approvals"),
        ("committee_size", "weights"),
    )
    n = _int(doc["num_voters"], "num_voters", 1)
    m = _int(doc["num_candidates"], "num_candidates", 1)
    rows = _list(doc["approvals"], "approvals")
    if len(rows) != n:
        raise FormatError(f"approvals has {len(rows)} ballots for {n} voters")
    matrix = ApprovalMatrix(
        n, m, tuple(frozenset(_indices(r, m, f"ballot {i + 1}")) for i, r in enumerate(rows))
    )
    k = doc.get("committee_size")
    if k is not None:
        k = _int(k, "committee_size", 1)
        if k > m:
            raise FormatError(f"committee_size {k} exceeds num_candidates {m}")
    spec = None
    if "weights" in doc:
        spec = parse_weight_spec(doc["weights"], n, k)
    return matrix, k, spec


def parse_weight_spec(doc, n: int, k: int | None):
    if not isinstance(doc, dict) or "rule" not in doc:
        raise FormatError("weights must be an object with a 'rule' field")
    rule = doc["rule"]
    if rule in RULES:
        if set(doc) != {"rule"}:
            raise FormatError(f"unknown fields in weights: {sorted(set(doc) - {'rule'})}")
        return rule
    if rule != "explicit":
        raise FormatError(f"unknown weight rule {rule!r}")
    if set(doc) != {"rule", "vectors"}:
        raise FormatError("explicit weights need exactly the fields 'rule' and 'vectors'")
    vectors = _list(doc["vectors"], "weights.vectors")
    if len(vectors) != n:
        raise FormatError(f"{len(vectors)} weight vectors for {n} voters")
    out = []
    for i, vec in enumerate(vectors):
        vec = [parse_rational(v, f"weight of voter {i + 1}") for v in _list(vec, "weight vector")]
        if k is not None and len(vec) != k:
            raise FormatError(f"weight vector of voter {i + 1} has length {len(vec)}, expected {k}")
        out.append(vec)
    return out


def election_doc(matrix: ApprovalMatrix, k: int | None = None, weights=None) -> dict:
    """Serialize; ``weights`` is a rule name, a WeightSystem, or None."""
    doc = {
        "schema": ELECTION,
        "num_voters": matrix.n,
        "num_candidates": matrix.m,
    }
    if k is not None:
        doc["committee_size"] = k
    doc["approvals"] = [_one_based(b) for b in matrix.approvals_by_voter]
    if isinstance(weights, str):
        doc["weights"] = {"rule": weights}
    elif weights is not None:
        vectors = weights.vectors if isinstance(weights, WeightSystem) else weights
        doc["weights"] = {
            "rule": "explicit",
            "vectors": [[rational_to_str(v) for v in vec] for vec in vectors],
        }
    return doc


def resolve_weights(election: Election, spec) -> WeightSystem:
    if isinstance(spec, str):
        return make_rule_weights(spec, election)
    return make_rule_weights("explicit", election, spec)


# intervals, trees, orders, set cover


def parse_intervals(doc) -> IntervalModel:
    doc = _fields(doc, INTERVALS, ("mode", "voters", "candidates"))
    if doc["mode"] not in (INTERSECTION, CONTAINMENT):
        raise FormatError(f"mode must be {INTERSECTION!r} or {CONTAINMENT!r}")

    def side(key):
        out = []
        for iv in _list(doc[key], key):
            if not isinstance(iv, list) or len(iv) != 2:
                raise FormatError(f"{key} entries must be [left, right] pairs")
            lo, hi = (parse_rational(v, f"{key} endpoint") for v in iv)
            if lo > hi:
                raise FormatError(f"{key} interval [{iv[0]}, {iv[1]}] is reversed")
            out.append((lo, hi))
        return out

    voters, candidates = side("voters"), side("candidates")
    if not voters or not candidates:
        raise FormatError("need at least one voter and one candidate interval")
    return IntervalModel(voters, candidates, doc["mode"])


def intervals_doc(model: IntervalModel) -> dict:
    return {
        "schema": INTERVALS,
        "mode": model.mode,
        "voters": [[rational_to_str(a), rational_to_str(b)] for a, b in model.voter_intervals],
        "candidates": [[rational_to_str(a), rational_to_str(b)] for a, b in model.candidate_intervals],
    }


def parse_tree(doc) -> TreeModel:
    doc = _fields(doc, TREE, ("vertices", "edges", "voter_subtrees", "candidate_subtrees"))
    size = _int(doc["vertices"], "vertices", 1)
    edges = []
    for e in _list(doc["edges"], "edges"):
        pair = _indices(e, size, "edge")
        if len(pair) != 2:
            raise FormatError("edges must be [u, v] pairs of distinct vertices")
        edges.append(tuple(pair))
    voters = [_indices(s, size, "voter subtree") for s in _list(doc["voter_subtrees"], "voter_subtrees")]
    cands = [
        _indices(s, size, "candidate subtree")
        for s in _list(doc["candidate_subtrees"], "candidate_subtrees")
    ]
    try:
        return TreeModel(size, edges, voters, cands)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def tree_doc(model: TreeModel) -> dict:
    return {
        "schema": TREE,
        "vertices": model.num_vertices,
        "edges": [[u + 1, v + 1] for u, v in model.edges],
        "voter_subtrees": [_one_based(s) for s in model.voter_subtrees],
        "candidate_subtrees": [_one_based(s) for s in model.candidate_subtrees],
    }


def parse_order(doc, n: int, m: int) -> LinearOrderWitness:
    doc = _fields(doc, ORDER, ("voter_order", "candidate_order"))
    voters = _indices(doc["voter_order"], n, "voter_order")
    cands = _indices(doc["candidate_order"], m, "candidate_order")
    if len(voters) != n or len(cands) != m:
        raise FormatError(f"orders must list all {n} voters and {m} candidates")
    return LinearOrderWitness(voters, cands)


def order_doc(witness: LinearOrderWitness) -> dict:
    return {
        "schema": ORDER,
        "voter_order": [i + 1 for i in witness.voter_order],
        "candidate_order": [c + 1 for c in witness.candidate_order],
    }


def parse_set_cover(doc) -> SetCoverInstance:
    doc = _fields(doc, SETCOVER, ("universe_size", "subsets", "budget"))
    size = _int(doc["universe_size"], "universe_size")
    subsets = [_indices(s, size, "subset") for s in _list(doc["subsets"], "subsets")]
    budget = _int(doc["budget"], "budget")
    if budget > len(subsets):
        raise FormatError(f"budget {budget} exceeds the number of subsets {len(subsets)}")
    return SetCoverInstance(size, subsets, budget)


def set_cover_doc(instance: SetCoverInstance) -> dict:
    return {
        "schema": SETCOVER,
        "universe_size": instance.universe_size,
        "subsets": [_one_based(s) for s in instance.subsets],
        "budget": instance.budget,
    }


def load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2)
