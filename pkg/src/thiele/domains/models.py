"""Geometric explanations of approval matrices and the order witnesses of LC."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import networkx as nx

from thiele.core import ApprovalMatrix
from thiele.errors import DisconnectedSubtree

INTERSECTION = "intersection"
CONTAINMENT = "containment"


def _interval(iv) -> tuple:
    lo, hi = Fraction(iv[0]), Fraction(iv[1])
    if lo > hi:
        raise ValueError(f"interval [{lo}, {hi}] has left end above right end")
    return (lo, hi)


@dataclass(frozen=True)
class IntervalModel:
    """Closed intervals for voters and candidates.

    In ``intersection`` mode voter ``i`` approves ``c`` iff the intervals meet
    (touching endpoints count).  In ``containment`` mode iff the candidate
    interval lies inside the voter interval.
    """

    voter_intervals: tuple
    candidate_intervals: tuple
    mode: str = INTERSECTION

    def __post_init__(self):
        if self.mode not in (INTERSECTION, CONTAINMENT):
            raise ValueError(f"unknown interval mode {self.mode!r}")
        object.__setattr__(self, "voter_intervals", tuple(map(_interval, self.voter_intervals)))
        object.__setattr__(
            self, "candidate_intervals", tuple(map(_interval, self.candidate_intervals))
        )


@dataclass(frozen=True)
class LinearOrderWitness:
    """Voter and candidate orders; ``voter_order[p]`` is the voter at position ``p``."""

    voter_order: tuple
    candidate_order: tuple

    def __post_init__(self):
        object.__setattr__(self, "voter_order", tuple(self.voter_order))
        object.__setattr__(self, "candidate_order", tuple(self.candidate_order))
        for name, order in (("voter", self.voter_order), ("candidate", self.candidate_order)):
            if sorted(order) != list(range(len(order))):
                raise ValueError(f"{name} order {order} is not a permutation")

    @classmethod
    def identity(cls, n: int, m: int) -> "LinearOrderWitness":
        return cls(tuple(range(n)), tuple(range(m)))

    def voter_positions(self) -> list[int]:
        pos = [0] * len(self.voter_order)
        for p, i in enumerate(self.voter_order):
            pos[i] = p
        return pos

    def candidate_positions(self) -> list[int]:
        pos = [0] * len(self.candidate_order)
        for p, c in enumerate(self.candidate_order):
            pos[c] = p
        return pos


@dataclass(frozen=True)
class TreeModel:
    """A tree on vertices ``0 .. num_vertices-1`` with a subtree per voter and candidate."""

    num_vertices: int
    edges: tuple
    voter_subtrees: tuple
    candidate_subtrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "voter_subtrees", tuple(map(frozenset, self.voter_subtrees)))
        object.__setattr__(
            self, "candidate_subtrees", tuple(map(frozenset, self.candidate_subtrees))
        )
        graph = self.graph()
        if graph.number_of_nodes() == 0 or not nx.is_tree(graph):
            raise ValueError("edge list does not form a tree on its vertex set")

    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.num_vertices))
        graph.add_edges_from(self.edges)
        if graph.number_of_nodes() != self.num_vertices:
            raise ValueError("edge endpoints outside the vertex set")
        return graph


def intervals_to_matrix(model: IntervalModel) -> ApprovalMatrix:
    voters, candidates = model.voter_intervals, model.candidate_intervals
    if model.mode == INTERSECTION:
        approves = lambda v, c: v[0] <= c[1] and c[0] <= v[1]  # noqa: E731
    else:
        approves = lambda v, c: v[0] <= c[0] and c[1] <= v[1]  # noqa: E731
    return ApprovalMatrix(
        len(voters),
        len(candidates),
        tuple({c for c, cv in enumerate(candidates) if approves(v, cv)} for v in voters),
    )


def tree_model_to_matrix(model: TreeModel) -> ApprovalMatrix:
    graph = model.graph()
    for kind, subtrees in (("voter", model.voter_subtrees), ("candidate", model.candidate_subtrees)):
        for idx, verts in enumerate(subtrees):
            if not verts or not verts <= graph.nodes or not nx.is_connected(graph.subgraph(verts)):
                raise DisconnectedSubtree(f"{kind} {idx} subtree {sorted(verts)} is not connected")
    return ApprovalMatrix(
        len(model.voter_subtrees),
        len(model.candidate_subtrees),
        tuple(
            {c for c, cv in enumerate(model.candidate_subtrees) if v & cv}
            for v in model.voter_subtrees
        ),
    )


def _order_by(keys: Sequence) -> tuple:
    return tuple(sorted(range(len(keys)), key=lambda idx: (keys[idx], idx)))


def vci_to_lc_order(model: IntervalModel) -> LinearOrderWitness:
    """Order voters and candidates by left endpoint (ties by index)."""
    if model.mode != INTERSECTION:
        raise ValueError("vci_to_lc_order needs an intersection model")
    return LinearOrderWitness(
        _order_by([iv[0] for iv in model.voter_intervals]),
        _order_by([iv[0] for iv in model.candidate_intervals]),
    )


def vcci_intervals_to_lc_order(model: IntervalModel) -> LinearOrderWitness:
    """Voters by left endpoint, candidates by right endpoint (ties by index)."""
    if model.mode != CONTAINMENT:
        raise ValueError("vcci_intervals_to_lc_order needs a containment model")
    return LinearOrderWitness(
        _order_by([iv[0] for iv in model.voter_intervals]),
        _order_by([iv[1] for iv in model.candidate_intervals]),
    )
