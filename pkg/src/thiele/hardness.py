"""Set-cover gadgets on star trees, and brute-force oracles.

Three star gadgets turn a set-cover instance ``(U = [n], S_1..S_m, k)`` into a
CC election whose optimum reaches a target ``τ`` iff ``k`` subsets cover
``U``:

* ``leaf_candidates``: one leaf per subset; candidate ``j`` sits on leaf
  ``v_j``; voter ``i`` holds the centre plus the leaves of subsets containing
  ``i``.  ``τ = n``.
* ``leaf_voters``: one leaf per element; voter ``i`` sits on leaf ``v_i``;
  candidate ``j`` holds the centre plus the leaves of its elements.  ``τ = n``.
* ``all_vertex``: as ``leaf_candidates`` with an extra candidate on the centre
  and ``L`` dummy voters on every leaf.  ``τ = n + k·L``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from thiele.core import Committee, Election, WeightSystem, make_rule_weights, score_committee
from thiele.domains.models import TreeModel, tree_model_to_matrix
from thiele.errors import IndexOutOfRange, NoCover, TooLarge

LEAF_CANDIDATES = "leaf_candidates"
LEAF_VOTERS = "leaf_voters"
ALL_VERTEX = "all_vertex"
VARIANTS = (LEAF_CANDIDATES, LEAF_VOTERS, ALL_VERTEX)

ENUMERATION_CAP = 10**6
SET_COVER_LIMIT = 20


@dataclass(frozen=True)
class SetCoverInstance:
    """Universe ``0 .. universe_size-1``, subsets of it, and a budget."""

    universe_size: int
    subsets: tuple
    budget: int

    def __post_init__(self):
        object.__setattr__(self, "subsets", tuple(frozenset(s) for s in self.subsets))
        for j, s in enumerate(self.subsets):
            bad = [e for e in s if not 0 <= e < self.universe_size]
            if bad:
                raise IndexOutOfRange(f"subset {j} has elements {sorted(bad)} outside the universe")
        if self.universe_size < 0 or self.budget < 0:
            raise ValueError("universe size and budget must be nonnegative")


@dataclass(frozen=True)
class GadgetOutput:
    """Star tree model, the election it induces (None if it has no voters or
    no candidates), CC weights and the target score."""

    tree_model: TreeModel
    election: Election | None
    weights: WeightSystem | None
    target_score: Fraction
    dummy_multiplier: int | None = None


def _star_edges(leaves: int) -> tuple:
    return tuple((0, v) for v in range(1, leaves + 1))


def set_cover_to_tr_election(
    instance: SetCoverInstance, variant: str, dummy_multiplier: int | None = None
) -> GadgetOutput:
    """Build the star gadget.  Vertex 0 is the centre, leaves are ``1 ..``."""
    n, subsets, k = instance.universe_size, instance.subsets, instance.budget
    m = len(subsets)
    if k > m:
        raise ValueError(f"budget {k} exceeds the number of subsets {m}")
    L = None
    if variant == LEAF_CANDIDATES:
        leaves = m
        candidates = [{j + 1} for j in range(m)]
        voters = [{0} | {j + 1 for j in range(m) if i in subsets[j]} for i in range(n)]
        target = Fraction(n)
    elif variant == LEAF_VOTERS:
        leaves = n
        voters = [{i + 1} for i in range(n)]
        candidates = [{0} | {i + 1 for i in subsets[j]} for j in range(m)]
        target = Fraction(n)
    elif variant == ALL_VERTEX:
        L = n if dummy_multiplier is None else dummy_multiplier
        if L < 0:
            raise ValueError("dummy multiplier must be nonnegative")
        leaves = m
        candidates = [{j + 1} for j in range(m)] + [{0}]
        voters = [{0} | {j + 1 for j in range(m) if i in subsets[j]} for i in range(n)]
        voters += [{j + 1} for j in range(m) for _ in range(L)]
        target = Fraction(n + k * L)
    else:
        raise ValueError(f"unknown gadget variant {variant!r}; expected one of {VARIANTS}")

    tree = TreeModel(leaves + 1, _star_edges(leaves), voters, candidates)
    election = weights = None
    if voters and candidates and k >= 1:
        election = Election(tree_model_to_matrix(tree), k)
        weights = make_rule_weights("cc", election)
    return GadgetOutput(tree, election, weights, target, L)


def brute_force_committee(election: Election, weights: WeightSystem, cap: int = ENUMERATION_CAP):
    """Optimum over all size-``k`` committees and every maximizer, in lexicographic order."""
    total = comb(election.m, election.k)
    if total > cap:
        raise TooLarge(f"{total} committees exceed the enumeration cap {cap}")
    best, winners = None, []
    for members in combinations(range(election.m), election.k):
        score = score_committee(election, weights, members)
        if best is None or score > best:
            best, winners = score, [Committee(members)]
        elif score == best:
            winners.append(Committee(members))
    return best, winners


def brute_force_set_cover(instance: SetCoverInstance) -> tuple[int, bool]:
    """Minimum cover size and whether it fits the budget."""
    m = len(instance.subsets)
    if m > SET_COVER_LIMIT:
        raise TooLarge(f"set-cover enumeration is limited to {SET_COVER_LIMIT} subsets")
    universe = frozenset(range(instance.universe_size))
    for size in range(m + 1):
        for chosen in combinations(instance.subsets, size):
            if frozenset().union(*chosen) >= universe:
                return size, size <= instance.budget
    raise NoCover("the subsets do not cover the universe")
