"""Random instance generators for the structured domains.

All generators take a :class:`random.Random` so test runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from thiele.core import ApprovalMatrix, Election, WeightSystem, make_rule_weights
from thiele.domains.models import CONTAINMENT, INTERSECTION, IntervalModel, LinearOrderWitness


def _random_interval(rng: random.Random, span: int, max_len: int) -> tuple:
    left = rng.randint(0, span)
    return (left, left + rng.randint(0, max_len))


def random_intersection_model(rng: random.Random, n: int, m: int, span: int | None = None):
    span = span if span is not None else 2 * (n + m)
    max_len = max(1, span // 3)
    return IntervalModel(
        [_random_interval(rng, span, max_len) for _ in range(n)],
        [_random_interval(rng, span, max_len // 2) for _ in range(m)],
        INTERSECTION,
    )


def random_containment_model(rng: random.Random, n: int, m: int, span: int | None = None):
    span = span if span is not None else 2 * (n + m)
    return IntervalModel(
        [_random_interval(rng, span, span // 2 + 1) for _ in range(n)],
        [_random_interval(rng, span, max(1, span // 4)) for _ in range(m)],
        CONTAINMENT,
    )


def random_lc_matrix(rng: random.Random, n: int, m: int):
    """Random LC matrix together with a witness.

    Draws random voter/candidate orders and thresholds; voter ``i`` approves
    ``c`` iff ``pos(i) <= u(c)`` and ``pos(c) <= r(i)``.  This is the
    containment model ``[pos(i), n + r(i)] ⊇ [u(c), n + pos(c)]``.
    """
    voters = list(range(n))
    candidates = list(range(m))
    rng.shuffle(voters)
    rng.shuffle(candidates)
    vpos = {i: p for p, i in enumerate(voters)}
    cpos = {c: p for p, c in enumerate(candidates)}
    reach = {i: rng.randint(0, m - 1) for i in range(n)}
    last = {c: rng.randint(0, n - 1) for c in range(m)}
    approvals = tuple(
        {c for c in range(m) if vpos[i] <= last[c] and cpos[c] <= reach[i]} for i in range(n)
    )
    return ApprovalMatrix(n, m, approvals), LinearOrderWitness(voters, candidates)


def random_weights(rng: random.Random, election: Election, strict: bool = False) -> WeightSystem:
    """Random non-increasing nonnegative rational weight vectors, one per voter.

    With ``strict`` the vectors are strictly decreasing and positive.
    """
    vectors = []
    for _ in range(election.n):
        if strict:
            steps = [Fraction(rng.randint(1, 6), rng.randint(1, 4)) for _ in range(election.k)]
        else:
            steps = [Fraction(rng.randint(0, 4), rng.randint(1, 3)) for _ in range(election.k)]
        vec = [sum(steps[ell:], Fraction(0)) for ell in range(election.k)]
        vectors.append(vec)
    return make_rule_weights("explicit", election, vectors)
