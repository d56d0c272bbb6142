"""Linear consistency (LC): witness checking, a tiny exhaustive search, and the
LC to voter-contains-candidate interval construction.

Under a witness, a violation is a zero ``A[i][a] = 0`` such that ``i``
approves some candidate ordered after ``a`` and some voter ordered after
``i`` approves ``a``.  With ``r(i)`` the last approved position of voter ``i``
and ``u(a)`` the last supporter position of ``a`` this is a zero with
``κ(a) < r(i)`` and ``ρ(i) < u(a)``, so the check is a single pass.
"""

from __future__ import annotations

import heapq
from itertools import permutations

from thiele.core import ApprovalMatrix
from thiele.domains.models import CONTAINMENT, IntervalModel, LinearOrderWitness
from thiele.errors import EmptyRowOrColumn, NotLcWitness, TooLarge

BRUTE_FORCE_LIMIT = 7


def _last_positions(matrix: ApprovalMatrix, vpos, cpos):
    reach = [max((cpos[c] for c in ballot), default=-1) for ballot in matrix.approvals_by_voter]
    last = [max((vpos[i] for i in sup), default=-1) for sup in matrix.supporters_by_candidate]
    return reach, last


def lc_violations(matrix: ApprovalMatrix, witness: LinearOrderWitness) -> list[tuple[int, int]]:
    """Zero entries ``(i, a)`` at which the LC implication fails."""
    _check_shape(matrix, witness)
    vpos, cpos = witness.voter_positions(), witness.candidate_positions()
    reach, last = _last_positions(matrix, vpos, cpos)
    return [
        (i, a)
        for i, ballot in enumerate(matrix.approvals_by_voter)
        for a in range(matrix.m)
        if a not in ballot and cpos[a] < reach[i] and vpos[i] < last[a]
    ]


def check_lc_order(matrix: ApprovalMatrix, witness: LinearOrderWitness) -> bool:
    return not lc_violations(matrix, witness)


def _check_shape(matrix: ApprovalMatrix, witness: LinearOrderWitness) -> None:
    if len(witness.voter_order) != matrix.n or len(witness.candidate_order) != matrix.m:
        raise ValueError(
            f"witness orders have sizes {len(witness.voter_order)}x{len(witness.candidate_order)},"
            f" matrix is {matrix.n}x{matrix.m}"
        )


def _candidate_order_for(matrix: ApprovalMatrix, vpos) -> tuple | None:
    """Some candidate order completing the voter positions ``vpos`` to a witness.

    For fixed voters the admissible candidate orders are exactly the linear
    extensions of: every candidate of ``C_i`` precedes ``a`` whenever
    ``A[i][a] = 0`` and a later voter approves ``a``.
    """
    succ, indeg = precedence_graph(matrix, vpos)
    heap = [c for c in range(matrix.m) if indeg[c] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        c = heapq.heappop(heap)
        order.append(c)
        for d in succ[c]:
            indeg[d] -= 1
            if indeg[d] == 0:
                heapq.heappush(heap, d)
    return tuple(order) if len(order) == matrix.m else None


def precedence_graph(matrix: ApprovalMatrix, vpos):
    """Successor sets and in-degrees of the candidate precedence relation."""
    last = [max((vpos[i] for i in sup), default=-1) for sup in matrix.supporters_by_candidate]
    succ = [set() for _ in range(matrix.m)]
    for i, ballot in enumerate(matrix.approvals_by_voter):
        for a in range(matrix.m):
            if a not in ballot and vpos[i] < last[a]:
                for b in ballot:
                    succ[b].add(a)
    indeg = [0] * matrix.m
    for c in range(matrix.m):
        for d in succ[c]:
            indeg[d] += 1
    return succ, indeg


def find_lc_order_bruteforce(matrix: ApprovalMatrix) -> LinearOrderWitness | None:
    """Exhaustive LC witness search for matrices up to 7x7.

    Every voter order is tried; for each, a candidate order exists iff the
    precedence relation is acyclic, so all ``n!·m!`` pairs are covered.
    """
    if matrix.n > BRUTE_FORCE_LIMIT or matrix.m > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"brute-force LC search is limited to {BRUTE_FORCE_LIMIT}x{BRUTE_FORCE_LIMIT}")
    for voters in permutations(range(matrix.n)):
        vpos = [0] * matrix.n
        for p, i in enumerate(voters):
            vpos[i] = p
        cands = _candidate_order_for(matrix, vpos)
        if cands is not None:
            witness = LinearOrderWitness(voters, cands)
            if not check_lc_order(matrix, witness):
                raise AssertionError(f"search produced a non-witness {witness}")
            return witness
    return None


def lc_order_to_vcci_intervals(matrix: ApprovalMatrix, witness: LinearOrderWitness) -> IntervalModel:
    """Containment intervals ``I_i = [ρ(i), n + r(i)]`` and ``J_c = [u(c), n + κ(c)]``.

    Positions are 1-based, so endpoints match the usual hand computation.
    """
    if not check_lc_order(matrix, witness):
        raise NotLcWitness("the given orders violate linear consistency")
    n = matrix.n
    vpos = [p + 1 for p in witness.voter_positions()]
    cpos = [p + 1 for p in witness.candidate_positions()]
    empty_rows = [i for i, ballot in enumerate(matrix.approvals_by_voter) if not ballot]
    empty_cols = [c for c, sup in enumerate(matrix.supporters_by_candidate) if not sup]
    if empty_rows or empty_cols:
        raise EmptyRowOrColumn(
            f"voters {empty_rows} approve nobody / candidates {empty_cols} have no supporter"
        )
    voters = [
        (vpos[i], n + max(cpos[c] for c in ballot))
        for i, ballot in enumerate(matrix.approvals_by_voter)
    ]
    candidates = [
        (max(vpos[i] for i in sup), n + cpos[c])
        for c, sup in enumerate(matrix.supporters_by_candidate)
    ]
    return IntervalModel(voters, candidates, CONTAINMENT)
