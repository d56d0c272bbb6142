"""Exact Thiele winner determination on VCI and LC elections.

``solve_thiele`` runs the shift-and-resolve pipeline: solve the LP
relaxation, move weight from dominated to dominating candidates until no
recipient-donor pair is left, fix the integral part, and solve the residual
LP on the fractional candidates.  The residual matrix is domination-free,
hence CI, so its basic optimum is integral.

``solve_extreme_point`` relies on strictly decreasing positive weights, under
which every optimal vertex of the full LP is already integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from thiele import ratlp
from thiele.core import ApprovalMatrix, Committee, Election, WeightSystem, score_committee
from thiele.domains.consecutive import consecutive_ones_order
from thiele.domains.dominance import supporter_masks
from thiele.errors import DomainViolation, NotShifted, WeightsNotStrictlyDecreasingPositive
from thiele.lp import (
    FractionalSolution,
    build_lp,
    canonicalize_y,
    check_weights,
    fractional_objective,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class ShiftStep:
    recipient: int
    donor: int
    amount: Fraction


@dataclass(frozen=True)
class ResidualInstance:
    W0: frozenset
    W1: frozenset
    C_prime: tuple
    k_prime: int
    ell: tuple
    residual_weights: WeightSystem
    residual_matrix: ApprovalMatrix | None
    column_map: tuple

    @property
    def empty(self) -> bool:
        return not self.C_prime or self.k_prime == 0

    def election(self) -> Election:
        return Election(self.residual_matrix, self.k_prime)


@dataclass(frozen=True)
class SolveTrace:
    lp_point: FractionalSolution
    shift_steps: tuple
    shifted_x: tuple
    residual: ResidualInstance
    residual_point: tuple
    final_committee: Committee
    final_score: Fraction
    lp_objective: Fraction
    fixed_score: Fraction
    residual_objective: Fraction


def _domination_pairs(election: Election) -> list[tuple[int, int, int]]:
    """``(gain, recipient, donor)`` for every domination, best first."""
    masks = supporter_masks(election.matrix)
    pairs = [
        (-bin(big & ~small).count("1"), j, jp)
        for j, big in enumerate(masks)
        for jp, small in enumerate(masks)
        if small != big and small & ~big == 0
    ]
    pairs.sort()
    return pairs


def _first_feasible(pairs, x) -> tuple[int, int] | None:
    for _, j, jp in pairs:
        if x[j] < ONE and x[jp] > ZERO:
            return j, jp
    return None


def dominance_shift(election: Election, x: Sequence) -> tuple[tuple, tuple]:
    """Shift weight to dominating candidates until no recipient-donor pair remains.

    Each step takes the pair with the largest ``|N_j \\ N_j'|`` (ties: smallest
    recipient, then smallest donor) and moves ``min(1 - x_j, x_j')``.
    """
    x = [Fraction(v) for v in x]
    pairs = _domination_pairs(election)
    steps = []
    while (pair := _first_feasible(pairs, x)) is not None:
        j, jp = pair
        amount = min(ONE - x[j], x[jp])
        x[j] += amount
        x[jp] -= amount
        steps.append(ShiftStep(j, jp, amount))
    return tuple(x), tuple(steps)


def build_residual(election: Election, weights: WeightSystem, x: Sequence) -> ResidualInstance:
    """Split ``x`` into ``W0``, ``W1`` and the fractional part, with shifted weights."""
    x = [Fraction(v) for v in x]
    if sum(x) != election.k:
        raise ValueError(f"x sums to {sum(x)}, expected {election.k}")
    pair = _first_feasible(_domination_pairs(election), x)
    if pair is not None:
        raise NotShifted(f"candidate {pair[0]} can still take weight from {pair[1]}")
    W0 = frozenset(j for j, v in enumerate(x) if v == ZERO)
    W1 = frozenset(j for j, v in enumerate(x) if v == ONE)
    C_prime = tuple(j for j in range(election.m) if j not in W0 and j not in W1)
    k_prime = election.k - len(W1)
    ell = tuple(len(ballot & W1) for ballot in election.matrix.approvals_by_voter)
    residual_weights = WeightSystem(
        tuple(vec[l_i : l_i + k_prime] for vec, l_i in zip(weights.vectors, ell))
    )
    matrix = election.matrix.submatrix(candidates=C_prime) if C_prime else None
    return ResidualInstance(W0, W1, C_prime, k_prime, ell, residual_weights, matrix, C_prime)


def _solve_lp(election: Election, weights: WeightSystem):
    problem, vmap = build_lp(election, weights)
    solution = ratlp.solve(problem)
    if not solution.optimal:
        raise AssertionError(f"LP relaxation reported {solution.status}")
    x, y = vmap.split(solution.point)
    return solution, x, y


def round_optimal_point(
    election: Election,
    weights: WeightSystem,
    x: Sequence,
    y: Sequence | None = None,
    validate_domain: bool = False,
):
    """Turn an optimal LP point into an optimal committee (shift, fix, resolve).

    ``x`` must be optimal for the LP relaxation; ``y`` defaults to the
    canonical vector.  Returns ``(committee, score, trace)``.
    """
    check_weights(weights)
    x = tuple(Fraction(v) for v in x)
    y = canonicalize_y(election, x) if y is None else tuple(tuple(map(Fraction, v)) for v in y)
    lp_objective = fractional_objective(election, weights, x)

    shifted, steps = dominance_shift(election, x)
    residual = build_residual(election, weights, shifted)

    if residual.empty:
        residual_point, chosen, residual_objective = (), frozenset(), ZERO
    else:
        if validate_domain and consecutive_ones_order(residual.residual_matrix) is None:
            raise DomainViolation(
                "domination-free residual matrix is not candidate-interval", "residual-not-ci"
            )
        rsol, residual_point, _ = _solve_lp(residual.election(), residual.residual_weights)
        if any(v not in (ZERO, ONE) for v in residual_point):
            raise DomainViolation(
                "residual LP has a fractional basic optimum", "fractional-residual-vertex"
            )
        chosen = frozenset(residual.column_map[t] for t, v in enumerate(residual_point) if v == ONE)
        residual_objective = rsol.objective_value

    committee = Committee(residual.W1 | chosen)
    score = score_committee(election, weights, committee)
    fixed_score = score_committee(election, weights, residual.W1)
    if not lp_objective == fixed_score + residual_objective == score or len(committee) != election.k:
        raise AssertionError(
            f"score decomposition failed: {lp_objective} vs {fixed_score} + {residual_objective}"
            f" vs {score}"
        )
    trace = SolveTrace(
        lp_point=FractionalSolution(x, y),
        shift_steps=steps,
        shifted_x=shifted,
        residual=residual,
        residual_point=tuple(residual_point),
        final_committee=committee,
        final_score=score,
        lp_objective=lp_objective,
        fixed_score=fixed_score,
        residual_objective=residual_objective,
    )
    return committee, score, trace


def solve_thiele(election: Election, weights: WeightSystem, validate_domain: bool = False):
    """Optimal committee, its score and the full trace.

    Raises :class:`DomainViolation` when the residual LP has a fractional
    basic optimum, or (with ``validate_domain``) when the domination-free
    residual matrix lacks the consecutive-ones property.
    """
    check_weights(weights)
    solution, x, y = _solve_lp(election, weights)
    if fractional_objective(election, weights, x) != solution.objective_value:
        raise AssertionError("canonical y-vector does not reproduce the LP optimum")
    return round_optimal_point(election, weights, x, y, validate_domain)


def solve_extreme_point(election: Election, weights: WeightSystem):
    """Read the committee straight off one basic optimum of the full LP."""
    if not weights.strictly_decreasing_positive:
        raise WeightsNotStrictlyDecreasingPositive(
            "extreme-point mode needs w_1 > ... > w_k > 0 for every voter"
        )
    _, x, _ = _solve_lp(election, weights)
    if any(v not in (ZERO, ONE) for v in x):
        raise DomainViolation("optimal vertex of the full LP is fractional", "fractional-extreme-point")
    committee = Committee(j for j, v in enumerate(x) if v == ONE)
    return committee, score_committee(election, weights, committee)
