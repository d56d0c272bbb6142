"""The LP relaxation of the Thiele winner-determination ILP.

Variable layout is fixed: ``x_0 .. x_{m-1}`` first, then the y-blocks
voter-major, ``y^i_l`` at index ``m + i*k + l`` (``l`` 0-based).  Row 0 is
``sum_j x_j = k``; row ``1 + i`` is ``sum_{j in C_i} x_j - sum_l y^i_l = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

from thiele.core import Election, WeightSystem
from thiele.errors import RepresentationOverflow, WeightsNegative, WeightsNotNonIncreasing
from thiele.ratlp import LpProblem


@dataclass(frozen=True)
class VariableMap:
    m: int
    n: int
    k: int

    def x(self, j: int) -> int:
        return j

    def y(self, i: int, ell: int) -> int:
        return self.m + i * self.k + ell

    @property
    def num_vars(self) -> int:
        return self.m + self.n * self.k

    def split(self, point: Sequence):
        """Cut an LP point into the x-vector and per-voter y-vectors."""
        x = tuple(point[: self.m])
        y = tuple(
            tuple(point[self.m + i * self.k : self.m + (i + 1) * self.k]) for i in range(self.n)
        )
        return x, y


@dataclass(frozen=True)
class FractionalSolution:
    x: tuple
    y: tuple

    def point(self) -> tuple:
        return self.x + tuple(v for vec in self.y for v in vec)


def check_weights(weights: WeightSystem) -> None:
    if not weights.non_increasing:
        raise WeightsNotNonIncreasing("weight vectors must satisfy w_1 >= ... >= w_k")
    if not weights.nonnegative:
        raise WeightsNegative("weight vectors must be nonnegative")


def build_lp(election: Election, weights: WeightSystem):
    """Return ``(LpProblem, VariableMap)`` for ``LP_(A,k,w)``."""
    check_weights(weights)
    n, m, k = election.n, election.m, election.k
    for i, vec in enumerate(weights.vectors):
        if len(vec) != k:
            raise ValueError(f"weight vector of voter {i} has length {len(vec)}, expected {k}")
    vmap = VariableMap(m, n, k)
    objective = [Fraction(0)] * vmap.num_vars
    for i in range(n):
        for ell in range(k):
            objective[vmap.y(i, ell)] = weights.vectors[i][ell]
    rows = [({j: 1 for j in range(m)}, k)]
    for i, ballot in enumerate(election.matrix.approvals_by_voter):
        row = {j: 1 for j in ballot}
        row.update({vmap.y(i, ell): -1 for ell in range(k)})
        rows.append((row, 0))
    return LpProblem(vmap.num_vars, tuple(objective), tuple(rows)), vmap


def representation(election: Election, x: Sequence) -> list[Fraction]:
    """Representation value ``r_i(x) = sum_{j in C_i} x_j`` of every voter."""
    return [
        sum((Fraction(x[j]) for j in ballot), Fraction(0))
        for ballot in election.matrix.approvals_by_voter
    ]


def canonical_vector(r: Fraction, k: int) -> tuple:
    """Greedy y-vector for representation ``r``: ones, one fractional entry, zeros."""
    if r > k:
        raise RepresentationOverflow(f"representation {r} exceeds committee size {k}")
    whole = floor(r)
    vec = [Fraction(1)] * whole
    if whole < k:
        vec.append(r - whole)
    vec.extend([Fraction(0)] * (k - len(vec)))
    return tuple(vec)


def canonicalize_y(election: Election, x: Sequence) -> tuple:
    return tuple(canonical_vector(r, election.k) for r in representation(election, x))


def y_objective(weights: WeightSystem, y: Sequence) -> Fraction:
    return sum(
        (w * v for vec_w, vec_y in zip(weights.vectors, y) for w, v in zip(vec_w, vec_y)),
        Fraction(0),
    )


def fractional_objective(election: Election, weights: WeightSystem, x: Sequence) -> Fraction:
    """Objective value of ``x``: the LP objective of ``(x, canonicalize_y(x))``."""
    return y_objective(weights, canonicalize_y(election, x))
