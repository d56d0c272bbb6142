"""Exact data model for approval elections, weight systems and Thiele scores.

Candidates and voters are 0-based inside the library.  The command-line
front end and every file format use 1-based indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from thiele.errors import IndexOutOfRange, InvalidCommitteeSize, LengthMismatch

RULES = ("av", "cc", "pav")


@dataclass(frozen=True)
class ApprovalMatrix:
    """0/1 approval matrix stored as approval sets and supporter sets.

    Parameters
    ----------
    n, m : int
        Number of voters and candidates.
    approvals_by_voter : tuple of frozenset
        ``approvals_by_voter[i]`` is the set of candidates voter ``i`` approves.
    """

    n: int
    m: int
    approvals_by_voter: tuple
    supporters_by_candidate: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"need at least one voter and one candidate (n={self.n}, m={self.m})")
        if len(self.approvals_by_voter) != self.n:
            raise LengthMismatch(
                f"{len(self.approvals_by_voter)} approval sets given for {self.n} voters"
            )
        approvals = tuple(frozenset(a) for a in self.approvals_by_voter)
        supporters = [set() for _ in range(self.m)]
        for i, ballot in enumerate(approvals):
            for c in ballot:
                if not 0 <= c < self.m:
                    raise IndexOutOfRange(f"voter {i} approves candidate {c} outside [0, {self.m})")
                supporters[c].add(i)
        object.__setattr__(self, "approvals_by_voter", approvals)
        object.__setattr__(
            self, "supporters_by_candidate", tuple(frozenset(s) for s in supporters)
        )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "ApprovalMatrix":
        """Build from an explicit 0/1 table (list of rows)."""
        m = len(rows[0])
        if any(len(r) != m for r in rows):
            raise LengthMismatch("rows of unequal length")
        return cls(len(rows), m, tuple({c for c, v in enumerate(r) if v} for r in rows))

    def rows(self) -> list[list[int]]:
        return [[int(c in ballot) for c in range(self.m)] for ballot in self.approvals_by_voter]

    def approves(self, voter: int, candidate: int) -> bool:
        return candidate in self.approvals_by_voter[voter]

    def transpose(self) -> "ApprovalMatrix":
        """Swap the roles of voters and candidates."""
        return ApprovalMatrix(self.m, self.n, self.supporters_by_candidate)

    def submatrix(self, voters: Sequence[int] | None = None, candidates: Sequence[int] | None = None):
        """Rows ``voters`` and columns ``candidates``, renumbered in the given order."""
        voters = range(self.n) if voters is None else voters
        candidates = range(self.m) if candidates is None else candidates
        pos = {c: p for p, c in enumerate(candidates)}
        return ApprovalMatrix(
            len(voters),
            len(pos),
            tuple({pos[c] for c in self.approvals_by_voter[i] if c in pos} for i in voters),
        )

    def permuted(self, voter_order: Sequence[int], candidate_order: Sequence[int]):
        """Matrix whose row ``p`` is voter ``voter_order[p]``, likewise for columns."""
        return self.submatrix(voter_order, candidate_order)


@dataclass(frozen=True)
class Election:
    """An approval election ``(A, k)``."""

    matrix: ApprovalMatrix
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= self.matrix.m:
            raise InvalidCommitteeSize(f"committee size {self.k} not in [1, {self.matrix.m}]")

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def m(self) -> int:
        return self.matrix.m


@dataclass(frozen=True)
class WeightSystem:
    """Per-voter weight vectors ``w^i = (w^i_1, ..., w^i_k)`` over exact rationals."""

    vectors: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "vectors", tuple(tuple(Fraction(v) for v in vec) for vec in self.vectors)
        )

    @property
    def non_increasing(self) -> bool:
        return all(a >= b for vec in self.vectors for a, b in zip(vec, vec[1:]))

    @property
    def nonnegative(self) -> bool:
        return all(not vec or vec[-1] >= 0 for vec in self.vectors)

    @property
    def strictly_decreasing_positive(self) -> bool:
        return all(
            all(a > b for a, b in zip(vec, vec[1:])) and (not vec or vec[-1] > 0)
            for vec in self.vectors
        )

    @property
    def strictly_positive(self) -> bool:
        return all(v > 0 for vec in self.vectors for v in vec)

    def __getitem__(self, voter: int) -> tuple:
        return self.vectors[voter]


@dataclass(frozen=True)
class Committee:
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def __contains__(self, c):
        return c in self.members


def build_election(approvals: Iterable[Iterable[int]], m: int, k: int) -> Election:
    """Create an election from per-voter approval sets (0-based candidate indices)."""
    approvals = tuple(frozenset(a) for a in approvals)
    for i, ballot in enumerate(approvals):
        bad = [c for c in ballot if not 0 <= c < m]
        if bad:
            raise IndexOutOfRange(f"voter {i} approves {sorted(bad)}, outside [0, {m})")
    if not 1 <= k <= m:
        raise InvalidCommitteeSize(f"committee size {k} not in [1, {m}]")
    return Election(ApprovalMatrix(len(approvals), m, approvals), k)


def rule_vector(rule: str, k: int) -> tuple:
    if rule == "av":
        return tuple(Fraction(1) for _ in range(k))
    if rule == "cc":
        return tuple(Fraction(int(ell == 0)) for ell in range(k))
    if rule == "pav":
        return tuple(Fraction(1, ell) for ell in range(1, k + 1))
    raise ValueError(f"unknown rule {rule!r}; expected one of {RULES} or 'explicit'")


def make_rule_weights(rule: str, election: Election, explicit_vectors=None) -> WeightSystem:
    """Weight system for ``rule`` in ``{"av", "cc", "pav", "explicit"}``.

    For ``"explicit"`` the caller supplies one vector of length ``k`` per voter.
    """
    if rule == "explicit":
        if explicit_vectors is None:
            raise ValueError("explicit rule needs explicit_vectors")
        vectors = list(explicit_vectors)
        if len(vectors) != election.n:
            raise LengthMismatch(f"{len(vectors)} weight vectors for {election.n} voters")
        for i, vec in enumerate(vectors):
            if len(vec) != election.k:
                raise LengthMismatch(
                    f"weight vector of voter {i} has length {len(vec)}, expected {election.k}"
                )
        return WeightSystem(tuple(vectors))
    vec = rule_vector(rule, election.k)
    return WeightSystem(tuple(vec for _ in range(election.n)))


def score_committee(election: Election, weights: WeightSystem, committee) -> Fraction:
    """Thiele score: sum over voters of the first ``|W & C_i|`` entries of ``w^i``."""
    members = committee.members if isinstance(committee, Committee) else frozenset(committee)
    total = Fraction(0)
    for i, ballot in enumerate(election.matrix.approvals_by_voter):
        total += sum(weights.vectors[i][: len(ballot & members)], Fraction(0))
    return total
