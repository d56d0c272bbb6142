"""Worked examples used throughout the tests and the CLI."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from thiele.core import ApprovalMatrix, Election, WeightSystem, make_rule_weights
from thiele.domains.models import INTERSECTION, IntervalModel, LinearOrderWitness

HALF = Fraction(1, 2)

EXAMPLE1_ROWS = (
    (1, 1, 0, 0),
    (1, 0, 1, 0),
    (1, 0, 0, 1),
)

LC_NOT_VCI_ROWS = (
    (1, 1, 1, 0, 0, 0, 0),
    (1, 1, 1, 1, 1, 0, 0),
    (1, 1, 1, 1, 1, 1, 0),
    (0, 1, 1, 1, 1, 1, 1),
    (0, 1, 1, 1, 1, 0, 1),
    (0, 0, 1, 1, 0, 0, 0),
    (0, 0, 0, 1, 1, 0, 1),
)


@dataclass(frozen=True)
class FractionalConfiguration:
    """An election, a weight system and a fractional LP point ``(x, y)``."""

    election: Election
    weights: WeightSystem
    x: tuple
    y: tuple


@dataclass(frozen=True)
class Fixtures:
    example1: ApprovalMatrix
    example1_intervals: IntervalModel
    example2: FractionalConfiguration
    cc_extension: FractionalConfiguration
    lc_not_vci: ApprovalMatrix
    lc_not_vci_order: LinearOrderWitness


def example1() -> ApprovalMatrix:
    return ApprovalMatrix.from_rows(EXAMPLE1_ROWS)


def example2() -> FractionalConfiguration:
    election = Election(example1(), 2)
    weights = WeightSystem(tuple((0, 0) for _ in range(3)))
    y = tuple((Fraction(1), Fraction(0)) for _ in range(3))
    return FractionalConfiguration(election, weights, (HALF,) * 4, y)


def cc_extension() -> FractionalConfiguration:
    """The 3x4 example plus a fifth candidate approved by everyone, ``k = 3``, CC weights."""
    matrix = ApprovalMatrix.from_rows([row + (1,) for row in EXAMPLE1_ROWS])
    election = Election(matrix, 3)
    weights = make_rule_weights("cc", election)
    x = (HALF,) * 4 + (Fraction(1),)
    y = tuple((Fraction(1), Fraction(1), Fraction(0)) for _ in range(3))
    return FractionalConfiguration(election, weights, x, y)


def fixtures() -> Fixtures:
    return Fixtures(
        example1=example1(),
        example1_intervals=IntervalModel(
            [(1, 1), (2, 2), (3, 3)], [(1, 3), (1, 1), (2, 2), (3, 3)], INTERSECTION
        ),
        example2=example2(),
        cc_extension=cc_extension(),
        lc_not_vci=ApprovalMatrix.from_rows(LC_NOT_VCI_ROWS),
        lc_not_vci_order=LinearOrderWitness.identity(7, 7),
    )
