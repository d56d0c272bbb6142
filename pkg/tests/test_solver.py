import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import random_domain_matrix, weight_systems
from thiele.core import ApprovalMatrix, Election, WeightSystem, build_election, make_rule_weights
from thiele.domains import consecutive_ones_order, fixtures, is_domination_free
from thiele.errors import (
    DomainViolation,
    NotShifted,
    WeightsNegative,
    WeightsNotNonIncreasing,
    WeightsNotStrictlyDecreasingPositive,
)
from thiele.generators import random_weights
from thiele.hardness import brute_force_committee
from thiele.lp import fractional_objective
from thiele.solver import (
    ShiftStep,
    build_residual,
    dominance_shift,
    round_optimal_point,
    solve_extreme_point,
    solve_thiele,
)

HALF = Fraction(1, 2)
FX = fixtures()


def example1(k=2):
    return Election(FX.example1, k)


def test_dominance_shift_example1():
    x, steps = dominance_shift(example1(), (HALF,) * 4)
    assert steps == (ShiftStep(0, 1, HALF),)
    assert x == (1, 0, HALF, HALF)


def test_dominance_shift_integral_start():
    x, steps = dominance_shift(example1(), (0, 1, 1, 0))
    assert x == (1, 0, 1, 0) and len(steps) == 1


def test_dominance_shift_no_dominations():
    e = build_election([[0], [1]], 2, 1)
    x, steps = dominance_shift(e, (HALF, HALF))
    assert x == (HALF, HALF) and steps == ()


def test_build_residual_example1():
    e = example1()
    res = build_residual(e, make_rule_weights("pav", e), (1, 0, HALF, HALF))
    assert res.W1 == {0} and res.W0 == {1} and res.C_prime == (2, 3)
    assert res.k_prime == 1 and res.ell == (1, 1, 1)
    assert res.residual_weights.vectors == ((HALF,),) * 3


def test_build_residual_integral_and_equal_columns():
    e = example1()
    res = build_residual(e, make_rule_weights("pav", e), (1, 1, 0, 0))
    assert res.C_prime == () and res.k_prime == 0 and res.empty
    twin = build_election([[0, 1]], 2, 1)
    res = build_residual(twin, make_rule_weights("av", twin), (HALF, HALF))
    assert res.W1 == frozenset() and res.C_prime == (0, 1) and res.k_prime == 1


def test_build_residual_requires_shift():
    e = example1()
    with pytest.raises(NotShifted):
        build_residual(e, make_rule_weights("pav", e), (HALF,) * 4)


def test_solve_thiele_examples():
    e = example1()
    committee, score, _ = solve_thiele(e, make_rule_weights("pav", e))
    assert score == Fraction(7, 2) and 0 in committee and len(committee) == 2
    committee, score, _ = solve_thiele(e, make_rule_weights("cc", e))
    assert score == 3 and 0 in committee


def test_solve_thiele_example2_and_extension():
    for cfg, expected in ((FX.example2, 0), (FX.cc_extension, 3)):
        committee, score, trace = solve_thiele(cfg.election, cfg.weights)
        assert score == expected and len(committee) == cfg.election.k
        assert all(v in (0, 1) for v in trace.residual_point)
        assert score == brute_force_committee(cfg.election, cfg.weights)[0]


def test_round_example2_fractional_point():
    cfg = FX.example2
    committee, score, trace = round_optimal_point(cfg.election, cfg.weights, cfg.x, cfg.y)
    assert score == 0 and len(committee) == 2
    assert trace.shift_steps == (ShiftStep(0, 1, HALF),)


def test_round_cc_extension_fractional_point():
    cfg = FX.cc_extension
    committee, score, _ = round_optimal_point(cfg.election, cfg.weights, cfg.x, cfg.y)
    assert score == 3 and len(committee) == 3


def test_solve_thiele_rejects_bad_weights():
    e = example1()
    with pytest.raises(WeightsNotNonIncreasing):
        solve_thiele(e, WeightSystem(((0, 1),) * 3))
    with pytest.raises(WeightsNegative):
        solve_thiele(e, WeightSystem(((0, -1),) * 3))


def test_solve_extreme_point():
    e = example1()
    _, score = solve_extreme_point(e, make_rule_weights("pav", e))
    assert score == Fraction(7, 2)
    with pytest.raises(WeightsNotStrictlyDecreasingPositive):
        solve_extreme_point(e, make_rule_weights("cc", e))


def test_residual_not_ci_certificate():
    # triangle: no dominations and no CI order; x = 1/3 each is CC-optimal at k = 1
    tri = ApprovalMatrix.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    e = Election(tri, 1)
    third = Fraction(1, 3)
    with pytest.raises(DomainViolation) as info:
        round_optimal_point(e, make_rule_weights("cc", e), (third,) * 3, validate_domain=True)
    assert info.value.certificate == "residual-not-ci"


OUTSIDE = [[0, 1, 0, 1, 1], [1, 0, 0, 0, 1], [0, 0, 1, 0, 1], [0, 1, 1, 0, 0], [1, 0, 0, 0, 0]]


def test_fractional_vertex_certificates():
    # found by random search; the LP optimum of this matrix exceeds every committee
    e = Election(ApprovalMatrix.from_rows(OUTSIDE), 2)
    with pytest.raises(DomainViolation) as info:
        solve_thiele(e, make_rule_weights("cc", e))
    assert info.value.certificate == "fractional-residual-vertex"
    with pytest.raises(DomainViolation) as info:
        solve_extreme_point(e, make_rule_weights("pav", e))
    assert info.value.certificate == "fractional-extreme-point"


def _check_run(e, w, trace, score):
    assert score == brute_force_committee(e, w)[0]
    assert len(trace.shift_steps) <= e.m**2
    x = list(trace.lp_point.x)
    value = fractional_objective(e, w, x)
    for step in trace.shift_steps:
        x[step.recipient] += step.amount
        x[step.donor] -= step.amount
        nxt = fractional_objective(e, w, x)
        assert nxt >= value
        value = nxt
    assert tuple(x) == trace.shifted_x
    assert trace.lp_objective == trace.fixed_score + trace.residual_objective == trace.final_score
    if trace.residual.residual_matrix is not None:
        assert is_domination_free(trace.residual.residual_matrix)
        assert consecutive_ones_order(trace.residual.residual_matrix) is not None


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(["vci", "lc"]))
def test_oracle_equivalence(seed, kind):
    rng = random.Random(seed)
    a = random_domain_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), kind)
    e = Election(a, rng.randint(1, a.m))
    for _, w in weight_systems(rng, e):
        _, score, trace = solve_thiele(e, w, validate_domain=True)
        _check_run(e, w, trace, score)
        if w.strictly_positive:
            assert trace.shift_steps == ()


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(["vci", "lc"]))
def test_rounding_fractional_optima(seed, kind):
    rng = random.Random(seed)
    a = random_domain_matrix(rng, rng.randint(1, 6), rng.randint(2, 6), kind)
    e = Election(a, rng.randint(1, a.m))
    for _, w in weight_systems(rng, e):
        best, winners = brute_force_committee(e, w)
        picks = rng.sample(winners, min(3, len(winners)))
        x = [Fraction(sum(j in W for W in picks), len(picks)) for j in range(e.m)]
        _, score, trace = round_optimal_point(e, w, x, validate_domain=True)
        _check_run(e, w, trace, score)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(["vci", "lc"]))
def test_extreme_point_integral(seed, kind):
    rng = random.Random(seed)
    a = random_domain_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), kind)
    e = Election(a, rng.randint(1, a.m))
    for w in (make_rule_weights("pav", e), random_weights(rng, e, strict=True)):
        _, score = solve_extreme_point(e, w)
        assert score == brute_force_committee(e, w)[0]
