import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import random_matrix
from thiele import ratlp
from thiele.core import Committee, Election, WeightSystem, build_election, make_rule_weights, score_committee
from thiele.errors import RepresentationOverflow, WeightsNegative, WeightsNotNonIncreasing
from thiele.lp import (
    build_lp,
    canonical_vector,
    canonicalize_y,
    fractional_objective,
    representation,
    y_objective,
)

HALF = Fraction(1, 2)


def example1(k=2):
    return build_election([[0, 1], [0, 2], [0, 3]], 4, k)


def test_build_lp_shape():
    e = example1()
    problem, vmap = build_lp(e, make_rule_weights("pav", e))
    assert problem.num_vars == 10 and len(problem.eq_constraints) == 4
    row, rhs = problem.eq_constraints[1]
    assert row == {0: 1, 1: 1, vmap.y(0, 0): -1, vmap.y(0, 1): -1} and rhs == 0
    assert problem.eq_constraints[0] == ({j: 1 for j in range(4)}, 2)
    assert all(b == (0, 1) for b in problem.var_bounds)


def test_build_lp_smallest():
    e = build_election([[0, 1]], 2, 1)
    problem, _ = build_lp(e, make_rule_weights("av", e))
    # m + n*k = 2 + 1 = 3 variables: x_1, x_2, y^1_1
    assert problem.num_vars == 3
    assert problem.dense_rows() == [[1, 1, 0], [1, 1, -1]]


def test_build_lp_rejects_bad_weights():
    e = example1()
    with pytest.raises(WeightsNotNonIncreasing):
        build_lp(e, WeightSystem(((0, 1),) * 3))
    with pytest.raises(WeightsNegative):
        build_lp(e, WeightSystem(((0, -1),) * 3))


def test_canonical_vector():
    assert canonical_vector(Fraction(3, 2), 2) == (1, HALF)
    assert canonical_vector(Fraction(2), 2) == (1, 1)
    assert canonical_vector(Fraction(0), 2) == (0, 0)
    with pytest.raises(RepresentationOverflow):
        canonical_vector(Fraction(3), 2)


def test_fractional_objective_examples():
    e = example1()
    pav = make_rule_weights("pav", e)
    assert fractional_objective(e, pav, (1, 1, 0, 0)) == Fraction(7, 2)
    assert fractional_objective(e, pav, (HALF,) * 4) == 3
    assert fractional_objective(e, pav, (0,) * 4) == 0


def test_integral_objective_equals_score_exhaustive():
    rng = random.Random(3)
    for _ in range(60):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        a = random_matrix(rng, n, m)
        for k in range(1, m + 1):
            e = Election(a, k)
            for rule in ("av", "cc", "pav"):
                w = make_rule_weights(rule, e)
                for W in combinations(range(m), k):
                    x = [int(j in W) for j in range(m)]
                    assert fractional_objective(e, w, x) == score_committee(e, w, Committee(W))


def _random_feasible_point(rng, e):
    """Random x with sum k, and a random y consistent with constraint (3)."""
    m, k = e.m, e.k
    while True:
        raw = [Fraction(rng.randint(0, 4), 4) for _ in range(m)]
        total = sum(raw)
        if total == 0:
            continue
        x = [min(Fraction(1), v * k / total) for v in raw]
        if sum(x) == k:
            break
    y = []
    for r in representation(e, x):
        # split r over k slots in [0, 1] at random
        vec = [Fraction(0)] * k
        rest = r
        for ell in rng.sample(range(k), k):
            take = min(Fraction(1), rest) if ell == k - 1 else min(Fraction(1), rest, Fraction(rng.randint(0, 4), 4))
            vec[ell] = take
            rest -= take
        if rest:
            for ell in range(k):
                add = min(Fraction(1) - vec[ell], rest)
                vec[ell] += add
                rest -= add
        y.append(tuple(vec))
    return x, y


def test_canonical_y_dominates():
    rng = random.Random(7)
    checked = 0
    for _ in range(300):
        n, m = rng.randint(1, 4), rng.randint(2, 5)
        k = rng.randint(1, m)
        e = Election(random_matrix(rng, n, m), k)
        strict = rng.random() < 0.5
        vectors = []
        for _ in range(n):
            steps = [Fraction(rng.randint(1 if strict else 0, 3)) for _ in range(k)]
            vectors.append([sum(steps[ell:]) for ell in range(k)])
        w = make_rule_weights("explicit", e, vectors)
        x, y = _random_feasible_point(rng, e)
        problem, _ = build_lp(e, w)
        point = list(x) + [v for vec in y for v in vec]
        assert ratlp.check_feasible(problem, point)
        ystar = canonicalize_y(e, x)
        best = y_objective(w, ystar)
        assert best >= y_objective(w, y)
        if strict and tuple(y) != ystar:
            assert best > y_objective(w, y)
        checked += 1
    assert checked == 300


@given(st.integers(0, 10**6))
def test_canonical_y_is_feasible(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 4), rng.randint(1, 5)
    e = Election(random_matrix(rng, n, m), rng.randint(1, m))
    x, _ = _random_feasible_point(rng, e)
    problem, _ = build_lp(e, make_rule_weights("pav", e))
    y = canonicalize_y(e, x)
    assert ratlp.check_feasible(problem, list(x) + [v for vec in y for v in vec])
