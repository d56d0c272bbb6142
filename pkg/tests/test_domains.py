import random
from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import c1p_exists_naive, lc_exists_naive, lc_holds_naive, random_domain_matrix, random_matrix
from thiele.core import ApprovalMatrix
from thiele.domains import (
    CONTAINMENT,
    INTERSECTION,
    IntervalModel,
    LinearOrderWitness,
    LrLabeling,
    TreeModel,
    check_lc_order,
    check_lr_labeling,
    consecutive_ones_order,
    find_dominations,
    find_lc_order_bruteforce,
    fixtures,
    has_consecutive_ones,
    intervals_to_matrix,
    is_domination_free,
    lc_order_to_vcci_intervals,
    lr_labeling_feasible,
    refute_vci_small,
    remove_dominated_columns,
    tree_model_to_matrix,
    vcci_intervals_to_lc_order,
    vci_to_lc_order,
)
from thiele.errors import DisconnectedSubtree, EmptyRowOrColumn, NotLcWitness, TooLarge
from thiele.generators import random_containment_model, random_intersection_model, random_lc_matrix

FX = fixtures()
SWITCH = ApprovalMatrix.from_rows([[1, 0], [0, 1]])


# fixtures


def test_fixture_values():
    assert FX.example1.approvals_by_voter[1] == frozenset({0, 2})
    assert FX.lc_not_vci.rows()[5][5] == 0
    assert FX.example2.x == (Fraction(1, 2),) * 4
    assert FX.cc_extension.election.matrix.supporters_by_candidate[4] == frozenset({0, 1, 2})
    assert intervals_to_matrix(FX.example1_intervals) == FX.example1


# domination


def test_find_dominations():
    assert find_dominations(FX.example1) == [(0, 1), (0, 2), (0, 3)]
    assert is_domination_free(ApprovalMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert find_dominations(ApprovalMatrix.from_rows([[1, 1], [0, 0]])) == []


def test_remove_dominated_columns():
    sub, kept = remove_dominated_columns(FX.example1)
    assert kept == [0] and is_domination_free(sub)


# consecutive ones


def test_consecutive_ones_examples():
    assert consecutive_ones_order(FX.example1) is None
    assert consecutive_ones_order(FX.example1, "rows") == (0, 1, 2)
    residual = FX.example1.submatrix(candidates=[2, 3])
    assert consecutive_ones_order(residual) is not None
    with pytest.raises(ValueError):
        consecutive_ones_order(FX.example1, "diagonal")


def test_consecutive_ones_matches_brute_force():
    rng = random.Random(2)
    for _ in range(1500):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        a = random_matrix(rng, n, m, rng.choice([0.3, 0.5, 0.7]))
        for axis, ground, sets in (
            ("columns", m, a.approvals_by_voter),
            ("rows", n, a.supporters_by_candidate),
        ):
            order = consecutive_ones_order(a, axis)
            assert (order is not None) == c1p_exists_naive(ground, sets)
            if order is not None:
                assert has_consecutive_ones(sets, order)


def test_consecutive_ones_on_interval_matrices():
    # planted orders must always be recovered, also for larger sizes
    rng = random.Random(4)
    for _ in range(300):
        n, m = rng.randint(1, 15), rng.randint(1, 15)
        perm = list(range(m))
        rng.shuffle(perm)
        rows = []
        for _ in range(n):
            lo = rng.randint(0, m - 1)
            hi = rng.randint(lo, m - 1)
            rows.append({perm[p] for p in range(lo, hi + 1)})
        assert consecutive_ones_order(ApprovalMatrix(n, m, tuple(rows))) is not None


# LC witnesses


def test_check_lc_order_examples():
    assert check_lc_order(FX.lc_not_vci, FX.lc_not_vci_order)
    assert check_lc_order(ApprovalMatrix.from_rows([[1]]), LinearOrderWitness.identity(1, 1))
    # candidates ordered c3, c2, c1, c4: v1 approves c2, v2 approves c3, v1 lacks c3
    bad = LinearOrderWitness((0, 1, 2), (2, 1, 0, 3))
    assert not lc_holds_naive(FX.example1, bad.voter_order, bad.candidate_order)
    assert not check_lc_order(FX.example1, bad)


def test_check_lc_order_matches_naive():
    rng = random.Random(8)
    for _ in range(2000):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        a = random_matrix(rng, n, m)
        vo, co = list(range(n)), list(range(m))
        rng.shuffle(vo)
        rng.shuffle(co)
        assert check_lc_order(a, LinearOrderWitness(vo, co)) == lc_holds_naive(a, vo, co)


def test_find_lc_order_bruteforce():
    for a in (FX.example1, FX.lc_not_vci, SWITCH):
        w = find_lc_order_bruteforce(a)
        assert w is not None and lc_holds_naive(a, w.voter_order, w.candidate_order)
    with pytest.raises(TooLarge):
        find_lc_order_bruteforce(ApprovalMatrix(8, 1, tuple(frozenset() for _ in range(8))))


def test_find_lc_order_bruteforce_matches_naive_existence():
    rng = random.Random(13)
    for _ in range(300):
        a = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        assert (find_lc_order_bruteforce(a) is not None) == lc_exists_naive(a)


# conversions


def test_vci_to_lc_order_examples():
    model = IntervalModel([(0, 2), (1, 3)], [(0, 0), (3, 3)], INTERSECTION)
    assert vci_to_lc_order(model) == LinearOrderWitness((0, 1), (0, 1))
    tied = IntervalModel([(1, 2), (1, 3), (0, 1)], [(1, 1), (1, 4)], INTERSECTION)
    w = vci_to_lc_order(tied)
    assert w.voter_order == (2, 0, 1) and check_lc_order(intervals_to_matrix(tied), w)


def test_lc_order_to_vcci_intervals_fixture():
    model = lc_order_to_vcci_intervals(FX.lc_not_vci, FX.lc_not_vci_order)
    assert model.voter_intervals[0] == (1, 10)
    assert model.candidate_intervals[0] == (3, 8)
    assert model.candidate_intervals[5] == (4, 13) and model.voter_intervals[5] == (6, 11)
    assert intervals_to_matrix(model) == FX.lc_not_vci
    assert check_lc_order(FX.lc_not_vci, vcci_intervals_to_lc_order(model))


def test_lc_order_to_vcci_intervals_trivial_and_errors():
    one = ApprovalMatrix.from_rows([[1]])
    model = lc_order_to_vcci_intervals(one, LinearOrderWitness.identity(1, 1))
    assert model.voter_intervals == ((1, 2),) and model.candidate_intervals == ((1, 2),)
    assert vcci_intervals_to_lc_order(model) == LinearOrderWitness.identity(1, 1)
    with pytest.raises(NotLcWitness):
        lc_order_to_vcci_intervals(FX.example1, LinearOrderWitness((0, 1, 2), (2, 1, 0, 3)))
    with pytest.raises(EmptyRowOrColumn):
        lc_order_to_vcci_intervals(ApprovalMatrix.from_rows([[1, 0]]), LinearOrderWitness.identity(1, 2))


def test_intervals_to_matrix_conventions():
    touch = IntervalModel([(0, 1)], [(1, 2)], INTERSECTION)
    assert intervals_to_matrix(touch).rows() == [[1]]
    contain = IntervalModel([(0, 3)], [(1, 2), (2, 4)], CONTAINMENT)
    assert intervals_to_matrix(contain).rows() == [[1, 0]]
    with pytest.raises(ValueError):
        IntervalModel([(2, 1)], [(0, 0)])


def test_tree_model_to_matrix():
    # star: centre 0, leaves 1 and 2
    star = [(0, 1), (0, 2)]
    assert tree_model_to_matrix(TreeModel(3, star, [{2, 0}], [{1}])).rows() == [[0]]
    assert tree_model_to_matrix(TreeModel(3, star, [{1, 0}], [{1}])).rows() == [[1]]
    with pytest.raises(DisconnectedSubtree):
        tree_model_to_matrix(TreeModel(3, star, [{1, 2}], [{1}]))
    with pytest.raises(ValueError):
        TreeModel(3, [(0, 1), (1, 0)], [{0}], [{0}])


@settings(max_examples=200)
@given(st.integers(0, 10**9))
def test_left_endpoint_order_is_lc(seed):
    rng = random.Random(seed)
    model = random_intersection_model(rng, rng.randint(1, 6), rng.randint(1, 6))
    assert check_lc_order(intervals_to_matrix(model), vci_to_lc_order(model))


@settings(max_examples=200)
@given(st.integers(0, 10**9))
def test_containment_round_trips(seed):
    rng = random.Random(seed)
    model = random_containment_model(rng, rng.randint(1, 6), rng.randint(1, 6))
    a = intervals_to_matrix(model)
    w = vcci_intervals_to_lc_order(model)
    assert check_lc_order(a, w)
    a, w = random_lc_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
    assert check_lc_order(a, w)
    if all(a.approvals_by_voter) and all(a.supporters_by_candidate):
        back = lc_order_to_vcci_intervals(a, w)
        assert intervals_to_matrix(back) == a


@settings(max_examples=200)
@given(st.integers(0, 10**9), st.sampled_from(["vci", "lc"]))
def test_reduced_matrices_are_ci(seed, kind):
    rng = random.Random(seed)
    a = random_domain_matrix(rng, rng.randint(1, 8), rng.randint(1, 8), kind)
    reduced, _ = remove_dominated_columns(a)
    assert is_domination_free(reduced)
    assert consecutive_ones_order(reduced) is not None


# L/R labelings


def test_lr_labeling_switch():
    lab = lr_labeling_feasible(SWITCH, (0, 1), (0, 1))
    assert lab.labels == {(0, 1): "L", (1, 0): "R"}
    assert check_lr_labeling(SWITCH, lab)


def test_lr_labeling_fixture_infeasible():
    assert lr_labeling_feasible(FX.lc_not_vci, range(7), range(7)) is None


def test_lr_labeling_all_ones():
    ones = ApprovalMatrix.from_rows([[1, 1], [1, 1]])
    lab = lr_labeling_feasible(ones, (1, 0), (0, 1))
    assert lab is not None and lab.labels == {}


def _labeling_exists_naive(a, rows, cols):
    zeros = [(i, c) for i in rows for c in cols if c not in a.approvals_by_voter[i]]
    for tags in product("LR", repeat=len(zeros)):
        if check_lr_labeling(a, LrLabeling(tuple(rows), tuple(cols), dict(zip(zeros, tags)))):
            return True
    return False


def test_lr_labeling_matches_exhaustive_labels():
    rng = random.Random(21)
    for _ in range(300):
        n, m = rng.randint(1, 3), rng.randint(1, 4)
        a = random_matrix(rng, n, m)
        rows, cols = list(range(n)), list(range(m))
        rng.shuffle(rows)
        rng.shuffle(cols)
        lab = lr_labeling_feasible(a, rows, cols)
        assert (lab is not None) == _labeling_exists_naive(a, rows, cols)


def test_switches_labeled_differently():
    rng = random.Random(17)
    for _ in range(300):
        a = random_domain_matrix(rng, rng.randint(2, 5), rng.randint(2, 5), "vci")
        rows, cols = list(range(a.n)), list(range(a.m))
        rng.shuffle(rows)
        rng.shuffle(cols)
        lab = lr_labeling_feasible(a, rows, cols)
        if lab is None:
            continue
        A = a.approves
        for i in range(a.n):
            for j in range(a.n):
                for x in range(a.m):
                    for y in range(a.m):
                        if A(i, x) and not A(i, y) and not A(j, x) and A(j, y):
                            assert lab.labels[(i, y)] != lab.labels[(j, x)]


@settings(max_examples=200)
@given(st.integers(0, 10**9))
def test_left_endpoint_order_is_labelable(seed):
    rng = random.Random(seed)
    model = random_intersection_model(rng, rng.randint(1, 6), rng.randint(1, 6))
    w = vci_to_lc_order(model)
    assert lr_labeling_feasible(intervals_to_matrix(model), w.voter_order, w.candidate_order)


def test_refute_vci_small_examples():
    assert refute_vci_small(FX.lc_not_vci)
    assert not refute_vci_small(FX.example1)
    assert not refute_vci_small(ApprovalMatrix.from_rows([[1]]))
    with pytest.raises(TooLarge):
        refute_vci_small(ApprovalMatrix(1, 8, (frozenset(),)))


def test_refute_vci_small_matches_unpruned_search():
    rng = random.Random(23)
    for _ in range(200):
        a = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        full = not any(
            lr_labeling_feasible(a, rows, cols) is not None
            for rows in permutations(range(a.n))
            for cols in permutations(range(a.m))
        )
        assert refute_vci_small(a) == full
