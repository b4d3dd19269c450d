import numpy as np
import pytest
from hypothesis import given, settings

from pcenter.errors import NoFeasibleRadiusError
from pcenter.instance import Instance
from pcenter.ladder import (
    build_ladder,
    coverage_set,
    critical_indices,
    next_distance_at_least,
    rank_matrix,
    rank_transform,
)
from pcenter.solver import brute_force_radius

from conftest import instances, seeded_instances


def test_t3_ladder(t3):
    ladder = build_ladder(t3)
    assert ladder.values.tolist() == [0, 2, 4, 5]
    assert ladder.K == 3
    assert ladder[2] == 4 and ladder.rank(5) == 3
    assert 4 in ladder and 3 not in ladder


def test_constant_ladder():
    ladder = build_ladder(Instance([[7, 7], [7, 7]], 1))
    assert ladder.values.tolist() == [7]
    assert ladder.K == 0


def test_rank_of_missing_value(t3):
    with pytest.raises(KeyError):
        build_ladder(t3).rank(3)


@pytest.mark.parametrize("k, expected", [(1, {0}), (2, {0, 1}), (3, {0, 1})])
def test_t3_coverage_client_one(t3, k, expected):
    assert coverage_set(t3, build_ladder(t3), 0, k) == expected


@pytest.mark.parametrize("k", [0, 4])
def test_coverage_index_range(t3, k):
    with pytest.raises(IndexError):
        coverage_set(t3, build_ladder(t3), 0, k)


def test_t3_critical_indices(t3):
    s = critical_indices(t3)
    assert s.sets[0] == frozenset({1})
    assert s.sets[2] == frozenset({2})
    assert s.constraint_indices(0) == [1, 3]
    assert s.constraint_indices(2) == [2, 3]
    assert s.total_rows() == 7


def test_critical_indices_empty_ladder():
    s = critical_indices(Instance([[7, 7]], 1))
    assert s.K == 0
    assert s.constraint_indices(0) == []
    assert s.total_rows() == 0


def test_rank_transform_t3(t3):
    assert rank_transform(t3).distances.tolist() == [[0, 1, 3], [1, 0, 2], [3, 2, 0]]


def test_rank_transform_identity_on_ranked(t3):
    ranked = rank_transform(t3)
    assert rank_transform(ranked).same_data(ranked)


@pytest.mark.parametrize("v, expected", [(3.2, 4), (4, 4), (-1, 0), (5, 5)])
def test_next_distance(t3, v, expected):
    assert next_distance_at_least(build_ladder(t3), v) == expected


def test_next_distance_above_top(t3):
    with pytest.raises(NoFeasibleRadiusError):
        next_distance_at_least(build_ladder(t3), 5.1)


@given(instances())
@settings(max_examples=150, deadline=None)
def test_ladder_is_sorted_distinct_entries(inst):
    ladder = build_ladder(inst)
    assert ladder.values.tolist() == sorted(set(inst.distances.ravel().tolist()))
    r = rank_matrix(inst, ladder)
    assert np.array_equal(ladder.values[r], inst.distances)


@given(instances())
@settings(max_examples=150, deadline=None)
def test_coverage_sets_nest(inst):
    ladder = build_ladder(inst)
    for i in range(inst.n_clients):
        for k in range(1, ladder.K):
            assert coverage_set(inst, ladder, i, k) <= coverage_set(inst, ladder, i, k + 1)


@given(instances())
@settings(max_examples=150, deadline=None)
def test_critical_index_characterisation(inst):
    ladder = build_ladder(inst)
    s = critical_indices(inst, ladder)
    d = inst.distances
    for i in range(inst.n_clients):
        expected = {k for k in range(1, ladder.K) if np.any(d[i] == ladder[k])}
        assert s.sets[i] == expected
        # k is critical exactly where the coverage set changes
        for k in range(1, ladder.K):
            grows = coverage_set(inst, ladder, i, k) != coverage_set(inst, ladder, i, k + 1)
            assert (k in s.sets[i]) == grows
        assert len(s.sets[i]) <= min(inst.n_facilities, ladder.K)
    # S_i holds at most M indices below K, plus K itself
    assert s.total_rows() <= inst.n_clients * min(inst.n_facilities + 1, ladder.K)


@pytest.mark.parametrize("inst", seeded_instances(25, seed=3), ids=lambda _: "")
def test_rank_transform_preserves_optimal_rank(inst):
    ladder = build_ladder(inst)
    ranked = rank_transform(inst)
    for p in range(1, inst.n_facilities + 1):
        radius, _ = brute_force_radius(inst, p)
        rank, _ = brute_force_radius(ranked, p)
        assert ladder[rank] == radius
