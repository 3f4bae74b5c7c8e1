"""WCA baseline: weight, greedy covering and detach/attach maintenance."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wacasim import topology
from wacasim.errors import ConfigurationError
from wacasim.simkit.verify import oracle_wca, random_graph
from wacasim.wca_baseline import (WcaAssignment, WcaFactors, WcaWeightInputs, wca_cluster,
                                  wca_maintain, wca_weight)


def test_weight_examples():
    assert wca_weight(WcaWeightInputs(0, 0, 0, 0)) == 0.0
    assert wca_weight(WcaWeightInputs(1, 10, 5, 0)) == pytest.approx(2.95)
    assert wca_weight(WcaWeightInputs(1, 10, 10, 0)) > wca_weight(WcaWeightInputs(1, 10, 5, 0))


def test_weight_validation():
    with pytest.raises(ValueError):
        WcaWeightInputs(float("nan"), 0, 0, 0)
    with pytest.raises(ConfigurationError):
        WcaFactors(w1=-0.1)


def test_single_device_is_head():
    a = wca_cluster(np.zeros((1, 1), dtype=bool), np.array([3.0]))
    assert a.heads == {0}


def test_lighter_of_two_heads():
    adj = np.array([[0, 1], [1, 0]], dtype=bool)
    a = wca_cluster(adj, np.array([1.0, 2.0]))
    assert a.heads == {0} and a.membership == {1: 0}


def test_path_middle_heads():
    adj = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=bool)
    a = wca_cluster(adj, np.array([2.0, 1.0, 2.0]))
    assert a.heads == {1} and a.membership == {0: 1, 2: 1}


def test_maintain_without_motion_has_no_events():
    pos = np.array([(0, 0), (5, 0), (40, 0), (45, 0)], dtype=float)
    adj = topology.adjacency_matrix(pos, 10)
    w = np.array([1.0, 2.0, 1.0, 2.0])
    first = wca_cluster(adj, w)
    again, events = wca_maintain(first, adj, w, topology.distance_matrix(pos))
    assert events == 0 and again == first


def test_member_drifting_to_another_head():
    pos = np.array([(0, 0), (5, 0), (40, 0), (45, 0)], dtype=float)
    w = np.array([1.0, 2.0, 1.0, 2.0])
    first = wca_cluster(topology.adjacency_matrix(pos, 10), w)
    assert first.head_of(1) == 0
    pos[1] = (35, 0)
    adj = topology.adjacency_matrix(pos, 10)
    new, events = wca_maintain(first, adj, w, topology.distance_matrix(pos))
    assert events == 1 and new.head_of(1) == 2 and new.heads == first.heads


def test_orphan_triggers_new_cluster():
    pos = np.array([(0, 0), (5, 0), (80, 80)], dtype=float)
    w = np.array([1.0, 2.0, 5.0])
    first = wca_cluster(topology.adjacency_matrix(pos, 10), w)
    pos[1] = (60, 60)
    adj = topology.adjacency_matrix(pos, 10)
    new, events = wca_maintain(first, adj, w, topology.distance_matrix(pos))
    assert events == 1 and 1 in new.heads


@settings(max_examples=300, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_cluster_matches_oracle_and_covers(seed):
    adj, weights = random_graph(np.random.default_rng(seed))
    a = wca_cluster(adj, weights)
    n = len(weights)
    assert a.pointers(n).tolist() == oracle_wca(weights.tolist(), adj.tolist())
    assert set(a.heads) | set(a.membership) == set(range(n))
    assert not set(a.heads) & set(a.membership)
    for m, h in a.membership.items():
        assert adj[m, h]
    heads = sorted(a.heads)
    assert not adj[np.ix_(heads, heads)].any()


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_maintenance_keeps_one_hop_cover(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 15))
    pos = rng.random((n, 2)) * 100
    w = rng.random(n)
    a = wca_cluster(topology.adjacency_matrix(pos, 30), w)
    pos = np.clip(pos + rng.normal(0, 10, size=pos.shape), 0, 100)
    adj = topology.adjacency_matrix(pos, 30)
    b, events = wca_maintain(a, adj, w, topology.distance_matrix(pos))
    assert set(b.heads) | set(b.membership) == set(range(n))
    assert all(adj[m, h] for m, h in b.membership.items())
    assert events == sum(a.head_of(d) != b.head_of(d) for d in range(n))


def test_assignment_pointer_helpers():
    a = WcaAssignment(frozenset({0}), {1: 0})
    assert a.pointers(2).tolist() == [0, 0]
