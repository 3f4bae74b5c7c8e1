"""Weighted Clustering Algorithm (WCA) baseline.

One-hop clusters built by a greedy covering: the uncovered device with the
*smallest* combined weight becomes a clusterhead and absorbs its uncovered
neighbors, until every device is covered. Maintenance follows WCA's
detach/attach policy: a member that loses its head joins the nearest head in
range, and only devices with no head in range trigger a local re-election.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError

#: Ticks over which the mobility term averages speed.
MOBILITY_WINDOW = 10


@dataclass(frozen=True)
class WcaFactors:
    w1: float = 0.7
    w2: float = 0.2
    w3: float = 0.05
    w4: float = 0.05

    def __post_init__(self):
        for name in ("w1", "w2", "w3", "w4"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ConfigurationError(f"{name} must be finite and >= 0, got {value}")


@dataclass(frozen=True)
class WcaWeightInputs:
    degree_difference: float
    distance_sum: float
    mobility: float
    head_time: float

    def __post_init__(self):
        values = (self.degree_difference, self.distance_sum, self.mobility, self.head_time)
        if not all(math.isfinite(v) and v >= 0 for v in values):
            raise ValueError(f"WCA inputs must be finite and >= 0: {values}")


@dataclass(frozen=True)
class WcaAssignment:
    heads: frozenset
    membership: dict = field(default_factory=dict)

    def head_of(self, d: int) -> int:
        return d if d in self.heads else self.membership[d]

    def pointers(self, n: int) -> np.ndarray:
        return np.array([self.head_of(d) for d in range(n)], dtype=np.int64)


def wca_weight(inputs: WcaWeightInputs, factors: WcaFactors = WcaFactors()) -> float:
    """Combined WCA weight; smaller is better."""
    return (factors.w1 * inputs.degree_difference + factors.w2 * inputs.distance_sum
            + factors.w3 * inputs.mobility + factors.w4 * inputs.head_time)


def wca_weights(adj: np.ndarray, dist: np.ndarray, mobility: np.ndarray, head_time: np.ndarray,
                ideal_degree: int, factors: WcaFactors = WcaFactors()) -> np.ndarray:
    deg = adj.sum(axis=-1)
    dist_sum = np.where(adj, dist, 0.0).sum(axis=-1)
    return (factors.w1 * np.abs(deg - ideal_degree) + factors.w2 * dist_sum
            + factors.w3 * mobility + factors.w4 * head_time)


def _greedy_cover(candidates: set, adj: np.ndarray, weights: np.ndarray,
                  heads: set, membership: dict) -> None:
    uncovered = set(candidates)
    while uncovered:
        h = min(uncovered, key=lambda d: (weights[d], d))
        heads.add(h)
        uncovered.discard(h)
        membership.pop(h, None)
        for m in np.flatnonzero(adj[h]).tolist():
            if m in uncovered:
                membership[m] = h
                uncovered.discard(m)


def wca_cluster(adj: np.ndarray, weights: np.ndarray) -> WcaAssignment:
    heads: set = set()
    membership: dict = {}
    _greedy_cover(set(range(len(weights))), adj, weights, heads, membership)
    return WcaAssignment(frozenset(heads), membership)


def wca_maintain(previous: WcaAssignment, adj: np.ndarray, weights: np.ndarray,
                 dist: np.ndarray) -> tuple[WcaAssignment, int]:
    """Apply the detach/attach policy to a new snapshot.

    Returns the new assignment and the number of reaffiliation events (members
    whose clusterhead changed, including those that became heads).
    """
    heads = set(previous.heads)
    head_arr = np.array(sorted(heads), dtype=np.int64)
    membership = {}
    orphans = set()
    events = 0
    for m in sorted(previous.membership):
        h = previous.membership[m]
        if adj[m, h]:
            membership[m] = h
            continue
        in_range = head_arr[adj[m, head_arr]] if len(head_arr) else head_arr
        if len(in_range):
            nearest = min(in_range.tolist(), key=lambda c: (dist[m, c], c))
            membership[m] = nearest
            events += 1
        else:
            orphans.add(m)
    if orphans:
        _greedy_cover(orphans, adj, weights, heads, membership)
        events += len(orphans)
    return WcaAssignment(frozenset(heads), membership), events
