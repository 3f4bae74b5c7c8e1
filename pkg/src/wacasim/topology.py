"""Unit-disk topology and the neighborhood quantities used by the weight function.

Two representations of the same graph are used throughout the package:

* an adjacency *mapping* ``{device_id: frozenset(neighbor_ids)}``, convenient
  for per-device reasoning and tests, and
* a dense boolean adjacency *matrix* of shape ``(n, n)``, used by the
  simulation engine where networks never exceed a few hundred devices.

Device ids are the row indices of the position array (dense ``0..n-1``).
"""
from __future__ import annotations

from itertools import combinations
from typing import Mapping

import numpy as np

from .errors import ConfigurationError

Adjacency = Mapping[int, frozenset]


def _as_positions(positions) -> np.ndarray:
    pos = np.asarray(positions, dtype=float)
    if pos.ndim != 2 or pos.shape[1] != 2:
        raise ValueError(f"positions must have shape (n, 2), got {pos.shape}")
    if not np.all(np.isfinite(pos)):
        raise ValueError("positions contain non-finite coordinates")
    return pos


def _pair_ranges(r, n: int) -> np.ndarray | float:
    """Per-pair link range; heterogeneous ranges use min(r_a, r_b) so links stay symmetric."""
    ranges = np.asarray(r, dtype=float)
    if ranges.ndim == 0:
        if not np.isfinite(ranges) or ranges <= 0:
            raise ConfigurationError(f"transmission range must be positive, got {r}")
        return float(ranges)
    if ranges.shape != (n,):
        raise ConfigurationError(f"per-device ranges must have shape ({n},), got {ranges.shape}")
    if not np.all(np.isfinite(ranges)) or np.any(ranges <= 0):
        raise ConfigurationError("per-device transmission ranges must be positive")
    return np.minimum.outer(ranges, ranges)


def pairwise_distances(pos: np.ndarray) -> np.ndarray:
    """Euclidean distances for positions of shape ``(..., n, 2)``; no validation."""
    diff = pos[..., :, None, :] - pos[..., None, :, :]
    return np.sqrt(diff[..., 0] * diff[..., 0] + diff[..., 1] * diff[..., 1])


def distance_matrix(positions) -> np.ndarray:
    return pairwise_distances(_as_positions(positions))


def adjacency_matrix(positions, r) -> np.ndarray:
    """Boolean unit-disk adjacency: ``A[i, j]`` iff ``dist(i, j) < r`` (strict), no self-loops."""
    pos = _as_positions(positions)
    n = len(pos)
    limit = _pair_ranges(r, n)
    adj = distance_matrix(pos) < limit
    np.fill_diagonal(adj, False)
    return adj


def matrix_to_mapping(adj: np.ndarray) -> dict[int, frozenset]:
    return {i: frozenset(np.flatnonzero(row).tolist()) for i, row in enumerate(adj)}


def mapping_to_matrix(adjacency: Adjacency) -> np.ndarray:
    n = len(adjacency)
    adj = np.zeros((n, n), dtype=bool)
    for d, nbrs in adjacency.items():
        for m in nbrs:
            adj[d, m] = True
    return adj


def compute_neighbors(positions, r) -> dict[int, frozenset]:
    """Neighbor sets of every device under the unit-disk model.

    Devices at distance exactly ``r`` are *not* neighbors.

    >>> compute_neighbors([(0, 0), (0, 8), (0, 16)], 10)[1] == {0, 2}
    True
    """
    return matrix_to_mapping(adjacency_matrix(positions, r))


def neighbor_link_count(d: int, adjacency: Adjacency) -> int:
    """Number of links among the neighbors of ``d`` (edges of the induced subgraph)."""
    nbrs = adjacency[d]
    return sum(1 for a, b in combinations(sorted(nbrs), 2) if b in adjacency[a])


def local_clustering_coefficient(d: int, adjacency: Adjacency) -> float:
    # Denominator counts possible links among the m neighbors of d, not among all devices.
    m = len(adjacency[d])
    if m < 2:
        return 0.0
    return neighbor_link_count(d, adjacency) / (m * (m - 1) / 2)


def degree_deviation(neighbor_count, ideal_degree):
    """``1 - |count - ideal| / ideal``; peaks at 1 for the ideal degree and is not clamped."""
    if np.any(np.asarray(ideal_degree) <= 0):
        raise ConfigurationError(f"ideal degree must be positive, got {ideal_degree}")
    if np.any(np.asarray(neighbor_count) < 0):
        raise ValueError("neighbor count must be non-negative")
    return 1.0 - np.abs(neighbor_count - ideal_degree) / ideal_degree


# Vectorized forms over adjacency matrices, used by the engine. All accept a
# stack of matrices with shape (..., n, n).

def degrees(adj: np.ndarray) -> np.ndarray:
    return adj.sum(axis=-1)


def link_counts(adj: np.ndarray) -> np.ndarray:
    """Links among each device's neighbors: diag(A^3) / 2."""
    a = adj.astype(float)
    return np.rint(((a @ a) * a).sum(axis=-1) / 2).astype(np.int64)


def clustering_coefficients(adj: np.ndarray) -> np.ndarray:
    deg = degrees(adj)
    links = link_counts(adj)
    possible = deg * (deg - 1) / 2
    out = np.zeros(deg.shape, dtype=float)
    mask = deg >= 2
    out[mask] = links[mask] / possible[mask]
    return out
