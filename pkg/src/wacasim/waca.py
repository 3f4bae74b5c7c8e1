"""WACA clusterhead election, role classification and the king bonus.

Each device elects the neighbor with the highest weight strictly above its
own; a device with no heavier neighbor elects itself and becomes a
clusterhead. Devices elected by someone else while not being clusterheads
themselves are sub-heads, everyone else is a slave. Clusterheads with a stable
neighborhood accrue a king bonus that shields them from transient
higher-weight visitors.

The module offers per-device functions that mirror the distributed
algorithm and vectorized equivalents over an adjacency matrix that the
simulation engine uses.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Mapping

import numpy as np

from .errors import ConsistencyError, InvariantViolation

KING_BONUS_STEP = 33.0
KING_BONUS_MAX = 99.0
#: Seconds between king bonus growth steps.
KING_BONUS_PERIOD_S = 3.0


class Role(IntEnum):
    CLUSTERHEAD = 0
    SUBHEAD = 1
    SLAVE = 2


@dataclass(frozen=True)
class BeaconData:
    weight: float
    clusterhead: int


@dataclass(frozen=True)
class ClusterState:
    device: int
    weight: float
    clusterhead: int
    is_sub_head: bool = False

    @property
    def is_cluster_head(self) -> bool:
        return self.clusterhead == self.device

    @property
    def role(self) -> Role:
        if self.is_cluster_head:
            return Role.CLUSTERHEAD
        return Role.SUBHEAD if self.is_sub_head else Role.SLAVE

    def beacon(self) -> BeaconData:
        return BeaconData(self.weight, self.clusterhead)


@dataclass(frozen=True)
class KingBonusState:
    k: float = 0.0
    ticks_since_last_update: int = 0
    previous_neighbors: frozenset = field(default_factory=frozenset)


def elect(d: int, own_weight: float, neighbor_beacons: Mapping[int, BeaconData],
          known_devices: Iterable[int] | None = None) -> ClusterState:
    """Run one election for device ``d`` from its neighbors' beacons.

    The heaviest neighbor whose weight strictly exceeds ``own_weight`` becomes
    the clusterhead (smallest id on ties); otherwise ``d`` elects itself.
    """
    if known_devices is not None:
        known = set(known_devices)
        for n, beacon in neighbor_beacons.items():
            if n not in known or beacon.clusterhead not in known:
                raise ConsistencyError(f"beacon from {n} references an unknown device")
    if d in neighbor_beacons:
        raise ConsistencyError(f"device {d} listed among its own neighbors")

    ch = d
    best = own_weight
    for n in sorted(neighbor_beacons):
        w = neighbor_beacons[n].weight
        if w > best:
            ch, best = n, w
    sub = ch != d and any(b.clusterhead == d for b in neighbor_beacons.values())
    return ClusterState(d, own_weight, ch, sub)


def classify_roles(states: Mapping[int, ClusterState], adjacency: Mapping[int, frozenset]) -> dict[int, Role]:
    """Assign Clusterhead / SubHead / Slave from the committed clusterhead pointers.

    Raises :class:`InvariantViolation` if a pointer leaves the neighborhood or
    the pointers contain a cycle.
    """
    ch = {d: s.clusterhead for d, s in states.items()}
    for d, c in ch.items():
        if c != d and c not in adjacency[d]:
            raise InvariantViolation(f"device {d} points to non-neighbor {c}")
    for start in ch:
        seen = {start}
        cur = start
        while ch[cur] != cur:
            cur = ch[cur]
            if cur in seen:
                raise InvariantViolation(f"clusterhead cycle through device {cur}")
            seen.add(cur)
    pointed = {c for d, c in ch.items() if c != d}
    roles = {}
    for d, c in ch.items():
        if c == d:
            roles[d] = Role.CLUSTERHEAD
        elif d in pointed:
            roles[d] = Role.SUBHEAD
        else:
            roles[d] = Role.SLAVE
    return roles


def stability_coefficient(new_neighbors: frozenset | set, old_neighbors: frozenset | set) -> float:
    """Share of neighborhood turnover: (lost + new) / (|N| + |M|)."""
    total = len(new_neighbors) + len(old_neighbors)
    if total == 0:
        raise ValueError("stability coefficient undefined for two empty neighborhoods")
    lost = len(old_neighbors - new_neighbors)
    gained = len(new_neighbors - old_neighbors)
    return (lost + gained) / total


def update_king_bonus(state: KingBonusState, is_cluster_head: bool, neighbors: frozenset,
                      period_ticks: int = 3, restart_on_change: bool = False) -> KingBonusState:
    """Advance one device's king bonus by one tick.

    ``state.previous_neighbors`` is the neighbor set seen on the previous tick.
    Any neighborhood change cuts the bonus by the stability coefficient. Every
    ``period_ticks`` ticks of clusterheadship the bonus grows by 33 (capped at
    99) unless the neighborhood changed on that very tick. With
    ``restart_on_change`` a change also restarts the period, so growth needs
    ``period_ticks`` consecutive unchanged ticks.
    """
    neighbors = frozenset(neighbors)
    if not is_cluster_head or not neighbors:
        return KingBonusState(0.0, 0, neighbors)
    old = state.previous_neighbors
    changed = neighbors != old
    k = state.k
    if changed:
        k = max(k - k * stability_coefficient(neighbors, old), 0.0)
        if restart_on_change:
            return KingBonusState(k, 0, neighbors)
    waited = state.ticks_since_last_update + 1
    if waited < period_ticks:
        return KingBonusState(k, waited, neighbors)
    if not changed:
        k = min(k + KING_BONUS_STEP, KING_BONUS_MAX)
    return KingBonusState(k, 0, neighbors)


def beacon_count_for_round(n_devices: int) -> int:
    """One beacon per device per election round."""
    return int(n_devices)


# -- vectorized forms ------------------------------------------------------
# These operate on the last axis (weights, pointers) or last two axes
# (adjacency), so a stack of independent networks can be processed at once.

def elect_all(weights: np.ndarray, adj: np.ndarray) -> np.ndarray:
    """Clusterhead pointer for every device given one consistent weight vector."""
    ids = np.arange(weights.shape[-1])
    masked = np.where(adj, weights[..., None, :], -np.inf)
    best = masked.argmax(axis=-1)  # first maximum == smallest id among ties
    best_w = np.take_along_axis(masked, best[..., None], axis=-1)[..., 0]
    return np.where(best_w > weights, best, ids)


def roles_from_pointers(ch: np.ndarray) -> np.ndarray:
    n = ch.shape[-1]
    heads = ch == np.arange(n)
    offsets = (np.arange(ch.size) // n * n).reshape(ch.shape)
    pointed = np.zeros(ch.size, dtype=bool)
    pointed[(ch + offsets)[~heads]] = True
    pointed = pointed.reshape(ch.shape)
    roles = np.full(ch.shape, Role.SLAVE, dtype=np.int8)
    roles[pointed] = Role.SUBHEAD
    roles[heads] = Role.CLUSTERHEAD
    return roles


def check_pointers(ch: np.ndarray, weights: np.ndarray, adj: np.ndarray) -> None:
    """Assert pointers stay in the neighborhood and strictly climb in weight.

    Strict increase along every pointer proves that every chain ends at a
    clusterhead, so no explicit cycle search is needed.
    """
    moved = ch != np.arange(ch.shape[-1])
    linked = np.take_along_axis(adj, ch[..., None], axis=-1)[..., 0]
    if not np.all(linked | ~moved):
        raise InvariantViolation("clusterhead pointer leaves the one-hop neighborhood")
    climbs = np.take_along_axis(weights, ch, axis=-1) > weights
    if not np.all(climbs | ~moved):
        raise InvariantViolation("clusterhead chain does not strictly increase in weight")


def update_king_bonus_all(k: np.ndarray, waited: np.ndarray, is_head: np.ndarray,
                          adj: np.ndarray, prev_adj: np.ndarray, period_ticks: int = 3,
                          restart_on_change: bool = False):
    """Vectorized :func:`update_king_bonus`; returns new ``(k, waited)`` arrays."""
    k = k.copy()
    waited = waited.copy()
    deg = adj.sum(axis=-1)
    diff = adj != prev_adj
    turnover = diff.sum(axis=-1)
    changed = turnover > 0

    reset = ~is_head | (deg == 0)
    k[reset] = 0.0
    waited[reset] = 0

    shrink = ~reset & changed
    if shrink.any():
        coeff = turnover[shrink] / (deg[shrink] + prev_adj.sum(axis=-1)[shrink])
        k[shrink] = np.maximum(k[shrink] - k[shrink] * coeff, 0.0)

    if restart_on_change:
        waited[shrink] = 0
        steady = ~reset & ~changed
        waited[steady] += 1
        due = steady & (waited >= period_ticks)
        grow = due
    else:
        waited[~reset] += 1
        due = ~reset & (waited >= period_ticks)
        grow = due & ~changed
    k[grow] = np.minimum(k[grow] + KING_BONUS_STEP, KING_BONUS_MAX)
    waited[due] = 0
    return k, waited
