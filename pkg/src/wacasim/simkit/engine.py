"""Discrete-time simulation engine.

Every tick runs in two phases. Phase A moves devices, recomputes the
topology and lets every device decide its new clusterhead and king bonus
using only the state committed at the end of the previous tick (beacons carry
the previous weights). Phase B commits all decisions at once. Because no
device sees another's phase-A result, the outcome does not depend on the
order in which devices are processed.

A :class:`World` advances a batch of independent runs (one per seed) in
lockstep; array axes are ``(run, device[, device])``. Every run evolves
exactly as it would alone, so batching is purely a speed-up.
"""
from __future__ import annotations

import math
from collections import deque
from typing import Sequence

import numpy as np

from .. import topology, waca, wca_baseline, weighting
from ..errors import InvariantViolation
from ..mobility import RandomWaypoint, init_positions, spawn_streams
from .config import SimulationConfig
from .metrics import MetricsSeries

HEAD, SUB, SLAVE = int(waca.Role.CLUSTERHEAD), int(waca.Role.SUBHEAD), int(waca.Role.SLAVE)


class World:
    """State of a batch of simulation runs sharing one configuration."""

    def __init__(self, config: SimulationConfig, seeds: Sequence[int]):
        config.validate()
        if len(seeds) == 0:
            raise ValueError("need at least one seed")
        self.config = config
        self.seeds = list(seeds)
        self.runs = b = len(self.seeds)
        self.n = n = config.n_devices
        self.dt = config.tick_length
        self.factors = config.weight_factors()
        self.wca_factors = config.wca_factors()
        self.period = config.king_bonus_period_ticks
        self.restart_timer = config.king_bonus_timer == "restart"
        self.tick_index = 0
        self.ids = np.arange(n)

        self.positions = np.empty((b, n, 2))
        self.power = np.empty((b, n))
        self.signal = np.empty((b, n))
        device_rngs = []
        for r, seed in enumerate(self.seeds):
            streams = spawn_streams(seed, n)
            self.positions[r] = init_positions(n, config.area, streams["placement"])
            self.power[r] = streams["attributes"].uniform(config.power_min, config.power_max, size=n)
            self.signal[r] = streams["attributes"].uniform(0.0, 1.0, size=n)
            device_rngs.extend(streams["devices"])
        self.mobility = None
        if config.is_mobile:
            moving = np.tile(self.ids < config.effective_movers, b)
            self.mobility = RandomWaypoint(self.positions.reshape(b * n, 2), config.area,
                                           config.speed, moving, device_rngs)
            self.positions = self.mobility.positions.reshape(b, n, 2)
        self._update_signal()
        self.power_app = weighting.power_appropriateness(self.power)

        self.dist = topology.pairwise_distances(self.positions)
        self.adj = self._adjacency()
        self.k = np.zeros((b, n))
        self.waited = np.zeros((b, n), dtype=np.int64)
        self.beacons_sent = np.zeros(b, dtype=np.int64)

        # formation election on the initial snapshot
        if config.algorithm == "WACA":
            self.weights = self._waca_weights(self.k)
            self.ch = waca.elect_all(self.weights, self.adj)
            waca.check_pointers(self.ch, self.weights, self.adj)
        else:
            self.head_time = np.zeros((b, n))
            self.speed_hist = deque(maxlen=wca_baseline.MOBILITY_WINDOW)
            self.weights = self._wca_weights()
            self.assignments = [wca_baseline.wca_cluster(self.adj[r], self.weights[r]) for r in range(b)]
            self.ch = np.stack([a.pointers(n) for a in self.assignments])
        self.roles = waca.roles_from_pointers(self.ch)
        self.beacons_sent += waca.beacon_count_for_round(n)

    # -- helpers -----------------------------------------------------------

    def _adjacency(self) -> np.ndarray:
        adj = self.dist < self.config.transmission_range
        adj[:, self.ids, self.ids] = False
        return adj

    def _update_signal(self) -> None:
        if self.config.signal_mode == "base_station":
            bs = np.array([self.config.base_station_x, self.config.base_station_y])
            reach = math.hypot(*self.config.area)
            d = np.hypot(self.positions[..., 0] - bs[0], self.positions[..., 1] - bs[1])
            self.signal = np.clip(1.0 - d / reach, 0.0, 1.0)

    def _waca_weights(self, k: np.ndarray) -> np.ndarray:
        deg = topology.degrees(self.adj)
        base = weighting.attribute_weights(
            self.power_app, self.signal, topology.clustering_coefficients(self.adj),
            topology.degree_deviation(deg, self.factors.ideal_degree), self.factors)
        return base + self.factors.king_bonus_scale * k

    def _wca_weights(self) -> np.ndarray:
        if self.speed_hist:
            mobility = np.mean(self.speed_hist, axis=0)
        else:
            mobility = np.zeros((self.runs, self.n))
        return wca_baseline.wca_weights(self.adj, self.dist, mobility, self.head_time,
                                        self.factors.ideal_degree, self.wca_factors)

    # -- tick --------------------------------------------------------------

    def tick(self, order=None) -> dict:
        """Advance one tick; returns per-run event counts as arrays.

        ``order`` selects the per-device reference path (WACA, single run),
        processing devices in the given sequence; ``None`` uses the
        vectorized path.
        """
        prev_positions = self.positions.copy()
        if self.mobility is not None:
            self.positions = self.mobility.step(self.dt).reshape(self.runs, self.n, 2)
            self._update_signal()
        self.dist = topology.pairwise_distances(self.positions)
        prev_adj, self.adj = self.adj, self._adjacency()

        if self.config.algorithm == "WACA":
            if order is None:
                ch, k, waited, weights = self._decide_waca(prev_adj)
            else:
                ch, k, waited, weights = self._decide_waca_reference(prev_adj, order)
        else:
            ch, weights = self._decide_wca(prev_positions)
            k, waited = self.k, self.waited

        # phase B: commit
        roles = waca.roles_from_pointers(ch)
        switched = roles != self.roles
        events = {
            "reaffiliation_events": np.count_nonzero(ch != self.ch, axis=-1),
            "state_change_events": np.count_nonzero(switched, axis=-1),
            "head_entries": np.count_nonzero(switched & (roles != SLAVE), axis=-1),
            "beacons_emitted": np.full(self.runs, waca.beacon_count_for_round(weights.shape[-1])),
        }
        self.ch, self.roles, self.k, self.waited, self.weights = ch, roles, k, waited, weights
        self.beacons_sent += events["beacons_emitted"]
        self.tick_index += 1
        self.check_invariants()
        return events

    def _decide_waca(self, prev_adj):
        beacon_w = self.weights
        ch = waca.elect_all(beacon_w, self.adj)
        waca.check_pointers(ch, beacon_w, self.adj)
        is_head = ch == self.ids
        if self.config.king_bonus:
            k, waited = waca.update_king_bonus_all(self.k, self.waited, is_head, self.adj,
                                                   prev_adj, self.period, self.restart_timer)
        else:
            k, waited = self.k, self.waited
        self._drain(is_head)
        return ch, k, waited, self._waca_weights(k)

    def _drain(self, is_head: np.ndarray) -> None:
        if self.config.power_drain > 0:
            self.power = np.maximum(self.power - self.config.power_drain * self.dt * is_head, 0.0)
            self.power_app = weighting.power_appropriateness(self.power)

    def _decide_waca_reference(self, prev_adj, order):
        """Per-device phase A built on the scalar election and king bonus functions."""
        if self.runs != 1:
            raise ValueError("the per-device reference path runs one simulation at a time")
        order = [int(d) for d in order]
        if sorted(order) != list(range(self.n)):
            raise ValueError("order must be a permutation of all device ids")
        nbrs = topology.matrix_to_mapping(self.adj[0])
        old_nbrs = topology.matrix_to_mapping(prev_adj[0])
        beacons = {d: waca.BeaconData(float(self.weights[0, d]), int(self.ch[0, d]))
                   for d in range(self.n)}

        states = {}
        for d in order:
            states[d] = waca.elect(d, beacons[d].weight, {m: beacons[m] for m in nbrs[d]})
        roles = waca.classify_roles(states, nbrs)

        ch = np.empty((1, self.n), dtype=np.int64)
        k = self.k.copy()
        waited = self.waited.copy()
        for d in order:
            ch[0, d] = states[d].clusterhead
            if self.config.king_bonus:
                kb = waca.update_king_bonus(
                    waca.KingBonusState(float(self.k[0, d]), int(self.waited[0, d]), old_nbrs[d]),
                    roles[d] is waca.Role.CLUSTERHEAD, nbrs[d], self.period, self.restart_timer)
                k[0, d], waited[0, d] = kb.k, kb.ticks_since_last_update
        self._drain(ch == self.ids)

        weights = np.empty((1, self.n))
        for d in order:
            inputs = weighting.WeightInputs(
                float(self.power_app[0, d]), float(self.signal[0, d]),
                topology.local_clustering_coefficient(d, nbrs),
                float(topology.degree_deviation(len(nbrs[d]), self.factors.ideal_degree)),
                float(k[0, d]))
            weights[0, d] = weighting.total_weight(inputs, self.factors)
        return ch, k, waited, weights

    def _decide_wca(self, prev_positions):
        if self.mobility is not None:
            step = self.positions - prev_positions
            self.speed_hist.append(np.hypot(step[..., 0], step[..., 1]) / self.dt)
        self.head_time = self.head_time + self.dt * (self.ch == self.ids)
        weights = self._wca_weights()
        for r in range(self.runs):
            self.assignments[r], _ = wca_baseline.wca_maintain(
                self.assignments[r], self.adj[r], weights[r], self.dist[r])
        return np.stack([a.pointers(self.n) for a in self.assignments]), weights

    # -- invariants --------------------------------------------------------

    def role_counts(self) -> dict:
        return {"clusterhead_count": np.count_nonzero(self.roles == HEAD, axis=-1),
                "subhead_count": np.count_nonzero(self.roles == SUB, axis=-1),
                "slave_count": np.count_nonzero(self.roles == SLAVE, axis=-1)}

    def check_invariants(self) -> None:
        counts = self.role_counts()
        if np.any(sum(counts.values()) != self.n):
            raise InvariantViolation(f"role counts do not sum to {self.n}")
        heads = self.ch == self.ids
        if self.config.algorithm == "WACA":
            if np.any(self.k < 0) or np.any(self.k > waca.KING_BONUS_MAX):
                raise InvariantViolation("king bonus left [0, 99]")
            if np.any(self.k[~heads] != 0):
                raise InvariantViolation("non-clusterhead holds a king bonus")
        else:
            linked = np.take_along_axis(self.adj, self.ch[..., None], axis=-1)[..., 0]
            if not np.all(linked | heads):
                raise InvariantViolation("WCA member out of range of its head")
        if np.any(self.beacons_sent != self.n * (self.tick_index + 1)):
            raise InvariantViolation("beacon count differs from one per device per round")
        if np.any(self.positions < 0) or np.any(self.positions > np.array(self.config.area)):
            raise InvariantViolation("device left the simulation area")

    def decision_key(self, r: int) -> tuple:
        return (self.ch[r].tobytes(), self.roles[r].tobytes(), self.k[r].tobytes())

    def state_key(self, r: int = 0) -> tuple:
        """Hashable digest of one run's committed state, for determinism checks."""
        return (self.tick_index, *self.decision_key(r), self.weights[r].tobytes(),
                self.positions[r].tobytes())

    def accruing(self) -> np.ndarray:
        """Runs in which some clusterhead's king bonus can still grow."""
        if not (self.config.king_bonus and self.config.algorithm == "WACA"):
            return np.zeros(self.runs, dtype=bool)
        growing = (self.roles == HEAD) & (self.k < waca.KING_BONUS_MAX) & self.adj.any(axis=-1)
        return growing.any(axis=-1)


def _static_tick_limit(config: SimulationConfig) -> int:
    # formation election already ran; only king bonus growth (three steps) can still move pointers
    return config.n_devices + 4 * config.king_bonus_period_ticks + 2


def run_batch(config: SimulationConfig, seeds: Sequence[int],
              order_rng: np.random.Generator | None = None) -> list[MetricsSeries]:
    """Run one simulation per seed and return their per-tick metrics.

    Mobile runs last ``effective_duration`` seconds. Static runs tick until
    their committed state is a fixed point; each run's series stops at its own
    fixed point. With ``order_rng`` (single seed only) the per-device reference
    path is used with a fresh random processing order every tick.
    """
    world = World(config, seeds)
    warmup_ticks = int(round(config.warmup / config.tick_length))
    initial = world.role_counts()
    series = []
    for r in range(world.runs):
        s = MetricsSeries(config.n_devices, config.tick_length, warmup_ticks,
                          {key: int(v[r]) for key, v in initial.items()})
        s.ever_head = np.zeros(config.n_devices, dtype=bool)
        s.ever_subhead = np.zeros(config.n_devices, dtype=bool)
        series.append(s)
    live = np.ones(world.runs, dtype=bool)

    def advance():
        order = None if order_rng is None else order_rng.permutation(world.n)
        before = [world.decision_key(r) for r in range(world.runs)]
        events = world.tick(order)
        counts = world.role_counts()
        measuring = world.tick_index > warmup_ticks
        changed = np.zeros(world.runs, dtype=bool)
        for r in np.flatnonzero(live):
            series[r].append(**{key: v[r] for key, v in events.items()},
                             **{key: v[r] for key, v in counts.items()})
            if measuring:
                series[r].ever_head |= world.roles[r] == HEAD
                series[r].ever_subhead |= world.roles[r] == SUB
            changed[r] = before[r] != world.decision_key(r)
        return changed

    duration = config.effective_duration
    if duration is not None:
        for _ in range(int(round(duration / config.tick_length))):
            advance()
        return series

    limit = _static_tick_limit(config)
    while live.any():
        changed = advance()
        live &= changed | world.accruing()
        if live.any() and world.tick_index >= limit:
            raise InvariantViolation(f"static network did not converge within {limit} ticks")
    return series


def run_simulation(config: SimulationConfig, seed: int,
                   order_rng: np.random.Generator | None = None) -> MetricsSeries:
    """Run a single simulation; see :func:`run_batch`."""
    return run_batch(config, [seed], order_rng)[0]
