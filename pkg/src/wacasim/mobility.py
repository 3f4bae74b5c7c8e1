"""Uniform placement and random waypoint mobility.

Random numbers come from numpy's PCG64 seeded through ``SeedSequence``; every
device owns a child stream so trajectories do not depend on the order in
which devices are stepped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigurationError

#: Waypoints pre-drawn per device and refill; any size yields the same sequence.
WAYPOINT_BLOCK = 64


def rng_from_seed(seed: int | np.random.SeedSequence) -> np.random.Generator:
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return np.random.Generator(np.random.PCG64(ss))


def spawn_streams(seed: int, n_devices: int) -> dict:
    """Independent generators for placement, attributes and each device's waypoints."""
    placement, attributes, movement = np.random.SeedSequence(seed).spawn(3)
    return {
        "placement": rng_from_seed(placement),
        "attributes": rng_from_seed(attributes),
        "devices": [rng_from_seed(s) for s in movement.spawn(n_devices)],
    }


def init_positions(n: int, area: tuple[float, float], rng: np.random.Generator) -> np.ndarray:
    if n < 1:
        raise ConfigurationError(f"need at least one device, got {n}")
    width, height = area
    if width <= 0 or height <= 0:
        raise ConfigurationError(f"area must be positive, got {area}")
    return rng.random((n, 2)) * np.array([width, height], dtype=float)


def draw_waypoint(area: tuple[float, float], rng: np.random.Generator) -> np.ndarray:
    return rng.random(2) * np.asarray(area, dtype=float)


@dataclass(frozen=True)
class MobilityState:
    position: tuple[float, float]
    waypoint: tuple[float, float]
    speed: float
    moving: bool = True


def step(state: MobilityState, dt: float, rng: np.random.Generator,
         area: tuple[float, float] = (100.0, 100.0)) -> MobilityState:
    """Advance one device by ``dt`` seconds with zero pause at waypoints.

    Distance left over after reaching a waypoint is spent toward the next one,
    which is drawn from ``rng``.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if not state.moving or state.speed == 0:
        return state
    x, y = state.position
    wx, wy = state.waypoint
    remaining = state.speed * dt
    while True:
        dx, dy = wx - x, wy - y
        gap = math.sqrt(dx * dx + dy * dy)
        if gap > remaining:
            frac = remaining / gap
            x, y = x + dx * frac, y + dy * frac
            break
        x, y = wx, wy
        remaining -= gap
        wx, wy = (float(v) for v in draw_waypoint(area, rng))
    return replace(state, position=(x, y), waypoint=(wx, wy))


class RandomWaypoint:
    """Vectorized random waypoint model over a flat array of devices.

    Only devices flagged in ``moving`` are advanced; the rest stay put. Each
    mover draws its waypoints from its own generator in ``rngs``, in blocks,
    which consumes the stream exactly as one-at-a-time draws would.
    """

    def __init__(self, positions: np.ndarray, area: tuple[float, float], speed: float,
                 moving: np.ndarray, rngs: list):
        if speed < 0:
            raise ConfigurationError(f"speed must be >= 0, got {speed}")
        self.area = np.array(area, dtype=float)
        self.positions = np.array(positions, dtype=float)
        self.speed = float(speed)
        self.moving = np.asarray(moving, dtype=bool)
        self.rngs = rngs
        m = len(self.positions)
        self._buf = np.zeros((m, WAYPOINT_BLOCK, 2))
        self._ptr = np.full(m, WAYPOINT_BLOCK)
        self.waypoints = self.positions.copy()
        movers = np.flatnonzero(self.moving)
        self.waypoints[movers] = self._next_waypoints(movers)

    def _next_waypoints(self, idx: np.ndarray) -> np.ndarray:
        for i in idx[self._ptr[idx] >= WAYPOINT_BLOCK]:
            self._buf[i] = self.rngs[i].random((WAYPOINT_BLOCK, 2)) * self.area
            self._ptr[i] = 0
        out = self._buf[idx, self._ptr[idx]]
        self._ptr[idx] += 1
        return out

    def step(self, dt: float) -> np.ndarray:
        if dt <= 0:
            raise ValueError("dt must be positive")
        remaining = np.where(self.moving, self.speed * dt, 0.0)
        active = np.flatnonzero(self.moving & (remaining > 0))
        while len(active):
            delta = self.waypoints[active] - self.positions[active]
            gap = np.sqrt(delta[:, 0] * delta[:, 0] + delta[:, 1] * delta[:, 1])
            rem = remaining[active]
            cruise = gap > rem
            c = active[cruise]
            self.positions[c] = self.positions[c] + delta[cruise] * (rem[cruise] / gap[cruise])[:, None]
            a = active[~cruise]
            self.positions[a] = self.waypoints[a]
            remaining[a] = rem[~cruise] - gap[~cruise]
            if len(a):
                self.waypoints[a] = self._next_waypoints(a)
            active = a
        return self.positions
