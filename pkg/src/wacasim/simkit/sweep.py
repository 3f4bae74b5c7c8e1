"""Grid experiments: many seeds per cell, mean and standard deviation per metric."""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .config import SimulationConfig
from .engine import run_batch
from .metrics import summarize

KEY_FIELDS = ("algorithm", "n_devices", "range", "king_bonus", "mover_count")


@dataclass(frozen=True)
class CellKey:
    algorithm: str
    n_devices: int
    range: float
    king_bonus: bool
    mover_count: int

    @classmethod
    def of(cls, config: SimulationConfig) -> "CellKey":
        return cls(config.algorithm, config.n_devices, float(config.transmission_range),
                   bool(config.king_bonus), config.effective_movers)

    def sort_key(self) -> tuple:
        return (self.algorithm, self.n_devices, self.range, self.king_bonus, self.mover_count)


@dataclass(frozen=True)
class ResultRow:
    key: CellKey
    metric: str
    mean: float
    stddev: float
    runs: int


@dataclass
class ExperimentResult:
    """Aggregated rows, ordered by key tuple then metric, plus failed cells."""

    rows: list = field(default_factory=list)
    failures: dict = field(default_factory=dict)

    def value(self, metric: str, stat: str = "mean", **key) -> float:
        """Look up one aggregate, e.g. ``value("clusterhead_count", n_devices=20, range=30)``."""
        hits = [r for r in self.rows if r.metric == metric
                and all(getattr(r.key, k) == v for k, v in key.items())]
        if len(hits) != 1:
            raise KeyError(f"{len(hits)} rows match {metric} {key}")
        return getattr(hits[0], stat)

    def curve(self, metric: str, axis: str = "range", stat: str = "mean", **key):
        """Sorted ``(axis values, aggregate values)`` for rows matching ``key``."""
        pts = sorted((getattr(r.key, axis), getattr(r, stat)) for r in self.rows
                     if r.metric == metric and all(getattr(r.key, k) == v for k, v in key.items()))
        xs, ys = zip(*pts) if pts else ((), ())
        return np.array(xs), np.array(ys)

    @property
    def ok(self) -> bool:
        return not self.failures


def aggregate(key: CellKey, summaries: Sequence[dict]) -> list[ResultRow]:
    """Mean and sample standard deviation (0 for a single run) of every metric."""
    rows = []
    n = len(summaries)
    for metric in sorted(summaries[0]):
        values = np.array([s[metric] for s in summaries], dtype=float)
        std = float(values.std(ddof=1)) if n > 1 else 0.0
        rows.append(ResultRow(key, metric, float(values.mean()), std, n))
    return rows


def run_cell(config: SimulationConfig) -> list[ResultRow]:
    seeds = [config.base_seed + i for i in range(config.runs)]
    static = config.effective_duration is None
    summaries = [summarize(s, static) for s in run_batch(config, seeds)]
    return aggregate(CellKey.of(config), summaries)


def _safe_cell(config: SimulationConfig):
    try:
        return run_cell(config), None
    except Exception as exc:  # a failed cell must not sink the sweep
        return [], f"{type(exc).__name__}: {exc}"


def expand_grid(base: SimulationConfig, **axes: Iterable) -> list[SimulationConfig]:
    """Cartesian product of config field values over ``base``.

    ``expand_grid(cfg, n_devices=[20, 60], transmission_range=range(10, 75, 5))``
    """
    names = list(axes)
    values = [list(v) for v in axes.values()]
    if any(len(v) == 0 for v in values):
        raise ValueError("every grid axis needs at least one value")
    return [base.replace(**dict(zip(names, combo))) for combo in itertools.product(*values)]


def sweep(configs: Sequence[SimulationConfig], workers: int = 1) -> ExperimentResult:
    """Run every cell and return the aggregate table.

    Output order depends only on the cell keys, never on completion order.
    """
    if not configs:
        raise ValueError("sweep grid is empty")
    keys = [CellKey.of(c) for c in configs]
    if len(set(keys)) != len(keys):
        raise ValueError("sweep grid contains duplicate cells")
    if workers > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_safe_cell, configs))
    else:
        outcomes = [_safe_cell(c) for c in configs]
    result = ExperimentResult()
    for key, (rows, error) in sorted(zip(keys, outcomes), key=lambda kv: kv[0].sort_key()):
        if error is not None:
            result.failures[key] = error
        result.rows.extend(rows)
    return result


def parse_values(text: str, kind=float) -> list:
    """Parse ``"10,15,20"`` or an inclusive ``"start:stop:step"`` range."""
    text = text.strip()
    if ":" in text:
        parts = [float(p) for p in text.split(":")]
        if len(parts) != 3 or parts[2] <= 0:
            raise ValueError(f"range must be start:stop:step with step > 0, got {text!r}")
        start, stop, step = parts
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        values = [start + i * step for i in range(count)]
    else:
        values = [float(p) for p in text.split(",") if p.strip()]
    if not values:
        raise ValueError(f"no values in {text!r}")
    if kind is int:
        if any(v != int(v) for v in values):
            raise ValueError(f"expected integers, got {text!r}")
        return [int(v) for v in values]
    return values
