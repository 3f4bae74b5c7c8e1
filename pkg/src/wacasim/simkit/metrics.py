"""Per-tick metric records and run summaries."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SERIES_COLUMNS = (
    "clusterhead_count",
    "subhead_count",
    "slave_count",
    "reaffiliation_events",
    "state_change_events",
    "head_entries",
    "beacons_emitted",
)


@dataclass
class MetricsSeries:
    """Per-tick counters of one run.

    ``head_entries`` counts devices entering the clusterhead or sub-head role
    on a tick. ``initial`` holds the role counts of the formation election at
    time 0, before the first tick.
    """

    n_devices: int
    tick_length: float
    warmup_ticks: int = 0
    initial: dict = field(default_factory=dict)
    records: dict = field(default_factory=lambda: {c: [] for c in SERIES_COLUMNS})
    ever_head: np.ndarray | None = None
    ever_subhead: np.ndarray | None = None

    def append(self, **values) -> None:
        for column in SERIES_COLUMNS:
            self.records[column].append(int(values[column]))

    def column(self, name: str) -> np.ndarray:
        return np.asarray(self.records[name], dtype=np.int64)

    @property
    def ticks(self) -> int:
        return len(self.records["beacons_emitted"])

    @property
    def duration(self) -> float:
        return self.ticks * self.tick_length

    def window(self, name: str) -> np.ndarray:
        """Column restricted to ticks after the warm-up."""
        return self.column(name)[self.warmup_ticks:]

    @property
    def measured_duration(self) -> float:
        return max(self.ticks - self.warmup_ticks, 0) * self.tick_length

    def final_counts(self) -> dict:
        if self.ticks == 0:
            return dict(self.initial)
        return {c: self.records[c][-1] for c in ("clusterhead_count", "subhead_count", "slave_count")}

    def as_rows(self):
        for i in range(self.ticks):
            yield {"tick": i + 1, "time": (i + 1) * self.tick_length,
                   **{c: self.records[c][i] for c in SERIES_COLUMNS}}

    def __eq__(self, other):
        if not isinstance(other, MetricsSeries):
            return NotImplemented
        return (self.n_devices == other.n_devices and self.tick_length == other.tick_length
                and self.initial == other.initial and self.records == other.records
                and np.array_equal(self.ever_head, other.ever_head)
                and np.array_equal(self.ever_subhead, other.ever_subhead))


def reaffiliation_rate(series: MetricsSeries) -> float:
    """Reaffiliation events per simulated second over the measurement window."""
    duration = series.measured_duration
    if duration <= 0:
        raise ValueError("reaffiliation rate needs a positive measured duration")
    return float(series.window("reaffiliation_events").sum()) / duration


def summarize(series: MetricsSeries, static: bool) -> dict:
    """Scalar metrics of one run.

    Static runs report role counts at the converged fixed point; mobile runs
    report per-tick averages over the measurement window.
    """
    out = {}
    if static:
        final = series.final_counts()
        for key in ("clusterhead_count", "subhead_count", "slave_count"):
            out[key] = float(final[key])
        out["convergence_ticks"] = float(_last_event_tick(series))
    else:
        for key in ("clusterhead_count", "subhead_count", "slave_count"):
            col = series.window(key)
            out[key] = float(col.mean()) if len(col) else 0.0
    duration = series.measured_duration
    reaff = float(series.window("reaffiliation_events").sum())
    changes = float(series.window("state_change_events").sum())
    out["reaffiliations"] = reaff
    out["reaffiliation_rate"] = reaff / duration if duration > 0 else 0.0
    out["state_changes"] = changes
    out["state_change_rate"] = changes / duration if duration > 0 else 0.0
    out["head_entries"] = float(series.window("head_entries").sum())
    out["beacons"] = float(series.window("beacons_emitted").sum())
    if series.ever_head is not None:
        out["distinct_heads"] = float(series.ever_head.sum())
        out["distinct_subheads"] = float(series.ever_subhead.sum())
    return out


def _last_event_tick(series: MetricsSeries) -> int:
    events = series.column("reaffiliation_events") + series.column("state_change_events")
    hits = np.flatnonzero(events)
    return int(hits[-1] + 1) if len(hits) else 0
