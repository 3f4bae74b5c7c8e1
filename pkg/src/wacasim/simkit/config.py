"""Simulation configuration and the ``key = value`` configuration file format."""
from __future__ import annotations

import dataclasses
import math
import os
from dataclasses import dataclass, fields
from pathlib import Path

from ..errors import ConfigurationError
from ..wca_baseline import WcaFactors
from ..weighting import WeightFactors

#: Environment variable naming a configuration file.
CONFIG_ENV = "WACASIM_CONFIG"

ALGORITHMS = ("WACA", "WCA")
MOBILITY_MODELS = ("none", "random_waypoint")
SIGNAL_MODES = ("uniform", "base_station")
KING_BONUS_TIMERS = ("cadence", "restart")

#: Simulated time of a mobile run unless ``duration`` is set.
DEFAULT_MOBILE_DURATION = 900.0


@dataclass(frozen=True)
class SimulationConfig:
    area_width: float = 100.0
    area_height: float = 100.0
    n_devices: int = 20
    transmission_range: float = 30.0
    algorithm: str = "WACA"
    king_bonus: bool = True
    wf1: float = 0.9
    wf2: float = 1.0
    wf3: float = 0.85
    wf4: float = 0.65
    ideal_degree: int = 7
    king_bonus_scale: float = 1.0
    king_bonus_timer: str = "cadence"
    wca_w1: float = 0.7
    wca_w2: float = 0.2
    wca_w3: float = 0.05
    wca_w4: float = 0.05
    tick_length: float = 1.0
    duration: float | None = None
    warmup: float = 0.0
    mobility: str = "none"
    speed: float = 5.0
    mover_count: int | None = None
    runs: int = 30
    base_seed: int = 1
    power_min: float = 0.7
    power_max: float = 2.0
    power_drain: float = 0.0
    signal_mode: str = "uniform"
    base_station_x: float = 50.0
    base_station_y: float = 50.0

    def __post_init__(self):
        self.validate()

    @property
    def area(self) -> tuple[float, float]:
        return (self.area_width, self.area_height)

    @property
    def is_mobile(self) -> bool:
        return self.mobility != "none" and self.effective_movers > 0 and self.speed > 0

    @property
    def effective_movers(self) -> int:
        if self.mobility == "none":
            return 0
        return self.n_devices if self.mover_count is None else self.mover_count

    @property
    def effective_duration(self) -> float | None:
        """Simulated seconds; ``None`` means run a static network to its fixed point."""
        if self.duration is not None:
            return self.duration
        return DEFAULT_MOBILE_DURATION if self.is_mobile else None

    @property
    def king_bonus_period_ticks(self) -> int:
        return max(1, round(3.0 / self.tick_length))

    def weight_factors(self) -> WeightFactors:
        return WeightFactors(self.wf1, self.wf2, self.wf3, self.wf4, self.ideal_degree,
                             self.king_bonus_scale)

    def wca_factors(self) -> WcaFactors:
        return WcaFactors(self.wca_w1, self.wca_w2, self.wca_w3, self.wca_w4)

    def replace(self, **changes) -> "SimulationConfig":
        return dataclasses.replace(self, **changes)

    def validate(self) -> None:
        def bad(msg):
            raise ConfigurationError(msg)

        for name in ("area_width", "area_height", "transmission_range", "tick_length"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                bad(f"{name} must be a positive number, got {v!r}")
        if not isinstance(self.n_devices, int) or self.n_devices < 1:
            bad(f"n_devices must be >= 1, got {self.n_devices!r}")
        if self.algorithm not in ALGORITHMS:
            bad(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        if self.mobility not in MOBILITY_MODELS:
            bad(f"mobility must be one of {MOBILITY_MODELS}, got {self.mobility!r}")
        if self.signal_mode not in SIGNAL_MODES:
            bad(f"signal_mode must be one of {SIGNAL_MODES}, got {self.signal_mode!r}")
        if self.king_bonus_timer not in KING_BONUS_TIMERS:
            bad(f"king_bonus_timer must be one of {KING_BONUS_TIMERS}, got {self.king_bonus_timer!r}")
        if self.runs < 1:
            bad(f"runs must be >= 1, got {self.runs}")
        if self.speed < 0:
            bad(f"speed must be >= 0, got {self.speed}")
        if self.mover_count is not None and not 0 <= self.mover_count <= self.n_devices:
            bad(f"mover_count must lie in [0, n_devices], got {self.mover_count}")
        if self.duration is not None and self.duration < self.tick_length:
            bad("duration must be at least one tick")
        if self.warmup < 0:
            bad("warmup must be >= 0")
        if not 0 <= self.power_min <= self.power_max:
            bad("power interval must satisfy 0 <= power_min <= power_max")
        if self.power_drain < 0:
            bad("power_drain must be >= 0")
        # factor objects validate themselves
        self.weight_factors()
        self.wca_factors()


_FIELD_TYPES = {f.name: f.type for f in fields(SimulationConfig)}


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigurationError(f"not a boolean: {text!r}")


def coerce(name: str, text) -> object:
    """Convert a raw string value to the type of config field ``name``."""
    if name not in _FIELD_TYPES:
        raise ConfigurationError(f"unknown configuration key {name!r}")
    if not isinstance(text, str):
        return text
    kind = _FIELD_TYPES[name]
    raw = text.strip()
    optional = "None" in kind
    if optional and raw.lower() in ("", "none"):
        return None
    try:
        if kind.startswith("bool"):
            return _parse_bool(raw)
        if kind.startswith("int"):
            return int(raw)
        if kind.startswith("float"):
            return float(raw)
    except ValueError as exc:
        raise ConfigurationError(f"bad value for {name}: {text!r}") from exc
    if name == "algorithm":
        return raw.upper()
    return raw


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment, blank lines are skipped."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        values[key] = value
    return values


def load_config_file(path: str | os.PathLike) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
    return parse_config_text(text)


def build_config(file_values: dict | None = None, overrides: dict | None = None) -> SimulationConfig:
    """Merge defaults, file values and overrides (highest precedence) into a config."""
    merged = {}
    for source in (file_values or {}, overrides or {}):
        for key, value in source.items():
            merged[key] = coerce(key, value)
    try:
        return SimulationConfig(**merged)
    except TypeError as exc:
        raise ConfigurationError(str(exc)) from exc
