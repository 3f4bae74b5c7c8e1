"""The WACA heuristic weight function.

A device's weight combines four locally available quantities with configurable
weighing factors, plus the additive king bonus:

    W = wf1 * P_A + wf2 * s + wf3 * c_L + wf4 * dd + kappa * k
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

#: Floor for the argument of the power logarithm.
POWER_LOG_EPS = 1e-6

#: Default weighing factors for power, signal, clustering and degree.
DEFAULT_FACTORS = (0.9, 1.0, 0.85, 0.65)


@dataclass(frozen=True)
class DeviceAttributes:
    power_ratio: float
    signal_strength: float

    def __post_init__(self):
        if not (math.isfinite(self.power_ratio) and self.power_ratio >= 0):
            raise ValueError(f"power ratio must be finite and >= 0, got {self.power_ratio}")
        if not (0.0 <= self.signal_strength <= 1.0):
            raise ValueError(f"signal strength must lie in [0, 1], got {self.signal_strength}")


@dataclass(frozen=True)
class WeightFactors:
    wf1: float = DEFAULT_FACTORS[0]
    wf2: float = DEFAULT_FACTORS[1]
    wf3: float = DEFAULT_FACTORS[2]
    wf4: float = DEFAULT_FACTORS[3]
    ideal_degree: int = 7
    king_bonus_scale: float = 1.0

    def __post_init__(self):
        for name in ("wf1", "wf2", "wf3", "wf4", "king_bonus_scale"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ConfigurationError(f"{name} must be finite and >= 0, got {value}")
        if self.ideal_degree <= 0:
            raise ConfigurationError(f"ideal_degree must be positive, got {self.ideal_degree}")

    def scaled(self, c: float) -> "WeightFactors":
        """Copy with the four attribute factors multiplied by ``c``."""
        return WeightFactors(self.wf1 * c, self.wf2 * c, self.wf3 * c, self.wf4 * c,
                             self.ideal_degree, self.king_bonus_scale)


@dataclass(frozen=True)
class WeightInputs:
    power_appropriateness: float
    signal_strength: float
    clustering: float
    degree_deviation: float
    king_bonus: float = 0.0

    def __post_init__(self):
        values = (self.power_appropriateness, self.signal_strength, self.clustering,
                  self.degree_deviation, self.king_bonus)
        if not all(math.isfinite(v) for v in values):
            raise ValueError(f"weight inputs must be finite: {values}")
        if not 0.0 <= self.signal_strength <= 1.0:
            raise ValueError("signal strength must lie in [0, 1]")
        if not 0.0 <= self.clustering <= 1.0:
            raise ValueError("clustering coefficient must lie in [0, 1]")
        if not 0.0 <= self.king_bonus <= 99.0:
            raise ValueError("king bonus must lie in [0, 99]")


def power_appropriateness(power_ratio):
    """Diminishing-return score of a device's power ratio.

    ``P_A = 3/2 + 1/2 * log10(P - 3/5)``, with the log argument floored at
    ``POWER_LOG_EPS`` and the result clamped below at 0. Works on scalars
    and arrays.
    """
    p = np.asarray(power_ratio, dtype=float)
    if np.any(~np.isfinite(p)) or np.any(p < 0):
        raise ValueError(f"power ratio must be finite and >= 0, got {power_ratio}")
    score = 1.5 + 0.5 * np.log10(np.maximum(p - 0.6, POWER_LOG_EPS))
    score = np.maximum(score, 0.0)
    return float(score) if score.ndim == 0 else score


def total_weight(inputs: WeightInputs, factors: WeightFactors) -> float:
    return (factors.wf1 * inputs.power_appropriateness
            + factors.wf2 * inputs.signal_strength
            + factors.wf3 * inputs.clustering
            + factors.wf4 * inputs.degree_deviation
            + factors.king_bonus_scale * inputs.king_bonus)


def attribute_weights(pa, s, c_l, ddev, factors: WeightFactors) -> np.ndarray:
    """Vectorized weight without the king bonus term."""
    return factors.wf1 * pa + factors.wf2 * s + factors.wf3 * c_l + factors.wf4 * ddev
