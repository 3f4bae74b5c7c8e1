"""Simulation engine, experiment sweeps and file/CLI interfaces."""
from .config import SimulationConfig, build_config, load_config_file
from .engine import World, run_batch, run_simulation
from .metrics import MetricsSeries, reaffiliation_rate, summarize

__all__ = ["SimulationConfig", "build_config", "load_config_file", "World", "run_batch", "run_simulation",
           "MetricsSeries", "reaffiliation_rate", "summarize"]
