"""Static networks: clusterheads and sub-heads against transmission range.

Each cell runs a few seeds to the converged fixed point. Longer range means
fewer, larger clusters; sub-heads are most common at middling ranges where
chains of heads can form.
"""
from wacasim.simkit import SimulationConfig
from wacasim.simkit.sweep import expand_grid, sweep

base = SimulationConfig(n_devices=40, runs=8)
result = sweep(expand_grid(base, transmission_range=range(10, 75, 10)))

xs, heads = result.curve("clusterhead_count")
_, subs = result.curve("subhead_count")
print("range  clusterheads  sub-heads")
for r, h, s in zip(xs, heads, subs):
    print(f"{r:5.0f}  {h:12.2f}  {s:9.2f}  " + "#" * int(round(h)))
