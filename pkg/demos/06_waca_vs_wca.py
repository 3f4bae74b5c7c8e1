"""WACA against the WCA baseline on identical topologies.

WCA builds strictly one-hop clusters around minimum-weight devices; WACA lets
chains of sub-heads link devices to a more distant head, so it needs fewer
clusterheads. Both algorithms see the same placements for each seed.
"""
import sys

from wacasim.simkit import SimulationConfig
from wacasim.simkit.csvio import write_aggregate
from wacasim.simkit.sweep import expand_grid, sweep

base = SimulationConfig(n_devices=40, runs=6)
result = sweep(expand_grid(base, algorithm=["WACA", "WCA"], transmission_range=[10, 25, 40, 55, 70]))

print("range   WACA   WCA")
for r in (10, 25, 40, 55, 70):
    a = result.value("clusterhead_count", algorithm="WACA", range=float(r))
    b = result.value("clusterhead_count", algorithm="WCA", range=float(r))
    print(f"{r:5}  {a:5.2f}  {b:5.2f}")

# The same table in the CSV layout the command line writes.
if "--csv" in sys.argv:
    print()
    write_aggregate(result)
