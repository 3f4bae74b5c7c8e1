"""Neighborhoods and device weights.

Scatter a handful of devices, look at who hears whom, and see how the four
local quantities combine into a single weight.
"""
import numpy as np

from wacasim import mobility, topology, weighting

rng = mobility.rng_from_seed(42)
positions = mobility.init_positions(8, (100, 100), rng)
neighbors = topology.compute_neighbors(positions, 40)

print("device  position          neighbors")
for d, nbrs in neighbors.items():
    x, y = positions[d]
    print(f"{d:>6}  ({x:5.1f}, {y:5.1f})    {sorted(nbrs)}")

# A link exists only when the distance is strictly below the range.
print("\nexact-range pair linked?", bool(topology.adjacency_matrix([(0, 0), (0, 40)], 40)[0, 1]))

factors = weighting.WeightFactors()  # (0.9, 1, 0.85, 0.65), ideal degree 7
power = rng.uniform(0.7, 2.0, size=8)
signal = rng.uniform(0, 1, size=8)

print("\ndevice  P_A    s     c_L   dd     weight")
for d in neighbors:
    inputs = weighting.WeightInputs(
        weighting.power_appropriateness(power[d]),
        float(signal[d]),
        topology.local_clustering_coefficient(d, neighbors),
        float(topology.degree_deviation(len(neighbors[d]), factors.ideal_degree)),
    )
    w = weighting.total_weight(inputs, factors)
    print(f"{d:>6}  {inputs.power_appropriateness:.2f}  {inputs.signal_strength:.2f}  "
          f"{inputs.clustering:.2f}  {inputs.degree_deviation:+.2f}  {w:.3f}")

# A king bonus of 33 dwarfs every attribute-derived difference.
print("\nwith k=33:", weighting.total_weight(weighting.WeightInputs(1.5, 1, 1, 1, 33), factors))
