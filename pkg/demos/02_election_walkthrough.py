"""One election round by hand.

Every device points at its heaviest strictly heavier neighbor. Pointers only
ever climb in weight, so the chains end at clusterheads; whoever is pointed
at without being a head becomes a sub-head.
"""
import numpy as np

from wacasim import topology, waca

positions = np.array([(10, 10), (25, 10), (40, 10), (55, 10), (40, 30), (80, 80)], dtype=float)
weights = np.array([1.0, 2.0, 3.5, 3.0, 1.5, 0.5])
adj = topology.adjacency_matrix(positions, 21)
nbrs = topology.matrix_to_mapping(adj)

states = {}
for d in range(len(weights)):
    beacons = {m: waca.BeaconData(float(weights[m]), m) for m in nbrs[d]}
    states[d] = waca.elect(d, float(weights[d]), beacons)

roles = waca.classify_roles(states, nbrs)
for d, s in states.items():
    arrow = "self" if s.is_cluster_head else f"-> {s.clusterhead}"
    print(f"device {d} (w={weights[d]}): {arrow:7} {roles[d].name}")

# The vectorized election used by the simulator agrees.
assert waca.elect_all(weights, adj).tolist() == [s.clusterhead for s in states.values()]

# King bonus: a stable clusterhead gains 33 every three ticks, up to 99;
# churn cuts it by the share of neighbors that came or went.
state = waca.KingBonusState(0.0, 0, frozenset({1, 3}))
trail = []
for tick in range(10):
    state = waca.update_king_bonus(state, True, frozenset({1, 3}))
    trail.append(state.k)
print("\nking bonus, stable neighborhood:", trail)
state = waca.update_king_bonus(state, True, frozenset({1, 4}))
print("after swapping one of two neighbors:", state.k)
