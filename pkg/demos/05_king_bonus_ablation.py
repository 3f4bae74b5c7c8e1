"""What the king bonus buys.

Thirty devices, range 30, with a varying number of them moving. The same
seeds run with the bonus on and off, so both arms see identical movement.
We count how often devices step into a clusterhead or sub-head role.
"""
from wacasim.simkit import SimulationConfig
from wacasim.simkit.sweep import expand_grid, sweep

base = SimulationConfig(n_devices=30, transmission_range=30.0, mobility="random_waypoint",
                        duration=300.0, runs=4)
movers = [5, 15, 30]
result = sweep(expand_grid(base, mover_count=movers, king_bonus=[True, False]))

print("movers  with bonus  without  reduction")
for m in movers:
    on = result.value("head_entries", mover_count=m, king_bonus=True)
    off = result.value("head_entries", mover_count=m, king_bonus=False)
    print(f"{m:6}  {on:10.0f}  {off:7.0f}  {1 - on / off:9.0%}")
