"""Brute-force oracles and the self-check suite behind ``wacasim verify``.

The oracles are written as plainly as possible, with explicit loops and no
shared helpers, so that they fail independently of the optimized code.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import waca, wca_baseline
from ..errors import InvariantViolation
from .config import SimulationConfig
from .engine import World, run_batch, run_simulation


def oracle_elect(weights, adj) -> list[int]:
    n = len(weights)
    out = []
    for d in range(n):
        heavier = [m for m in range(n) if adj[d][m] and m != d and weights[m] > weights[d]]
        if not heavier:
            out.append(d)
            continue
        top = max(weights[m] for m in heavier)
        out.append(min(m for m in heavier if weights[m] == top))
    return out


def oracle_roles(ch) -> list[int]:
    n = len(ch)
    roles = []
    for d in range(n):
        if ch[d] == d:
            roles.append(int(waca.Role.CLUSTERHEAD))
        elif any(ch[m] == d for m in range(n) if m != d):
            roles.append(int(waca.Role.SUBHEAD))
        else:
            roles.append(int(waca.Role.SLAVE))
    return roles


def oracle_wca(weights, adj) -> list[int]:
    """Greedy cover: lightest uncovered device (smallest id on ties) heads its uncovered neighbors."""
    n = len(weights)
    head = [-1] * n
    while -1 in head:
        pick = -1
        for d in range(n):
            if head[d] == -1 and (pick == -1 or weights[d] < weights[pick]):
                pick = d
        head[pick] = pick
        for m in range(n):
            if adj[pick][m] and head[m] == -1:
                head[m] = pick
    return head


def random_graph(rng: np.random.Generator, max_n: int = 12):
    n = int(rng.integers(1, max_n + 1))
    p = rng.random()
    upper = np.triu(rng.random((n, n)) < p, 1)
    adj = upper | upper.T
    # coarse weights make ties common
    weights = rng.integers(0, 6, size=n).astype(float) if rng.random() < 0.5 else rng.random(n)
    return adj, weights


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}" + (f": {self.detail}" if self.detail else "")


def check_oracles(graphs: int = 1000, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    elect_bad = wca_bad = 0
    for _ in range(graphs):
        adj, weights = random_graph(rng)
        ch = waca.elect_all(weights, adj)
        states = {d: waca.ClusterState(d, float(weights[d]), int(ch[d])) for d in range(len(weights))}
        nbrs = {d: frozenset(np.flatnonzero(adj[d]).tolist()) for d in range(len(weights))}
        roles = waca.classify_roles(states, nbrs)
        expect = oracle_elect(weights.tolist(), adj.tolist())
        scalar = [waca.elect(d, float(weights[d]),
                             {m: waca.BeaconData(float(weights[m]), m) for m in nbrs[d]}).clusterhead
                  for d in range(len(weights))]
        if (ch.tolist() != expect or scalar != expect
                or [int(roles[d]) for d in range(len(weights))] != oracle_roles(expect)
                or waca.roles_from_pointers(ch).tolist() != oracle_roles(expect)):
            elect_bad += 1
        got = wca_baseline.wca_cluster(adj, weights).pointers(len(weights)).tolist()
        if got != oracle_wca(weights.tolist(), adj.tolist()):
            wca_bad += 1
    return [Check("election and roles match brute-force oracle", elect_bad == 0,
                  f"{graphs - elect_bad}/{graphs} graphs"),
            Check("WCA clustering matches greedy oracle", wca_bad == 0,
                  f"{graphs - wca_bad}/{graphs} graphs")]


def check_simulation(config: SimulationConfig, seed: int = 1, orders: int = 2) -> list[Check]:
    """Invariants, reruns and order independence for one configuration."""
    checks = []
    label = f"{config.algorithm} n={config.n_devices} r={config.transmission_range:g}"
    label += f" movers={config.effective_movers}" if config.is_mobile else " static"
    if not config.king_bonus:
        label += " no-bonus"
    try:
        first = run_simulation(config, seed)
        again = run_simulation(config, seed)
        checks.append(Check(f"{label}: invariants hold on every tick", True, f"{first.ticks} ticks"))
        checks.append(Check(f"{label}: rerun is bit-identical", first == again))
        if config.algorithm == "WACA":
            rng = np.random.default_rng(seed)
            same = all(run_simulation(config, seed, order_rng=rng) == first for _ in range(orders))
            checks.append(Check(f"{label}: permuted processing order gives identical series", same))
        batched = run_batch(config, [seed + 1, seed, seed + 2])[1]
        checks.append(Check(f"{label}: batched run equals single run", batched == first))
    except InvariantViolation as exc:
        checks.append(Check(f"{label}: invariants hold on every tick", False, str(exc)))
    return checks


def check_static_oracle(seed: int = 1) -> Check:
    """Final static WACA clustering on a dense graph equals the oracle on the realized weights."""
    config = SimulationConfig(n_devices=20, transmission_range=70.0)
    world = World(config, [seed])
    for _ in range(200):
        before = world.decision_key(0)
        world.tick()
        if before == world.decision_key(0) and not world.accruing()[0]:
            break
    expect = oracle_elect(world.weights[0].tolist(), world.adj[0].tolist())
    return Check("static n=20 r=70 fixed point equals oracle election", world.ch[0].tolist() == expect,
                 f"{int((world.ch[0] == np.arange(20)).sum())} clusterheads")


def run_verification(graphs: int = 1000, seed: int = 0, quick: bool = False) -> list[Check]:
    checks = check_oracles(graphs, seed)
    base = SimulationConfig(n_devices=15, transmission_range=30.0)
    mobile = base.replace(mobility="random_waypoint", duration=30.0 if quick else 120.0)
    for cfg in (base, base.replace(algorithm="WCA"), mobile, mobile.replace(algorithm="WCA"),
                mobile.replace(king_bonus=False, mover_count=5)):
        checks.extend(check_simulation(cfg, seed=seed + 1))
    checks.append(check_static_oracle(seed + 1))
    return checks
