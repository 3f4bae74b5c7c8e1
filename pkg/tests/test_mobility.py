import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wacasim import mobility
from wacasim.errors import ConfigurationError
from wacasim.mobility import MobilityState, RandomWaypoint


def test_single_position_inside_area():
    pos = mobility.init_positions(1, (100, 100), mobility.rng_from_seed(1))
    assert pos.shape == (1, 2) and np.all((pos >= 0) & (pos <= 100))


def test_uniform_mean():
    pos = mobility.init_positions(1000, (100, 100), mobility.rng_from_seed(7))
    assert abs(pos[:, 0].mean() - 50) <= 3


def test_same_seed_same_positions():
    a = mobility.init_positions(10, (100, 100), mobility.rng_from_seed(5))
    b = mobility.init_positions(10, (100, 100), mobility.rng_from_seed(5))
    assert np.array_equal(a, b)


def test_no_devices_is_an_error():
    with pytest.raises(ConfigurationError):
        mobility.init_positions(0, (100, 100), mobility.rng_from_seed(0))


def test_straight_line_step():
    s = mobility.step(MobilityState((0.0, 0.0), (10.0, 0.0), 5.0), 1.0, mobility.rng_from_seed(0))
    assert s.position == pytest.approx((5.0, 0.0))


def test_residual_distance_spent_on_next_leg():
    rng = mobility.rng_from_seed(0)
    nxt = mobility.draw_waypoint((100, 100), mobility.rng_from_seed(0))
    s = mobility.step(MobilityState((0.0, 0.0), (3.0, 0.0), 5.0), 1.0, rng)
    assert s.waypoint == pytest.approx(tuple(nxt))
    assert math.dist(s.position, (3.0, 0.0)) == pytest.approx(2.0)


def test_stationary_unchanged_and_dt_checked():
    s = MobilityState((1.0, 1.0), (1.0, 1.0), 5.0, moving=False)
    assert mobility.step(s, 1.0, mobility.rng_from_seed(0)) == s
    with pytest.raises(ValueError):
        mobility.step(s, 0.0, mobility.rng_from_seed(0))


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**31), speed=st.floats(0.5, 40), dt=st.sampled_from([0.25, 1.0, 2.0]))
def test_vector_model_matches_scalar_steps(seed, speed, dt):
    """The vectorized model reproduces the per-device step exactly."""
    n = 6
    streams = mobility.spawn_streams(seed, n)
    pos = mobility.init_positions(n, (100, 100), streams["placement"])
    moving = np.arange(n) < 4
    model = RandomWaypoint(pos, (100, 100), speed, moving, streams["devices"])

    twins = mobility.spawn_streams(seed, n)["devices"]
    states = []
    for d in range(n):
        wp = tuple(mobility.draw_waypoint((100, 100), twins[d])) if moving[d] else tuple(pos[d])
        states.append(MobilityState(tuple(pos[d]), wp, speed, bool(moving[d])))
    for _ in range(40):
        model.step(dt)
        states = [mobility.step(s, dt, twins[d]) for d, s in enumerate(states)]
        assert np.array_equal(model.positions, np.array([s.position for s in states]))
    assert np.all((model.positions >= 0) & (model.positions <= 100))
    assert np.array_equal(model.positions[4:], pos[4:])


@given(x=st.floats(0, 100), y=st.floats(0, 100), wx=st.floats(0, 100), wy=st.floats(0, 100),
       speed=st.floats(0.1, 10))
def test_speed_exact_when_no_waypoint_reached(x, y, wx, wy, speed):
    if math.dist((x, y), (wx, wy)) <= speed:
        return
    s = mobility.step(MobilityState((x, y), (wx, wy), speed), 1.0, mobility.rng_from_seed(0))
    assert math.dist(s.position, (x, y)) == pytest.approx(speed, abs=1e-9)


def test_device_streams_do_not_depend_on_other_devices():
    a = mobility.spawn_streams(3, 4)["devices"][2].random(5)
    b = mobility.spawn_streams(3, 9)["devices"][2].random(5)
    assert np.array_equal(a, b)
