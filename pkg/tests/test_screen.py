"""Screen temperature field, marked-object information, descent entropy."""

import math

import pytest
from hypothesis import given, strategies as st

from ngslsim import (
    HORIZON,
    BlackHole,
    InsideHorizonError,
    InvalidMassError,
    entropy_from_descent,
    gravitational_information_bh,
    gravitational_information_marked,
    hawking_temperature,
    screen_geometry,
)

T_AT_R4_M1 = 0.0099471839432434585    # 1/(32 pi), mpmath
I_MARKED_EXAMPLE = 0.62831853071795865  # 2 pi * 0.001 * 100
DESCENT_4_TO_3 = 43.982297150257105   # 14 pi


def test_temperature_at_r4():
    geo = screen_geometry(BlackHole(1.0), 4.0)
    assert math.isclose(geo.temperature, T_AT_R4_M1, rel_tol=1e-14)


def test_geometry_construction_identity():
    geo = screen_geometry(BlackHole(1.0), 5.0)
    assert geo.temperature == geo.g * geo.redshift / (2.0 * math.pi)
    assert math.isclose(geo.redshift, math.sqrt(1.0 - 2.0 / 5.0), rel_tol=1e-15)


@pytest.mark.parametrize("m", [1.0, 10.0, 1000.0])
@pytest.mark.parametrize("delta", [1e-4, 1e-6, 1e-8])
def test_horizon_limit_recovers_hawking_temperature(m, delta):
    bh = BlackHole(m)
    geo = screen_geometry(bh, 2.0 * m * (1.0 + delta))
    assert abs(geo.temperature / hawking_temperature(bh) - 1.0) <= 3.0 * delta


def test_far_field_is_newtonian():
    bh = BlackHole(1.0)
    geo = screen_geometry(bh, 1e6)
    assert abs(geo.redshift - 1.0) <= 2e-6
    newtonian = (1.0 / 1e6**2) / (2.0 * math.pi)  # g_N/(2 pi) = M/(2 pi r^2)
    assert math.isclose(geo.temperature, newtonian, rel_tol=3e-6)


@given(
    st.floats(min_value=1e-2, max_value=1e4),
    st.floats(min_value=1e-6, max_value=1e6),
)
def test_redshift_cancellation_identity(m, offset):
    # temperature * 2 pi r^2 == M for any radius outside the horizon
    r = 2.0 * m + offset * m
    bh = BlackHole(m)
    geo = screen_geometry(bh, r)
    assert math.isclose(geo.temperature * 2.0 * math.pi * r * r, m, rel_tol=1e-12)


def test_inside_horizon_rejected():
    bh = BlackHole(1.0)
    with pytest.raises(InsideHorizonError):
        screen_geometry(bh, 2.0)
    with pytest.raises(InsideHorizonError):
        screen_geometry(bh, 2.0 * (1.0 + 1e-13))
    with pytest.raises(InsideHorizonError):
        screen_geometry(bh, 1.0)


def test_marked_information_at_horizon_sentinel():
    bh = BlackHole(1.0)
    got = gravitational_information_marked(1.0, bh, HORIZON)
    assert math.isclose(got, 8.0 * math.pi, rel_tol=1e-15)
    # consistency with the whole-hole information at m = M
    assert math.isclose(got, gravitational_information_bh(bh), rel_tol=1e-12)


def test_marked_information_example():
    got = gravitational_information_marked(0.001, BlackHole(1.0), 10.0)
    assert math.isclose(got, I_MARKED_EXAMPLE, rel_tol=1e-13)


def test_marked_information_decreases_inward():
    bh = BlackHole(1.0)
    radii = [3.0, 4.0, 6.0, 10.0, 100.0]
    infos = [gravitational_information_marked(0.5, bh, r) for r in radii]
    assert all(b > a for a, b in zip(infos, infos[1:]))


def test_sentinel_consistency_across_masses():
    for m in (0.01, 1.0, 30.0, 1e4):
        bh = BlackHole(m)
        assert math.isclose(
            gravitational_information_marked(m, bh, HORIZON),
            gravitational_information_bh(bh),
            rel_tol=1e-12,
        )


def test_invalid_marked_mass():
    bh = BlackHole(1.0)
    for bad in (0.0, -1.0, math.nan):
        with pytest.raises(InvalidMassError):
            gravitational_information_marked(bad, bh, 10.0)


def test_descent_entropy_example():
    got = entropy_from_descent(1.0, BlackHole(1.0), 4.0, 3.0)
    assert math.isclose(got, DESCENT_4_TO_3, rel_tol=1e-13)


def test_descent_zero_and_antisymmetry():
    bh = BlackHole(1.0)
    assert entropy_from_descent(1.0, bh, 5.0, 5.0) == 0.0
    down = entropy_from_descent(0.3, bh, 7.0, 3.5)
    up = entropy_from_descent(0.3, bh, 3.5, 7.0)
    assert down == -up
    assert down > 0.0  # inward motion releases entropy


def test_descent_path_additivity():
    bh = BlackHole(2.0)
    r1, r2, r3 = 20.0, 11.0, 5.0
    split = entropy_from_descent(1.0, bh, r1, r2) + entropy_from_descent(1.0, bh, r2, r3)
    direct = entropy_from_descent(1.0, bh, r1, r3)
    assert math.isclose(split, direct, rel_tol=1e-12)
