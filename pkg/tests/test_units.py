"""Natural-unit conversions against independently derived CODATA oracles."""

import math

import pytest
from hypothesis import given, strategies as st

from ngslsim import (
    DIMENSIONLESS,
    LENGTH,
    MASS,
    NATURAL,
    SI,
    TEMPERATURE,
    TIME,
    Dimension,
    InvalidQuantityError,
    Quantity,
    from_natural,
    to_natural,
)
from ngslsim.units import si_factor

# Oracle constants, re-derived here from the same CODATA 2018 release the
# package pins, through an independent expression path.
_C = 299792458.0
_HBAR = 6.62607015e-34 / (2.0 * math.pi)
_G = 6.67430e-11
_KB = 1.380649e-23
PLANCK_MASS_KG = math.sqrt(_HBAR * _C / _G)      # ~2.176434e-8
PLANCK_TIME_S = math.sqrt(_HBAR * _G / _C**5)    # ~5.391247e-44
M_SUN_KG = 1.3271244e20 / _G                     # IAU 2015 nominal GM / G


def test_natural_identity():
    assert to_natural(Quantity(1.0, MASS, NATURAL)) == 1.0


def test_planck_mass_converts_to_unity():
    got = to_natural(Quantity(PLANCK_MASS_KG, MASS, SI))
    assert math.isclose(got, 1.0, rel_tol=1e-9)


def test_solar_mass_ratio_oracle():
    got = to_natural(Quantity(M_SUN_KG, MASS, SI))
    assert math.isclose(got, M_SUN_KG / PLANCK_MASS_KG, rel_tol=1e-12)
    # magnitude sanity: a solar mass is ~9.136e37 Planck masses
    assert math.isclose(got, 9.1360893902039545e37, rel_tol=1e-9)


def test_from_natural_planck_time():
    q = from_natural(1.0, TIME)
    assert q.system == SI
    assert math.isclose(q.value, PLANCK_TIME_S, rel_tol=1e-9)
    assert math.isclose(q.value, 5.391246448313604e-44, rel_tol=1e-9)


def test_from_natural_zero_mass():
    assert from_natural(0.0, MASS).value == 0.0


@pytest.mark.parametrize("dim", [MASS, LENGTH, TIME, TEMPERATURE])
def test_round_trips_on_log_grid(dim):
    for k in range(100):
        x = 10.0 ** (-30 + 60 * k / 99)
        q = from_natural(x, dim)
        assert math.isclose(to_natural(q), x, rel_tol=1e-12)
        # SI-side round trip
        q2 = Quantity(x, dim, SI)
        back = from_natural(to_natural(q2), dim)
        assert math.isclose(back.value, x, rel_tol=1e-12)
        assert back.dimension == dim


_exponents = st.integers(min_value=-3, max_value=3)
_dimensions = st.builds(Dimension, _exponents, _exponents, _exponents, _exponents)


@given(_dimensions, _dimensions)
def test_conversion_is_multiplicative_over_products(d1, d2):
    combined = si_factor(d1 * d2)
    split = si_factor(d1) * si_factor(d2)
    assert math.isclose(combined, split, rel_tol=1e-12)


def test_dimension_equality_is_exponentwise():
    assert Dimension(1, 0, 0, 0) == MASS
    assert Dimension(1, 0, 0, 0) != Dimension(1, 0, -1, 0)
    assert MASS * TIME == Dimension(1, 0, 1, 0)
    assert MASS**2 == Dimension(2, 0, 0, 0)
    assert si_factor(DIMENSIONLESS) == 1.0


@pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
def test_nonfinite_values_rejected(bad):
    with pytest.raises(InvalidQuantityError):
        Quantity(bad, MASS, SI)
    with pytest.raises(InvalidQuantityError):
        from_natural(bad, MASS)


def test_unknown_system_rejected():
    with pytest.raises(InvalidQuantityError):
        Quantity(1.0, MASS, "cgs")
