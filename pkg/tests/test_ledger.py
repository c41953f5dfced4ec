"""Double-entry transit accounting: equal terms, balances, complementarity."""

import math
import random

import pytest
from hypothesis import given, strategies as st

from ngslsim import (
    BlackHole,
    Channel,
    ChannelState,
    ComplementarityViolationError,
    Direction,
    EvaporatedPastFloorError,
    InvalidMassError,
    Mode,
    TransitEvent,
    apply_event,
    bh_entropy,
    bh_entropy_change,
    hawking_temperature,
    info_carry_term,
    info_sense_term,
    ngsl_balance,
    observe_channel,
)

SENSE_EXAMPLE = 0.025132741228718346  # 8 pi * 0.001, mpmath
CARRY_M5 = 1.2566370614359173        # 8 pi * 5 * 0.01


def _grid():
    for i in range(40):
        m = 10.0 ** (-2 + 6 * i / 39)
        for k in range(2, 7):
            yield m, 10.0**-k * m


def test_term_examples():
    bh = BlackHole(1.0)
    assert math.isclose(info_sense_term(bh, 0.001), SENSE_EXAMPLE, rel_tol=1e-14)
    assert info_sense_term(bh, 0.0) == 0.0
    assert info_sense_term(bh, -0.001) == -info_sense_term(bh, 0.001)
    assert math.isclose(info_carry_term(BlackHole(5.0), 0.01), CARRY_M5, rel_tol=1e-14)
    assert info_carry_term(bh, 0.0) == 0.0


def test_equal_terms_bitwise_and_against_independent_expressions():
    for m, dm in _grid():
        bh = BlackHole(m)
        sense = info_sense_term(bh, dm)
        carry = info_carry_term(bh, dm)
        ds = bh_entropy_change(bh, dm, Mode.DIFFERENTIAL)
        assert sense == carry == ds  # bit-for-bit by construction
        # independent expression shapes
        indep_sense = m * (8.0 * math.pi * dm)          # M * d(1/T_H)
        indep_carry = dm / hawking_temperature(bh)      # dM / T_H
        assert math.isclose(sense, indep_sense, rel_tol=1e-14)
        assert math.isclose(carry, indep_carry, rel_tol=1e-14)


def test_entropy_change_examples():
    bh = BlackHole(1.0)
    assert math.isclose(
        bh_entropy_change(bh, 0.001, Mode.DIFFERENTIAL), SENSE_EXAMPLE, rel_tol=1e-14
    )
    exact = bh_entropy_change(bh, 0.001, Mode.EXACT)
    assert math.isclose(exact, SENSE_EXAMPLE + 4.0 * math.pi * 1e-6, rel_tol=1e-13)
    assert bh_entropy_change(bh, 0.0, Mode.DIFFERENTIAL) == 0.0
    assert bh_entropy_change(bh, 0.0, Mode.EXACT) == 0.0


def test_exact_entropy_change_against_brute_difference():
    for m, dm in _grid():
        bh = BlackHole(m)
        brute = bh_entropy(BlackHole(m + dm)) - bh_entropy(bh)
        assert math.isclose(bh_entropy_change(bh, dm, Mode.EXACT), brute, rel_tol=1e-12)


def test_exact_mode_rejects_nonpositive_result():
    with pytest.raises(EvaporatedPastFloorError):
        bh_entropy_change(BlackHole(1.0), -1.0, Mode.EXACT)


def test_apply_event_infall():
    bh = BlackHole(1.0)
    new_bh, entry = apply_event(bh, TransitEvent(0.0, 0.001, Direction.INFALL))
    assert new_bh.mass == 1.001
    assert entry.pre_mass == 1.0
    assert entry.dM == 0.001
    assert math.isclose(entry.dI_sense, SENSE_EXAMPLE, rel_tol=1e-14)
    assert entry.dI_sense == entry.dI_carry == entry.dS_bh
    assert entry.channel_state is ChannelState.UNREAD
    assert entry.discretization_residual == 0.0


def test_apply_event_emission_sign_symmetric():
    bh = BlackHole(1.0)
    _, infall = apply_event(bh, TransitEvent(0.0, 0.001, Direction.INFALL))
    new_bh, emission = apply_event(bh, TransitEvent(0.0, 0.001, Direction.EMISSION))
    assert new_bh.mass == 0.999
    assert emission.dS_bh == -infall.dS_bh
    assert emission.dI_sense == -infall.dI_sense


def test_infall_then_emission_restores_mass_exactly():
    # Dyadic particle mass: both the addition and the subtraction are exact.
    m_a = 2.0**-10
    bh = BlackHole(1.0)
    bh1, _ = apply_event(bh, TransitEvent(0.0, m_a, Direction.INFALL))
    bh2, _ = apply_event(bh1, TransitEvent(1.0, m_a, Direction.EMISSION))
    assert bh2.mass == bh.mass


def test_emission_floor_guard():
    bh = BlackHole(1.0)
    with pytest.raises(EvaporatedPastFloorError):
        apply_event(bh, TransitEvent(0.0, 0.5, Direction.EMISSION), mass_floor=0.6)
    with pytest.raises(EvaporatedPastFloorError):
        apply_event(bh, TransitEvent(0.0, 1.0, Direction.EMISSION))
    # at exactly the floor is allowed
    new_bh, _ = apply_event(bh, TransitEvent(0.0, 0.4, Direction.EMISSION), mass_floor=0.6)
    assert new_bh.mass == 0.6


def test_invalid_particle_mass():
    with pytest.raises(InvalidMassError):
        TransitEvent(0.0, 0.0, Direction.INFALL)
    with pytest.raises(InvalidMassError):
        TransitEvent(0.0, -0.1, Direction.EMISSION)


def test_balance_zero_in_differential_mode():
    for m, dm in _grid():
        for direction in (Direction.INFALL, Direction.EMISSION):
            _, entry = apply_event(
                BlackHole(m), TransitEvent(0.0, abs(dm), direction), Mode.DIFFERENTIAL
            )
            assert ngsl_balance(entry, Channel.SENSE) == 0.0
            assert ngsl_balance(entry, Channel.CARRY) == 0.0


def test_balance_residual_in_exact_mode():
    for m, dm in _grid():
        _, entry = apply_event(
            BlackHole(m), TransitEvent(0.0, dm, Direction.INFALL), Mode.EXACT
        )
        expect = 4.0 * math.pi * dm * dm
        for ch in (Channel.SENSE, Channel.CARRY):
            assert math.isclose(ngsl_balance(entry, ch), expect, rel_tol=1e-12)
        # the residual really is the gap to the brute entropy difference
        brute = bh_entropy(BlackHole(m + dm)) - bh_entropy(BlackHole(m))
        assert math.isclose(entry.dS_bh, brute, rel_tol=1e-12)


def test_observe_channel_first_read_and_idempotence():
    _, entry = apply_event(BlackHole(1.0), TransitEvent(0.0, 0.001, Direction.INFALL))
    value, entry1 = observe_channel(entry, Channel.SENSE)
    assert value == entry.dI_sense
    assert entry1.channel_state is ChannelState.SENSE_READ
    value2, entry2 = observe_channel(entry1, Channel.SENSE)
    assert value2 == value
    assert entry2 is entry1


def test_observe_opposite_channel_destroyed():
    _, entry = apply_event(BlackHole(1.0), TransitEvent(0.0, 0.001, Direction.INFALL))
    _, entry = observe_channel(entry, Channel.SENSE)
    with pytest.raises(ComplementarityViolationError):
        observe_channel(entry, Channel.CARRY)
    # and symmetrically
    _, fresh = apply_event(BlackHole(1.0), TransitEvent(0.0, 0.001, Direction.INFALL))
    _, fresh = observe_channel(fresh, Channel.CARRY)
    with pytest.raises(ComplementarityViolationError):
        observe_channel(fresh, Channel.SENSE)


@given(st.lists(st.sampled_from([Channel.SENSE, Channel.CARRY]), min_size=1, max_size=12))
def test_complementarity_over_random_read_sequences(sequence):
    _, entry = apply_event(BlackHole(1.0), TransitEvent(0.0, 0.001, Direction.INFALL))
    seen = set()
    for channel in sequence:
        try:
            _, entry = observe_channel(entry, channel)
        except ComplementarityViolationError:
            continue
        seen.add(channel)
    assert len(seen) <= 1


def test_partition_convergence_is_first_order():
    total = 0.1
    errors = {}
    exact = 4.0 * math.pi * (1.1**2 - 1.0**2)
    for n in (1, 10, 100, 1000):
        bh = BlackHole(1.0)
        acc = 0.0
        for _ in range(n):
            bh, entry = apply_event(
                bh, TransitEvent(0.0, total / n, Direction.INFALL), Mode.DIFFERENTIAL
            )
            acc += entry.dS_bh
        errors[n] = abs(acc - exact)
    # error = 4 pi (dM)^2 / n exactly: slope -1 on a log-log plot
    for n in (10, 100, 1000):
        assert math.isclose(errors[n], errors[1] / n, rel_tol=1e-6)


def test_randomized_mode_consistency():
    rng = random.Random(20260809)
    for _ in range(200):
        m = 10.0 ** rng.uniform(-2, 4)
        dm = m * 10.0 ** rng.uniform(-6, -2)
        direction = rng.choice([Direction.INFALL, Direction.EMISSION])
        ev = TransitEvent(0.0, dm, direction)
        _, diff = apply_event(BlackHole(m), ev, Mode.DIFFERENTIAL)
        _, exact = apply_event(BlackHole(m), ev, Mode.EXACT)
        assert diff.dI_sense == exact.dI_sense
        assert math.isclose(
            exact.dS_bh - 0.0,
            diff.dS_bh + exact.discretization_residual,
            rel_tol=1e-12,
        )
