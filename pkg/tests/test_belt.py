import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from clonebelt.belt import (
    Belt,
    BeltError,
    DegenerateBeltError,
    belt_constants,
    belt_moments,
    constants_fidelity,
    make_belt,
    mean_fidelity,
    stationarity_residual,
)
from clonebelt.machine import UQCM_ANGLES, CloneAngles, pointwise_fidelity
from clonebelt.states import DomainError

SQRT2 = math.sqrt(2.0)

polar = st.floats(min_value=0.0, max_value=math.pi, allow_nan=False)
clone_angle = st.floats(min_value=0.0, max_value=math.pi / 2.0, allow_nan=False)


@st.composite
def belts(draw):
    theta1, theta2 = sorted((draw(polar), draw(polar)))
    return Belt(theta1, theta2)


@pytest.mark.parametrize(
    "theta1, theta2, message",
    [
        (2.0, 1.0, "greater than"),
        (-0.1, 1.0, "not inside"),
        (0.0, math.pi + 1e-9, "not inside"),
        (math.nan, 1.0, "finite"),
    ],
)
def test_make_belt_rejects_invalid_belts(theta1, theta2, message):
    with pytest.raises(BeltError, match=message):
        make_belt(theta1, theta2)


def test_belt_errors_are_domain_errors():
    assert issubclass(BeltError, DomainError)
    assert issubclass(DegenerateBeltError, DomainError)
    assert issubclass(DomainError, ValueError)


def test_make_belt_accepts_points_and_whole_sphere():
    assert make_belt(0.0, math.pi) == Belt(0.0, math.pi)
    assert make_belt(1.0, 1.0).is_degenerate
    assert Belt(0.2, 1.0).reflected() == Belt(math.pi - 1.0, math.pi - 0.2)


def test_constants_of_the_whole_sphere():
    consts = belt_constants(Belt(0.0, math.pi))
    assert consts.K == pytest.approx(1.0, abs=1e-15)
    assert consts.P == pytest.approx(-SQRT2 / 6.0, abs=1e-15)
    assert consts.Q == pytest.approx(1.0 / 12.0, abs=1e-15)
    assert consts.R == pytest.approx(1.0 / 12.0, abs=1e-15)
    assert consts.T == pytest.approx(0.0, abs=1e-14)
    assert consts.S == pytest.approx(-1.0 / 24.0, abs=1e-15)


def test_constants_of_the_equator_leave_T_undefined():
    consts = belt_constants(Belt(math.pi / 2.0, math.pi / 2.0))
    assert consts.K == 0.0
    assert consts.P == pytest.approx(-SQRT2 / 4.0)
    assert consts.Q == 0.0 and consts.R == 0.0
    assert not consts.has_T
    assert consts.has_S and consts.S == 0.0


def test_constants_of_the_upper_hemisphere():
    consts = belt_constants(Belt(0.0, math.pi / 2.0))
    assert consts.K == pytest.approx(1.0)
    assert consts.Q == pytest.approx(5.0 / 24.0)
    assert consts.R == pytest.approx(-1.0 / 24.0)
    assert abs(consts.T) > 1.0


@given(belts())
def test_reflection_swaps_Q_and_R(belt):
    consts = belt_constants(belt)
    mirrored = belt_constants(belt.reflected())
    assert mirrored.K == pytest.approx(consts.K, abs=1e-14)
    assert mirrored.P == pytest.approx(consts.P, abs=1e-14)
    assert mirrored.Q == pytest.approx(consts.R, abs=1e-14)
    assert mirrored.R == pytest.approx(consts.Q, abs=1e-14)


@given(polar, clone_angle, clone_angle)
def test_point_belt_constants_reproduce_pointwise_fidelity(theta, alpha, beta):
    consts = belt_constants(Belt(theta, theta))
    value = float(constants_fidelity(consts, alpha, beta))
    assert value == pytest.approx(pointwise_fidelity(CloneAngles(alpha, beta), theta), abs=1e-13)


def test_belt_moments_of_the_whole_sphere():
    a, b, c = belt_moments(Belt(0.0, math.pi))
    assert a == pytest.approx(1.0 / 3.0)
    assert b == pytest.approx(1.0 / 3.0)
    assert c == pytest.approx(2.0 / 3.0)


def test_belt_moments_of_a_point():
    theta = 1.2
    a, b, c = belt_moments(Belt(theta, theta))
    assert a == pytest.approx(math.cos(theta / 2.0) ** 4, abs=1e-15)
    assert b == pytest.approx(math.sin(theta / 2.0) ** 4, abs=1e-15)
    assert c == pytest.approx(math.sin(theta) ** 2, abs=1e-15)


def test_mean_fidelity_rejects_point_belts():
    with pytest.raises(DegenerateBeltError, match="zero width"):
        mean_fidelity(Belt(1.0, 1.0), UQCM_ANGLES)


def test_mean_fidelity_of_uqcm_is_five_sixths_on_any_belt():
    for belt in (Belt(0.0, math.pi), Belt(0.3, 0.4), Belt(2.0, 3.0)):
        assert mean_fidelity(belt, UQCM_ANGLES) == pytest.approx(5.0 / 6.0, abs=1e-14)


def test_mean_fidelity_approaches_pointwise_value_on_thin_belts():
    clone = CloneAngles(0.3, 1.2)
    value = mean_fidelity(Belt(1.0, 1.0 + 1e-7), clone)
    assert value == pytest.approx(pointwise_fidelity(clone, 1.0), abs=1e-6)


def test_constants_fidelity_broadcasts_over_arrays():
    consts = belt_constants(Belt(0.2, 2.0))
    alpha, beta = np.meshgrid(np.linspace(0, 1, 4), np.linspace(0, 1, 3), indexing="ij")
    values = constants_fidelity(consts, alpha, beta)
    assert values.shape == (4, 3)
    assert values[2, 1] == pytest.approx(float(constants_fidelity(consts, alpha[2, 1], beta[2, 1])))


def test_uqcm_angles_are_stationary_for_the_whole_sphere():
    residuals = stationarity_residual(belt_constants(Belt(0.0, math.pi)), UQCM_ANGLES)
    assert max(abs(r) for r in residuals) <= 1e-15


def test_constants_of_the_symmetric_belt():
    consts = belt_constants(Belt(math.pi / 4.0, 3.0 * math.pi / 4.0))
    assert consts.K == pytest.approx(0.5, abs=1e-15)
    assert consts.P == pytest.approx(-5.0 * SQRT2 / 24.0, abs=1e-15)
    assert consts.Q == pytest.approx(1.0 / 24.0, abs=1e-15)
    assert consts.R == pytest.approx(1.0 / 24.0, abs=1e-15)
    assert consts.T == pytest.approx(0.0, abs=1e-13)


@pytest.mark.parametrize(
    "belt, expected",
    [
        (Belt(0.0, math.pi), 2.0 / 3.0),
        (Belt(math.pi / 4.0, 3.0 * math.pi / 4.0), 7.0 / 12.0),
    ],
)
def test_mean_fidelity_of_the_identity_machine(belt, expected):
    assert mean_fidelity(belt, CloneAngles(0.0, 0.0)) == pytest.approx(expected, abs=1e-14)


def test_stationarity_residuals_at_special_points():
    consts = belt_constants(Belt(0.3, 2.0))
    r1, r2 = stationarity_residual(consts, CloneAngles(math.pi / 2.0, math.pi / 2.0))
    assert r1 == pytest.approx(-consts.P, abs=1e-15)
    assert r2 == pytest.approx(-consts.P, abs=1e-15)

    equator = belt_constants(Belt(math.pi / 2.0, math.pi / 2.0))
    residuals = stationarity_residual(equator, CloneAngles(math.pi / 4.0, math.pi / 4.0))
    assert max(abs(r) for r in residuals) <= 1e-15
