import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clonebelt.belt import Belt, BeltError, belt_constants, constants_fidelity
from clonebelt.machine import CloneAngles, pointwise_fidelity
from clonebelt.solver import (
    Branch,
    branch_condition_probe,
    interior_candidates,
    optimal_fidelity_curve,
    optimal_fidelity_surface,
    solve_optimal,
)
from clonebelt.states import DomainError

UQCM = 5.0 / 6.0
PHASE_COVARIANT = 0.5 * (1.0 + 1.0 / math.sqrt(2.0))

polar = st.floats(min_value=0.0, max_value=math.pi, allow_nan=False)


@st.composite
def belts(draw):
    theta1, theta2 = sorted((draw(polar), draw(polar)))
    return Belt(theta1, theta2)


def test_whole_sphere_recovers_the_universal_cloner():
    result = solve_optimal(Belt(0.0, math.pi))
    assert result.fbar == pytest.approx(UQCM, abs=1e-12)
    assert result.branch == Branch.INTERIOR
    for angle in result.angles:
        assert math.cos(angle) == pytest.approx(math.sqrt(2.0 / 3.0), abs=1e-10)
    assert max(abs(r) for r in result.stationarity_residuals) <= 1e-10


def test_equator_recovers_the_phase_covariant_cloner():
    result = solve_optimal(Belt(math.pi / 2.0, math.pi / 2.0))
    assert result.fbar == pytest.approx(PHASE_COVARIANT, abs=1e-12)
    assert result.angles == CloneAngles(math.pi / 4.0, math.pi / 4.0)
    assert result.branch == Branch.DEGENERATE_POINT_BELT


def test_symmetric_belt_around_the_equator():
    result = solve_optimal(Belt(math.pi / 4.0, 3.0 * math.pi / 4.0))
    assert result.fbar == pytest.approx((13.0 + math.sqrt(51.0)) / 24.0, abs=1e-12)
    assert result.branch == Branch.INTERIOR
    assert result.angles.alpha == pytest.approx(result.angles.beta, abs=1e-12)


def test_upper_hemisphere_takes_the_alpha_zero_corner():
    result = solve_optimal(Belt(0.0, math.pi / 2.0))
    assert result.branch == Branch.BOUNDARY_ALPHA0
    assert result.angles == CloneAngles(0.0, math.pi / 2.0)
    expected = 0.5 + 1.0 / 6.0 + math.sqrt(2.0) / 6.0 + 1.0 / 24.0
    assert result.fbar == pytest.approx(expected, abs=1e-12)


def test_lower_hemisphere_takes_the_beta_zero_corner():
    result = solve_optimal(Belt(math.pi / 2.0, math.pi))
    assert result.branch == Branch.BOUNDARY_BETA0
    assert result.angles == CloneAngles(math.pi / 2.0, 0.0)
    assert result.fbar == pytest.approx(solve_optimal(Belt(0.0, math.pi / 2.0)).fbar, abs=1e-12)


@pytest.mark.parametrize("theta", [0.0, math.pi])
def test_poles_are_cloned_perfectly(theta):
    result = solve_optimal(Belt(theta, theta))
    assert result.fbar == pytest.approx(1.0, abs=1e-12)
    assert result.branch == Branch.DEGENERATE_POINT_BELT


def test_solve_optimal_validates_the_belt():
    with pytest.raises(BeltError):
        solve_optimal(Belt(2.0, 1.0))


def test_interior_candidates_need_T():
    assert interior_candidates(belt_constants(Belt(math.pi / 2.0, math.pi / 2.0))) == []
    assert interior_candidates(belt_constants(Belt(0.0, math.pi / 2.0))) == []


@settings(max_examples=200, deadline=None)
@given(belts(), st.floats(0.0, math.pi / 2.0), st.floats(0.0, math.pi / 2.0))
def test_optimum_dominates_any_other_machine(belt, alpha, beta):
    result = solve_optimal(belt)
    if belt.is_degenerate:
        other = pointwise_fidelity(CloneAngles(alpha, beta), belt.theta1)
    else:
        other = float(constants_fidelity(belt_constants(belt), alpha, beta))
    assert result.fbar >= other - 1e-12
    assert UQCM - 1e-12 <= result.fbar <= 1.0 + 1e-12
    assert 0.0 <= result.angles.alpha <= math.pi / 2.0
    assert 0.0 <= result.angles.beta <= math.pi / 2.0
    if result.branch == Branch.INTERIOR:
        consts = result.constants
        assert max(abs(r) for r in result.stationarity_residuals) <= 1e-10
        assert abs(consts.T) <= 1.0 + 1e-12
        if consts.Q != consts.R:
            assert abs(consts.P * (consts.Q + consts.R) / consts.S) <= 1.0 + 1e-12


@settings(deadline=None)
@given(belts())
def test_optimum_is_reflection_symmetric(belt):
    result = solve_optimal(belt)
    mirrored = solve_optimal(belt.reflected())
    assert mirrored.fbar == pytest.approx(result.fbar, abs=1e-12)


def test_surface_is_row_major_over_the_triangle():
    steps = 4
    surface = optimal_fidelity_surface(steps)
    assert len(surface) == (steps + 1) * (steps + 2) // 2

    keys = [(r.belt.theta1, r.belt.theta2) for r in surface]
    assert keys == sorted(keys)
    assert all(t1 <= t2 for t1, t2 in keys)
    assert keys[0] == (0.0, 0.0)
    assert keys[-1] == (math.pi, math.pi)


def test_coarse_surface_contains_the_special_points():
    surface = {(r.belt.theta1, r.belt.theta2): r.fbar for r in optimal_fidelity_surface(2)}
    assert len(surface) == 6
    assert surface[(0.0, math.pi)] == pytest.approx(UQCM, abs=1e-12)
    assert surface[(math.pi / 2.0, math.pi / 2.0)] == pytest.approx(PHASE_COVARIANT, abs=1e-12)
    assert min(surface.values()) >= UQCM - 1e-12


@pytest.mark.parametrize("resolution", [1, 0, 2.5])
def test_surface_rejects_bad_resolution(resolution):
    with pytest.raises(DomainError, match="resolution"):
        optimal_fidelity_surface(resolution)


def test_curve_sweeps_theta2_up_to_pi():
    curve = optimal_fidelity_curve(0.0, 100)
    assert len(curve) == 101
    assert curve[0].belt == Belt(0.0, 0.0)
    assert curve[-1].belt.theta2 == math.pi
    assert curve[-1].fbar == pytest.approx(UQCM, abs=1e-12)

    equatorial = optimal_fidelity_curve(math.pi / 2.0, 10)
    assert equatorial[0].fbar == pytest.approx(PHASE_COVARIANT, abs=1e-12)


def test_curve_minimum_sits_next_to_the_mirror_belt():
    theta1 = math.pi / 4.0
    curve = optimal_fidelity_curve(theta1, 360)
    values = np.array([r.fbar for r in curve])
    lowest = int(np.argmin(values))
    step = (math.pi - theta1) / 360
    assert abs(curve[lowest].belt.theta2 - 3.0 * math.pi / 4.0) <= step * (1.0 + 1e-9)
    assert values[lowest] == pytest.approx(0.8392, abs=1e-3)


def test_curve_rejects_bad_arguments():
    with pytest.raises(DomainError, match="steps"):
        optimal_fidelity_curve(0.0, 1)
    with pytest.raises(BeltError):
        optimal_fidelity_curve(4.0, 10)


def test_branch_condition_probe_skips_undefined_T():
    belts_ = [Belt(math.pi / 2.0, math.pi / 2.0), Belt(0.0, math.pi / 2.0), Belt(0.2, 2.9)]
    report = branch_condition_probe(belts_)
    assert [entry[0] for entry in report] == belts_[1:]
    hemisphere = report[0]
    assert abs(hemisphere[1]) > 1.0
    assert hemisphere[2] < 0.0
    assert hemisphere[3] is True


@pytest.mark.parametrize(
    "belt",
    [Belt(0.0, 1.0), Belt(0.3, 2.0), Belt(0.0, math.pi / 2.0), Belt(1.0, 1.0), Belt(0.1, 0.2), Belt(0.5, 2.9)],
)
def test_reflection_swaps_the_angles(belt):
    result = solve_optimal(belt)
    mirrored = solve_optimal(belt.reflected())
    assert mirrored.angles.alpha == pytest.approx(result.angles.beta, abs=1e-10)
    assert mirrored.angles.beta == pytest.approx(result.angles.alpha, abs=1e-10)


def test_branch_conditions_agree_wherever_QR_is_positive():
    rng = np.random.default_rng(408)
    checked = 0
    for _ in range(2000):
        theta1, theta2 = sorted(rng.uniform(0.0, math.pi, size=2))
        consts = belt_constants(Belt(float(theta1), float(theta2)))
        if consts.Q * consts.R <= 0.0:
            continue
        difference_arg = abs(consts.T)
        sum_arg = abs(consts.P * (consts.Q + consts.R) / consts.S)
        if min(abs(difference_arg - 1.0), abs(sum_arg - 1.0)) < 1e-9:
            continue
        assert (difference_arg <= 1.0) == (sum_arg <= 1.0), (theta1, theta2)
        checked += 1
    assert checked > 50
