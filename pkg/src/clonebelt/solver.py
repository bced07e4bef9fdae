# Copyright (c) 2026 clonebelt contributors
#
# Part of: clonebelt
#

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Tuple

import numpy as np

from .belt import (
    Belt,
    BeltConstants,
    belt_constants,
    constants_fidelity,
    make_belt,
    stationarity_residual,
)
from .machine import CloneAngles
from .states import DomainError

IDENTITY_TOL = 1e-12
RESIDUAL_TOL = 1e-10

HALF_PI = math.pi / 2.0
QUARTER_PI = math.pi / 4.0


class Branch(str, Enum):
    INTERIOR = "interior"
    BOUNDARY_ALPHA0 = "boundary_alpha0"
    BOUNDARY_BETA0 = "boundary_beta0"
    DEGENERATE_POINT_BELT = "degenerate_point_belt"
    DEGENERATE_FALLBACK = "degenerate_fallback"


@dataclass(frozen=True)
class OptimalCloneResult:
    belt: Belt
    angles: CloneAngles
    fbar: float
    branch: Branch
    stationarity_residuals: Tuple[float, float]
    constants: BeltConstants


# (label, angles); label is the candidate kind used for tie-breaking.
Candidate = Tuple[str, CloneAngles]


def _clamp_unit(value: float) -> float | None:
    if abs(value) <= 1.0:
        return value
    if abs(value) <= 1.0 + IDENTITY_TOL:
        return math.copysign(1.0, value)
    return None


def _in_quarter_square(angles: CloneAngles) -> CloneAngles | None:
    alpha, beta = angles
    lo, hi = -IDENTITY_TOL, HALF_PI + IDENTITY_TOL
    if not (lo <= alpha <= hi and lo <= beta <= hi):
        return None
    return CloneAngles(min(max(alpha, 0.0), HALF_PI), min(max(beta, 0.0), HALF_PI))


def interior_candidates(consts: BeltConstants) -> List[CloneAngles]:
    """
    Stationary points from
        2 alpha = arcsin[P(Q+R)/S] + arcsin[T],  2 beta = arcsin[P(Q+R)/S] - arcsin[T]
    restricted to [0, pi/2]^2.

    Both branches of alpha + beta (arcsin and pi - arcsin) are tried and only
    points whose stationarity residuals are below RESIDUAL_TOL are kept.
    For Q == R the sum reduces to 2 alpha = arcsin[-P / sqrt(P^2 + Q^2)].
    """
    if consts.T is None or consts.S is None:
        return []

    delta_sine = _clamp_unit(consts.T)
    if delta_sine is None:
        logging.debug(f"interior_candidates: |T|={abs(consts.T)!r} > 1, no interior point")
        return []

    if consts.Q == consts.R:
        sigma_sine = _clamp_unit(-consts.P / math.hypot(consts.P, consts.Q))
        delta_sine = 0.0
    elif consts.S != 0.0:
        sigma_sine = _clamp_unit(consts.P * (consts.Q + consts.R) / consts.S)
    else:
        sigma_sine = None
    if sigma_sine is None:
        logging.debug("interior_candidates: arcsin argument of alpha + beta out of range")
        return []

    delta = math.asin(delta_sine)
    sigma = math.asin(sigma_sine)

    points = []
    for total in (sigma, math.pi - sigma):
        angles = _in_quarter_square(CloneAngles((total + delta) / 2.0, (total - delta) / 2.0))
        if angles is None:
            continue
        residuals = stationarity_residual(consts, angles)
        if max(abs(r) for r in residuals) > RESIDUAL_TOL:
            continue
        if any(
            abs(angles.alpha - p.alpha) <= IDENTITY_TOL and abs(angles.beta - p.beta) <= IDENTITY_TOL
            for p in points
        ):
            continue
        points.append(angles)
    return points


def _prefers_alpha0(belt: Belt) -> bool:
    return abs(belt.theta1 - HALF_PI) >= abs(belt.theta2 - HALF_PI)


def _candidates(belt: Belt, consts: BeltConstants) -> List[Candidate]:
    candidates: List[Candidate] = [
        ("interior", angles) for angles in interior_candidates(consts)
    ]
    candidates += [
        ("alpha0", CloneAngles(0.0, HALF_PI)),
        ("beta0", CloneAngles(HALF_PI, 0.0)),
        ("symmetric", CloneAngles(QUARTER_PI, QUARTER_PI)),
        ("fallback", CloneAngles(0.0, 0.0)),
        ("fallback", CloneAngles(HALF_PI, HALF_PI)),
    ]
    return candidates


def _tie_rank(label: str, belt: Belt) -> int:
    first, second = ("alpha0", "beta0") if _prefers_alpha0(belt) else ("beta0", "alpha0")
    if belt.is_degenerate:
        order = ["interior", "symmetric", first, second, "fallback"]
    else:
        order = ["interior", first, second, "symmetric", "fallback"]
    return order.index(label)


def _branch_for(label: str, belt: Belt) -> Branch:
    if belt.is_degenerate:
        return Branch.DEGENERATE_POINT_BELT
    return {
        "interior": Branch.INTERIOR,
        "alpha0": Branch.BOUNDARY_ALPHA0,
        "beta0": Branch.BOUNDARY_BETA0,
    }.get(label, Branch.DEGENERATE_FALLBACK)


def solve_optimal(belt: Belt) -> OptimalCloneResult:
    """
    Finds the clone angles in [0, pi/2]^2 maximizing the belt mean fidelity.

    Every candidate (interior stationary points, the corners (0, pi/2) and
    (pi/2, 0), and the fallbacks (0, 0), (pi/2, pi/2), (pi/4, pi/4)) is
    evaluated and the best one is returned. Candidates within IDENTITY_TOL of
    the best are ranked: interior first, then the corner selected by
    |theta1 - pi/2| >= |theta2 - pi/2| (alpha = 0) or its opposite.
    For theta1 == theta2 the pointwise fidelity at theta1 is maximized, with
    the symmetric point (pi/4, pi/4) ranked right after interior points.

    :param belt: A valid belt (see make_belt)
    :return: The optimal angles, their mean fidelity and the branch taken
    """
    belt = make_belt(*belt)
    consts = belt_constants(belt)

    scored = []
    for label, angles in _candidates(belt, consts):
        value = float(constants_fidelity(consts, angles.alpha, angles.beta))
        logging.debug(f"solve_optimal: candidate {label} {tuple(angles)} -> {value!r}")
        scored.append((value, label, angles))

    best_value = max(value for value, _, _ in scored)
    tied = [item for item in scored if item[0] >= best_value - IDENTITY_TOL]
    value, label, angles = min(tied, key=lambda item: _tie_rank(item[1], belt))

    branch = _branch_for(label, belt)
    logging.debug(
        f"solve_optimal: belt={tuple(belt)} -> {branch.value} {tuple(angles)} fbar={value!r}"
    )
    return OptimalCloneResult(
        belt=belt,
        angles=angles,
        fbar=value,
        branch=branch,
        stationarity_residuals=stationarity_residual(consts, angles),
        constants=consts,
    )


def _axis(start: float, stop: float, steps: int) -> List[float]:
    return [float(t) for t in np.linspace(start, stop, steps + 1)]


def optimal_fidelity_surface(resolution: int) -> List[OptimalCloneResult]:
    """
    Solves every belt of the triangular grid 0 <= theta1 <= theta2 <= pi.

    Each axis is split into `resolution` equal steps (resolution + 1 values).
    Results come in row-major order: theta1 ascending, then theta2 ascending.
    """
    if not isinstance(resolution, int) or resolution < 2:
        raise DomainError(f"optimal_fidelity_surface: resolution must be >= 2, got {resolution!r}")
    axis = _axis(0.0, math.pi, resolution)
    return [
        solve_optimal(Belt(theta1, theta2))
        for i, theta1 in enumerate(axis)
        for theta2 in axis[i:]
    ]


def optimal_fidelity_curve(theta1: float, steps: int) -> List[OptimalCloneResult]:
    """
    Solves the belts (theta1, theta2) for theta2 sweeping [theta1, pi] in `steps` increments.
    """
    if not isinstance(steps, int) or steps < 2:
        raise DomainError(f"optimal_fidelity_curve: steps must be >= 2, got {steps!r}")
    make_belt(theta1, math.pi)
    return [solve_optimal(Belt(theta1, theta2)) for theta2 in _axis(theta1, math.pi, steps)]


def branch_condition_probe(
    belts: Iterable[Belt],
) -> List[Tuple[Belt, float, float, bool]]:
    """
    Reports for each belt whether |T| > 1 holds exactly when QR < 0.

    Belts where T is undefined (QR == 0) are skipped.

    :return: Tuples (belt, T, QR, agree)
    """
    report = []
    for belt in belts:
        consts = belt_constants(belt)
        if consts.T is None:
            continue
        qr = consts.Q * consts.R
        agree = (abs(consts.T) > 1.0) == (qr < 0.0)
        if not agree:
            logging.debug(
                f"branch_condition_probe: belt={tuple(belt)} T={consts.T!r} QR={qr!r} disagree"
            )
        report.append((belt, consts.T, qr, agree))
    return report
