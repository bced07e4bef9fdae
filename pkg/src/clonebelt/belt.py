# Copyright (c) 2026 clonebelt contributors
#
# Part of: clonebelt
#
# Closed forms for inputs spread uniformly (weight sin(theta)) over the belt
# theta1 <= theta <= theta2. With u1 = cos(theta1), u2 = cos(theta2):
#   K = u1^2 + u1 u2 + u2^2
#   P = sqrt2/12 K - sqrt2/4
#   Q = K/12 + (u1 + u2)/8
#   R = K/12 - (u1 + u2)/8
#   mean fidelity = 1/2 + K/6 - P sin(alpha + beta) - Q sin^2(alpha) - R sin^2(beta)

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from .machine import CloneAngles
from .states import DomainError

# |cos(theta)| below this is treated as an exact zero, so that pi/2 in floating
# point yields the vanishing equatorial constants.
COS_SNAP = 1e-15

SQRT2 = math.sqrt(2.0)


class BeltError(DomainError):
    """Raised when a belt violates 0 <= theta1 <= theta2 <= pi."""


class DegenerateBeltError(DomainError):
    """Raised when a belt average is requested for theta1 == theta2."""


class Belt(NamedTuple):
    theta1: float
    theta2: float

    @property
    def is_degenerate(self) -> bool:
        return self.theta1 == self.theta2

    def reflected(self) -> "Belt":
        """The mirror belt (pi - theta2, pi - theta1)."""
        return Belt(math.pi - self.theta2, math.pi - self.theta1)


@dataclass(frozen=True)
class BeltConstants:
    K: float
    P: float
    Q: float
    R: float
    T: float | None
    S: float | None

    @property
    def has_T(self) -> bool:
        return self.T is not None

    @property
    def has_S(self) -> bool:
        return self.S is not None


def make_belt(theta1: float, theta2: float) -> Belt:
    """
    Validates and returns a belt.

    :raises BeltError: If an angle is non-finite, outside [0, pi], or theta1 > theta2
    """
    if not (math.isfinite(theta1) and math.isfinite(theta2)):
        raise BeltError(f"make_belt: angles must be finite, got ({theta1}, {theta2})")
    if theta1 < 0.0 or theta2 > math.pi:
        raise BeltError(f"make_belt: ({theta1}, {theta2}) is not inside [0, pi]")
    if theta1 > theta2:
        raise BeltError(f"make_belt: theta1={theta1} is greater than theta2={theta2}")
    return Belt(float(theta1), float(theta2))


def _snapped_cos(theta: float) -> float:
    value = math.cos(theta)
    return 0.0 if abs(value) < COS_SNAP else value


def belt_constants(belt: Belt) -> BeltConstants:
    """
    Computes K, P, Q, R and the derived T = P(Q - R) / (2QR), S = -sqrt(4QRP^2 + 4Q^2R^2).

    T is left undefined (None) when QR == 0 and S when its radicand is negative.
    For theta1 == theta2 the constants are the point values of the pointwise
    fidelity coefficients, i.e. the limit of the belt average.
    """
    u1 = _snapped_cos(belt.theta1)
    u2 = _snapped_cos(belt.theta2)

    K = u1 * u1 + u1 * u2 + u2 * u2
    P = SQRT2 / 12.0 * K - SQRT2 / 4.0
    Q = K / 12.0 + (u1 + u2) / 8.0
    R = K / 12.0 - (u1 + u2) / 8.0

    QR = Q * R
    T = P * (Q - R) / (2.0 * QR) if QR != 0.0 else None
    radicand = 4.0 * QR * P * P + 4.0 * QR * QR
    S = -math.sqrt(radicand) if radicand >= 0.0 else None

    logging.debug(
        f"belt_constants: belt={tuple(belt)} -> K={K!r}, P={P!r}, Q={Q!r}, R={R!r}, T={T!r}, S={S!r}"
    )
    return BeltConstants(K=K, P=P, Q=Q, R=R, T=T, S=S)


def belt_moments(belt: Belt) -> Tuple[float, float, float]:
    """
    Averages of cos^4(theta/2), sin^4(theta/2) and sin^2(theta) over the belt.
    """
    u1 = _snapped_cos(belt.theta1)
    u2 = _snapped_cos(belt.theta2)
    K = u1 * u1 + u1 * u2 + u2 * u2
    return (
        0.25 + (u1 + u2) / 4.0 + K / 12.0,
        0.25 - (u1 + u2) / 4.0 + K / 12.0,
        1.0 - K / 3.0,
    )


def constants_fidelity(consts: BeltConstants, alpha, beta):
    """
    Evaluates 1/2 + K/6 - P sin(alpha+beta) - Q sin^2(alpha) - R sin^2(beta).

    Works element-wise on numpy arrays of angles.
    """
    return (
        0.5
        + consts.K / 6.0
        - consts.P * np.sin(alpha + beta)
        - consts.Q * np.sin(alpha) ** 2
        - consts.R * np.sin(beta) ** 2
    )


def mean_fidelity(belt: Belt, angles: CloneAngles) -> float:
    """
    Clone fidelity averaged over the belt with weight sin(theta).

    :raises DegenerateBeltError: If theta1 == theta2; use pointwise_fidelity instead
    """
    if belt.is_degenerate:
        raise DegenerateBeltError(
            f"mean_fidelity: belt {tuple(belt)} has zero width, use pointwise_fidelity"
        )
    return float(constants_fidelity(belt_constants(belt), angles.alpha, angles.beta))


def stationarity_residual(
    consts: BeltConstants, angles: CloneAngles
) -> Tuple[float, float]:
    """
    Residuals of the stationarity conditions
        P cos(alpha + beta) + Q sin(2 alpha) = 0
        P cos(alpha + beta) + R sin(2 beta)  = 0
    """
    alpha, beta = angles
    shared = consts.P * math.cos(alpha + beta)
    return (
        shared + consts.Q * math.sin(2.0 * alpha),
        shared + consts.R * math.sin(2.0 * beta),
    )
