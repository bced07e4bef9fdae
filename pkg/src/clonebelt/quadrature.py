# Copyright (c) 2026 clonebelt contributors
#
# Part of: clonebelt
#

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np
from scipy.integrate import simpson

from .belt import Belt, DegenerateBeltError
from .machine import CloneAngles, pointwise_fidelity
from .states import DomainError

# Panels are always split at least this many times before an estimate is accepted.
MIN_LEVELS = 3


class QuadratureMethod(str, Enum):
    ADAPTIVE_SIMPSON = "adaptive-simpson"
    FIXED_PANEL = "fixed-panel"


@dataclass(frozen=True)
class QuadratureSpec:
    method: QuadratureMethod = QuadratureMethod.ADAPTIVE_SIMPSON
    abs_tol: float = 1e-12
    max_depth: int = 40
    panels: int = 2048

    def __post_init__(self):
        if not (self.abs_tol > 0.0):
            raise DomainError(f"QuadratureSpec: abs_tol must be > 0, got {self.abs_tol!r}")
        if self.max_depth < 1:
            raise DomainError(f"QuadratureSpec: max_depth must be >= 1, got {self.max_depth!r}")
        if self.panels < 2 or self.panels % 2:
            raise DomainError(f"QuadratureSpec: panels must be even and >= 2, got {self.panels!r}")


DEFAULT_SPEC = QuadratureSpec()


def _adaptive(f, a, fa, b, fb, m, fm, whole, tol, depth, level, capped):
    left_mid = 0.5 * (a + m)
    right_mid = 0.5 * (m + b)
    f_left_mid = f(left_mid)
    f_right_mid = f(right_mid)
    left = (m - a) / 6.0 * (fa + 4.0 * f_left_mid + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * f_right_mid + fb)
    delta = left + right - whole

    if level >= MIN_LEVELS and abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth <= 0:
        capped[0] += 1
        return left + right + delta / 15.0

    return _adaptive(
        f, a, fa, m, fm, left_mid, f_left_mid, left, 0.5 * tol, depth - 1, level + 1, capped
    ) + _adaptive(
        f, m, fm, b, fb, right_mid, f_right_mid, right, 0.5 * tol, depth - 1, level + 1, capped
    )


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    abs_tol: float = 1e-12,
    max_depth: int = 40,
) -> float:
    """
    Integrates f over [a, b] by recursive Simpson bisection with Richardson correction.

    Each half inherits half of the tolerance of its parent; function values at
    shared nodes are reused. Panels that reach `max_depth` are accepted as is
    and reported with a warning.
    """
    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    capped = [0]
    value = _adaptive(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth, 0, capped)
    if capped[0]:
        logging.warning(
            f"adaptive_simpson: {capped[0]} panel(s) on [{a}, {b}] hit max_depth={max_depth}"
        )
    return value


def fixed_panel_simpson(f: Callable, a: float, b: float, panels: int) -> float:
    """Composite Simpson rule on `panels` equal panels; f must accept numpy arrays."""
    nodes = np.linspace(a, b, panels + 1)
    return float(simpson(f(nodes), x=nodes))


def integrate(f: Callable, a: float, b: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    if spec.method == QuadratureMethod.FIXED_PANEL:
        return fixed_panel_simpson(f, a, b, spec.panels)
    return adaptive_simpson(f, a, b, abs_tol=spec.abs_tol, max_depth=spec.max_depth)


def _sin(theta):
    return np.sin(theta) if np.ndim(theta) else math.sin(theta)


def _belt_average(belt: Belt, f: Callable, spec: QuadratureSpec, caller: str) -> float:
    if belt.is_degenerate:
        raise DegenerateBeltError(f"{caller}: belt {tuple(belt)} has zero width")
    numerator = integrate(lambda t: f(t) * _sin(t), belt.theta1, belt.theta2, spec)
    denominator = integrate(_sin, belt.theta1, belt.theta2, spec)
    logging.debug(f"{caller}: belt={tuple(belt)} -> {numerator!r} / {denominator!r}")
    return numerator / denominator


def quad_mean_fidelity(
    belt: Belt, angles: CloneAngles, spec: QuadratureSpec = DEFAULT_SPEC
) -> float:
    """
    Belt-averaged clone fidelity computed by quadrature of the pointwise
    fidelity against the weight sin(theta).

    :raises DegenerateBeltError: If theta1 == theta2
    """
    return _belt_average(
        belt, lambda t: pointwise_fidelity(angles, t), spec, "quad_mean_fidelity"
    )


def _cos4_half(theta):
    cos = np.cos if np.ndim(theta) else math.cos
    return cos(theta / 2.0) ** 4


def _sin4_half(theta):
    return _sin(theta / 2.0) ** 4


def _sin2(theta):
    return _sin(theta) ** 2


def quad_belt_moments(
    belt: Belt, spec: QuadratureSpec = DEFAULT_SPEC
) -> Tuple[float, float, float]:
    """
    Averages of cos^4(theta/2), sin^4(theta/2) and sin^2(theta) over the belt, by quadrature.
    """
    return (
        _belt_average(belt, _cos4_half, spec, "quad_belt_moments"),
        _belt_average(belt, _sin4_half, spec, "quad_belt_moments"),
        _belt_average(belt, _sin2, spec, "quad_belt_moments"),
    )
