# Copyright (c) 2026 clonebelt contributors
#
# Part of: clonebelt
#
# The symmetric 1 -> 2 cloning isometry parametrized by two angles:
#   |0>_a|0>_b|up>_x -> cos(alpha)|00>|up>   + sin(alpha)|xi+>|down>
#   |1>_a|0>_b|up>_x -> cos(beta) |11>|down> + sin(beta) |xi+>|up>
# with |xi+> = (|01> + |10>) / sqrt(2) and up -> 0, down -> 1.

import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from .states import (
    DensityMatrix,
    DomainError,
    MultiQubitState,
    PureQubit,
    make_ket,
    partial_trace,
    state_fidelity,
)

ISOMETRY_TOL = 1e-14
SQRT_HALF = math.sqrt(0.5)

UP = np.array([1.0, 0.0], dtype=complex)
DOWN = np.array([0.0, 1.0], dtype=complex)
KET_00 = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)
KET_11 = np.array([0.0, 0.0, 0.0, 1.0], dtype=complex)
XI_PLUS = np.array([0.0, SQRT_HALF, SQRT_HALF, 0.0], dtype=complex)


class CloneAngles(NamedTuple):
    alpha: float
    beta: float


UQCM_ANGLES = CloneAngles(math.acos(math.sqrt(2.0 / 3.0)), math.acos(math.sqrt(2.0 / 3.0)))
PHASE_COVARIANT_ANGLES = CloneAngles(math.pi / 4.0, math.pi / 4.0)


@dataclass(frozen=True, eq=False)
class CloneIsometry:
    matrix: np.ndarray

    def orthonormality_gap(self) -> float:
        """Largest entry of |V^dagger V - I|."""
        gram = self.matrix.conj().T @ self.matrix
        return float(np.max(np.abs(gram - np.eye(2))))


def build_clone_isometry(angles: CloneAngles) -> CloneIsometry:
    """
    Returns the 8x2 matrix whose column k is the image of |k>_a|0>_b|up>_x.

    Rows are indexed by the bitstring (a, b, x) with a as the most significant bit.
    Columns are orthonormal for every real (alpha, beta).
    """
    alpha, beta = angles
    from_zero = math.cos(alpha) * np.kron(KET_00, UP) + math.sin(alpha) * np.kron(XI_PLUS, DOWN)
    from_one = math.cos(beta) * np.kron(KET_11, DOWN) + math.sin(beta) * np.kron(XI_PLUS, UP)
    return CloneIsometry(matrix=np.column_stack([from_zero, from_one]))


def apply_clone(angles: CloneAngles, psi: PureQubit) -> MultiQubitState:
    isometry = build_clone_isometry(angles)
    return MultiQubitState(n_qubits=3, amplitudes=isometry.matrix @ psi.amplitudes)


def reduced_density_closed_form(
    angles: CloneAngles, theta: float, phi: float
) -> DensityMatrix:
    """
    Single-clone density matrix written out term by term.

    rho = (sin(beta) sin(theta/2) / sqrt2)^2 |0><0|
        + (sin(alpha) cos(theta/2) / sqrt2)^2 |1><1|
        + |v><v| + |w><w|
    with v = (cos(theta/2) cos(alpha), sin(theta/2) sin(beta) e^{i phi} / sqrt2)
    and  w = (cos(theta/2) sin(alpha) / sqrt2, sin(theta/2) cos(beta) e^{i phi}).
    The same matrix describes clone a and clone b.
    """
    alpha, beta = angles
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    phase = complex(math.cos(phi), math.sin(phi))

    entries = np.diag(
        [
            (math.sin(beta) * s * SQRT_HALF) ** 2,
            (math.sin(alpha) * c * SQRT_HALF) ** 2,
        ]
    ).astype(complex)
    v = np.array([c * math.cos(alpha), s * math.sin(beta) * phase * SQRT_HALF])
    w = np.array([c * math.sin(alpha) * SQRT_HALF, s * math.cos(beta) * phase])
    entries += np.outer(v, v.conj()) + np.outer(w, w.conj())
    return DensityMatrix(entries=entries)


def _pointwise(angles: CloneAngles, theta, cos, sin):
    alpha, beta = angles
    c2 = cos(theta / 2.0) ** 2
    s2 = sin(theta / 2.0) ** 2
    sin2_theta = sin(theta) ** 2
    return (
        c2 * c2 * (0.5 + 0.5 * math.cos(alpha) ** 2)
        + s2 * s2 * (0.5 + 0.5 * math.cos(beta) ** 2)
        + 0.125 * sin2_theta * (math.sin(alpha) ** 2 + math.sin(beta) ** 2)
        + (math.sqrt(2.0) / 4.0) * sin2_theta * math.sin(alpha + beta)
    )


def pointwise_fidelity(angles: CloneAngles, theta):
    """
    Closed-form clone fidelity for an input at polar angle theta (any azimuth).

    Scalars are evaluated with `math`, arrays element-wise with numpy.
    """
    if np.ndim(theta) == 0:
        return float(_pointwise(angles, float(theta), math.cos, math.sin))
    return _pointwise(angles, np.asarray(theta, dtype=float), np.cos, np.sin)


def fidelity_profile(angles: CloneAngles, thetas) -> np.ndarray:
    return np.asarray(pointwise_fidelity(angles, np.asarray(thetas, dtype=float)))


def _bloch_angles(theta: float, phi: float) -> Tuple[float, float]:
    """
    Folds any real (theta, phi) onto theta in [0, pi], phi in [0, 2 pi).

    theta in (pi, 2 pi) names the same state as (2 pi - theta, phi + pi) up
    to a global sign.
    """
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise DomainError(f"simulated_fidelity: angles must be finite, got ({theta}, {phi})")
    theta = theta % (2.0 * math.pi)
    if theta > math.pi:
        theta = 2.0 * math.pi - theta
        phi = phi + math.pi
    phi = phi % (2.0 * math.pi)
    if phi >= 2.0 * math.pi:
        phi = 0.0
    return theta, phi


def simulated_fidelity(
    angles: CloneAngles, theta: float, phi: float
) -> Tuple[float, float]:
    """
    Fidelities (F_a, F_b) of both clones, obtained by applying the isometry,
    tracing out the other two qubits and taking the overlap with the input.

    Any real angles are accepted; they are folded onto the Bloch sphere first.
    """
    psi = make_ket(*_bloch_angles(theta, phi))
    joint = apply_clone(angles, psi)
    fidelity_a = state_fidelity(psi, partial_trace(joint, "a"))
    fidelity_b = state_fidelity(psi, partial_trace(joint, "b"))
    return fidelity_a, fidelity_b
