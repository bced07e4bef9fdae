# Copyright (c) 2026 clonebelt contributors
#
# Part of: clonebelt
#

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

NORM_TOL = 1e-13
HERMITIAN_TOL = 1e-13
TRACE_TOL = 1e-13
PSD_TOL = 1e-12

# Qubit order inside joint states: a (most significant bit), b, ancilla x.
QUBIT_LABELS = ("a", "b", "x")


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


@dataclass(frozen=True, eq=False)
class PureQubit:
    theta: float
    phi: float
    amplitudes: np.ndarray


@dataclass(frozen=True, eq=False)
class MultiQubitState:
    n_qubits: int
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    entries: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])


def make_ket(theta: float, phi: float) -> PureQubit:
    """
    Builds the Bloch-sphere ket cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>.

    The |0> amplitude is real and non-negative, which fixes the global phase.

    :param theta: Polar angle in radians, within [0, pi]
    :param phi: Azimuthal angle in radians, within [0, 2 pi)
    :return: The qubit with its amplitude pair
    :raises DomainError: If either angle is non-finite or out of range
    """
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise DomainError(f"make_ket: angles must be finite, got ({theta}, {phi})")
    if theta < 0.0 or theta > math.pi:
        raise DomainError(f"make_ket: theta={theta} is outside [0, pi]")
    if phi < 0.0 or phi >= 2.0 * math.pi:
        raise DomainError(f"make_ket: phi={phi} is outside [0, 2 pi)")

    amplitudes = np.array(
        [math.cos(theta / 2.0), math.sin(theta / 2.0) * cmath.exp(1j * phi)],
        dtype=complex,
    )
    return PureQubit(theta=theta, phi=phi, amplitudes=amplitudes)


def make_state(amplitudes, strict: bool = True) -> MultiQubitState:
    """
    Wraps a 2, 4 or 8 entry amplitude vector as a joint state of 1 to 3 qubits.

    :param amplitudes: Amplitudes indexed by bitstring, qubit a leftmost
    :param strict: If True, reject vectors whose norm differs from 1 by more than NORM_TOL
    :raises DomainError: On a bad length or, in strict mode, a bad norm
    """
    vector = np.asarray(amplitudes, dtype=complex).reshape(-1)
    n_qubits = {2: 1, 4: 2, 8: 3}.get(vector.shape[0])
    if n_qubits is None:
        raise DomainError(
            f"make_state: expected 2, 4 or 8 amplitudes, got {vector.shape[0]}"
        )
    state = MultiQubitState(n_qubits=n_qubits, amplitudes=vector)
    if strict and abs(state.norm() - 1.0) > NORM_TOL:
        raise DomainError(f"make_state: state norm is {state.norm()!r}, expected 1")
    return state


def product_state(*factors) -> MultiQubitState:
    vector = np.ones(1, dtype=complex)
    for factor in factors:
        amplitudes = factor.amplitudes if isinstance(factor, PureQubit) else factor
        vector = np.kron(vector, np.asarray(amplitudes, dtype=complex))
    return make_state(vector)


def _qubit_axis(keep, n_qubits: int) -> int:
    if isinstance(keep, str):
        if keep not in QUBIT_LABELS:
            raise DomainError(f"partial_trace: unknown qubit label '{keep}'")
        axis = QUBIT_LABELS.index(keep)
    elif isinstance(keep, (int, np.integer)) and not isinstance(keep, bool):
        axis = int(keep)
    else:
        raise DomainError(f"partial_trace: unsupported qubit index type '{type(keep)}'")

    if axis < 0 or axis >= n_qubits:
        raise DomainError(
            f"partial_trace: qubit '{keep}' does not exist in a {n_qubits}-qubit state"
        )
    return axis


def partial_trace(state: MultiQubitState, keep) -> DensityMatrix:
    """
    Reduces a joint pure state to the 2x2 density matrix of one qubit.

    :param state: Joint state of 1 to 3 qubits
    :param keep: Label ('a', 'b', 'x') or position of the kept qubit
    :return: Reduced density matrix of the kept qubit
    :raises DomainError: If the index does not name a qubit of the state
    """
    axis = _qubit_axis(keep, state.n_qubits)
    tensor = state.amplitudes.reshape((2,) * state.n_qubits)
    rows = np.moveaxis(tensor, axis, 0).reshape(2, -1)
    return DensityMatrix(entries=rows @ rows.conj().T)


def state_fidelity(psi: PureQubit, rho: DensityMatrix) -> float:
    """
    Overlap <psi|rho|psi> between a pure qubit and a single-qubit density matrix.
    """
    if rho.dim != 2:
        raise DomainError(f"state_fidelity: expected a 2x2 matrix, got dim={rho.dim}")
    ket = psi.amplitudes
    return float(np.real(ket.conj() @ rho.entries @ ket))


def min_eigenvalue_2x2(entries: np.ndarray) -> float:
    """
    Smallest eigenvalue of a 2x2 Hermitian matrix by the closed-form formula.
    """
    a = float(np.real(entries[0, 0]))
    d = float(np.real(entries[1, 1]))
    off = abs(entries[0, 1])
    return 0.5 * (a + d) - math.hypot(0.5 * (a - d), off)


def check_density_matrix(rho: DensityMatrix, strict: bool = True) -> bool:
    """
    Checks the density-matrix invariants: Hermitian, unit trace and positive semidefinite.

    :param rho: The matrix to check
    :param strict: If True, raise DomainError naming the violated invariant. If False, return False instead.
    :return: True when every invariant holds
    """
    entries = rho.entries
    try:
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DomainError(f"check_density_matrix: matrix is not square: {entries.shape}")

        hermitian_gap = float(np.max(np.abs(entries - entries.conj().T)))
        if hermitian_gap > HERMITIAN_TOL:
            raise DomainError(
                f"check_density_matrix: not Hermitian (max deviation {hermitian_gap:.3e})"
            )

        trace = complex(np.trace(entries))
        if abs(trace - 1.0) > TRACE_TOL:
            raise DomainError(f"check_density_matrix: trace is {trace}, expected 1")

        if rho.dim == 2:
            lowest = min_eigenvalue_2x2(entries)
        else:
            lowest = float(np.min(np.linalg.eigvalsh(entries)))
        if lowest < -PSD_TOL:
            raise DomainError(
                f"check_density_matrix: negative eigenvalue {lowest:.3e}"
            )
    except DomainError as exc:
        if strict:
            raise
        logging.debug(str(exc))
        return False
    return True


def bloch_vector(rho: DensityMatrix) -> Tuple[float, float, float]:
    """
    Bloch vector (x, y, z) of a single-qubit density matrix, rho = (I + r.sigma) / 2.
    """
    if rho.dim != 2:
        raise DomainError(f"bloch_vector: expected a 2x2 matrix, got dim={rho.dim}")
    entries = rho.entries
    return (
        float(2.0 * np.real(entries[0, 1])),
        float(2.0 * np.imag(entries[1, 0])),
        float(np.real(entries[0, 0] - entries[1, 1])),
    )
