# Copyright (c) 2026 clonebelt contributors
#
# Part of: clonebelt
#
# Brute-force cross-checks of the closed forms: a grid + Nelder-Mead search
# over the two clone angles, and a Nelder-Mead search over every 8x2 isometry
# (one blank qubit, one ancilla qubit) scored by min(F_a, F_b).

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.optimize import minimize

from .belt import Belt, belt_constants, constants_fidelity, make_belt
from .machine import CloneAngles, build_clone_isometry, pointwise_fidelity
from .solver import solve_optimal
from .states import (
    DomainError,
    PureQubit,
    make_state,
    partial_trace,
    state_fidelity,
)

MACHINE_TOL = 1e-12
NM_MAXITER = 2000
NM_XATOL = 1e-12
NM_FATOL = 1e-12
GENERAL_MAX_PASSES = 20
GENERAL_PASS_GAIN = 1e-10
ANGLE_STARTS = 3
PARAMETER_COUNT = 32

# Gauss-Legendre in u = cos(theta) (weight sin(theta) d(theta) = du) plus
# four azimuths integrates the clone fidelity of any 8x2 isometry exactly.
_LEGENDRE_NODES, _LEGENDRE_WEIGHTS = np.polynomial.legendre.leggauss(3)
_AZIMUTHS = np.array([0.0, 0.5, 1.0, 1.5]) * math.pi

# Row permutation exchanging qubits a and b in the (a, b, x) bit order.
_SWAP_AB = np.array([(k & 0b001) | ((k & 0b010) << 1) | ((k & 0b100) >> 1) for k in range(8)])


@dataclass(frozen=True, eq=False)
class GeneralMachine:
    isometry: np.ndarray

    def __post_init__(self):
        if self.isometry.shape != (8, 2):
            raise DomainError(f"GeneralMachine: expected an 8x2 matrix, got {self.isometry.shape}")
        gram = self.isometry.conj().T @ self.isometry
        gap = float(np.max(np.abs(gram - np.eye(2))))
        if gap > MACHINE_TOL:
            raise DomainError(f"GeneralMachine: columns are not orthonormal (gap {gap:.3e})")

    @classmethod
    def from_params(cls, params) -> "GeneralMachine":
        isometry = isometry_from_params(params)
        if isometry is None:
            raise DomainError("GeneralMachine: parameters give linearly dependent columns")
        return cls(isometry=isometry)

    @classmethod
    def from_clone_angles(cls, angles: CloneAngles) -> "GeneralMachine":
        return cls(isometry=build_clone_isometry(angles).matrix)

    def swapped(self) -> "GeneralMachine":
        """The machine that hands clone a's output to b and vice versa."""
        return GeneralMachine(isometry=self.isometry[_SWAP_AB])


@dataclass(frozen=True, eq=False)
class OracleResult:
    fbar: float
    n_restarts: int
    seed: int | None
    converged: bool
    best_angles: CloneAngles | None = None
    best_isometry: np.ndarray | None = None
    n_evaluations: int = 0
    reference_fbar: float | None = None

    @property
    def gap(self) -> float | None:
        """fbar minus the closed-form optimum; positive means the oracle beat it."""
        if self.reference_fbar is None:
            return None
        return self.fbar - self.reference_fbar


def isometry_from_params(params) -> np.ndarray | None:
    """
    Maps 32 reals to an 8x2 isometry: two complex 8-vectors, the first
    normalized and the second orthonormalized against it (Gram-Schmidt).

    :return: The isometry, or None if the vectors are (numerically) dependent
    """
    values = np.asarray(params, dtype=float)
    if values.shape != (PARAMETER_COUNT,):
        raise DomainError(f"isometry_from_params: expected 32 parameters, got {values.shape}")
    vectors = values[:16].reshape(2, 8) + 1j * values[16:].reshape(2, 8)
    first = vectors[0]
    first_norm = np.linalg.norm(first)
    if first_norm < 1e-12:
        return None
    first = first / first_norm
    second = vectors[1] - (first.conj() @ vectors[1]) * first
    second_norm = np.linalg.norm(second)
    if second_norm < 1e-12:
        return None
    return np.column_stack([first, second / second_norm])


def belt_sample_kets(belt: Belt) -> Tuple[np.ndarray, np.ndarray]:
    """
    Input kets and weights whose weighted sum equals the belt average of any
    quantity quadratic in u = cos(theta) after averaging over phi.

    :return: (kets with shape (n, 2), weights with shape (n,) summing to 1)
    """
    u1, u2 = math.cos(belt.theta1), math.cos(belt.theta2)
    us = 0.5 * (u1 + u2) + 0.5 * (u1 - u2) * _LEGENDRE_NODES
    us = np.clip(us, -1.0, 1.0)
    cos_half = np.sqrt(0.5 * (1.0 + us))
    sin_half = np.sqrt(0.5 * (1.0 - us))

    kets = np.empty((us.size * _AZIMUTHS.size, 2), dtype=complex)
    kets[:, 0] = np.repeat(cos_half, _AZIMUTHS.size)
    kets[:, 1] = np.repeat(sin_half, _AZIMUTHS.size) * np.tile(np.exp(1j * _AZIMUTHS), us.size)
    weights = np.repeat(0.5 * _LEGENDRE_WEIGHTS, _AZIMUTHS.size) / _AZIMUTHS.size
    return kets, weights


def clone_fidelities(isometry: np.ndarray, kets: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Vectorized (F_a, F_b) of an 8x2 isometry for a batch of input kets.
    """
    joint = (kets @ isometry.T).reshape(-1, 2, 2, 2)
    rho_a = np.einsum("nabx,ncbx->nac", joint, joint.conj())
    rho_b = np.einsum("nabx,nacx->nbc", joint, joint.conj())
    fidelity_a = np.einsum("ni,nij,nj->n", kets.conj(), rho_a, kets).real
    fidelity_b = np.einsum("ni,nij,nj->n", kets.conj(), rho_b, kets).real
    return fidelity_a, fidelity_b


def belt_gram(belt: Belt) -> np.ndarray:
    """
    4x4 Hermitian matrix G over index pairs (k, i) of the input qubit with
        G[(k, i), (l, j)] = sum_n w_n psi_k conj(psi_i) conj(psi_l) psi_j
    over the exact belt samples, so that each belt-averaged clone fidelity is
    a quadratic form in the isometry entries (see gram_mean_fidelities).
    """
    kets, weights = belt_sample_kets(belt)
    pairs = np.einsum("nk,ni->nki", kets.conj(), kets).reshape(-1, 4)
    return (weights[:, np.newaxis] * pairs.conj()).T @ pairs


def gram_mean_fidelities(isometry: np.ndarray, gram: np.ndarray) -> Tuple[float, float]:
    """Belt averages of F_a and F_b from the belt's Gram matrix."""
    tensor = isometry.reshape(2, 2, 2, 2)
    # rows: the two traced-out qubits, columns: (kept qubit, input index)
    side_a = tensor.transpose(1, 2, 0, 3).reshape(4, 4)
    side_b = tensor.transpose(0, 2, 1, 3).reshape(4, 4)
    return (
        float(np.vdot(side_a, side_a @ gram.T).real),
        float(np.vdot(side_b, side_b @ gram.T).real),
    )


def general_mean_fidelities(machine: GeneralMachine, belt: Belt) -> Tuple[float, float]:
    """Belt averages of F_a and F_b for an arbitrary machine."""
    kets, weights = belt_sample_kets(belt)
    fidelity_a, fidelity_b = clone_fidelities(machine.isometry, kets)
    return float(weights @ fidelity_a), float(weights @ fidelity_b)


def symmetrized_fidelity(machine: GeneralMachine, psi: PureQubit) -> Tuple[float, float]:
    """
    Compares a machine with its symmetrized version.

    Running the machine or its a<->b swapped copy with probability 1/2 each
    leaves both clones in (rho_a + rho_b) / 2.

    :return: (F_min, F_sym) with F_min = min(F_a, F_b) and F_sym the fidelity of
        the symmetrized machine; F_sym >= F_min always
    """
    direct = make_state(machine.isometry @ psi.amplitudes, strict=False)
    swapped = make_state(machine.swapped().isometry @ psi.amplitudes, strict=False)

    fidelity_a = state_fidelity(psi, partial_trace(direct, "a"))
    fidelity_b = state_fidelity(psi, partial_trace(direct, "b"))
    fidelity_swapped_a = state_fidelity(psi, partial_trace(swapped, "a"))
    return min(fidelity_a, fidelity_b), 0.5 * (fidelity_a + fidelity_swapped_a)


def create_belt_objective(belt: Belt) -> Callable:
    """
    Creates the function (alpha, beta) -> mean fidelity for a belt.

    Zero-width belts use the pointwise fidelity at theta1. The returned
    function accepts scalars or numpy arrays.
    """
    belt = make_belt(*belt)
    if belt.is_degenerate:
        theta = belt.theta1

        def point_objective(alpha, beta):
            if np.ndim(alpha) == 0 and np.ndim(beta) == 0:
                return pointwise_fidelity(CloneAngles(float(alpha), float(beta)), theta)
            return np.vectorize(
                lambda a, b: pointwise_fidelity(CloneAngles(float(a), float(b)), theta)
            )(alpha, beta)

        return point_objective

    consts = belt_constants(belt)

    def belt_objective(alpha, beta):
        return constants_fidelity(consts, alpha, beta)

    return belt_objective


def _fold(angle: float) -> float:
    return math.asin(min(1.0, abs(math.sin(angle))))


def optimize_angles_numeric(
    belt: Belt, grid_steps: int = 64, refine_iters: int = NM_MAXITER
) -> OracleResult:
    """
    Maximizes the belt mean fidelity over (alpha, beta) in [0, pi]^2 without
    using the closed-form solution: a coarse grid, then Nelder-Mead from the
    ANGLE_STARTS best grid nodes.

    The reported angles are folded into [0, pi/2]^2 (same sines squared, and a
    sum angle whose sine is at least as large).
    """
    if grid_steps < 8:
        raise DomainError(f"optimize_angles_numeric: grid_steps must be >= 8, got {grid_steps}")
    objective = create_belt_objective(belt)

    axis = np.linspace(0.0, math.pi, grid_steps + 1)
    alpha_grid, beta_grid = np.meshgrid(axis, axis, indexing="ij")
    values = np.asarray(objective(alpha_grid, beta_grid), dtype=float).reshape(-1)
    order = np.argsort(-values, kind="stable")[:ANGLE_STARTS]
    spacing = axis[1] - axis[0]

    evaluations = values.size
    best = None
    for flat_index in order:
        start = np.array([alpha_grid.flat[flat_index], beta_grid.flat[flat_index]])
        simplex = np.array([start, start + [spacing, 0.0], start + [0.0, spacing]])
        outcome = minimize(
            lambda x: -float(objective(x[0], x[1])),
            start,
            method="Nelder-Mead",
            options={
                "maxiter": refine_iters,
                "xatol": NM_XATOL,
                "fatol": 1e-15,
                "initial_simplex": simplex,
            },
        )
        evaluations += int(outcome.nfev)
        value = -float(outcome.fun)
        if best is None or value > best[0]:
            best = (value, outcome)

    value, outcome = best
    angles = CloneAngles(_fold(float(outcome.x[0])), _fold(float(outcome.x[1])))
    value = max(value, float(objective(angles.alpha, angles.beta)))
    logging.debug(
        f"optimize_angles_numeric: belt={tuple(belt)} -> {tuple(angles)} fbar={value!r} nfev={evaluations}"
    )
    return OracleResult(
        fbar=value,
        n_restarts=len(order),
        seed=None,
        converged=bool(outcome.success),
        best_angles=angles,
        n_evaluations=evaluations,
    )


def _restart(objective: Callable, seed: int, index: int, maxiter: int, max_passes: int):
    """
    One seeded restart: Nelder-Mead passes until a pass gains at most
    GENERAL_PASS_GAIN (converged) or max_passes are used up (not converged).
    """
    rng = np.random.default_rng([seed, index])
    x = rng.standard_normal(PARAMETER_COUNT)
    value = objective(x)
    evaluations = 1
    converged = False
    for _ in range(max_passes):
        outcome = minimize(
            objective,
            x,
            method="Nelder-Mead",
            options={"maxiter": maxiter, "xatol": NM_XATOL, "fatol": NM_FATOL, "adaptive": True},
        )
        evaluations += int(outcome.nfev)
        gain = value - float(outcome.fun)
        if float(outcome.fun) <= value:
            x, value = outcome.x, float(outcome.fun)
        if gain <= GENERAL_PASS_GAIN:
            converged = True
            break
    return -value, x, converged, evaluations


def optimize_general_isometry(
    belt: Belt,
    restarts: int = 20,
    seed: int = 0,
    maxiter: int = NM_MAXITER,
    max_passes: int = GENERAL_MAX_PASSES,
) -> OracleResult:
    """
    Maximizes min(F_a, F_b), each belt-averaged, over all 8x2 isometries.

    Every restart draws its start from numpy's PCG64 generator seeded with
    (seed, restart index) and runs Nelder-Mead passes on the unconstrained 32
    parameters (re-orthonormalized at every evaluation) until a pass gains at
    most GENERAL_PASS_GAIN. The best restart wins; ties go to the lowest index.
    The gap to the closed-form optimum is reported in the result, never clipped.
    """
    if restarts < 1:
        raise DomainError(f"optimize_general_isometry: restarts must be >= 1, got {restarts}")
    belt = make_belt(*belt)
    gram = belt_gram(belt)

    def objective(params):
        isometry = isometry_from_params(params)
        if isometry is None:
            return 0.0
        return -min(gram_mean_fidelities(isometry, gram))

    best = None
    evaluations = 0
    for index in range(restarts):
        value, params, converged, used = _restart(objective, seed, index, maxiter, max_passes)
        evaluations += used
        logging.debug(
            f"optimize_general_isometry: restart {index} -> {value!r} converged={converged}"
        )
        if not converged:
            logging.warning(
                f"optimize_general_isometry: restart {index} still improving after {max_passes} passes"
            )
        if best is None or value > best[0]:
            best = (value, params, converged)

    value, params, converged = best
    reference = solve_optimal(belt).fbar
    if value - reference > 1e-6:
        logging.warning(
            f"optimize_general_isometry: belt={tuple(belt)} general machine beats the symmetric optimum by {value - reference!r}"
        )
    return OracleResult(
        fbar=value,
        n_restarts=restarts,
        seed=seed,
        converged=converged,
        best_isometry=isometry_from_params(params),
        n_evaluations=evaluations,
        reference_fbar=reference,
    )
