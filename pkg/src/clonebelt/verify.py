# Copyright (c) 2026 clonebelt contributors
#
# Part of: clonebelt
#

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .belt import Belt, belt_moments, mean_fidelity
from .machine import (
    ISOMETRY_TOL,
    CloneAngles,
    build_clone_isometry,
    pointwise_fidelity,
    reduced_density_closed_form,
    simulated_fidelity,
)
from .oracles import (
    GeneralMachine,
    optimize_angles_numeric,
    optimize_general_isometry,
    symmetrized_fidelity,
)
from .quadrature import (
    QuadratureMethod,
    QuadratureSpec,
    quad_belt_moments,
    quad_mean_fidelity,
)
from .records import content_digest
from .solver import (
    branch_condition_probe,
    optimal_fidelity_curve,
    optimal_fidelity_surface,
    solve_optimal,
)
from .states import DomainError, check_density_matrix, make_ket, make_state, partial_trace

UQCM_FIDELITY = 5.0 / 6.0
PHASE_COVARIANT_FIDELITY = 0.5 * (1.0 + 1.0 / math.sqrt(2.0))

ORACLE_ISOMETRY_BELTS = (
    Belt(0.0, math.pi),
    Belt(math.pi / 2.0, math.pi / 2.0),
    Belt(math.pi / 4.0, 3.0 * math.pi / 4.0),
    Belt(0.0, math.pi / 2.0),
    Belt(0.3, 2.0),
)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str


# A check returns (passed, detail) given (seed, quick).
Check = Callable[[int, bool], Tuple[bool, str]]


def _fmt(value: float) -> str:
    return format(float(value), ".6e")


# special-points


def _check_uqcm(seed: int, quick: bool) -> Tuple[bool, str]:
    result = solve_optimal(Belt(0.0, math.pi))
    target = math.sqrt(2.0 / 3.0)
    fbar_error = abs(result.fbar - UQCM_FIDELITY)
    angle_error = max(abs(math.cos(a) - target) for a in result.angles)
    return (
        fbar_error <= 1e-12 and angle_error <= 1e-10,
        f"fbar error {_fmt(fbar_error)}, cos angle error {_fmt(angle_error)}",
    )


def _check_phase_covariant(seed: int, quick: bool) -> Tuple[bool, str]:
    result = solve_optimal(Belt(math.pi / 2.0, math.pi / 2.0))
    error = abs(result.fbar - PHASE_COVARIANT_FIDELITY)
    return error <= 1e-12, f"fbar error {_fmt(error)}, branch {result.branch.value}"


def _check_curve_minimum(seed: int, quick: bool) -> Tuple[bool, str]:
    theta1 = math.pi / 4.0
    steps = 360
    curve = optimal_fidelity_curve(theta1, steps)
    lowest = min(range(len(curve)), key=lambda k: curve[k].fbar)
    step = (math.pi - theta1) / steps
    offset = curve[lowest].belt.theta2 - 3.0 * math.pi / 4.0
    return (
        abs(offset) <= step * (1.0 + 1e-9),
        f"argmin theta2 offset {_fmt(offset)} (step {_fmt(step)}), fbar {_fmt(curve[lowest].fbar)}",
    )


def _check_curve_endpoints(seed: int, quick: bool) -> Tuple[bool, str]:
    polar = optimal_fidelity_curve(0.0, 100)[-1]
    equatorial = optimal_fidelity_curve(math.pi / 2.0, 10)[0]
    polar_error = abs(polar.fbar - UQCM_FIDELITY)
    equatorial_error = abs(equatorial.fbar - PHASE_COVARIANT_FIDELITY)
    return (
        polar_error <= 1e-12 and equatorial_error <= 1e-12,
        f"(0, pi) error {_fmt(polar_error)}, (pi/2, pi/2) error {_fmt(equatorial_error)}",
    )


def _check_coarse_grid(seed: int, quick: bool) -> Tuple[bool, str]:
    grid = optimal_fidelity_surface(2)
    by_belt = {(round(r.belt.theta1, 12), round(r.belt.theta2, 12)): r.fbar for r in grid}
    polar = by_belt.get((0.0, round(math.pi, 12)))
    equatorial = by_belt.get((round(math.pi / 2.0, 12), round(math.pi / 2.0, 12)))
    lowest = min(by_belt.values())
    passed = (
        len(grid) == 6
        and polar is not None
        and abs(polar - UQCM_FIDELITY) <= 1e-12
        and equatorial is not None
        and abs(equatorial - PHASE_COVARIANT_FIDELITY) <= 1e-12
        and lowest >= UQCM_FIDELITY - 1e-12
    )
    return passed, f"{len(grid)} records, lowest fbar {_fmt(lowest)}"


def _check_global_bounds(seed: int, quick: bool) -> Tuple[bool, str]:
    resolution = 19 if quick else 49
    surface = optimal_fidelity_surface(resolution)
    failures = []
    for result in surface:
        belt = result.belt
        if not (UQCM_FIDELITY - 1e-12 <= result.fbar <= 1.0 + 1e-12):
            failures.append(f"bounds at {tuple(belt)}")
        if abs(result.fbar - UQCM_FIDELITY) <= 1e-9 and belt != Belt(0.0, math.pi):
            failures.append(f"5/6 attained at {tuple(belt)}")
        mirror = solve_optimal(belt.reflected())
        if abs(mirror.fbar - result.fbar) > 1e-12:
            failures.append(f"reflection at {tuple(belt)}")
    return not failures, f"{len(surface)} belts, {len(failures)} violation(s)" + (
        f", first: {failures[0]}" if failures else ""
    )


# simulation


def _random_angles(rng: np.random.Generator) -> CloneAngles:
    alpha, beta = rng.uniform(0.0, math.pi / 2.0, size=2)
    return CloneAngles(float(alpha), float(beta))


def _check_pointwise_simulation(seed: int, quick: bool) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    cases = 200 if quick else 1000
    worst_fidelity = 0.0
    worst_clone_gap = 0.0
    for _ in range(cases):
        angles = _random_angles(rng)
        theta = float(rng.uniform(0.0, math.pi))
        phi = float(rng.uniform(0.0, 2.0 * math.pi))
        fidelity_a, fidelity_b = simulated_fidelity(angles, theta, phi)
        closed = pointwise_fidelity(angles, theta)
        worst_fidelity = max(worst_fidelity, abs(fidelity_a - closed), abs(fidelity_b - closed))

        psi = make_ket(theta, phi)
        joint = make_state(build_clone_isometry(angles).matrix @ psi.amplitudes)
        rho_a = partial_trace(joint, "a").entries
        rho_b = partial_trace(joint, "b").entries
        worst_clone_gap = max(worst_clone_gap, float(np.max(np.abs(rho_a - rho_b))))
    return (
        worst_fidelity <= 1e-12 and worst_clone_gap <= 1e-13,
        f"{cases} cases, max fidelity error {_fmt(worst_fidelity)}, max |rho_a - rho_b| {_fmt(worst_clone_gap)}",
    )


def _check_reduced_density(seed: int, quick: bool) -> Tuple[bool, str]:
    rng = np.random.default_rng([seed, 1])
    cases = 100 if quick else 500
    worst = 0.0
    for _ in range(cases):
        angles = _random_angles(rng)
        theta = float(rng.uniform(0.0, math.pi))
        phi = float(rng.uniform(0.0, 2.0 * math.pi))
        closed = reduced_density_closed_form(angles, theta, phi)
        check_density_matrix(closed)
        joint = make_state(build_clone_isometry(angles).matrix @ make_ket(theta, phi).amplitudes)
        traced = partial_trace(joint, "a").entries
        worst = max(worst, float(np.max(np.abs(closed.entries - traced))))
    return worst <= 1e-13, f"{cases} cases, max entry error {_fmt(worst)}"


def _check_isometry(seed: int, quick: bool) -> Tuple[bool, str]:
    rng = np.random.default_rng([seed, 2])
    cases = 100 if quick else 500
    worst_gap = 0.0
    for _ in range(cases):
        alpha, beta = rng.uniform(-2.0 * math.pi, 2.0 * math.pi, size=2)
        worst_gap = max(worst_gap, build_clone_isometry(CloneAngles(float(alpha), float(beta))).orthonormality_gap())

    worst_margin = math.inf
    for _ in range(cases):
        params = rng.standard_normal(32)
        machine = GeneralMachine.from_params(params)
        theta = float(rng.uniform(0.0, math.pi))
        phi = float(rng.uniform(0.0, 2.0 * math.pi))
        f_min, f_sym = symmetrized_fidelity(machine, make_ket(theta, phi))
        worst_margin = min(worst_margin, f_sym - f_min)
    return (
        worst_gap <= ISOMETRY_TOL and worst_margin >= -1e-14,
        f"{cases} isometries, max gap {_fmt(worst_gap)}; {cases} machines, min F_sym - F_min {_fmt(worst_margin)}",
    )


# quadrature


def _random_belts(rng: np.random.Generator, count: int) -> List[Belt]:
    belts = []
    while len(belts) < count:
        theta1, theta2 = sorted(float(t) for t in rng.uniform(0.0, math.pi, size=2))
        if theta1 < theta2:
            belts.append(Belt(theta1, theta2))
    return belts


def _check_quadrature_mean(seed: int, quick: bool) -> Tuple[bool, str]:
    rng = np.random.default_rng([seed, 3])
    cases = 20 if quick else 100
    worst = 0.0
    for belt in _random_belts(rng, cases):
        angles = _random_angles(rng)
        worst = max(worst, abs(quad_mean_fidelity(belt, angles) - mean_fidelity(belt, angles)))
    return worst <= 1e-10, f"{cases} cases, max error {_fmt(worst)}"


def _check_fixed_panel(seed: int, quick: bool) -> Tuple[bool, str]:
    rng = np.random.default_rng([seed, 4])
    spec = QuadratureSpec(method=QuadratureMethod.FIXED_PANEL)
    cases = 10 if quick else 50
    worst = 0.0
    for belt in _random_belts(rng, cases):
        angles = _random_angles(rng)
        worst = max(worst, abs(quad_mean_fidelity(belt, angles, spec) - mean_fidelity(belt, angles)))
    return worst <= 1e-10, f"{cases} cases, max error {_fmt(worst)}"


def _check_moments(seed: int, quick: bool) -> Tuple[bool, str]:
    rng = np.random.default_rng([seed, 5])
    cases = 5 if quick else 20
    worst = 0.0
    for belt in _random_belts(rng, cases):
        closed = belt_moments(belt)
        numeric = quad_belt_moments(belt)
        worst = max(worst, max(abs(c - n) for c, n in zip(closed, numeric)))
    return worst <= 1e-10, f"{cases} belts, max moment error {_fmt(worst)}"


def _check_branch_probe(seed: int, quick: bool) -> Tuple[bool, str]:
    axis = np.linspace(0.0, math.pi, 25)
    belts = [Belt(float(t1), float(t2)) for i, t1 in enumerate(axis) for t2 in axis[i + 1 :]]
    report = branch_condition_probe(belts)
    disagreements = sum(1 for *_, agree in report if not agree)
    # Reported, not enforced: the probe answers an open question.
    return True, f"|T| > 1 iff QR < 0 on {len(report) - disagreements}/{len(report)} belts"


# oracle-angles


def _check_angle_oracle(seed: int, quick: bool) -> Tuple[bool, str]:
    axis = np.linspace(0.0, math.pi, 7 if quick else 25)
    worst_gap = 0.0
    worst_excess = -math.inf
    count = 0
    for i, theta1 in enumerate(axis):
        for theta2 in axis[i:]:
            belt = Belt(float(theta1), float(theta2))
            closed = solve_optimal(belt).fbar
            oracle = optimize_angles_numeric(belt).fbar
            worst_gap = max(worst_gap, abs(closed - oracle))
            worst_excess = max(worst_excess, oracle - closed)
            count += 1
    return (
        worst_gap <= 1e-8 and worst_excess <= 1e-9,
        f"{count} belts, max |closed - oracle| {_fmt(worst_gap)}, max excess {_fmt(worst_excess)}",
    )


# oracle-isometry


def _make_isometry_check(belt: Belt) -> Check:
    def check(seed: int, quick: bool) -> Tuple[bool, str]:
        result = optimize_general_isometry(belt, restarts=4 if quick else 20, seed=seed)
        gap = result.gap
        return (
            gap <= 1e-6 and gap >= -1e-4,
            f"{result.n_restarts} restarts, fbar {_fmt(result.fbar)}, gap {_fmt(gap)}",
        )

    return check


SUITES: Dict[str, List[Tuple[str, Check]]] = {
    "special-points": [
        ("uqcm", _check_uqcm),
        ("phase-covariant", _check_phase_covariant),
        ("curve-minimum", _check_curve_minimum),
        ("curve-endpoints", _check_curve_endpoints),
        ("coarse-grid", _check_coarse_grid),
        ("global-bounds", _check_global_bounds),
    ],
    "simulation": [
        ("pointwise-vs-simulation", _check_pointwise_simulation),
        ("reduced-density", _check_reduced_density),
        ("isometry", _check_isometry),
    ],
    "quadrature": [
        ("adaptive-mean", _check_quadrature_mean),
        ("fixed-panel-mean", _check_fixed_panel),
        ("moments", _check_moments),
        ("branch-probe", _check_branch_probe),
    ],
    "oracle-angles": [
        ("angle-oracle", _check_angle_oracle),
    ],
    "oracle-isometry": [
        (f"general-isometry({belt.theta1:.4f},{belt.theta2:.4f})", _make_isometry_check(belt))
        for belt in ORACLE_ISOMETRY_BELTS
    ],
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(
    name: str, seed: int = 0, quick: bool = False, fail_ok: bool = True
) -> List[CheckResult]:
    """
    Runs a verification suite, or every suite in order for "all".

    :param name: One of SUITE_NAMES
    :param seed: Seed for every randomized check
    :param quick: If True, use fewer random cases and smaller grids
    :param fail_ok: If True, an exception inside a check is logged and recorded as a failure. Otherwise, it is raised.
    :return: One result per check, in suite order
    """
    if name not in SUITE_NAMES:
        raise DomainError(f"run_suite: unknown suite '{name}'")
    selected = list(SUITES) if name == "all" else [name]

    results: List[CheckResult] = []
    for suite in selected:
        for check_name, check in SUITES[suite]:
            try:
                passed, detail = check(seed, quick)
            except Exception as exc:
                logging.error(f"run_suite: check {suite}/{check_name} raised '{exc}'")
                if not fail_ok:
                    raise exc
                passed, detail = False, f"error: {type(exc).__name__}: {exc}"
            logging.debug(f"run_suite: {suite}/{check_name} --> {'PASS' if passed else 'FAIL'}")
            results.append(CheckResult(suite=suite, name=check_name, passed=bool(passed), detail=detail))
    return results


def format_report(results: List[CheckResult], seed: int) -> str:
    """
    Renders a plain-text pass/fail table with one digest line per suite.

    The output only depends on the results, so equal seeds give identical reports.
    """
    lines = [f"seed {seed}"]
    width = max((len(f"{r.suite}/{r.name}") for r in results), default=0)
    suite_lines: Dict[str, List[str]] = {}
    for result in results:
        label = f"{result.suite}/{result.name}".ljust(width)
        line = f"{'PASS' if result.passed else 'FAIL'}  {label}  {result.detail}"
        suite_lines.setdefault(result.suite, []).append(line)
        lines.append(line)

    for suite, entries in suite_lines.items():
        lines.append(f"digest {suite} {content_digest(chr(10).join(entries))}")

    failed = sum(1 for r in results if not r.passed)
    lines.append(f"{len(results) - failed} passed, {failed} failed")
    lines.append("PASS" if failed == 0 else "FAIL")
    return "\n".join(lines) + "\n"

