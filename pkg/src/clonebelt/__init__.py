# Copyright (c) 2026 clonebelt contributors
#
# Part of: clonebelt
#
from importlib.metadata import PackageNotFoundError, version

from .belt import (
    Belt,
    BeltConstants,
    BeltError,
    DegenerateBeltError,
    belt_constants,
    belt_moments,
    make_belt,
    mean_fidelity,
    stationarity_residual,
)
from .machine import (
    PHASE_COVARIANT_ANGLES,
    UQCM_ANGLES,
    CloneAngles,
    CloneIsometry,
    apply_clone,
    build_clone_isometry,
    fidelity_profile,
    pointwise_fidelity,
    reduced_density_closed_form,
    simulated_fidelity,
)
from .oracles import (
    GeneralMachine,
    OracleResult,
    create_belt_objective,
    general_mean_fidelities,
    optimize_angles_numeric,
    optimize_general_isometry,
    symmetrized_fidelity,
)
from .quadrature import (
    QuadratureMethod,
    QuadratureSpec,
    adaptive_simpson,
    quad_belt_moments,
    quad_mean_fidelity,
)
from .records import (
    OutputRecord,
    ProfileRecord,
    encode_csv,
    encode_json,
    read_csv,
    read_json,
    record_from_result,
    records_digest,
    write_xlsx,
)
from .solver import (
    Branch,
    OptimalCloneResult,
    branch_condition_probe,
    interior_candidates,
    optimal_fidelity_curve,
    optimal_fidelity_surface,
    solve_optimal,
)
from .states import (
    DensityMatrix,
    DomainError,
    MultiQubitState,
    PureQubit,
    bloch_vector,
    check_density_matrix,
    make_ket,
    make_state,
    partial_trace,
    product_state,
    state_fidelity,
)
from .verify import CheckResult, format_report, run_suite

try:
    __version__ = version("clonebelt")
except PackageNotFoundError:
    __version__ = "0.0.0.dev0"

__all__ = [
    "__version__",
    "Belt",
    "BeltConstants",
    "BeltError",
    "DegenerateBeltError",
    "belt_constants",
    "belt_moments",
    "make_belt",
    "mean_fidelity",
    "stationarity_residual",
    "PHASE_COVARIANT_ANGLES",
    "UQCM_ANGLES",
    "CloneAngles",
    "CloneIsometry",
    "apply_clone",
    "build_clone_isometry",
    "fidelity_profile",
    "pointwise_fidelity",
    "reduced_density_closed_form",
    "simulated_fidelity",
    "GeneralMachine",
    "OracleResult",
    "create_belt_objective",
    "general_mean_fidelities",
    "optimize_angles_numeric",
    "optimize_general_isometry",
    "symmetrized_fidelity",
    "QuadratureMethod",
    "QuadratureSpec",
    "adaptive_simpson",
    "quad_belt_moments",
    "quad_mean_fidelity",
    "OutputRecord",
    "ProfileRecord",
    "encode_csv",
    "encode_json",
    "read_csv",
    "read_json",
    "record_from_result",
    "records_digest",
    "write_xlsx",
    "Branch",
    "OptimalCloneResult",
    "branch_condition_probe",
    "interior_candidates",
    "optimal_fidelity_curve",
    "optimal_fidelity_surface",
    "solve_optimal",
    "DensityMatrix",
    "DomainError",
    "MultiQubitState",
    "PureQubit",
    "bloch_vector",
    "check_density_matrix",
    "make_ket",
    "make_state",
    "partial_trace",
    "product_state",
    "state_fidelity",
    "CheckResult",
    "format_report",
    "run_suite",
]
