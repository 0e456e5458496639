"""Range-based sensor localization under mixed LOS/NLOS conditions.

Thin re-export of the native module: network deployment, range-measurement
simulation, per-node cone-program assembly, the interior-point solver, the
position-error lower bound, and the Monte Carlo trial runner.
"""

from _mlnsocp import (  # noqa: F401
    AnchorPlacement,
    ConicProgram,
    ConicSolution,
    CrlbGrid,
    Edge,
    LinkKind,
    LinkParams,
    Measurement,
    MeasurementSet,
    Method,
    NetworkConfig,
    NodeResult,
    SolveStatus,
    SolverSettings,
    Topology,
    TrialResult,
    VarLayout,
    build_node_problem,
    crlb_at,
    crlb_surface,
    deploy_uniform,
    extract_position,
    fim,
    measure_all,
    neighbor_anchors,
    oracle_localize,
    run_trial,
    solve,
)

__all__ = [
    "AnchorPlacement",
    "ConicProgram",
    "ConicSolution",
    "CrlbGrid",
    "Edge",
    "LinkKind",
    "LinkParams",
    "Measurement",
    "MeasurementSet",
    "Method",
    "NetworkConfig",
    "NodeResult",
    "SolveStatus",
    "SolverSettings",
    "Topology",
    "TrialResult",
    "VarLayout",
    "build_node_problem",
    "crlb_at",
    "crlb_surface",
    "deploy_uniform",
    "extract_position",
    "fim",
    "measure_all",
    "neighbor_anchors",
    "oracle_localize",
    "run_trial",
    "solve",
]
