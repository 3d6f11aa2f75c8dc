"""Noise-aware simulator and benchmark harness for the PBR
antidistinguishability test on small density-matrix registers.

Qubit 0 is the most significant bit of every basis-state index, so the
two-qubit state |q0 q1> = |10> sits at index 2.
"""

from .bounds import (
    ToleranceReport,
    epsilon_dec,
    epsilon_dep,
    epsilon_tol,
    noisy_overlap,
    quantum_trace_distance,
    tolerance_report,
)
from .circuits import (
    Circuit,
    Gate,
    circuit_duration,
    circuit_from_lines,
    circuit_to_lines,
    decompose_swap,
    gate_counts,
    gate_unitary,
)
from .config import (
    DEFAULT_CONFIDENCE,
    DEFAULT_SHOTS,
    SIMULATION_QUBIT_CAP,
    mcphase_cz_equivalents,
)
from .errors import (
    CalibrationError,
    CapError,
    ChannelError,
    FormatError,
    KindError,
    NoSolutionError,
    NormalizationError,
    PathError,
    ProtocolError,
    RangeError,
    UnitarityError,
    ValidationError,
)
from .harness import (
    ExperimentConfig,
    ExperimentReport,
    InputResult,
    analytic_report,
    evaluate_pass,
    render_csv,
    render_json,
    render_sweep_json,
    run_experiment,
    sample_counts,
    sweep_distance,
    wilson_interval,
)
from .noise import (
    CalibrationSnapshot,
    CouplerCalibration,
    DEPOLARIZING,
    QubitCalibration,
    THERMODYNAMICAL,
    amplitude_damping,
    apply_readout,
    attach_noise,
    dephasing,
    depolarizing_channel,
    load_calibration,
    mean_p_from_time,
    p_from_time,
    readout_matrix,
    save_calibration,
    uniform_calibration,
)
from .protocol import (
    ForbiddenMap,
    PBRParams,
    build_entangling_measurement,
    build_preparation,
    build_test_circuit,
    discover_forbidden_map,
    solve_angles,
    theta_min,
)
from .routing import (
    CouplingMap,
    RoutedCircuit,
    heavy_hex_map,
    line_map,
    load_coupling_map,
    route_linear,
    routed_gate_overhead,
    save_coupling_map,
    span_distance,
    shortest_path,
)
from .simulate import marginal_distribution, outcome_distribution, simulate_circuit
from .states import (
    DensityMatrix,
    KrausChannel,
    apply_channel,
    apply_unitary,
    ground_state,
    kron,
    measurement_probs,
    pure_density,
)

__all__ = [
    "CalibrationError",
    "CalibrationSnapshot",
    "CapError",
    "ChannelError",
    "Circuit",
    "CouplerCalibration",
    "CouplingMap",
    "DEFAULT_CONFIDENCE",
    "DEFAULT_SHOTS",
    "DEPOLARIZING",
    "DensityMatrix",
    "ExperimentConfig",
    "ExperimentReport",
    "ForbiddenMap",
    "FormatError",
    "Gate",
    "InputResult",
    "KindError",
    "KrausChannel",
    "NoSolutionError",
    "NormalizationError",
    "PBRParams",
    "PathError",
    "ProtocolError",
    "QubitCalibration",
    "RangeError",
    "RoutedCircuit",
    "SIMULATION_QUBIT_CAP",
    "THERMODYNAMICAL",
    "ToleranceReport",
    "UnitarityError",
    "ValidationError",
    "amplitude_damping",
    "apply_channel",
    "apply_readout",
    "apply_unitary",
    "attach_noise",
    "build_entangling_measurement",
    "build_preparation",
    "build_test_circuit",
    "circuit_duration",
    "circuit_from_lines",
    "circuit_to_lines",
    "decompose_swap",
    "dephasing",
    "depolarizing_channel",
    "discover_forbidden_map",
    "epsilon_dec",
    "epsilon_dep",
    "epsilon_tol",
    "analytic_report",
    "evaluate_pass",
    "gate_counts",
    "gate_unitary",
    "ground_state",
    "heavy_hex_map",
    "kron",
    "line_map",
    "load_calibration",
    "load_coupling_map",
    "marginal_distribution",
    "mcphase_cz_equivalents",
    "measurement_probs",
    "noisy_overlap",
    "outcome_distribution",
    "mean_p_from_time",
    "p_from_time",
    "pure_density",
    "quantum_trace_distance",
    "readout_matrix",
    "render_csv",
    "render_json",
    "render_sweep_json",
    "route_linear",
    "routed_gate_overhead",
    "run_experiment",
    "sample_counts",
    "save_calibration",
    "save_coupling_map",
    "shortest_path",
    "simulate_circuit",
    "solve_angles",
    "span_distance",
    "sweep_distance",
    "theta_min",
    "tolerance_report",
    "uniform_calibration",
    "wilson_interval",
]
