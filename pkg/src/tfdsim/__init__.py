"""Thermofield-double statevector simulation and thermal spin dynamics."""
from tfdsim.core import (
    Circuit,
    DenseOperator,
    Gate,
    ShotCounts,
    StateVector,
    apply_circuit,
    apply_gate,
    circuit_to_matrix,
    expectation,
    global_phase_distance,
    kron,
    partial_trace,
    sample_shots,
    trace_distance,
    unitary_from_generator,
)
from tfdsim.paulis import (
    CarReport,
    FermiSum,
    FermiTerm,
    PauliSum,
    PauliWord,
    annihilate,
    car_check,
    collect_terms,
    create,
    hermiticity_classify,
    jordan_wigner,
    pauli_multiply,
    pauli_sum_to_matrix,
)
from tfdsim.thermal import (
    GeneratorPair,
    ThermalParams,
    bogoliubov_circuit,
    build_generator,
    fermi_dirac_occupation,
    prepare_thermal_vacuum,
    reduced_gibbs_distance,
    thermal_angle,
)
from tfdsim.dynamics import (
    InitialStateKind,
    TfdHamiltonian,
    TimeSeries,
    build_tfd_hamiltonian,
    evolve_to,
    magnetization_series,
    oscillation_amplitude,
    prepare_initial_state,
)

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "DenseOperator",
    "Gate",
    "ShotCounts",
    "StateVector",
    "apply_circuit",
    "apply_gate",
    "circuit_to_matrix",
    "expectation",
    "global_phase_distance",
    "kron",
    "partial_trace",
    "sample_shots",
    "trace_distance",
    "unitary_from_generator",
    "CarReport",
    "FermiSum",
    "FermiTerm",
    "PauliSum",
    "PauliWord",
    "annihilate",
    "car_check",
    "collect_terms",
    "create",
    "hermiticity_classify",
    "jordan_wigner",
    "pauli_multiply",
    "pauli_sum_to_matrix",
    "GeneratorPair",
    "ThermalParams",
    "bogoliubov_circuit",
    "build_generator",
    "fermi_dirac_occupation",
    "prepare_thermal_vacuum",
    "reduced_gibbs_distance",
    "thermal_angle",
    "InitialStateKind",
    "TfdHamiltonian",
    "TimeSeries",
    "build_tfd_hamiltonian",
    "evolve_to",
    "magnetization_series",
    "oscillation_amplitude",
    "prepare_initial_state",
    "__version__",
]
