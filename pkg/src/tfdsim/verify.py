"""Self-verification suite behind the ``verify`` CLI command.

Runs the structural checks that do not depend on any particular
experiment: anticommutation relations (including a negative control
with the strings removed), agreement of the two generator routes,
circuit-versus-exponential distance, reduced-state Gibbs distance and
occupation statistics.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tfdsim.core import (
    circuit_to_matrix,
    global_phase_distance,
    unitary_from_generator,
)
from tfdsim.dynamics import build_tfd_hamiltonian, evolve_to
from tfdsim.paulis import car_check, jordan_wigner, pauli_sum_to_matrix
from tfdsim.thermal import (
    ThermalParams,
    bogoliubov_circuit,
    build_generator,
    fermi_dirac_occupation,
    prepare_thermal_vacuum,
    reduced_gibbs_distance,
)

CAR_TOL = 1e-12
DUAL_ROUTE_TOL = 1e-12
CIRCUIT_TOL = 1e-9
GIBBS_TOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _draw_params(rng: np.random.Generator) -> ThermalParams:
    beta = float(rng.uniform(0.05, 8.0))
    omega = float(rng.uniform(0.1, 3.0))
    return ThermalParams(beta=beta, omega=omega)


def _check_car(n_modes: int, string_mode: str) -> CheckResult:
    report = car_check(n_modes, string_mode=string_mode)
    worst = max(report.max_cross_residual, report.max_double_residual)
    return CheckResult(
        name=f"anticommutation relations, {n_modes} mode(s)",
        passed=report.passed,
        detail=f"worst residual {worst:.2e} (tol {report.tolerance:.0e})",
    )


def _check_car_negative_control() -> CheckResult:
    report = car_check(1, string_mode="omit")
    worst = max(report.max_cross_residual, report.max_double_residual)
    return CheckResult(
        name="negative control: strings removed must break the relations",
        passed=not report.passed,
        detail=f"worst residual {worst:.2e} (expected order 1)",
    )


def _check_dual_route(rng: np.random.Generator, samples: int) -> CheckResult:
    worst = 0.0
    for _ in range(samples):
        p = _draw_params(rng)
        fermionic, spin = build_generator(p, n_modes=1)
        via_ladder = -1.0j * pauli_sum_to_matrix(jordan_wigner(fermionic)).entries
        direct = pauli_sum_to_matrix(spin).entries
        worst = max(worst, float(np.max(np.abs(direct - via_ladder))))
    return CheckResult(
        name=f"generator routes agree ({samples} random draws)",
        passed=worst < DUAL_ROUTE_TOL,
        detail=f"max deviation {worst:.2e} (tol {DUAL_ROUTE_TOL:.0e})",
    )


def _check_circuit(rng: np.random.Generator, samples: int) -> CheckResult:
    worst = 0.0
    counts = []
    for n_modes in range(1, 5):
        p = _draw_params(rng)
        counts.append(len(bogoliubov_circuit(p, n_modes)))
    per_pair = counts[0]
    linear = all(counts[k] == per_pair * (k + 1) for k in range(4))
    for _ in range(samples):
        p = _draw_params(rng)
        circuit = bogoliubov_circuit(p, n_modes=1)
        exact = unitary_from_generator(pauli_sum_to_matrix(build_generator(p).spin))
        worst = max(worst, global_phase_distance(circuit_to_matrix(circuit), exact))
    passed = worst < CIRCUIT_TOL and per_pair <= 12 and linear
    return CheckResult(
        name=f"circuit matches exact rotation ({samples} random draws)",
        passed=passed,
        detail=(
            f"max phase-free distance {worst:.2e} (tol {CIRCUIT_TOL:.0e}), "
            f"{per_pair} gates per pair, linear growth {linear}"
        ),
    )


def _check_gibbs() -> CheckResult:
    worst = 0.0
    for n_modes in (1, 2, 3, 4):
        for beta in (0.0, 0.3, 1.0, 4.0, 20.0):
            p = ThermalParams(beta=beta, omega=0.5)
            state = prepare_thermal_vacuum(p, n_modes)
            for mode in range(n_modes):
                worst = max(worst, reduced_gibbs_distance(state, p, mode))
    return CheckResult(
        name="reduced states match the Gibbs ensemble (n_modes 1..4)",
        passed=worst < GIBBS_TOL,
        detail=f"max trace distance {worst:.2e} (tol {GIBBS_TOL:.0e})",
    )


def _check_occupation(rng: np.random.Generator, samples: int) -> CheckResult:
    worst = 0.0
    for _ in range(samples):
        p = _draw_params(rng)
        state = prepare_thermal_vacuum(p, 1)
        population = float(np.abs(state.amplitudes[3]) ** 2)
        worst = max(worst, abs(population - fermi_dirac_occupation(p.beta, p.omega)))
    return CheckResult(
        name="excited-pair population follows Fermi-Dirac",
        passed=worst < GIBBS_TOL,
        detail=f"max deviation {worst:.2e} (tol {GIBBS_TOL:.0e})",
    )


def _check_stationary_vacuum() -> CheckResult:
    worst = 0.0
    h = build_tfd_hamiltonian(0.5, 1)
    for beta in (0.0, 1.0, 10.0):
        p = ThermalParams(beta=beta, omega=0.5)
        state = prepare_thermal_vacuum(p, 1)
        for t in (0.7, 3.3, 12.0):
            evolved = evolve_to(state, h, t)
            worst = max(worst, abs(1.0 - abs(state.overlap(evolved))))
    return CheckResult(
        name="thermal vacuum is stationary under evolution",
        passed=worst < 1e-12,
        detail=f"max overlap defect {worst:.2e} (tol 1e-12)",
    )


def run_verification(
    n_modes: int = 3,
    samples: int = 20,
    seed: int = 20260815,
    string_mode: str = "standard",
) -> list[CheckResult]:
    """Run every structural check; ``string_mode`` is the CAR debug hook."""
    if not 1 <= n_modes <= 3:
        raise ValueError("n_modes must be between 1 and 3")
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = np.random.default_rng(seed)
    results = [_check_car(n, string_mode) for n in range(1, n_modes + 1)]
    results.append(_check_car_negative_control())
    results.append(_check_dual_route(rng, samples))
    results.append(_check_circuit(rng, samples))
    results.append(_check_gibbs())
    results.append(_check_occupation(rng, samples))
    results.append(_check_stationary_vacuum())
    return results


def format_report(results: list[CheckResult]) -> str:
    """Fixed-width pass/fail table."""
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  {r.name:<{width}}  {r.detail}")
    failed = sum(not r.passed for r in results)
    lines.append(
        f"{len(results) - failed}/{len(results)} checks passed"
        + (f", {failed} FAILED" if failed else "")
    )
    return "\n".join(lines)
