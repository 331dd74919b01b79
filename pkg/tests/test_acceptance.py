"""End-to-end acceptance checks.

Each test covers one advertised guarantee and prints a single
``ACCEPTANCE <n> <name>: PASS/FAIL (<measured>)`` line with the measured
numbers next to the tolerance they are held to.  The conftest terminal
hook repeats the collected lines after the run summary.
"""
import math

import numpy as np

from tfdsim.cli import main, time_grid
from tfdsim.core import (
    StateVector,
    circuit_to_matrix,
    global_phase_distance,
    sample_shots,
    unitary_from_generator,
)
from tfdsim.dynamics import InitialStateKind, magnetization_series
from tfdsim.oracle import expectations_plus_state
from tfdsim.paulis import car_check, jordan_wigner, pauli_sum_to_matrix
from tfdsim.thermal import (
    ThermalParams,
    bogoliubov_circuit,
    build_generator,
    prepare_thermal_vacuum,
    reduced_gibbs_distance,
)

OMEGA = 0.5
ALLOWED_GATE_KINDS = {"H", "X", "RX", "RY", "RZ", "CNOT"}

#: one line per criterion, echoed after the run by the conftest hook
RESULT_LINES: list[str] = []


def _criterion(number: int, name: str, passed: bool, detail: str) -> bool:
    status = "PASS" if passed else "FAIL"
    line = f"ACCEPTANCE {number} {name}: {status} ({detail})"
    print(line)
    RESULT_LINES.append(line)
    return passed


def _draw_params(rng: np.random.Generator) -> ThermalParams:
    return ThermalParams(
        beta=float(rng.uniform(0.05, 8.0)), omega=float(rng.uniform(0.1, 3.0))
    )


class TestAcceptance:
    def test_1_thermal_magnetization_curve(self, tmp_path):
        betas = np.linspace(0.1, 5.0, 50)
        worst_z, worst_t = 0.0, 0.0
        for beta in betas:
            p = ThermalParams(beta=float(beta), omega=OMEGA)
            series = magnetization_series(
                InitialStateKind.THERMAL_VACUUM, p, OMEGA, [0.0]
            )
            worst_z = max(worst_z, abs(series.mz[0] - math.tanh(beta * OMEGA / 2)))
            worst_t = max(worst_t, abs(series.mx[0]), abs(series.my[0]))
        cli_code = main(["magnetization", "--out", str(tmp_path / "mag.csv")])
        passed = worst_z <= 1e-10 and worst_t <= 1e-12 and cli_code == 0
        assert _criterion(
            1,
            "thermal-magnetization",
            passed,
            f"max |mz - tanh(beta*omega/2)| {worst_z:.2e} <= 1e-10, "
            f"max transverse {worst_t:.2e} <= 1e-12, cli exit {cli_code}",
        )

    def test_2_thermal_vacuum_preparation(self):
        worst_infidelity, worst_distance = 0.0, 0.0
        for beta in np.concatenate(([0.0], np.linspace(0.1, 5.0, 50), [40.0])):
            p = ThermalParams(beta=float(beta), omega=OMEGA)
            state = prepare_thermal_vacuum(p, 1)
            target = StateVector(
                2,
                np.array(
                    [math.cos(p.theta), 0.0, 0.0, -1.0j * math.sin(p.theta)],
                    dtype=complex,
                ),
            )
            worst_infidelity = max(worst_infidelity, 1.0 - state.fidelity(target))
            worst_distance = max(worst_distance, reduced_gibbs_distance(state, p, 0))
        passed = worst_infidelity <= 1e-12 and worst_distance <= 1e-12
        assert _criterion(
            2,
            "state-preparation",
            passed,
            f"max infidelity {worst_infidelity:.2e} <= 1e-12, "
            f"max reduced trace distance {worst_distance:.2e} <= 1e-12",
        )

    def test_3_gate_decomposition(self):
        rng = np.random.default_rng(20260815)
        worst = 0.0
        kinds_ok = True
        for _ in range(20):
            p = _draw_params(rng)
            circuit = bogoliubov_circuit(p, 1)
            kinds_ok = kinds_ok and all(
                g.kind in ALLOWED_GATE_KINDS for g in circuit.gates
            )
            exact = unitary_from_generator(
                pauli_sum_to_matrix(build_generator(p).spin)
            )
            worst = max(
                worst, global_phase_distance(circuit_to_matrix(circuit), exact)
            )
        per_pair = len(bogoliubov_circuit(ThermalParams(1.0, OMEGA), 1))
        linear = all(
            len(bogoliubov_circuit(ThermalParams(1.0, OMEGA), n)) == n * per_pair
            for n in range(1, 5)
        )
        passed = worst < 1e-9 and kinds_ok and per_pair <= 12 and linear
        assert _criterion(
            3,
            "gate-decomposition",
            passed,
            f"max phase-free distance {worst:.2e} < 1e-9, gate set ok {kinds_ok}, "
            f"{per_pair} gates per pair <= 12, linear growth {linear}",
        )

    def test_4_real_time_dynamics(self):
        p = ThermalParams(beta=1.0, omega=OMEGA)
        times = time_grid(0.1, 10.0)
        series = magnetization_series(InitialStateKind.PLUS_THERMAL, p, OMEGA, times)
        worst = 0.0
        for k, t in enumerate(times):
            ref = expectations_plus_state(1.0, OMEGA, float(t))
            worst = max(
                worst,
                abs(series.mx[k] - ref.mx),
                abs(series.my[k] - ref.my),
                abs(series.mz[k] - ref.mz),
            )
        flat = float(np.ptp(series.mz))
        passed = worst <= 1e-9 and flat <= 1e-12
        assert _criterion(
            4,
            "real-time-dynamics",
            passed,
            f"max |sim - closed form| {worst:.2e} <= 1e-9 over 100 points, "
            f"mz drift {flat:.2e} <= 1e-12",
        )

    def test_5_amplitude_temperature_sweep(self):
        times = np.arange(0.0, 4.2 * math.pi, 0.05)
        amplitudes = []
        worst = 0.0
        for beta in (0.01, 1.0, 10.0):
            p = ThermalParams(beta=beta, omega=OMEGA)
            series = magnetization_series(
                InitialStateKind.PLUS_THERMAL, p, OMEGA, times
            )
            amplitude = float(np.max(np.hypot(series.mx, series.my)))
            quoted = math.exp(beta * OMEGA / 2) / math.sqrt(
                math.exp(beta * OMEGA) + 1.0
            )
            worst = max(worst, abs(amplitude - quoted))
            amplitudes.append(amplitude)
        monotone = amplitudes[0] < amplitudes[1] < amplitudes[2]
        # limit checks: hot end -> 1/sqrt(2); cold end -> 1, where the exact
        # value at beta*omega = 5 still sits 3.4e-3 below the limit, so that
        # endpoint is held to 5e-3 rather than the hot end's 1e-3.
        gap_hot = abs(amplitudes[0] - 1 / math.sqrt(2))
        gap_cold = abs(amplitudes[2] - 1.0)
        ends_ok = gap_hot <= 1e-3 and gap_cold <= 5e-3
        passed = worst <= 1e-9 and monotone and ends_ok
        assert _criterion(
            5,
            "amplitude-sweep",
            passed,
            f"max |amplitude - formula| {worst:.2e} <= 1e-9, monotone {monotone}, "
            f"limit gaps {gap_hot:.1e} (<= 1e-3), {gap_cold:.1e} (<= 5e-3)",
        )

    def test_6_anticommutation_relations(self):
        worst = 0.0
        all_pass = True
        for n_modes in (1, 2, 3):
            report = car_check(n_modes)
            worst = max(worst, report.max_cross_residual, report.max_double_residual)
            all_pass = all_pass and report.passed
        control = car_check(1, string_mode="omit")
        passed = all_pass and worst < 1e-12 and not control.passed
        assert _criterion(
            6,
            "anticommutation",
            passed,
            f"max residual {worst:.2e} < 1e-12 for 1..3 modes, "
            f"string-free control fails: {not control.passed}",
        )

    def test_7_generator_route_agreement(self):
        rng = np.random.default_rng(20260815)
        worst = 0.0
        for _ in range(20):
            p = _draw_params(rng)
            fermionic, spin = build_generator(p, n_modes=1)
            via_ladder = -1.0j * pauli_sum_to_matrix(jordan_wigner(fermionic)).entries
            direct = pauli_sum_to_matrix(spin).entries
            worst = max(worst, float(np.max(np.abs(direct - via_ladder))))
        passed = worst <= 1e-12
        assert _criterion(
            7,
            "generator-routes",
            passed,
            f"max matrix deviation {worst:.2e} <= 1e-12 over 20 draws",
        )

    def test_8_sampling_statistics(self, tmp_path):
        p = ThermalParams(beta=1.0, omega=OMEGA)
        state = prepare_thermal_vacuum(p, 1)
        shots = 10_000
        target = math.tanh(0.25)
        sigma = math.sqrt((1.0 - target**2) / shots)

        counts = sample_shots(state, 0, "Z", shots, seed=7)
        z_score = abs(counts.mean - target) / sigma

        # determinism: the same seed must reproduce the same CSV bytes
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["magnetization", "--beta-steps", "5", "--shots", "1000", "--seed", "7"]
        identical = (
            main(args + ["--out", str(a)]) == 0
            and main(args + ["--out", str(b)]) == 0
            and a.read_bytes() == b.read_bytes()
        )

        # coverage: a fixed hundred-seed block keeps the check deterministic;
        # the binomial expectation for a 2-sigma interval is ~95 of 100
        within = sum(
            abs(sample_shots(state, 0, "Z", shots, seed=s).mean - target) <= 2 * sigma
            for s in range(100, 200)
        )
        passed = z_score <= 5.0 and identical and within >= 95
        assert _criterion(
            8,
            "sampling-statistics",
            passed,
            f"seed-7 z-score {z_score:.2f} <= 5, identical rerun bytes {identical}, "
            f"{within}/100 seeds within 2 sigma (need >= 95)",
        )
