"""Thermal-vacuum preparation on the doubled register.

The whole construction hangs on one knob, the thermal mixing angle
``theta = arctan(exp(-beta*omega/2))``.  A Bogoliubov rotation built
from that angle entangles each physical wire ``i`` with its partner
wire ``i + n``; tracing out the partners leaves every physical mode in
a Gibbs state at inverse temperature ``beta``.

The rotation generator is carried in two forms: a symbolic fermionic
ladder expression and a two-letter Pauli sum per wire pair.  For a
single mode pair the Jordan-Wigner image of the fermionic form equals
the Pauli form exactly; with several pairs the ladder image picks up Z
strings on the wires between a pair, while the Pauli form stays
strictly pairwise and is the one the preparation and the circuit
decomposition realize.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from tfdsim.core import (
    Circuit,
    DenseOperator,
    Gate,
    StateVector,
    partial_trace,
    trace_distance,
    unitary_from_generator,
)
from tfdsim.paulis import (
    FermiSum,
    PauliSum,
    PauliWord,
    annihilate,
    collect_terms,
    create,
    pauli_sum_to_matrix,
)

_MAX_PREPARED_MODES = 4


def thermal_angle(beta: float, omega: float) -> float:
    """Mixing angle arctan(exp(-beta*omega/2)).

    Decreases monotonically from pi/4 at beta=0 toward 0 in the
    zero-temperature limit; ``beta=math.inf`` is accepted and returns 0.
    """
    if not beta >= 0.0:
        raise ValueError(f"beta must be non-negative, got {beta!r}")
    if not 0.0 < omega < math.inf:
        raise ValueError(f"omega must be positive and finite, got {omega!r}")
    return math.atan(math.exp(-0.5 * beta * omega))


def fermi_dirac_occupation(beta: float, omega: float) -> float:
    """Excited-level population exp(-beta*omega)/(1 + exp(-beta*omega))."""
    if not beta >= 0.0:
        raise ValueError(f"beta must be non-negative, got {beta!r}")
    if not 0.0 < omega < math.inf:
        raise ValueError(f"omega must be positive and finite, got {omega!r}")
    boltzmann = math.exp(-beta * omega)
    return boltzmann / (1.0 + boltzmann)


@dataclass(frozen=True)
class ThermalParams:
    """Inverse temperature, mode energy and the derived mixing angle.

    ``theta`` is recomputed at construction and cannot be supplied.
    """

    beta: float
    omega: float
    theta: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "omega", float(self.omega))
        object.__setattr__(self, "theta", thermal_angle(self.beta, self.omega))


class GeneratorPair(NamedTuple):
    """Bogoliubov generator in ladder-operator and Pauli form."""

    fermionic: FermiSum
    spin: PauliSum


def _check_mode_count(n_modes: int, maximum: int | None = None) -> int:
    n = int(n_modes)
    if n < 1:
        raise ValueError("n_modes must be at least 1")
    if maximum is not None and n > maximum:
        raise ValueError(f"n_modes must be at most {maximum}, got {n}")
    return n


def build_generator(p: ThermalParams, n_modes: int = 1) -> GeneratorPair:
    """Both routes to the rotation generator on ``2 * n_modes`` wires.

    The fermionic route is ``theta * sum_i (a_i^dag a_{i+n}^dag -
    a_i a_{i+n})``; the spin route places ``-i(theta/2)(XX - YY)`` on
    each pair ``(i, i+n)`` directly.
    """
    n = _check_mode_count(n_modes)
    total = 2 * n
    fermionic = FermiSum(total)
    spin_terms: list[tuple[complex, PauliWord]] = []
    for i in range(n):
        pair = create(i, total) * create(i + n, total) - annihilate(
            i, total
        ) * annihilate(i + n, total)
        fermionic = fermionic + p.theta * pair
        coeff = -0.5j * p.theta
        spin_terms.append((coeff, PauliWord(((i, "X"), (i + n, "X")))))
        spin_terms.append((-coeff, PauliWord(((i, "Y"), (i + n, "Y")))))
    spin = collect_terms(PauliSum(total, tuple(spin_terms)))
    return GeneratorPair(fermionic=fermionic, spin=spin)


def prepare_thermal_vacuum(p: ThermalParams, n_modes: int = 1) -> StateVector:
    """Thermal vacuum ``exp(G_spin)|0...0>`` on ``2 * n_modes`` wires.

    For one mode this is ``cos(theta)|00> - i sin(theta)|11>``; more
    modes give the tensor product of that state over the wire pairs.
    """
    n = _check_mode_count(n_modes, _MAX_PREPARED_MODES)
    _, spin = build_generator(p, n)
    unitary = unitary_from_generator(pauli_sum_to_matrix(spin))
    start = StateVector.computational_basis(2 * n, 0)
    return StateVector(2 * n, unitary.entries @ start.amplitudes)


def bogoliubov_circuit(p: ThermalParams, n_modes: int = 1) -> Circuit:
    """Gate realization of the thermal rotation, ten gates per wire pair.

    Conjugating the pair generator by CNOT(i, i+n) turns it into an X
    rotation on wire ``i`` controlled on the partner being |0>; the
    controlled rotation is then expanded over plain CNOTs and
    single-wire rotations.  The matrix equals exp(G_spin) exactly (the
    global phase is 1), so the circuit needs no angle fitting.
    """
    n = _check_mode_count(n_modes, _MAX_PREPARED_MODES)
    gates: list[Gate] = []
    for i in range(n):
        phys, part = i, i + n
        gates.extend(
            [
                Gate.cnot(phys, part),
                Gate.x(part),
                Gate.rz(math.pi / 2, phys),
                Gate.ry(p.theta, phys),
                Gate.cnot(part, phys),
                Gate.ry(-p.theta, phys),
                Gate.cnot(part, phys),
                Gate.rz(-math.pi / 2, phys),
                Gate.x(part),
                Gate.cnot(phys, part),
            ]
        )
    return Circuit(2 * n, tuple(gates))


def gibbs_density(p: ThermalParams) -> DenseOperator:
    """Single-mode Gibbs state diag(1, exp(-beta*omega)) / partition sum."""
    boltzmann = math.exp(-p.beta * p.omega)
    diag = np.array([1.0, boltzmann], dtype=complex)
    return DenseOperator(np.diag(diag / (1.0 + boltzmann)))


def reduced_gibbs_distance(
    state: StateVector, p: ThermalParams, mode: int = 0
) -> float:
    """Trace distance of one physical mode's reduced state from Gibbs.

    The state must live on an even number of wires (physical wires
    first, partner wires after); everything except the mode's physical
    wire is traced out.
    """
    if state.num_wires % 2:
        raise ValueError("state must have an even number of wires")
    n = state.num_wires // 2
    if not 0 <= mode < n:
        raise ValueError(f"mode {mode} out of range for {n} modes")
    reduced = partial_trace(state, [mode])
    return trace_distance(reduced, gibbs_density(p))
