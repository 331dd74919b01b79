"""Real-time evolution under the doubled Hamiltonian and magnetization series.

The doubled Hamiltonian weighs physical and partner occupations with
opposite signs, ``H_T = -omega * sum_i (n_i - n~_i)``; in Pauli form
that is ``(omega/2) * sum_i (Z_i - Z_{i+n})``.  Its zero eigenspace
contains both ``|0...0>`` and the doubly-excited pair states, which is
why thermal vacua are stationary while transverse components precess at
frequency omega with their amplitude shrunk by cos(theta).

Evolution is exact: the Hamiltonian is diagonalized once and cached, so
tolerances in tests reflect the algebra rather than a stepper.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from tfdsim.core import (
    DenseOperator,
    Gate,
    StateVector,
    apply_circuit,
    apply_gate,
    expectation,
    operator_on_wires,
)
from tfdsim.paulis import (
    FermiSum,
    PauliSum,
    annihilate,
    create,
    jordan_wigner,
    pauli_sum_to_matrix,
)
from tfdsim.thermal import ThermalParams, bogoliubov_circuit, prepare_thermal_vacuum


class InitialStateKind(enum.Enum):
    """Initial states whose precession the simulator reports on."""

    THERMAL_VACUUM = "thermal-vacuum"
    EXCITED_THERMAL = "excited-thermal"
    PLUS_THERMAL = "plus-thermal"


@dataclass(frozen=True, eq=False)
class TfdHamiltonian:
    """Doubled Hamiltonian with its Pauli form and cached eigensystem."""

    pauli: PauliSum
    omega: float

    @property
    def num_wires(self) -> int:
        return self.pauli.num_wires

    @property
    def n_modes(self) -> int:
        return self.pauli.num_wires // 2

    @cached_property
    def matrix(self) -> DenseOperator:
        return pauli_sum_to_matrix(self.pauli)

    @cached_property
    def _eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        evals, evecs = np.linalg.eigh(self.matrix.entries)
        evals.setflags(write=False)
        evecs.setflags(write=False)
        return evals, evecs


def build_tfd_hamiltonian(omega: float, n_modes: int = 1) -> TfdHamiltonian:
    """Jordan-Wigner image of ``-omega * sum_i (n_i - n~_i)``.

    The sign is fixed so that a transverse spin precesses with
    ``<My(t)> = +cos(theta) sin(omega t)`` under ``exp(-i H t)``.
    """
    if not 0.0 < float(omega) < np.inf:
        raise ValueError(f"omega must be positive and finite, got {omega!r}")
    n = int(n_modes)
    if n < 1:
        raise ValueError("n_modes must be at least 1")
    total = 2 * n
    fermi = FermiSum(total)
    for i in range(n):
        number = create(i, total) * annihilate(i, total)
        partner = create(i + n, total) * annihilate(i + n, total)
        fermi = fermi + (-float(omega)) * (number - partner)
    return TfdHamiltonian(pauli=jordan_wigner(fermi), omega=float(omega))


def prepare_initial_state(
    kind: InitialStateKind, p: ThermalParams, n_modes: int = 1
) -> StateVector:
    """One of the three canonical pre-rotation states, thermally rotated.

    ThermalVacuum rotates ``|0...0>``; ExcitedThermal rotates the fully
    excited register; PlusThermal puts every physical wire into ``|+>``
    first and rotates afterwards.
    """
    kind = InitialStateKind(kind)
    if kind is InitialStateKind.THERMAL_VACUUM:
        return prepare_thermal_vacuum(p, n_modes)
    n = int(n_modes)
    state = StateVector.computational_basis(2 * n, 0)
    if kind is InitialStateKind.EXCITED_THERMAL:
        for wire in range(2 * n):
            state = apply_gate(state, Gate.x(wire))
    else:
        for wire in range(n):
            state = apply_gate(state, Gate.h(wire))
    return apply_circuit(state, bogoliubov_circuit(p, n))


def evolve_to(state: StateVector, h: TfdHamiltonian, t: float) -> StateVector:
    """State at time ``t`` under ``exp(-i H t)`` from the cached spectrum."""
    if 2**state.num_wires != h.matrix.dim:
        raise ValueError("state and Hamiltonian dimensions differ")
    evals, evecs = h._eigensystem
    coeffs = evecs.conj().T @ state.amplitudes
    amps = evecs @ (np.exp(-1.0j * evals * float(t)) * coeffs)
    return StateVector(state.num_wires, amps)


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Sampled magnetization components on a shared time grid.

    Carries the precession frequency so amplitude extraction can tell
    whether the grid covers a full period.
    """

    times: np.ndarray
    mx: np.ndarray
    my: np.ndarray
    mz: np.ndarray
    omega: float

    def __post_init__(self) -> None:
        arrays = {}
        for name in ("times", "mx", "my", "mz"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            arrays[name] = arr
        if not arrays["times"].size:
            raise ValueError("time grid must not be empty")
        for name, arr in arrays.items():
            if arr.shape != arrays["times"].shape:
                raise ValueError(f"{name} length differs from the time grid")
            object.__setattr__(self, name, arr)

    def __len__(self) -> int:
        return len(self.times)


def _magnetization_observables(n_modes: int) -> dict[str, DenseOperator]:
    """Dense Sum-of-X/Y/Z observables over the physical wires."""
    total = 2 * n_modes
    out = {}
    for letter in ("X", "Y", "Z"):
        acc = sum(
            operator_on_wires([(wire, letter)], total).entries
            for wire in range(n_modes)
        )
        out[letter] = DenseOperator(acc)
    return out


def magnetization_series(
    kind: InitialStateKind,
    p: ThermalParams,
    omega: float,
    times: np.ndarray,
    n_modes: int = 1,
) -> TimeSeries:
    """Evolve an initial state and record ``<Mx>, <My>, <Mz>`` at each time.

    ``omega`` sets the evolution frequency; preparation uses ``p``
    (whose own omega fixes the thermal angle).  The two coincide in
    every report this package produces, but the library keeps them
    separate arguments.
    """
    grid = np.array(times, dtype=float)
    if grid.ndim != 1 or not grid.size:
        raise ValueError("times must be a nonempty 1-D grid")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise ValueError("times must be strictly ascending")
    h = build_tfd_hamiltonian(omega, n_modes)
    state0 = prepare_initial_state(kind, p, n_modes)
    observables = _magnetization_observables(n_modes)
    mx = np.empty_like(grid)
    my = np.empty_like(grid)
    mz = np.empty_like(grid)
    for k, t in enumerate(grid):
        state = evolve_to(state0, h, t)
        mx[k] = expectation(state, observables["X"])
        my[k] = expectation(state, observables["Y"])
        mz[k] = expectation(state, observables["Z"])
    return TimeSeries(times=grid, mx=mx, my=my, mz=mz, omega=float(omega))


def oscillation_amplitude(series: TimeSeries) -> float:
    """Peak transverse magnetization ``max sqrt(mx^2 + my^2)``.

    Requires the grid to span at least one full period so the maximum
    is meaningful for data that is not exactly sinusoidal.
    """
    span = float(series.times[-1] - series.times[0])
    if span * series.omega < 2.0 * np.pi - 1e-12:
        raise ValueError(
            "time grid spans less than one full period "
            f"(span*omega = {span * series.omega:.6g} < 2*pi)"
        )
    return float(np.max(np.hypot(series.mx, series.my)))
