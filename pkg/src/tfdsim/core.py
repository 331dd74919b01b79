"""Dense statevector primitives: states, gates, circuits and operator helpers.

Conventions used throughout the package:

* Wire ``k`` is the k-th tensor factor and wire 0 is the *most significant*
  bit of the basis index.  For two wires the amplitude order is
  ``|00>, |01>, |10>, |11>``, so ``kron(A, B)`` places ``A`` on the
  lower-numbered wire.
* States are immutable and normalized; gate application returns a new
  :class:`StateVector`.
* Gate application is strided (reshape / axis moves), never a full
  ``2^n x 2^n`` matrix product.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

#: tolerance on the norm of a state vector
NORM_ATOL = 1e-12
#: tolerance for Hermiticity / anti-Hermiticity checks on dense operators
HERMITICITY_ATOL = 1e-10

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) * _INV_SQRT2

# Maps a measurement basis to the single-wire rotation that brings it to Z.
# For Y the rotation is H @ Sdg, which satisfies U Y U^dag = Z.
_BASIS_ROTATIONS: dict[str, np.ndarray | None] = {
    "Z": None,
    "X": HADAMARD,
    "Y": HADAMARD @ np.diag([1.0, -1.0j]),
}


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state on ``num_wires`` qubit wires.

    Parameters
    ----------
    num_wires:
        Number of tensor factors; must be at least 1.
    amplitudes:
        Complex array of length ``2**num_wires`` with unit norm.
    """

    num_wires: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.num_wires < 1:
            raise ValueError("num_wires must be at least 1")
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.num_wires,):
            raise ValueError(
                f"expected {2**self.num_wires} amplitudes, got shape {amps.shape}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state norm {norm!r} is not 1 within {NORM_ATOL}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def computational_basis(cls, num_wires: int, index: int = 0) -> StateVector:
        """Basis state ``|index>`` with wire 0 as the most significant bit."""
        dim = 2**num_wires
        if not 0 <= index < dim:
            raise ValueError(f"basis index {index} out of range for {num_wires} wires")
        amps = np.zeros(dim, dtype=complex)
        amps[index] = 1.0
        return cls(num_wires, amps)

    def overlap(self, other: StateVector) -> complex:
        """Inner product ``<self|other>``."""
        if other.num_wires != self.num_wires:
            raise ValueError("wire count mismatch between states")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: StateVector) -> float:
        return abs(self.overlap(other)) ** 2


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """Square complex matrix acting on a power-of-two dimensional space."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        mat = np.array(self.entries, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"operator must be square, got shape {mat.shape}")
        dim = mat.shape[0]
        if dim < 2 or dim & (dim - 1):
            raise ValueError(f"operator dimension {dim} is not a power of two")
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def num_wires(self) -> int:
        return self.dim.bit_length() - 1

    @classmethod
    def identity(cls, dim: int) -> DenseOperator:
        return cls(np.eye(dim, dtype=complex))

    def adjoint(self) -> DenseOperator:
        return DenseOperator(self.entries.conj().T)

    def is_hermitian(self, atol: float = HERMITICITY_ATOL) -> bool:
        return bool(np.max(np.abs(self.entries - self.entries.conj().T)) < atol)

    def is_anti_hermitian(self, atol: float = HERMITICITY_ATOL) -> bool:
        return bool(np.max(np.abs(self.entries + self.entries.conj().T)) < atol)


def kron(a: DenseOperator, b: DenseOperator) -> DenseOperator:
    """Tensor product with ``a`` on the lower-numbered wires."""
    return DenseOperator(np.kron(a.entries, b.entries))


_GATE_ARITY = {"H": 1, "X": 1, "RX": 1, "RY": 1, "RZ": 1, "CNOT": 2}
_ROTATION_KINDS = frozenset({"RX", "RY", "RZ"})


@dataclass(frozen=True)
class Gate:
    """Element of the fixed gate set {H, X, RX, RY, RZ, CNOT}.

    ``wires`` is ``(wire,)`` for single-wire gates and
    ``(control, target)`` for CNOT.  Rotations carry an ``angle``;
    the other kinds must not.
    """

    kind: str
    wires: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in _GATE_ARITY:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        wires = tuple(int(w) for w in self.wires)
        object.__setattr__(self, "wires", wires)
        if len(wires) != _GATE_ARITY[self.kind]:
            raise ValueError(
                f"{self.kind} acts on {_GATE_ARITY[self.kind]} wire(s), got {wires}"
            )
        if any(w < 0 for w in wires):
            raise ValueError(f"negative wire index in {wires}")
        if self.kind == "CNOT" and wires[0] == wires[1]:
            raise ValueError("CNOT control and target must differ")
        if self.kind in _ROTATION_KINDS:
            if self.angle is None:
                raise ValueError(f"{self.kind} requires an angle")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise ValueError(f"{self.kind} does not take an angle")

    @classmethod
    def h(cls, wire: int) -> Gate:
        return cls("H", (wire,))

    @classmethod
    def x(cls, wire: int) -> Gate:
        return cls("X", (wire,))

    @classmethod
    def rx(cls, angle: float, wire: int) -> Gate:
        return cls("RX", (wire,), angle)

    @classmethod
    def ry(cls, angle: float, wire: int) -> Gate:
        return cls("RY", (wire,), angle)

    @classmethod
    def rz(cls, angle: float, wire: int) -> Gate:
        return cls("RZ", (wire,), angle)

    @classmethod
    def cnot(cls, control: int, target: int) -> Gate:
        return cls("CNOT", (control, target))

    def matrix(self) -> np.ndarray:
        """Unitary of the gate: 2x2, or 4x4 in (control, target) wire order."""
        if self.kind == "H":
            return HADAMARD.copy()
        if self.kind == "X":
            return PAULI_X.copy()
        if self.kind in _ROTATION_KINDS:
            half = 0.5 * self.angle
            c, s = math.cos(half), math.sin(half)
            if self.kind == "RX":
                return np.array([[c, -1.0j * s], [-1.0j * s, c]], dtype=complex)
            if self.kind == "RY":
                return np.array([[c, -s], [s, c]], dtype=complex)
            return np.array(
                [[c - 1.0j * s, 0.0], [0.0, c + 1.0j * s]], dtype=complex
            )
        cnot = np.eye(4, dtype=complex)
        cnot[[2, 3]] = cnot[[3, 2]]
        return cnot


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list on a fixed wire count; gates apply left to right."""

    num_wires: int
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        if self.num_wires < 1:
            raise ValueError("num_wires must be at least 1")
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        for gate in gates:
            if max(gate.wires) >= self.num_wires:
                raise ValueError(
                    f"gate {gate.kind} on wires {gate.wires} exceeds "
                    f"{self.num_wires} wires"
                )

    def __len__(self) -> int:
        return len(self.gates)


def _apply_single_wire(amps: np.ndarray, mat: np.ndarray, wire: int, num_wires: int) -> np.ndarray:
    """Apply a 2x2 matrix on one wire of a flat amplitude array."""
    psi = amps.reshape((2,) * num_wires)
    psi = np.moveaxis(psi, wire, 0).reshape(2, -1)
    psi = mat @ psi
    psi = np.moveaxis(psi.reshape((2,) * num_wires), 0, wire)
    return psi.reshape(-1)


def _apply_cnot(amps: np.ndarray, control: int, target: int, num_wires: int) -> np.ndarray:
    """Swap the target slices inside the control=1 subspace."""
    psi = amps.reshape((2,) * num_wires).copy()
    lo: list = [slice(None)] * num_wires
    hi: list = [slice(None)] * num_wires
    lo[control] = hi[control] = 1
    lo[target], hi[target] = 0, 1
    block = psi[tuple(lo)].copy()
    psi[tuple(lo)] = psi[tuple(hi)]
    psi[tuple(hi)] = block
    return psi.reshape(-1)


def _apply_gate_to_amps(amps: np.ndarray, gate: Gate, num_wires: int) -> np.ndarray:
    if gate.kind == "CNOT":
        return _apply_cnot(amps, gate.wires[0], gate.wires[1], num_wires)
    return _apply_single_wire(amps, gate.matrix(), gate.wires[0], num_wires)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply one gate and return the new state."""
    if max(gate.wires) >= state.num_wires:
        raise ValueError(
            f"gate wires {gate.wires} out of range for {state.num_wires} wires"
        )
    amps = _apply_gate_to_amps(state.amplitudes, gate, state.num_wires)
    return StateVector(state.num_wires, amps)


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    if circuit.num_wires != state.num_wires:
        raise ValueError("circuit and state wire counts differ")
    amps = state.amplitudes
    for gate in circuit.gates:
        amps = _apply_gate_to_amps(amps, gate, state.num_wires)
    return StateVector(state.num_wires, amps)


def circuit_to_matrix(circuit: Circuit) -> DenseOperator:
    """Full unitary of a circuit, built by pushing identity columns through."""
    dim = 2**circuit.num_wires
    cols = np.eye(dim, dtype=complex)
    for k in range(dim):
        col = cols[:, k]
        for gate in circuit.gates:
            col = _apply_gate_to_amps(col, gate, circuit.num_wires)
        cols[:, k] = col
    return DenseOperator(cols)


def unitary_from_generator(generator: DenseOperator) -> DenseOperator:
    """Matrix exponential ``exp(G)`` of an anti-Hermitian generator.

    Diagonalizes the Hermitian matrix ``iG`` and exponentiates its
    eigenvalues, so the result is unitary by construction.
    """
    if not generator.is_anti_hermitian():
        raise ValueError("generator must be anti-Hermitian")
    herm = 1.0j * generator.entries
    evals, evecs = np.linalg.eigh(herm)
    unitary = (evecs * np.exp(-1.0j * evals)) @ evecs.conj().T
    return DenseOperator(unitary)


def expectation(state: StateVector, observable: DenseOperator) -> float:
    """Real expectation value ``<psi|O|psi>`` of a Hermitian observable."""
    if observable.dim != 2**state.num_wires:
        raise ValueError("observable dimension does not match the state")
    if not observable.is_hermitian():
        raise ValueError("observable must be Hermitian")
    value = complex(np.vdot(state.amplitudes, observable.entries @ state.amplitudes))
    if abs(value.imag) >= 1e-10:
        raise ArithmeticError(
            f"expectation has imaginary residue {value.imag!r}"
        )
    return value.real


def partial_trace(state: StateVector, keep_wires: Sequence[int]) -> DenseOperator:
    """Reduced density matrix over ``keep_wires``, rows ordered as given."""
    keep = [int(w) for w in keep_wires]
    if not keep:
        raise ValueError("keep_wires must not be empty")
    if len(set(keep)) != len(keep):
        raise ValueError(f"keep_wires has duplicates: {keep}")
    if min(keep) < 0 or max(keep) >= state.num_wires:
        raise ValueError(f"keep_wires {keep} out of range")
    traced = [w for w in range(state.num_wires) if w not in keep]
    psi = state.amplitudes.reshape((2,) * state.num_wires)
    if traced:
        rho = np.tensordot(psi, psi.conj(), axes=(traced, traced))
    else:
        rho = np.multiply.outer(psi, psi.conj())
    # tensordot leaves the kept wires in ascending order on each side;
    # permute to the caller's ordering.
    ascending = sorted(keep)
    perm = [ascending.index(w) for w in keep]
    k = len(keep)
    rho = rho.transpose(perm + [p + k for p in perm])
    return DenseOperator(rho.reshape(2**k, 2**k))


def trace_distance(a: DenseOperator, b: DenseOperator) -> float:
    """Trace distance ``0.5 * ||a - b||_1`` between Hermitian operators."""
    if a.dim != b.dim:
        raise ValueError("operator dimensions differ")
    diff = a.entries - b.entries
    if np.max(np.abs(diff - diff.conj().T)) > HERMITICITY_ATOL:
        raise ValueError("trace distance expects a Hermitian difference")
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))


class ShotCounts(NamedTuple):
    """Tally of +1 / -1 outcomes from repeated single-wire measurement."""

    plus: int
    minus: int

    @property
    def total(self) -> int:
        return self.plus + self.minus

    @property
    def mean(self) -> float:
        """Empirical expectation value (plus - minus) / total."""
        return (self.plus - self.minus) / self.total


def sample_shots(
    state: StateVector, wire: int, basis: str, shots: int, seed: int
) -> ShotCounts:
    """Simulate ``shots`` projective measurements of X, Y or Z on one wire.

    The wire is rotated into the Z eigenbasis, the exact outcome
    probability is computed from the rotated amplitudes, and outcomes are
    drawn with ``numpy.random.default_rng(seed)``.  The same seed always
    reproduces the same counts.
    """
    if not 0 <= wire < state.num_wires:
        raise ValueError(f"wire {wire} out of range")
    if basis not in _BASIS_ROTATIONS:
        raise ValueError(f"basis must be one of X, Y, Z, got {basis!r}")
    if shots < 1:
        raise ValueError("shots must be positive")
    amps = state.amplitudes
    rotation = _BASIS_ROTATIONS[basis]
    if rotation is not None:
        amps = _apply_single_wire(amps, rotation, wire, state.num_wires)
    psi = np.moveaxis(amps.reshape((2,) * state.num_wires), wire, 0)
    p_plus = float(np.sum(np.abs(psi[0]) ** 2))
    p_plus = min(max(p_plus, 0.0), 1.0)
    rng = np.random.default_rng(seed)
    plus = int(np.count_nonzero(rng.random(shots) < p_plus))
    return ShotCounts(plus=plus, minus=shots - plus)


def global_phase_distance(u: DenseOperator, v: DenseOperator) -> float:
    """Spectral-norm distance between unitaries modulo a global phase.

    The phase is fixed from the largest-magnitude entry of ``v^dag u``,
    which is stable whenever the two unitaries are actually close.
    """
    if u.dim != v.dim:
        raise ValueError("operator dimensions differ")
    product = v.entries.conj().T @ u.entries
    flat = int(np.argmax(np.abs(product)))
    pivot = product.flat[flat]
    if abs(pivot) < 1e-300:
        raise ValueError("cannot fix a global phase from a zero matrix")
    phase = pivot / abs(pivot)
    return float(np.linalg.norm(u.entries - phase * v.entries, ord=2))


def pauli_matrix(letter: str) -> np.ndarray:
    """Single-qubit Pauli matrix for a letter in {I, X, Y, Z}."""
    table = {"I": PAULI_I, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}
    if letter not in table:
        raise ValueError(f"unknown Pauli letter {letter!r}")
    return table[letter].copy()


def operator_on_wires(
    letters: Iterable[tuple[int, str]], num_wires: int
) -> DenseOperator:
    """Dense operator with the given Pauli letters on wires, identity elsewhere."""
    placed = dict(letters)
    if placed and max(placed) >= num_wires:
        raise ValueError("letter placed beyond the last wire")
    mat = np.array([[1.0 + 0.0j]])
    for wire in range(num_wires):
        mat = np.kron(mat, pauli_matrix(placed.get(wire, "I")))
    return DenseOperator(mat)
