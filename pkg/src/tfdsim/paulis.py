"""Symbolic Pauli-word algebra and the Jordan-Wigner ladder-operator map.

Pauli words carry exact phases from the multiplication table
``XY = iZ`` (cyclic), so operator identities can be checked without
floating-point matrix products.  Fermionic ladder expressions are kept
as sums of ordered factor strings and lowered to Pauli sums by
:func:`jordan_wigner`.

The annihilator maps to ``(X + iY)/2`` (with a Z string on every
lower-indexed wire), which lowers the basis *index*: wire value 0 is the
empty mode.  Some texts use the transposed convention ``(X - iY)/2``;
only the labeling of the two basis states differs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from tfdsim.core import DenseOperator, operator_on_wires

#: coefficients below this magnitude are dropped when collecting terms
COEFF_EPS = 1e-14
#: tolerance used when classifying a sum as (anti-)Hermitian
CLASSIFY_ATOL = 1e-12

_LETTERS = frozenset({"X", "Y", "Z"})

# (left, right) -> (phase, product letter); identities handled separately.
_PRODUCT_TABLE: dict[tuple[str, str], tuple[complex, str]] = {
    ("X", "X"): (1.0, "I"),
    ("Y", "Y"): (1.0, "I"),
    ("Z", "Z"): (1.0, "I"),
    ("X", "Y"): (1.0j, "Z"),
    ("Y", "Z"): (1.0j, "X"),
    ("Z", "X"): (1.0j, "Y"),
    ("Y", "X"): (-1.0j, "Z"),
    ("Z", "Y"): (-1.0j, "X"),
    ("X", "Z"): (-1.0j, "Y"),
}


@dataclass(frozen=True)
class PauliWord:
    """Tensor product of non-identity Pauli letters on distinct wires.

    ``letters`` holds ``(wire, letter)`` pairs sorted by wire; the empty
    tuple is the identity word.
    """

    letters: tuple[tuple[int, str], ...] = ()

    def __post_init__(self) -> None:
        letters = tuple((int(w), str(l)) for w, l in self.letters)
        object.__setattr__(self, "letters", letters)
        wires = [w for w, _ in letters]
        if any(w < 0 for w in wires):
            raise ValueError(f"negative wire in {letters}")
        if wires != sorted(set(wires)):
            raise ValueError(f"wires must be strictly increasing, got {wires}")
        for _, letter in letters:
            if letter not in _LETTERS:
                raise ValueError(f"letter must be X, Y or Z, got {letter!r}")

    @classmethod
    def from_map(cls, mapping: Mapping[int, str]) -> PauliWord:
        """Build a word from a wire -> letter mapping; 'I' entries are skipped."""
        pairs = [(w, l) for w, l in mapping.items() if l != "I"]
        return cls(tuple(sorted(pairs)))

    @classmethod
    def single(cls, wire: int, letter: str) -> PauliWord:
        return cls(((wire, letter),))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def letter_on(self, wire: int) -> str:
        for w, letter in self.letters:
            if w == wire:
                return letter
        return "I"

    def max_wire(self) -> int:
        """Largest wire touched, or -1 for the identity word."""
        return self.letters[-1][0] if self.letters else -1

    def __str__(self) -> str:
        if self.is_identity:
            return "I"
        return " ".join(f"{letter}{w}" for w, letter in self.letters)


def pauli_multiply(left: PauliWord, right: PauliWord) -> tuple[complex, PauliWord]:
    """Product of two words as ``(phase, word)`` with the exact phase."""
    phase = 1.0 + 0.0j
    merged: list[tuple[int, str]] = []
    table = dict(left.letters)
    for wire, letter in right.letters:
        if wire in table:
            factor, product = _PRODUCT_TABLE[(table[wire], letter)]
            phase *= factor
            if product == "I":
                del table[wire]
            else:
                table[wire] = product
        else:
            table[wire] = letter
    merged = sorted(table.items())
    return phase, PauliWord(tuple(merged))


@dataclass(frozen=True)
class PauliSum:
    """Linear combination of Pauli words on a fixed wire count.

    The term list is kept as given; call :func:`collect_terms` (or use the
    arithmetic operators, which collect for you) to merge duplicates and
    drop negligible coefficients.
    """

    num_wires: int
    terms: tuple[tuple[complex, PauliWord], ...] = ()

    def __post_init__(self) -> None:
        if self.num_wires < 1:
            raise ValueError("num_wires must be at least 1")
        terms = tuple((complex(c), w) for c, w in self.terms)
        object.__setattr__(self, "terms", terms)
        for _, word in terms:
            if word.max_wire() >= self.num_wires:
                raise ValueError(
                    f"word {word} does not fit on {self.num_wires} wires"
                )

    @classmethod
    def identity(cls, num_wires: int, coefficient: complex = 1.0) -> PauliSum:
        return cls(num_wires, ((complex(coefficient), PauliWord()),))

    @classmethod
    def zero(cls, num_wires: int) -> PauliSum:
        return cls(num_wires, ())

    def __add__(self, other: PauliSum) -> PauliSum:
        if other.num_wires != self.num_wires:
            raise ValueError("wire counts differ")
        return collect_terms(PauliSum(self.num_wires, self.terms + other.terms))

    def __sub__(self, other: PauliSum) -> PauliSum:
        return self + (-1.0) * other

    def __neg__(self) -> PauliSum:
        return (-1.0) * self

    def __rmul__(self, scalar: complex) -> PauliSum:
        terms = tuple((complex(scalar) * c, w) for c, w in self.terms)
        return collect_terms(PauliSum(self.num_wires, terms))

    def __mul__(self, other: PauliSum | complex) -> PauliSum:
        if not isinstance(other, PauliSum):
            return complex(other) * self
        if other.num_wires != self.num_wires:
            raise ValueError("wire counts differ")
        products = []
        for c1, w1 in self.terms:
            for c2, w2 in other.terms:
                phase, word = pauli_multiply(w1, w2)
                products.append((c1 * c2 * phase, word))
        return collect_terms(PauliSum(self.num_wires, tuple(products)))

    def adjoint(self) -> PauliSum:
        """Hermitian conjugate: words are self-adjoint, so conjugate coefficients."""
        return PauliSum(
            self.num_wires, tuple((c.conjugate(), w) for c, w in self.terms)
        )


def collect_terms(p: PauliSum) -> PauliSum:
    """Merge duplicate words, drop coefficients below COEFF_EPS, sort terms."""
    acc: dict[tuple[tuple[int, str], ...], complex] = {}
    for coeff, word in p.terms:
        acc[word.letters] = acc.get(word.letters, 0.0) + coeff
    kept = [
        (coeff, PauliWord(letters))
        for letters, coeff in acc.items()
        if abs(coeff) >= COEFF_EPS
    ]
    kept.sort(key=lambda item: item[1].letters)
    return PauliSum(p.num_wires, tuple(kept))


def pauli_sum_to_matrix(p: PauliSum) -> DenseOperator:
    """Dense matrix of a Pauli sum (wire counts above 10 are refused)."""
    if p.num_wires > 10:
        raise ValueError(
            f"refusing to build a dense matrix on {p.num_wires} wires"
        )
    dim = 2**p.num_wires
    total = np.zeros((dim, dim), dtype=complex)
    for coeff, word in p.terms:
        total += coeff * operator_on_wires(word.letters, p.num_wires).entries
    return DenseOperator(total)


def hermiticity_classify(p: PauliSum) -> str:
    """Classify a sum as 'hermitian', 'anti_hermitian' or 'neither'.

    Pauli words are Hermitian, so after collection the sum is Hermitian
    iff every coefficient is real and anti-Hermitian iff every
    coefficient is purely imaginary.  The zero sum is both; it is
    reported as 'hermitian'.
    """
    collected = collect_terms(p)
    if not collected.terms:
        return "hermitian"
    real_ok = all(abs(c.imag) < CLASSIFY_ATOL for c, _ in collected.terms)
    imag_ok = all(abs(c.real) < CLASSIFY_ATOL for c, _ in collected.terms)
    if real_ok:
        return "hermitian"
    if imag_ok:
        return "anti_hermitian"
    return "neither"


@dataclass(frozen=True)
class FermiTerm:
    """Scalar times an ordered product of ladder operators.

    ``factors`` is a sequence of ``(mode, dagger)`` pairs in application
    order from the right, matching how the product is written.
    """

    coefficient: complex
    factors: tuple[tuple[int, bool], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficient", complex(self.coefficient))
        factors = tuple((int(m), bool(d)) for m, d in self.factors)
        object.__setattr__(self, "factors", factors)
        if any(m < 0 for m, _ in factors):
            raise ValueError(f"negative mode index in {factors}")

    def __str__(self) -> str:
        if not self.factors:
            return f"({self.coefficient}) 1"
        ops = " ".join(f"a{m}^" if d else f"a{m}" for m, d in self.factors)
        return f"({self.coefficient}) {ops}"


@dataclass(frozen=True)
class FermiSum:
    """Sum of :class:`FermiTerm` on a fixed number of fermionic modes."""

    total_modes: int
    terms: tuple[FermiTerm, ...] = ()

    def __post_init__(self) -> None:
        if self.total_modes < 1:
            raise ValueError("total_modes must be at least 1")
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        for term in terms:
            for mode, _ in term.factors:
                if mode >= self.total_modes:
                    raise ValueError(
                        f"mode {mode} out of range for {self.total_modes} modes"
                    )

    def collect(self) -> FermiSum:
        """Merge terms with identical factor sequences; drop tiny coefficients."""
        acc: dict[tuple[tuple[int, bool], ...], complex] = {}
        order: list[tuple[tuple[int, bool], ...]] = []
        for term in self.terms:
            if term.factors not in acc:
                acc[term.factors] = 0.0
                order.append(term.factors)
            acc[term.factors] += term.coefficient
        kept = tuple(
            FermiTerm(acc[factors], factors)
            for factors in order
            if abs(acc[factors]) >= COEFF_EPS
        )
        return FermiSum(self.total_modes, kept)

    def __add__(self, other: FermiSum) -> FermiSum:
        if other.total_modes != self.total_modes:
            raise ValueError("mode counts differ")
        return FermiSum(self.total_modes, self.terms + other.terms).collect()

    def __sub__(self, other: FermiSum) -> FermiSum:
        return self + (-1.0) * other

    def __rmul__(self, scalar: complex) -> FermiSum:
        terms = tuple(
            FermiTerm(complex(scalar) * t.coefficient, t.factors) for t in self.terms
        )
        return FermiSum(self.total_modes, terms)

    def __mul__(self, other: FermiSum | complex) -> FermiSum:
        if not isinstance(other, FermiSum):
            return complex(other) * self
        if other.total_modes != self.total_modes:
            raise ValueError("mode counts differ")
        products = tuple(
            FermiTerm(t1.coefficient * t2.coefficient, t1.factors + t2.factors)
            for t1 in self.terms
            for t2 in other.terms
        )
        return FermiSum(self.total_modes, products).collect()

    def adjoint(self) -> FermiSum:
        terms = tuple(
            FermiTerm(
                t.coefficient.conjugate(),
                tuple((m, not d) for m, d in reversed(t.factors)),
            )
            for t in self.terms
        )
        return FermiSum(self.total_modes, terms)


def create(mode: int, total_modes: int) -> FermiSum:
    """Single creation operator ``a_mode^dag`` as a one-term sum."""
    return FermiSum(total_modes, (FermiTerm(1.0, ((mode, True),)),))


def annihilate(mode: int, total_modes: int) -> FermiSum:
    """Single annihilation operator ``a_mode`` as a one-term sum."""
    return FermiSum(total_modes, (FermiTerm(1.0, ((mode, False),)),))


_STRING_MODES = frozenset({"standard", "omit", "flip"})


def _ladder_image(
    mode: int, dagger: bool, num_wires: int, string_mode: str
) -> PauliSum:
    """Pauli image of one ladder operator under the Jordan-Wigner map."""
    string = {} if string_mode == "omit" else {w: "Z" for w in range(mode)}
    x_word = PauliWord.from_map({**string, mode: "X"})
    y_word = PauliWord.from_map({**string, mode: "Y"})
    x_coeff: complex = 0.5
    y_coeff: complex = -0.5j if dagger else 0.5j
    if string_mode == "flip" and mode > 0 and not dagger:
        x_coeff = -x_coeff
        y_coeff = -y_coeff
    return PauliSum(num_wires, ((x_coeff, x_word), (y_coeff, y_word)))


def jordan_wigner(f: FermiSum, string_mode: str = "standard") -> PauliSum:
    """Map a fermionic sum to a Pauli sum with Z strings on lower wires.

    ``string_mode`` is a diagnostic hook: "standard" is the faithful map,
    "omit" drops the Z strings and "flip" negates the string sign on
    annihilators.  Both broken modes violate the anticommutation
    relations on two or more modes and exist so tests can confirm the
    checker catches them.
    """
    if string_mode not in _STRING_MODES:
        raise ValueError(f"unknown string_mode {string_mode!r}")
    num_wires = f.total_modes
    result = PauliSum.zero(num_wires)
    for term in f.terms:
        product = PauliSum.identity(num_wires, term.coefficient)
        for mode, dagger in term.factors:
            product = product * _ladder_image(mode, dagger, num_wires, string_mode)
        result = result + product
    return collect_terms(result)


@dataclass(frozen=True)
class CarReport:
    """Worst-case residuals from a canonical anticommutation relation sweep.

    ``max_cross_residual`` is the largest ``|{a_i, a_j^dag} - delta_ij I|``
    entry over all mode pairs and ``max_double_residual`` the largest
    ``|{a_i, a_j}|`` entry; the ``worst_*`` fields name the offending pairs.
    """

    n_modes: int
    max_cross_residual: float
    worst_cross_pair: tuple[int, int]
    max_double_residual: float
    worst_double_pair: tuple[int, int]
    tolerance: float = 1e-12

    @property
    def passed(self) -> bool:
        return (
            self.max_cross_residual < self.tolerance
            and self.max_double_residual < self.tolerance
        )


def car_check(n_modes: int, string_mode: str = "standard") -> CarReport:
    """Verify canonical anticommutation relations at the matrix level.

    Builds all ``2 * n_modes`` Jordan-Wigner ladder matrices (physical and
    partner copies live on one register here; the split into copies is a
    caller concern) and sweeps every ordered pair.  Kept to three modes so
    the dense matrices stay small.
    """
    if not 1 <= n_modes <= 3:
        raise ValueError("n_modes must be 1, 2 or 3")
    total = 2 * n_modes
    dim = 2**total
    identity = np.eye(dim, dtype=complex)
    # Raising operators go through the map themselves instead of taking the
    # adjoint of the lowering matrices, so a lopsided string_mode actually
    # shows up as a violation.
    lowering = [
        pauli_sum_to_matrix(
            jordan_wigner(annihilate(m, total), string_mode=string_mode)
        ).entries
        for m in range(total)
    ]
    raising = [
        pauli_sum_to_matrix(
            jordan_wigner(create(m, total), string_mode=string_mode)
        ).entries
        for m in range(total)
    ]

    max_cross, worst_cross = -1.0, (0, 0)
    max_double, worst_double = -1.0, (0, 0)
    for i in range(total):
        for j in range(total):
            cross = lowering[i] @ raising[j] + raising[j] @ lowering[i]
            if i == j:
                cross = cross - identity
            residual = float(np.max(np.abs(cross)))
            if residual > max_cross:
                max_cross, worst_cross = residual, (i, j)
            double = lowering[i] @ lowering[j] + lowering[j] @ lowering[i]
            residual = float(np.max(np.abs(double)))
            if residual > max_double:
                max_double, worst_double = residual, (i, j)
    return CarReport(
        n_modes=n_modes,
        max_cross_residual=max_cross,
        worst_cross_pair=worst_cross,
        max_double_residual=max_double,
        worst_double_pair=worst_double,
    )
