import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tfdsim.core import operator_on_wires
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


def word_matrix(word, num_wires):
    return operator_on_wires(word.letters, num_wires).entries


words = st.dictionaries(
    keys=st.integers(0, 3), values=st.sampled_from("XYZ"), max_size=4
).map(PauliWord.from_map)


class TestPauliWord:
    def test_letters_must_be_sorted_and_unique(self):
        with pytest.raises(ValueError):
            PauliWord(((1, "X"), (0, "Y")))
        with pytest.raises(ValueError):
            PauliWord(((0, "X"), (0, "Y")))

    def test_from_map_skips_identity(self):
        word = PauliWord.from_map({0: "I", 2: "X"})
        assert word.letters == ((2, "X"),)
        assert word.letter_on(0) == "I"
        assert word.letter_on(2) == "X"

    def test_identity_word(self):
        assert PauliWord().is_identity
        assert PauliWord().max_wire() == -1
        assert str(PauliWord()) == "I"

    def test_str_lists_letters(self):
        assert str(PauliWord(((0, "X"), (2, "Z")))) == "X0 Z2"


class TestPauliMultiply:
    def test_xy_gives_iz(self):
        phase, word = pauli_multiply(PauliWord.single(0, "X"), PauliWord.single(0, "Y"))
        assert phase == 1j
        assert word == PauliWord.single(0, "Z")

    def test_zx_anticommutes_with_xz(self):
        phase_zx, word_zx = pauli_multiply(
            PauliWord.single(0, "Z"), PauliWord.single(0, "X")
        )
        phase_xz, word_xz = pauli_multiply(
            PauliWord.single(0, "X"), PauliWord.single(0, "Z")
        )
        assert (phase_zx, word_zx) == (1j, PauliWord.single(0, "Y"))
        assert (phase_xz, word_xz) == (-1j, PauliWord.single(0, "Y"))

    def test_squares_to_identity(self):
        word = PauliWord(((0, "X"), (1, "Z")))
        phase, product = pauli_multiply(word, word)
        assert phase == 1
        assert product.is_identity

    @given(words, words)
    @settings(max_examples=80, deadline=None)
    def test_matches_matrix_product(self, w1, w2):
        phase, product = pauli_multiply(w1, w2)
        lhs = word_matrix(w1, 4) @ word_matrix(w2, 4)
        rhs = phase * word_matrix(product, 4)
        np.testing.assert_allclose(lhs, rhs, atol=1e-15)

    @given(words, words, words)
    @settings(max_examples=60, deadline=None)
    def test_associative(self, w1, w2, w3):
        p12, w12 = pauli_multiply(w1, w2)
        pa, wa = pauli_multiply(w12, w3)
        p23, w23 = pauli_multiply(w2, w3)
        pb, wb = pauli_multiply(w1, w23)
        assert (p12 * pa, wa) == (p23 * pb, wb)

    @given(words, words)
    @settings(max_examples=60, deadline=None)
    def test_adjoint_reverses_factors(self, w1, w2):
        # words are self-adjoint, so (w1 w2)^dag = w2 w1 with the
        # conjugated phase
        phase_fwd, word_fwd = pauli_multiply(w1, w2)
        phase_rev, word_rev = pauli_multiply(w2, w1)
        assert word_rev == word_fwd
        assert phase_rev == phase_fwd.conjugate()


pauli_sums = st.lists(
    st.tuples(
        st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
        words,
    ),
    max_size=5,
).map(lambda terms: PauliSum(4, tuple(terms)))


class TestPauliSum:
    def test_wire_bound_enforced(self):
        with pytest.raises(ValueError):
            PauliSum(1, ((1.0, PauliWord.single(1, "X")),))

    def test_collect_merges_and_drops(self):
        x = PauliWord.single(0, "X")
        merged = collect_terms(PauliSum(1, ((1.0, x), (1.0, x))))
        assert merged.terms == ((2.0 + 0.0j, x),)
        cancelled = collect_terms(PauliSum(1, ((1.0, x), (-1.0, x))))
        assert cancelled.terms == ()

    def test_collect_is_idempotent(self):
        p = PauliSum(2, ((0.5, PauliWord.single(0, "X")), (1j, PauliWord()),) * 2)
        once = collect_terms(p)
        twice = collect_terms(once)
        assert once.terms == twice.terms

    @given(pauli_sums)
    @settings(max_examples=50, deadline=None)
    def test_collect_preserves_matrix(self, p):
        before = pauli_sum_to_matrix(p).entries
        after = pauli_sum_to_matrix(collect_terms(p)).entries
        np.testing.assert_allclose(before, after, atol=1e-14)

    def test_arithmetic_matches_matrices(self):
        a = PauliSum(2, ((1.0, PauliWord.single(0, "X")), (0.5j, PauliWord.single(1, "Z"))))
        b = PauliSum(2, ((2.0, PauliWord(((0, "X"), (1, "Y")))),))
        product = pauli_sum_to_matrix(a * b).entries
        np.testing.assert_allclose(
            product,
            pauli_sum_to_matrix(a).entries @ pauli_sum_to_matrix(b).entries,
            atol=1e-14,
        )
        total = pauli_sum_to_matrix(a + b).entries
        np.testing.assert_allclose(
            total,
            pauli_sum_to_matrix(a).entries + pauli_sum_to_matrix(b).entries,
            atol=1e-14,
        )

    def test_scalar_multiplication(self):
        a = PauliSum.identity(1, 2.0)
        np.testing.assert_allclose(
            pauli_sum_to_matrix(0.5j * a).entries, 1j * np.eye(2)
        )

    def test_adjoint_conjugates_coefficients(self):
        p = PauliSum(1, ((1 + 2j, PauliWord.single(0, "Y")),))
        np.testing.assert_allclose(
            pauli_sum_to_matrix(p.adjoint()).entries,
            pauli_sum_to_matrix(p).entries.conj().T,
            atol=1e-15,
        )

    def test_matrix_dimension_guard(self):
        with pytest.raises(ValueError, match="dense"):
            pauli_sum_to_matrix(PauliSum.zero(11))

    def test_empty_sum_is_zero_matrix(self):
        np.testing.assert_allclose(
            pauli_sum_to_matrix(PauliSum.zero(1)).entries, np.zeros((2, 2))
        )

    def test_single_z_matrix(self):
        p = PauliSum(1, ((1.0, PauliWord.single(0, "Z")),))
        np.testing.assert_allclose(pauli_sum_to_matrix(p).entries, np.diag([1, -1]))


class TestHermiticityClassify:
    def test_real_coefficients_are_hermitian(self):
        p = PauliSum(1, ((1.0, PauliWord.single(0, "X")), (2.0, PauliWord.single(0, "Y"))))
        assert hermiticity_classify(p) == "hermitian"

    def test_imaginary_coefficients_are_anti_hermitian(self):
        p = PauliSum(1, ((1j, PauliWord.single(0, "X")),))
        assert hermiticity_classify(p) == "anti_hermitian"

    def test_mixed_coefficients_are_neither(self):
        p = PauliSum(1, ((1 + 1j, PauliWord.single(0, "X")),))
        assert hermiticity_classify(p) == "neither"

    def test_cancelling_sum_counts_as_hermitian(self):
        x = PauliWord.single(0, "X")
        assert hermiticity_classify(PauliSum(1, ((1j, x), (-1j, x)))) == "hermitian"

    @given(pauli_sums)
    @settings(max_examples=50, deadline=None)
    def test_agrees_with_matrix_level_adjoint(self, p):
        label = hermiticity_classify(p)
        mat = pauli_sum_to_matrix(collect_terms(p)).entries
        if label == "hermitian":
            np.testing.assert_allclose(mat, mat.conj().T, atol=1e-12)
        elif label == "anti_hermitian":
            np.testing.assert_allclose(mat, -mat.conj().T, atol=1e-12)


class TestFermiSum:
    def test_mode_bound_enforced(self):
        with pytest.raises(ValueError):
            FermiSum(1, (FermiTerm(1.0, ((1, False),)),))

    def test_collect_merges_duplicate_factor_sequences(self):
        term = FermiTerm(1.0, ((0, True), (0, False)))
        merged = (FermiSum(1, (term, term))).collect()
        assert len(merged.terms) == 1
        assert merged.terms[0].coefficient == 2.0

    def test_adjoint_reverses_and_daggers(self):
        product = create(0, 2) * annihilate(1, 2)
        adj = product.adjoint()
        assert adj.terms[0].factors == ((1, True), (0, False))

    def test_str_forms(self):
        assert str(FermiTerm(1.0, ((0, True), (1, False)))).endswith("a0^ a1")


class TestJordanWigner:
    def test_single_mode_annihilator(self):
        image = jordan_wigner(annihilate(0, 1))
        assert image.terms == (
            (0.5 + 0.0j, PauliWord.single(0, "X")),
            (0.5j, PauliWord.single(0, "Y")),
        )

    def test_partner_mode_carries_string(self):
        image = jordan_wigner(annihilate(1, 2))
        expected = {
            ((0, "Z"), (1, "X")): 0.5 + 0.0j,
            ((0, "Z"), (1, "Y")): 0.5j,
        }
        assert {w.letters: c for c, w in image.terms} == expected

    def test_number_operator(self):
        image = jordan_wigner(create(0, 1) * annihilate(0, 1))
        as_map = {w.letters: c for c, w in image.terms}
        assert as_map == {(): 0.5 + 0.0j, ((0, "Z"),): -0.5 + 0.0j}

    def test_annihilator_kills_empty_mode(self):
        mat = pauli_sum_to_matrix(jordan_wigner(annihilate(0, 1))).entries
        vacuum = np.array([1.0, 0.0])
        np.testing.assert_allclose(mat @ vacuum, 0.0, atol=1e-15)
        occupied = np.array([0.0, 1.0])
        np.testing.assert_allclose(mat @ occupied, vacuum, atol=1e-15)

    def test_rejects_unknown_string_mode(self):
        with pytest.raises(ValueError, match="string_mode"):
            jordan_wigner(annihilate(0, 1), string_mode="sideways")

    @given(
        st.lists(
            st.tuples(st.integers(0, 1), st.booleans()), min_size=1, max_size=3
        ),
        st.lists(
            st.tuples(st.integers(0, 1), st.booleans()), min_size=1, max_size=3
        ),
    )
    @settings(max_examples=60, deadline=None)
    def test_homomorphism_at_matrix_level(self, factors_a, factors_b):
        a = FermiSum(2, (FermiTerm(1.0, tuple(factors_a)),))
        b = FermiSum(2, (FermiTerm(1.0, tuple(factors_b)),))
        lhs = pauli_sum_to_matrix(jordan_wigner(a * b)).entries
        rhs = (
            pauli_sum_to_matrix(jordan_wigner(a)).entries
            @ pauli_sum_to_matrix(jordan_wigner(b)).entries
        )
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)


class TestCarCheck:
    @pytest.mark.parametrize("n_modes", [1, 2, 3])
    def test_relations_hold(self, n_modes):
        report = car_check(n_modes)
        assert report.passed
        assert report.max_cross_residual < 1e-12
        assert report.max_double_residual < 1e-12

    def test_mixed_pair_anticommutes_with_string(self):
        # {a_0, a_1} = 0 on the doubled register only because of the Z
        # string; the residual would be order one without it.
        report = car_check(1)
        assert report.max_double_residual < 1e-12

    def test_negative_control_without_strings(self):
        report = car_check(1, string_mode="omit")
        assert not report.passed
        # distinct modes commute instead of anticommuting, so the
        # anticommutator doubles instead of cancelling
        assert report.max_double_residual == pytest.approx(2.0)

    def test_negative_control_with_flipped_string(self):
        report = car_check(1, string_mode="flip")
        assert not report.passed
        assert report.max_cross_residual == pytest.approx(2.0)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            car_check(0)
        with pytest.raises(ValueError):
            car_check(4)

    def test_report_names_offending_pair(self):
        report = car_check(1, string_mode="omit")
        assert isinstance(report, CarReport)
        assert report.worst_double_pair in {(0, 1), (1, 0)}
