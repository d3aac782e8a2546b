import math

import numpy as np
import pytest

from fockweyl.fock import (
    BasisSpec,
    CapacityError,
    ExponentSpec,
    MultiIndex,
    StateVector,
    apply_exponent_to_vacuum,
    apply_mode_matrix,
    basis_dimension,
    coherent_state,
    inner_product,
    ladder_matrix,
    quadrature_matrix,
    state_from_text,
    state_to_text,
    vacuum_state,
)


def multinomial_series_oracle(spec, exponent):
    """Independent amplitude oracle: expand exp of the creation-symbol
    polynomial term by term in commuting variables, then attach the
    sqrt(n!) factors. Never touches the matrix series path."""
    n = spec.n_modes
    poly = {}
    for i in range(n):
        if exponent.linear[i] != 0:
            key = tuple(1 if k == i else 0 for k in range(n))
            poly[key] = poly.get(key, 0) + exponent.linear[i]
    for i in range(n):
        for j in range(i, n):
            coeff = exponent.pair_coefficient(i, j)
            if coeff != 0:
                key = tuple((1 if k == i else 0) + (1 if k == j else 0) for k in range(n))
                poly[key] = poly.get(key, 0) + coeff
    max_deg = n * spec.cutoff
    acc = {tuple([0] * n): 1.0 + 0j}
    term = dict(acc)
    for k in range(1, max_deg + 1):
        new = {}
        for k1, v1 in term.items():
            for k2, v2 in poly.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                if all(x <= spec.cutoff for x in key):
                    new[key] = new.get(key, 0) + v1 * v2
        term = {kk: vv / k for kk, vv in new.items()}
        if not term:
            break
        for kk, vv in term.items():
            acc[kk] = acc.get(kk, 0) + vv
    amps = np.zeros(spec.dimension, dtype=complex)
    for occ, coeff in acc.items():
        fact = math.prod(math.factorial(x) for x in occ)
        amps[spec.index_of(occ)] = coeff * math.sqrt(fact)
    return np.exp(exponent.constant) * amps


class TestBasisSpec:
    @pytest.mark.parametrize(
        "n_modes,cutoff,expected",
        [(1, 3, 4), (2, 2, 9), (3, 4, 125)],
    )
    def test_dimension(self, n_modes, cutoff, expected):
        assert basis_dimension(BasisSpec(n_modes, cutoff)) == expected

    def test_capacity_guard(self):
        with pytest.raises(CapacityError):
            BasisSpec(n_modes=40, cutoff=9)

    def test_invalid_shape(self):
        with pytest.raises(ValueError):
            BasisSpec(0, 4)
        with pytest.raises(ValueError):
            BasisSpec(2, 0)

    def test_index_roundtrip(self):
        spec = BasisSpec(3, 3)
        for idx in range(spec.dimension):
            assert spec.index_of(spec.occupations_of(idx)) == idx

    def test_ordering_mode0_slowest(self):
        spec = BasisSpec(2, 2)
        assert spec.occupations_of(0) == (0, 0)
        assert spec.occupations_of(1) == (0, 1)
        assert spec.occupations_of(3) == (1, 0)

    def test_total_occupation(self):
        spec = BasisSpec(2, 3)
        total = spec.total_occupation()
        for idx in range(spec.dimension):
            assert total[idx] == sum(spec.occupations_of(idx))


class TestLadder:
    def test_raise_entries(self):
        spec = BasisSpec(1, 2)
        ad = ladder_matrix(spec, 0, "raise").entries
        assert ad[1, 0] == pytest.approx(1.0)
        assert ad[2, 1] == pytest.approx(math.sqrt(2))

    def test_commutator_oracle_interior(self):
        # [a, a+] = 1 on every interior pair; oracle for the raise entries
        spec = BasisSpec(1, 6)
        a = ladder_matrix(spec, 0, "lower").entries
        ad = ladder_matrix(spec, 0, "raise").entries
        comm = a @ ad - ad @ a
        interior = slice(0, spec.cutoff)
        np.testing.assert_allclose(
            comm[interior, interior], np.eye(spec.cutoff), atol=1e-14
        )

    def test_lower_annihilates_vacuum(self):
        spec = BasisSpec(2, 3)
        a0 = ladder_matrix(spec, 0, "lower")
        out = a0.apply(vacuum_state(spec))
        assert out.norm() == 0

    def test_mode_locality_entries(self):
        spec = BasisSpec(2, 2)
        ad0 = ladder_matrix(spec, 0, "raise").entries
        assert ad0[spec.index_of((1, 0)), spec.index_of((0, 0))] == pytest.approx(1.0)
        assert ad0[spec.index_of((0, 1)), spec.index_of((0, 0))] == 0

    def test_cross_mode_commute_exactly(self):
        spec = BasisSpec(2, 3)
        ad0 = ladder_matrix(spec, 0, "raise").entries
        a1 = ladder_matrix(spec, 1, "lower").entries
        assert np.array_equal(ad0 @ a1, a1 @ ad0)

    def test_mode_out_of_range(self):
        with pytest.raises(ValueError):
            ladder_matrix(BasisSpec(2, 2), 2, "raise")
        with pytest.raises(ValueError):
            ladder_matrix(BasisSpec(2, 2), 0, "sideways")


class TestQuadrature:
    def test_q_entry(self):
        spec = BasisSpec(1, 4)
        Q = quadrature_matrix(spec, 0, "Q").entries
        assert Q[1, 0] == pytest.approx(1 / math.sqrt(2))
        assert Q[0, 0] == 0

    @pytest.mark.parametrize("kind", ["Q", "P"])
    def test_hermitian(self, kind):
        spec = BasisSpec(2, 5)
        M = quadrature_matrix(spec, 1, kind).entries
        assert np.abs(M - M.conj().T).max() <= 1e-14

    def test_canonical_commutator_interior(self):
        spec = BasisSpec(1, 8)
        Q = quadrature_matrix(spec, 0, "Q").entries
        P = quadrature_matrix(spec, 0, "P").entries
        comm = Q @ P - P @ Q
        interior = slice(0, spec.cutoff)
        np.testing.assert_allclose(
            comm[interior, interior], 1j * np.eye(spec.cutoff), atol=1e-14
        )
        # the corner entry deviates by truncation
        assert abs(comm[spec.cutoff, spec.cutoff] - 1j) > 1

    def test_cross_mode_commutator_zero(self):
        spec = BasisSpec(2, 4)
        Q0 = quadrature_matrix(spec, 0, "Q").entries
        P1 = quadrature_matrix(spec, 1, "P").entries
        assert np.abs(Q0 @ P1 - P1 @ Q0).max() == 0


class TestExponentSpec:
    def test_symmetry_required(self):
        with pytest.raises(ValueError):
            ExponentSpec(0, np.zeros(2), np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_pair_coefficient_convention(self):
        e = ExponentSpec.from_pair_coefficients(
            0.0, np.zeros(2), {(0, 1): 1.0, (0, 0): 0.25}
        )
        assert e.pair_coefficient(0, 1) == pytest.approx(1.0)
        assert e.pair_coefficient(0, 0) == pytest.approx(0.25)
        assert e.quadratic[0, 1] == pytest.approx(0.5)


class TestApplyExponent:
    def test_zero_exponent(self):
        spec = BasisSpec(2, 3)
        st = apply_exponent_to_vacuum(
            spec, ExponentSpec(0.0, np.zeros(2), np.zeros((2, 2)))
        )
        assert st.amplitudes[0] == 1.0
        assert np.abs(st.amplitudes[1:]).max() == 0

    def test_single_mode_coherent_series(self):
        beta = 0.5
        spec = BasisSpec(1, 10)
        st = apply_exponent_to_vacuum(
            spec,
            ExponentSpec(-abs(beta) ** 2 / 2, np.array([beta]), np.zeros((1, 1))),
        )
        expected = [
            math.exp(-0.125) * beta**n / math.sqrt(math.factorial(n))
            for n in range(spec.cutoff + 1)
        ]
        np.testing.assert_allclose(st.amplitudes, expected, rtol=1e-12)

    def test_pair_exponent_diagonal(self):
        # exp(a1+ a2+)|00> puts amplitude 1 on every |n,n>
        spec = BasisSpec(2, 5)
        st = apply_exponent_to_vacuum(
            spec, ExponentSpec.from_pair_coefficients(0.0, np.zeros(2), {(0, 1): 1.0})
        )
        grid = st.amplitudes.reshape(spec.shape)
        np.testing.assert_allclose(np.diag(grid), np.ones(spec.cutoff + 1), atol=1e-13)
        off = grid - np.diag(np.diag(grid))
        assert np.abs(off).max() == 0

    def test_against_multinomial_oracle_random(self):
        rng = np.random.default_rng(7)
        for n_modes, cutoff in [(1, 8), (2, 6), (3, 4)]:
            spec = BasisSpec(n_modes, cutoff)
            for _ in range(5):
                lin = rng.normal(size=n_modes) + 1j * rng.normal(size=n_modes)
                lin *= 1.0 / max(1.0, np.linalg.norm(lin))
                quad = rng.normal(size=(n_modes, n_modes)) + 1j * rng.normal(
                    size=(n_modes, n_modes)
                )
                quad = (quad + quad.T) / 2
                quad *= 1.0 / max(1.0, np.linalg.norm(quad))
                expo = ExponentSpec(0.1 - 0.2j, lin, quad)
                st = apply_exponent_to_vacuum(spec, expo)
                oracle = multinomial_series_oracle(spec, expo)
                scale = np.abs(oracle).max()
                np.testing.assert_allclose(
                    st.amplitudes, oracle, atol=1e-12 * scale, rtol=1e-12
                )

    def test_mode_count_mismatch(self):
        with pytest.raises(ValueError):
            apply_exponent_to_vacuum(
                BasisSpec(2, 3), ExponentSpec(0.0, np.zeros(3), np.zeros((3, 3)))
            )


class TestInnerProduct:
    def test_vacuum_norm(self):
        spec = BasisSpec(2, 3)
        assert inner_product(vacuum_state(spec), vacuum_state(spec)) == 1.0

    def test_conjugate_symmetry(self):
        rng = np.random.default_rng(3)
        spec = BasisSpec(1, 5)
        s1 = StateVector(spec, rng.normal(size=6) + 1j * rng.normal(size=6))
        s2 = StateVector(spec, rng.normal(size=6) + 1j * rng.normal(size=6))
        assert inner_product(s1, s2) == pytest.approx(np.conj(inner_product(s2, s1)))

    def test_basis_mismatch(self):
        with pytest.raises(ValueError):
            inner_product(vacuum_state(BasisSpec(1, 3)), vacuum_state(BasisSpec(1, 4)))

    def test_coherent_overlap(self):
        # <z'|z> = exp[z'* z - (|z|^2 + |z'|^2)/2]
        spec = BasisSpec(1, 30)
        val = inner_product(coherent_state(spec, [0.0]), coherent_state(spec, [0.5]))
        assert val == pytest.approx(math.exp(-0.125), abs=1e-10)


class TestCoherent:
    def test_zero_is_vacuum(self):
        spec = BasisSpec(2, 4)
        st = coherent_state(spec, [0.0, 0.0])
        np.testing.assert_array_equal(st.amplitudes, vacuum_state(spec).amplitudes)

    def test_norm_tail(self):
        spec = BasisSpec(1, 20)
        st = coherent_state(spec, [1.0])
        assert abs(st.norm() - 1.0) <= 1e-8

    def test_amplitude_closed_form(self):
        spec = BasisSpec(1, 10)
        st = coherent_state(spec, [0.5])
        assert st.amplitudes[2] == pytest.approx(
            math.exp(-0.125) * 0.25 / math.sqrt(2), abs=1e-14
        )


class TestApplyModeMatrix:
    def test_matches_dense_embedding(self):
        rng = np.random.default_rng(11)
        spec = BasisSpec(3, 3)
        vec = rng.normal(size=spec.dimension) + 1j * rng.normal(size=spec.dimension)
        for mode in range(3):
            dense = ladder_matrix(spec, mode, "raise").entries
            mat1d = ladder_matrix(BasisSpec(1, 3), 0, "raise").entries
            np.testing.assert_allclose(
                apply_mode_matrix(spec, vec, mat1d, mode), dense @ vec, atol=1e-14
            )


class TestStateFile:
    def test_roundtrip_bit_exact(self):
        rng = np.random.default_rng(5)
        spec = BasisSpec(2, 4)
        amps = rng.normal(size=spec.dimension) + 1j * rng.normal(size=spec.dimension)
        amps[rng.choice(spec.dimension, size=10, replace=False)] = 0
        st = StateVector(spec, amps)
        again = state_from_text(state_to_text(st))
        assert again.basis == spec
        assert np.array_equal(again.amplitudes, st.amplitudes)

    def test_any_order(self):
        text = "modes=1 cutoff=2\n2 0.5 0.0\n0 1.0 0.0\n"
        st = state_from_text(text)
        assert st.amplitudes[0] == 1.0
        assert st.amplitudes[2] == 0.5

    def test_duplicate_rejected(self):
        text = "modes=1 cutoff=2\n1 0.5 0.0\n1 0.25 0.0\n"
        with pytest.raises(ValueError, match="duplicate"):
            state_from_text(text)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            state_from_text("modes=1 cutoff=2\n3 0.5 0.0\n")


class TestMultiIndex:
    def test_validate(self):
        MultiIndex((1, 2)).validate(BasisSpec(2, 3))
        with pytest.raises(ValueError):
            MultiIndex((1, 2, 3)).validate(BasisSpec(2, 3))
        with pytest.raises(ValueError):
            MultiIndex((4, 0)).validate(BasisSpec(2, 3))
        with pytest.raises(ValueError):
            MultiIndex((-1, 0))
