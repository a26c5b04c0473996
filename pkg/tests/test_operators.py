import math

import numpy as np
import pytest

from timeobs import (
    DeviationSeries,
    DimensionError,
    MembershipError,
    OperatorMatrix,
    QuantumState,
    ZeroProjectionError,
    build_hamiltonian,
    build_spectrum,
    build_time_operator,
    coefficient_sum,
    commutator,
    covariance_deviation,
    evolve,
    expectation,
    hermiticity_defect,
    membership_decay,
    project_to_zero_sum,
    random_state,
    spectral_norm,
    weak_commutator,
)
from timeobs.denseness import zero_sum_projector_rank
from timeobs.zeroset import TrigSignal, eval_f

SIZES = (2, 4, 8, 16, 32, 64)


def _spectra(n):
    rng = np.random.default_rng(n)
    random_levels = np.sort(rng.uniform(-3.0, 9.0, n))
    while np.any(np.diff(random_levels) <= 0):
        random_levels = np.sort(rng.uniform(-3.0, 9.0, n))
    return [
        build_spectrum("harmonic", n, omega=1.0),
        build_spectrum("box", n, scale=1.0),
        build_spectrum("custom", n, levels=random_levels),
    ]


class TestTimeOperator:
    def test_two_level_harmonic_entries(self, two_level):
        top = build_time_operator(two_level)
        assert top.entries[0, 1] == pytest.approx(-1.0j)
        assert top.entries[1, 0] == pytest.approx(1.0j)
        assert top.entries[0, 0] == 0.0 and top.entries[1, 1] == 0.0

    def test_two_level_box_entry(self):
        top = build_time_operator(build_spectrum("box", 2, scale=1.0))
        assert top.entries[0, 1] == pytest.approx(-1.0j / 3.0)

    @pytest.mark.parametrize("n", SIZES)
    def test_diagonal_vanishes_everywhere(self, n):
        for spec in _spectra(n):
            top = build_time_operator(spec)
            assert np.all(np.diag(top.entries) == 0.0)

    @pytest.mark.parametrize("n", SIZES)
    def test_hermiticity(self, n):
        for spec in _spectra(n):
            top = build_time_operator(spec)
            assert hermiticity_defect(top.entries) <= 1e-13

    def test_hbar_scaling(self):
        spec = build_spectrum("harmonic", 3, omega=1.0, hbar=2.0)
        top = build_time_operator(spec)
        # levels are hbar*omega*(j+1/2), so entries i*hbar/(E_j-E_k) = i/(omega*(j-k))
        assert top.entries[0, 1] == pytest.approx(-1.0j)


class TestHamiltonian:
    def test_harmonic_diagonal(self, two_level):
        ham = build_hamiltonian(two_level)
        np.testing.assert_allclose(np.diag(ham.entries), [0.5, 1.5])
        assert np.all(ham.entries == np.diag(np.diag(ham.entries)))

    def test_box_diagonal(self):
        ham = build_hamiltonian(build_spectrum("box", 3))
        np.testing.assert_allclose(np.diag(ham.entries).real, [1.0, 4.0, 9.0])

    def test_hermitian_tag(self):
        ham = build_hamiltonian(build_spectrum("box", 3))
        assert ham.hermitian


class TestCommutator:
    def test_self_commutation_vanishes(self, two_level):
        ham = build_hamiltonian(two_level)
        comm = commutator(ham, ham)
        assert np.all(comm.entries == 0.0)

    @pytest.mark.parametrize("n", (2, 5, 16))
    def test_closed_form_minus_i_hbar_off_diagonal(self, n):
        for spec in _spectra(n):
            comm = commutator(build_time_operator(spec), build_hamiltonian(spec))
            expected = 1j * spec.hbar * (np.eye(n) - np.ones((n, n)))
            np.testing.assert_allclose(comm.entries, expected, atol=1e-12, rtol=0)

    def test_antisymmetry(self):
        rng = np.random.default_rng(3)
        a = OperatorMatrix(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))
        b = OperatorMatrix(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))
        np.testing.assert_array_equal(
            commutator(a, b).entries, -commutator(b, a).entries
        )

    def test_size_mismatch(self, two_level):
        with pytest.raises(DimensionError):
            commutator(
                build_time_operator(two_level),
                build_hamiltonian(build_spectrum("box", 3)),
            )


class TestWeakCommutator:
    def test_three_level_entries(self):
        spec = build_spectrum("harmonic", 3, omega=1.0, hbar=1.0)
        weak = weak_commutator(spec)
        expected = np.where(np.eye(3, dtype=bool), 0.0, -1.0j)
        np.testing.assert_array_equal(weak.entries, expected)

    @pytest.mark.parametrize("n", SIZES)
    def test_matches_exact_commutator_at_finite_n(self, n):
        for spec in _spectra(n):
            exact = commutator(build_time_operator(spec), build_hamiltonian(spec))
            weak = weak_commutator(spec)
            np.testing.assert_allclose(exact.entries, weak.entries, atol=1e-12, rtol=0)

    @pytest.mark.parametrize("n", (2, 4, 8, 16, 64))
    def test_diagonal_zero_never_i_hbar(self, n):
        for spec in _spectra(n):
            comm = commutator(build_time_operator(spec), build_hamiltonian(spec))
            diag = np.diag(comm.entries)
            assert np.max(np.abs(diag)) <= 1e-13
            # the naive canonical value i*hbar never appears on the diagonal
            assert np.all(np.abs(diag - 1j * spec.hbar) > 0.5 * spec.hbar)

    def test_acts_as_i_hbar_on_zero_sum_states(self):
        spec = build_spectrum("box", 10, scale=0.5)
        weak = weak_commutator(spec)
        for seed in range(20):
            psi = random_state(10, seed, in_zero_sum=True)
            out = weak.entries @ psi.coeffs
            assert np.linalg.norm(out - 1j * spec.hbar * psi.coeffs) <= 1e-10

    def test_commutator_identity_on_subspace_100_states(self):
        spec = build_spectrum("harmonic", 16, omega=1.0)
        comm = commutator(build_time_operator(spec), build_hamiltonian(spec))
        for seed in range(100):
            psi = project_to_zero_sum(random_state(16, seed))
            resid = comm.entries @ psi.coeffs - 1j * spec.hbar * psi.coeffs
            assert np.linalg.norm(resid) <= 1e-10


class TestExpectation:
    def test_eigenstate_energy(self):
        spec = build_spectrum("box", 4)
        ham = build_hamiltonian(spec)
        for j in range(4):
            basis = np.zeros(4)
            basis[j] = 1.0
            val = expectation(ham, QuantumState(basis))
            assert val == pytest.approx(spec.levels[j])

    def test_balanced_state_zero(self, two_level, plus_state):
        top = build_time_operator(two_level)
        assert abs(expectation(top, plus_state)) < 1e-15

    def test_hermitian_expectation_real(self):
        spec = build_spectrum("box", 8, scale=0.3)
        top = build_time_operator(spec)
        for seed in range(10):
            val = expectation(top, random_state(8, seed))
            assert abs(val.imag) <= 1e-13

    def test_minus_sin_closed_form_with_brute_oracle(self, two_level, plus_state):
        top = build_time_operator(two_level)
        taus = np.linspace(0.0, 7.0, 60)
        for tau in taus:
            moved = evolve(plus_state, two_level, tau)
            val = expectation(top, moved)
            # independent oracle: plain matrix-vector product
            c = moved.coeffs
            brute = np.conj(c) @ (top.entries @ c)
            assert val == pytest.approx(complex(brute), abs=1e-14)
            assert val.real == pytest.approx(-math.sin(tau), abs=1e-13)

    def test_dimension_mismatch(self, two_level):
        with pytest.raises(DimensionError):
            expectation(build_time_operator(two_level), QuantumState(np.array([1.0, 0, 0])))


class TestSpectralNorm:
    @pytest.mark.parametrize("n", (2, 4, 8, 16, 32))
    def test_against_lapack_oracle(self, n):
        for spec in _spectra(n):
            top = build_time_operator(spec)
            ours = spectral_norm(top)
            oracle = float(np.linalg.norm(top.entries, 2))
            assert ours == pytest.approx(oracle, rel=1e-6)

    def test_zero_matrix(self):
        assert spectral_norm(OperatorMatrix(np.zeros((3, 3)))) == 0.0


class TestCovarianceDeviation:
    def test_deviation_zero_at_tau_zero(self, two_level, plus_state):
        series = covariance_deviation(two_level, plus_state, np.array([0.0, 1.0]))
        assert series.values[0] == 0.0

    def test_closed_form_minus_sin_minus_tau(self, two_level, plus_state):
        taus = np.linspace(0.0, 8.0, 200)
        series = covariance_deviation(two_level, plus_state, taus)
        np.testing.assert_allclose(series.values, -np.sin(taus) - taus, atol=1e-12)

    def test_deviation_at_pi_is_minus_pi(self, two_level, plus_state):
        series = covariance_deviation(two_level, plus_state, np.array([0.0, math.pi]))
        assert series.values[-1] == pytest.approx(-math.pi, abs=1e-10)

    def test_expectation_bounded_by_norm(self):
        spec = build_spectrum("box", 8, scale=0.4)
        top = build_time_operator(spec)
        bound = spectral_norm(top) * (1.0 + 1e-9)
        taus = np.linspace(0.0, 30.0, 400)
        for seed in range(5):
            psi = random_state(8, seed)
            series = covariance_deviation(spec, psi, taus)
            expect = series.values + taus + expectation(top, psi).real
            assert np.max(np.abs(expect)) <= bound

    def test_unbounded_drift_at_four_norms(self):
        spec = build_spectrum("harmonic", 8, omega=1.0)
        norm = spectral_norm(build_time_operator(spec))
        for seed in range(10):
            psi = random_state(8, seed)
            series = covariance_deviation(spec, psi, np.array([0.0, 4.0 * norm]))
            assert abs(series.values[-1]) >= 2.0 * norm

    def test_empty_grid_rejected(self, two_level, plus_state):
        with pytest.raises(DimensionError):
            covariance_deviation(two_level, plus_state, np.array([]))


class TestMembershipDecay:
    def test_root_two_at_pi(self, two_level, minus_state):
        series = membership_decay(two_level, minus_state, np.array([0.0, math.pi]))
        assert series.values[0] <= 1e-15
        assert series.values[-1] == pytest.approx(math.sqrt(2.0), abs=1e-12)

    def test_matches_signal_modulus(self, two_level, minus_state):
        taus = np.linspace(0.0, 9.0, 100)
        series = membership_decay(two_level, minus_state, taus)
        sig = TrigSignal.from_state(two_level, minus_state)
        np.testing.assert_allclose(series.values, np.abs(eval_f(sig, taus)), atol=1e-14)

    def test_requires_zero_sum_input(self, two_level, plus_state):
        with pytest.raises(MembershipError):
            membership_decay(two_level, plus_state, np.array([0.0, 1.0]))


class TestProjectToZeroSum:
    def test_uniform_input_rejected(self):
        with pytest.raises(ZeroProjectionError):
            project_to_zero_sum(QuantumState(np.full(4, 0.5)))

    def test_uniform_with_phase_rejected(self):
        with pytest.raises(ZeroProjectionError):
            project_to_zero_sum(QuantumState(np.full(4, 0.5) * np.exp(0.3j)))

    def test_idempotent_on_members(self):
        psi = random_state(6, 11, in_zero_sum=True)
        again = project_to_zero_sum(psi)
        np.testing.assert_allclose(again.coeffs, psi.coeffs, atol=1e-13)

    def test_two_level_example(self):
        out = project_to_zero_sum(QuantumState(np.array([1.0, 0.0])))
        np.testing.assert_allclose(
            out.coeffs.real, [1.0 / math.sqrt(2), -1.0 / math.sqrt(2)], atol=1e-15
        )

    def test_output_in_subspace(self):
        for seed in range(20):
            psi = project_to_zero_sum(random_state(9, seed))
            assert abs(coefficient_sum(psi)) <= 1e-13


class TestProjectorRank:
    @pytest.mark.parametrize("n", (2, 3, 5, 8, 16, 32))
    def test_rank_is_n_minus_one(self, n):
        assert zero_sum_projector_rank(n) == n - 1


class TestDeviationSeries:
    def test_requires_increasing_grid(self):
        with pytest.raises(DimensionError):
            DeviationSeries(np.array([0.0, 0.0]), np.array([1.0, 2.0]))

    def test_requires_equal_lengths(self):
        with pytest.raises(DimensionError):
            DeviationSeries(np.array([0.0, 1.0]), np.array([1.0]))


class TestOperatorMatrix:
    def test_rejects_non_square(self):
        with pytest.raises(DimensionError):
            OperatorMatrix(np.zeros((2, 3)))

    def test_rejects_false_hermitian_tag(self):
        with pytest.raises(DimensionError):
            OperatorMatrix(np.array([[0.0, 1.0], [2.0, 0.0]]), hermitian=True)
