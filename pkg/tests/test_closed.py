import numpy as np
import pytest
from scipy.linalg import expm

from kerrchain import (
    HilbertSpace,
    SystemParams,
    build_hamiltonian,
    fidelity,
    frequency_ratio,
    nqs_amplitudes,
    nqs_state,
    period,
    propagate_schrodinger,
    resonant_epsilon,
)
from kerrchain.closed import NormDriftError

ALPHA = 0.001
# frozen from extended-precision evaluation of 12a/(10 +- sqrt(28))
EPS_PLUS = 7.8474956297846980e-4
EPS_MINUS = 2.5485837703548635e-3
T_PLUS = 4343.4013396564511
T_MINUS = 2410.1609501014538


def expm_oracle(params: SystemParams, t: float) -> np.ndarray:
    """Independent propagation of the truncated Hamiltonian."""
    space = HilbertSpace(1)
    h = build_hamiltonian(space, params)
    return expm(-1j * h * t) @ space.basis_state(0, 0, 0)


class TestResonance:
    def test_epsilon_plus_frozen_value(self):
        assert resonant_epsilon(ALPHA, "plus") == pytest.approx(EPS_PLUS, abs=1e-18)

    def test_epsilon_minus_frozen_value(self):
        assert resonant_epsilon(ALPHA, "minus") == pytest.approx(EPS_MINUS, abs=1e-18)

    @pytest.mark.parametrize("branch", ["plus", "minus"])
    def test_ratio_is_two(self, branch):
        eps = resonant_epsilon(ALPHA, branch)
        assert frequency_ratio(ALPHA, eps) == pytest.approx(2.0, abs=1e-12)

    def test_ratio_one_without_pump(self):
        assert frequency_ratio(0.0, 0.5) == pytest.approx(1.0, abs=1e-15)

    def test_ratio_rejects_zero_denominator(self):
        with pytest.raises(ValueError):
            frequency_ratio(0.0, 0.0)

    def test_periods_frozen_values(self):
        assert period(ALPHA, "plus") == pytest.approx(T_PLUS, rel=1e-14)
        assert period(ALPHA, "minus") == pytest.approx(T_MINUS, rel=1e-14)

    def test_ratio_unimodal_and_bounded(self):
        # rises from 1 to its global maximum 1+sqrt(2) at alpha/eps = 1/sqrt(2),
        # then decays back toward 1
        grid = np.linspace(0.0, 10.0, 400)
        ratios = np.array([frequency_ratio(r, 1.0) for r in grid])
        peak = np.argmax(ratios)
        assert np.all(np.diff(ratios[: peak + 1]) >= -1e-14)
        assert np.all(np.diff(ratios[peak:]) <= 1e-14)
        assert ratios.max() <= 1 + np.sqrt(2) + 1e-12
        assert grid[peak] == pytest.approx(1 / np.sqrt(2), abs=0.05)


class TestNqsAmplitudes:
    def test_initial_vacuum(self, minus_params):
        c = nqs_amplitudes(minus_params, 0.0)
        assert c[0] == pytest.approx(1.0)
        assert np.allclose(c[1:], 0.0)

    @pytest.mark.parametrize("branch,t_period", [("plus", T_PLUS), ("minus", T_MINUS)])
    def test_periodic_return_to_vacuum(self, branch, t_period):
        params = SystemParams(alpha=ALPHA, epsilon=resonant_epsilon(ALPHA, branch))
        c = nqs_amplitudes(params, t_period)
        assert abs(c[0]) >= 1 - 1e-6

    def test_amplitude_symmetry_and_norm(self, minus_params):
        rng = np.random.default_rng(7)
        for t in rng.uniform(0, 3 * T_MINUS, size=25):
            c = nqs_amplitudes(minus_params, t)
            assert c[1] == c[4]  # C_001 = C_100
            assert c[3] == c[6]  # C_011 = C_110
            assert np.sum(np.abs(c) ** 2) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("eps", [EPS_PLUS, EPS_MINUS, 0.0017, 0.004])
    def test_matches_expm_oracle(self, eps):
        params = SystemParams(alpha=ALPHA, epsilon=eps)
        rng = np.random.default_rng(11)
        for t in rng.uniform(0, 3 * T_MINUS, size=20):
            assert np.max(np.abs(nqs_amplitudes(params, t) - expm_oracle(params, t))) < 1e-6

    def test_zero_coupling_limit_is_vacuum(self):
        params = SystemParams(alpha=0.0, epsilon=0.0)
        c = nqs_amplitudes(params, 123.4)
        assert c[0] == pytest.approx(1.0)

    def test_pure_coupling_no_pump_stays_vacuum(self):
        params = SystemParams(alpha=0.0, epsilon=0.003)
        c = nqs_amplitudes(params, 500.0)
        assert abs(c[0]) == pytest.approx(1.0, abs=1e-12)


class TestPropagator:
    def test_no_dynamics_without_couplings(self, qubit_space):
        params = SystemParams(alpha=0.0, epsilon=0.0)
        states = propagate_schrodinger(qubit_space, params, np.array([0.0, 50.0, 100.0]))
        for psi in states:
            assert np.isclose(abs(psi[0]), 1.0)

    def test_rk4_matches_closed_form(self, qubit_space, minus_params):
        t_grid = np.linspace(0.0, T_MINUS, 12)
        states = propagate_schrodinger(qubit_space, minus_params, t_grid, method="rk4")
        for t, psi in zip(t_grid, states):
            assert np.max(np.abs(psi - nqs_amplitudes(minus_params, t))) < 1e-6

    def test_eigh_matches_closed_form(self, qubit_space, minus_params):
        t_grid = np.linspace(0.0, 2 * T_MINUS, 9)
        states = propagate_schrodinger(qubit_space, minus_params, t_grid, method="eigh")
        for t, psi in zip(t_grid, states):
            assert np.max(np.abs(psi - nqs_amplitudes(minus_params, t))) < 1e-9

    def test_norm_preserved(self, qubit_space, minus_params):
        states = propagate_schrodinger(
            qubit_space, minus_params, np.linspace(0, T_MINUS, 6), method="rk4")
        for psi in states:
            assert abs(np.linalg.norm(psi) - 1.0) < 1e-8

    def test_huge_step_raises_norm_drift(self, qubit_space):
        # deliberately coarse fixed step on a fast Hamiltonian
        params = SystemParams(alpha=0.3, epsilon=0.7)
        with pytest.raises(NormDriftError):
            propagate_schrodinger(
                qubit_space, params, np.array([200.0]), method="rk4", max_step=20.0)

    def test_decreasing_grid_rejected(self, qubit_space, minus_params):
        with pytest.raises(ValueError):
            propagate_schrodinger(qubit_space, minus_params, np.array([1.0, 0.5]))


class TestFidelity:
    def test_identical_states(self):
        v = np.array([1, 1j, 0, 0, 0, 0, 0, 0]) / np.sqrt(2)
        assert fidelity(v, v) == pytest.approx(1.0)

    def test_orthogonal_states(self, qubit_space):
        assert fidelity(qubit_space.basis_state(0, 0, 0),
                        qubit_space.basis_state(1, 1, 1)) == 0.0

    def test_symmetric(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=8) + 1j * rng.normal(size=8)
        b = rng.normal(size=8) + 1j * rng.normal(size=8)
        a, b = a / np.linalg.norm(a), b / np.linalg.norm(b)
        assert fidelity(a, b) == pytest.approx(fidelity(b, a))

    def test_cross_truncation_embedding(self, plus_params):
        small, big = HilbertSpace(1), HilbertSpace(2)
        psi_small = nqs_amplitudes(plus_params, 0.25 * T_PLUS)
        psi_big = propagate_schrodinger(big, plus_params, np.array([0.25 * T_PLUS]))[0]
        f = fidelity(psi_small, psi_big, small, big)
        assert 0.999 < f <= 1.0 + 1e-9

    def test_dimension_mismatch_without_spaces(self):
        with pytest.raises(ValueError):
            fidelity(np.zeros(8), np.zeros(27))


class TestTruncationValidity:
    @pytest.mark.slow
    def test_full_vs_truncated_half_period(self, plus_params):
        space = HilbertSpace(9)
        t = 0.5 * T_PLUS
        psi = propagate_schrodinger(space, plus_params, np.array([t]))[0]
        cut = nqs_state(plus_params, t, space)
        assert 1.0 - fidelity(psi, cut) <= 1e-4
