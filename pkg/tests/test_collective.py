"""Squeezed-thermal-bath master equation with collective decay."""

from dataclasses import replace

import numpy as np
import pytest

from qbattery.collective import (
    DecoherenceConfig,
    LindbladCoefficients,
    collective_damping_profile,
    dipole_shift,
    evolve,
    lindblad_coefficients,
    lindblad_rhs,
    liouvillian,
    squeezing_coeffs,
    system_hamiltonian,
)
from qbattery.ergotropy import ergotropy
from qbattery.linalg import (
    I2,
    KET0,
    KET1,
    KET_PLUS,
    SIGMA_Z,
    InvariantViolation,
    ket_dm,
    kron_all,
)
from qbattery.validate import check_generator_trace_free, raw_trace_drift

from test_linalg import random_state


def make_config(**overrides):
    base = dict(
        omega1=1.0, omega2=1.0, Gamma1=0.05, Gamma2=0.05, k0r12=0.5,
        initial_state=ket_dm(np.kron(KET0, KET_PLUS)),
        T=5.0, r_sq=0.5, Phi=np.pi / 4,
    )
    base.update(overrides)
    return DecoherenceConfig(**base)


class TestDampingProfile:
    def test_small_separation_limit(self):
        assert collective_damping_profile(1e-3, 0.0) == pytest.approx(1.0, abs=1e-6)

    def test_value_at_two_pi(self):
        assert collective_damping_profile(2 * np.pi, 0.0) == pytest.approx(
            3 / (8 * np.pi**2), abs=1e-12
        )

    def test_orientation_dependence(self):
        assert collective_damping_profile(1.0, 0.0) != pytest.approx(
            collective_damping_profile(1.0, 1.0), abs=1e-3
        )

    def test_rejects_non_positive_separation(self):
        with pytest.raises(ValueError):
            collective_damping_profile(0.0, 0.0)


class TestDipoleShift:
    def test_zero_emission_rate(self):
        assert dipole_shift(make_config(Gamma1=0.0)) == pytest.approx(0.0)

    def test_decays_at_large_separation(self):
        shift = dipole_shift(make_config(k0r12=100.0))
        bound = 0.75 * np.sqrt(0.05 * 0.05) * (2 / 100.0) * 1.01
        assert abs(shift) <= bound

    def test_symmetric_in_rates(self):
        a = dipole_shift(make_config(Gamma1=0.03, Gamma2=0.08))
        b = dipole_shift(make_config(Gamma1=0.08, Gamma2=0.03))
        assert a == pytest.approx(b, abs=1e-15)


class TestSqueezingCoeffs:
    def test_vacuum(self):
        assert squeezing_coeffs(0.0, 0.0, 0.0, 1.0) == (0.0, 0.0)

    def test_thermal_without_squeezing(self):
        n, m = squeezing_coeffs(2.0, 0.0, 0.7, 1.0)
        assert n == pytest.approx(1.0 / np.expm1(0.5))
        assert m == 0.0

    def test_reference_point(self):
        # T=5, omega0=1: N_th = 1/(e^0.2 - 1); then
        # N = N_th cosh(1) + sinh^2(0.5), |M| = sinh(1)(2 N_th + 1)/2
        n, m = squeezing_coeffs(5.0, 0.5, np.pi / 4, 1.0)
        n_th = 1.0 / np.expm1(0.2)
        assert n == pytest.approx(n_th * np.cosh(1.0) + np.sinh(0.5) ** 2, abs=1e-10)
        assert abs(m) == pytest.approx(0.5 * np.sinh(1.0) * (2 * n_th + 1), abs=1e-10)
        assert n == pytest.approx(7.2414, abs=5e-4)
        assert abs(m) == pytest.approx(5.8956, abs=5e-4)
        assert np.angle(m) == pytest.approx(np.pi / 4 - np.pi, abs=1e-12)

    def test_inequality_on_grid(self):
        for T in np.linspace(0.0, 10.0, 21):
            for r in np.linspace(0.0, 2.0, 21):
                n, m = squeezing_coeffs(T, r, np.pi / 3, 1.0)
                assert abs(m) ** 2 <= n * (n + 1) + 1e-12

    def test_rejects_negative_temperature(self):
        with pytest.raises(ValueError):
            squeezing_coeffs(-1.0, 0.0, 0.0, 1.0)


class TestLindbladRhs:
    def test_trace_free(self):
        cfg = make_config()
        coeffs = lindblad_coefficients(cfg)
        rng = np.random.default_rng(0)
        for _ in range(50):
            rho = random_state(rng, 4)
            assert abs(np.trace(lindblad_rhs(rho, cfg, coeffs))) <= 1e-12

    def test_preserves_hermiticity(self):
        cfg = make_config()
        coeffs = lindblad_coefficients(cfg)
        rng = np.random.default_rng(1)
        for _ in range(50):
            rho = random_state(rng, 4)
            out = lindblad_rhs(rho, cfg, coeffs)
            assert np.max(np.abs(out - out.conj().T)) <= 1e-12

    def test_ground_state_stationary_in_vacuum(self):
        cfg = make_config(vacuum=True, include_dipole_shift=False)
        coeffs = lindblad_coefficients(cfg)
        gg = ket_dm(np.kron(KET1, KET1))
        assert np.max(np.abs(lindblad_rhs(gg, cfg, coeffs))) <= 1e-14

    def test_mutated_recycling_terms_break_trace(self):
        result = check_generator_trace_free(gamma_sign_flip=True)
        assert not result.passed

    def test_rejects_wrong_dimension(self):
        cfg = make_config()
        with pytest.raises(ValueError):
            lindblad_rhs(np.eye(2) / 2, cfg, lindblad_coefficients(cfg))


class TestEvolve:
    def test_initial_state_returned_exactly(self):
        cfg = make_config()
        states = evolve(cfg, [0.0, 1.0])
        assert np.max(np.abs(states[0].matrix - cfg.initial_state)) <= 1e-12

    def test_single_qubit_exponential_decay(self):
        # vacuum, cross-damping zeroed: the excited qubit decays exponentially
        # at the rate the generator itself reports at t = 0
        cfg = make_config(
            vacuum=True, include_dipole_shift=False,
            initial_state=ket_dm(np.kron(KET0, KET1)),
        )
        coeffs = lindblad_coefficients(cfg)
        diag = LindbladCoefficients(
            coeffs.N_tilde, coeffs.M_tilde, np.diag(np.diag(coeffs.Gamma)), 0.0
        )
        proj = kron_all(ket_dm(KET0), I2)
        rate = -np.trace(proj @ lindblad_rhs(cfg.initial_state, cfg, diag)).real
        grid = np.linspace(0.0, 50.0, 251)
        states = evolve(cfg, grid, substeps=10, coeffs=diag)
        for t, s in zip(grid, states):
            p = np.trace(proj @ s.matrix).real
            assert p == pytest.approx(np.exp(-rate * t), abs=1e-7)

    def test_trace_drift_bound(self):
        # every power of the generator is trace-free, so the polynomial RK4
        # step preserves trace algebraically; the drift is pure roundoff and
        # sits far below the 1e-8 budget at any substep count
        cfg = make_config()
        for substeps in (1, 10, 20):
            assert raw_trace_drift(cfg, t_end=50.0, dt=1e-2, substeps=substeps) <= 1e-8

    def test_vacuum_long_time_discharge(self):
        # independent regime: any stored work leaks away; a large emission
        # rate makes the subradiant remnant negligible by t = 50
        h = 0.5 * (kron_all(SIGMA_Z, I2) + kron_all(I2, SIGMA_Z))
        cfg = make_config(
            vacuum=True, k0r12=1.2, Gamma1=0.5, Gamma2=0.5,
            initial_state=ket_dm(np.kron(KET0, KET_PLUS)),
        )
        states = evolve(cfg, np.linspace(0.0, 50.0, 101))
        assert ergotropy(states[-1].matrix, h) <= 1e-3

    def test_singlet_near_stationary_in_collective_regime(self):
        h = 0.5 * (kron_all(SIGMA_Z, I2) + kron_all(I2, SIGMA_Z))
        singlet = ket_dm((np.kron(KET0, KET1) - np.kron(KET1, KET0)) / np.sqrt(2))
        cfg = make_config(k0r12=0.05, T=0.4, r_sq=0.5, initial_state=singlet)
        states = evolve(cfg, np.linspace(0.0, 2.0, 51), substeps=400)
        w0 = ergotropy(states[0].matrix, h)
        w2 = ergotropy(states[-1].matrix, h)
        assert w2 >= 0.95 * w0

    def test_positivity_violation_raises(self):
        # grossly insufficient substeps at small separation blow up RK4
        cfg = make_config(k0r12=0.1)
        with pytest.raises(InvariantViolation):
            evolve(cfg, np.linspace(0.0, 5.0, 11), substeps=1)

    def test_liouvillian_matches_rhs(self):
        cfg = make_config()
        coeffs = lindblad_coefficients(cfg)
        lsup = liouvillian(cfg, coeffs)
        rng = np.random.default_rng(2)
        rho = random_state(rng, 4)
        direct = lindblad_rhs(rho, cfg, coeffs)
        assert np.max(np.abs((lsup @ rho.ravel()).reshape(4, 4) - direct)) <= 1e-13


class TestSystemHamiltonian:
    def test_dipole_shift_toggle(self):
        cfg_on = make_config()
        cfg_off = make_config(include_dipole_shift=False)
        coeffs = lindblad_coefficients(cfg_on)
        h_on = system_hamiltonian(cfg_on, coeffs)
        h_off = system_hamiltonian(cfg_off, coeffs)
        assert np.max(np.abs(np.diag(h_on - h_off))) <= 1e-15
        assert abs(h_on[1, 2] - coeffs.Omega12) <= 1e-15
        assert abs(h_off[1, 2]) <= 1e-15


class TestConfigValidation:
    def test_rejects_negative_rate(self):
        with pytest.raises(ValueError):
            make_config(Gamma1=-0.1)

    def test_rejects_zero_separation(self):
        with pytest.raises(ValueError):
            make_config(k0r12=0.0)

    def test_rejects_bad_orientation(self):
        with pytest.raises(ValueError):
            make_config(mu_dot_r=1.5)
