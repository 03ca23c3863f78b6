"""Charger on an anisotropic XY chain, battery on a free spin bath."""

import numpy as np
import pytest

from qbattery.charger_battery import (
    ChargerBatteryConfig,
    build_chain_hamiltonian,
    build_total_hamiltonian,
    evolve_battery,
    sweep_lambda,
)
from qbattery.linalg import (
    I2,
    KET_PLUS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    ket_dm,
    kron_all,
)


def make_config(**overrides):
    base = dict(
        omega_C=1.5, omega_B=1.25, omega_EC=0.7, omega_EB=0.6,
        g_CB=0.05, g_CEC=0.04, g_BEB=0.02, gamma=1.0, lam=1.0,
        N=3, M=2, T_C=0.5, T_B=0.8,
    )
    base.update(overrides)
    return ChargerBatteryConfig(**base)


class TestChainHamiltonian:
    def test_ising_limit_has_no_yy_bonds(self):
        cfg = make_config(gamma=1.0, N=3)
        h = build_chain_hamiltonian(cfg)
        expected = np.zeros((8, 8), dtype=complex)
        for l in range(3):
            r = (l + 1) % 3
            ops = [I2, I2, I2]
            ops[l], ops[r] = SIGMA_X, SIGMA_X
            expected += kron_all(*ops)
        for l in range(3):
            ops = [I2, I2, I2]
            ops[l] = SIGMA_Z
            expected -= cfg.lam * kron_all(*ops)
        assert np.allclose(h, cfg.omega_EC / 2 * expected, atol=1e-13)

    def test_isotropic_chain_conserves_magnetization(self):
        cfg = make_config(gamma=0.0, lam=0.0, N=4)
        h = build_chain_hamiltonian(cfg)
        mag = sum(
            kron_all(*[SIGMA_Z if i == l else I2 for i in range(4)]) for l in range(4)
        )
        assert np.max(np.abs(h @ mag - mag @ h)) <= 1e-12

    def test_two_site_periodic_ising_spectrum(self):
        cfg = make_config(gamma=1.0, lam=0.0, N=2)
        h = build_chain_hamiltonian(cfg)
        # two periodic bonds double the single XX coupling
        direct = cfg.omega_EC / 2 * 2 * kron_all(SIGMA_X, SIGMA_X)
        assert np.allclose(np.linalg.eigvalsh(h), np.linalg.eigvalsh(direct), atol=1e-12)

    def test_open_chain_drops_wrap_bond(self):
        periodic = build_chain_hamiltonian(make_config(N=3, boundary="periodic"))
        open_ = build_chain_hamiltonian(make_config(N=3, boundary="open"))
        cfg = make_config(N=3)
        wrap = cfg.omega_EC / 2 * kron_all(SIGMA_X, I2, SIGMA_X)
        assert np.allclose(periodic - open_, wrap, atol=1e-13)


class TestTotalHamiltonian:
    def test_paper_scale_dimension(self):
        h = build_total_hamiltonian(make_config(N=3, M=2))
        assert h.shape == (128, 128)
        assert np.max(np.abs(h - h.conj().T)) <= 1e-12

    def test_decoupled_spectrum_is_direct_sum(self):
        cfg = make_config(g_CB=0.0, g_CEC=0.0, g_BEB=0.0, N=2, M=1)
        h = build_total_hamiltonian(cfg)
        parts = [
            cfg.omega_C / 2 * SIGMA_Z,
            cfg.omega_B / 2 * SIGMA_Z,
            build_chain_hamiltonian(cfg),
            cfg.omega_EB / 2 * SIGMA_Z,
        ]
        expected = np.zeros(0)
        vals = [np.linalg.eigvalsh(p) for p in parts]
        expected = np.sort(
            [a + b + c + d for a in vals[0] for b in vals[1] for c in vals[2] for d in vals[3]]
        )
        assert np.allclose(np.linalg.eigvalsh(h), expected, atol=1e-12)

    def test_exchange_conserves_cb_magnetization(self):
        cfg = make_config(g_CEC=0.0, g_BEB=0.0, N=2, M=1)
        h = build_total_hamiltonian(cfg)
        nq = 2 + cfg.N + cfg.M
        mag = kron_all(SIGMA_Z, *[I2] * (nq - 1)) + kron_all(I2, SIGMA_Z, *[I2] * (nq - 2))
        assert np.max(np.abs(h @ mag - mag @ h)) <= 1e-12

    def test_size_guard(self):
        with pytest.raises(ValueError):
            make_config(N=10, M=5)


class TestEvolveBattery:
    def test_initial_battery_is_plus(self):
        b_states, cb_states = evolve_battery(make_config(), [0.0, 0.5])
        assert np.max(np.abs(b_states[0].matrix - ket_dm(KET_PLUS))) <= 1e-12
        assert cb_states[0].matrix.shape == (4, 4)

    def test_free_precession(self):
        cfg = make_config(g_CB=0.0, g_CEC=0.0, g_BEB=0.0)
        grid = np.linspace(0.0, 10.0, 21)
        b_states, _ = evolve_battery(cfg, grid)
        for t, s in zip(grid, b_states):
            coh = s.matrix[0, 1]
            assert abs(coh) == pytest.approx(0.5, abs=1e-12)
            assert coh == pytest.approx(0.5 * np.exp(-1j * cfg.omega_B * t), abs=1e-10)

    def test_closed_pair_conserves_magnetization(self):
        cfg = make_config(g_CEC=0.0, g_BEB=0.0)
        grid = np.linspace(0.0, 20.0, 41)
        _, cb_states = evolve_battery(cfg, grid)
        mag = kron_all(SIGMA_Z, I2) + kron_all(I2, SIGMA_Z)
        values = [np.trace(mag @ s.matrix).real for s in cb_states]
        assert max(abs(v - values[0]) for v in values) <= 1e-10

    def test_states_valid_and_energy_bounded(self):
        cfg = make_config()
        grid = np.linspace(0.0, 40.0, 81)
        b_states, _ = evolve_battery(cfg, grid)
        h_b = cfg.h_battery
        for s in b_states:
            assert abs(np.trace(s.matrix).real - 1.0) <= 1e-10
            assert np.min(np.linalg.eigvalsh(s.matrix)) >= -1e-9
            e = np.trace(h_b @ s.matrix).real
            assert -cfg.omega_B / 2 - 1e-12 <= e <= cfg.omega_B / 2 + 1e-12


class TestSweepLambda:
    def test_single_value_matches_direct_call(self):
        cfg = make_config(lam=0.7)
        grid = np.linspace(0.0, 5.0, 11)
        direct, _ = evolve_battery(cfg, grid)
        (lam, swept), = sweep_lambda(cfg, [0.7], grid)
        assert lam == 0.7
        for a, b in zip(direct, swept):
            assert np.max(np.abs(a.matrix - b.matrix)) <= 1e-14

    def test_duplicates_identical(self):
        grid = np.linspace(0.0, 3.0, 7)
        results = sweep_lambda(make_config(), [0.5, 0.5], grid)
        assert len(results) == 2
        for a, b in zip(results[0][1], results[1][1]):
            assert np.array_equal(a.matrix, b.matrix)

    def test_rejects_empty_list(self):
        with pytest.raises(ValueError):
            sweep_lambda(make_config(), [], [0.0, 1.0])


class TestConfigValidation:
    def test_rejects_short_chain(self):
        with pytest.raises(ValueError):
            make_config(N=1)

    def test_rejects_bad_anisotropy(self):
        with pytest.raises(ValueError):
            make_config(gamma=1.5)

    def test_rejects_non_positive_temperature(self):
        with pytest.raises(ValueError):
            make_config(T_C=0.0)

    def test_rejects_bad_boundary(self):
        with pytest.raises(ValueError):
            make_config(boundary="twisted")
