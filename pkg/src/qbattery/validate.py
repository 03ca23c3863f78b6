"""Built-in oracle and invariant checks behind the `validate` CLI command."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .central_pair import CentralPairConfig, brute_force_evolve, evolve_reduced
from .collective import (
    DecoherenceConfig,
    collective_damping_profile,
    evolve as evolve_collective,
    lindblad_coefficients,
    lindblad_rhs,
    squeezing_coeffs,
)
from .ergotropy import ergotropy, incoherent_ergotropy
from .linalg import (
    KET0,
    KET1,
    KET_PLUS,
    SIGMA_M,
    SIGMA_P,
    SIGMA_Z,
    integrate_ode,
    ket_dm,
    kron_all,
    propagator,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str


def _trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(a - b))))


def _random_state(rng: np.random.Generator, d: int) -> np.ndarray:
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def check_sector_vs_brute_force() -> CheckResult:
    rng = np.random.default_rng(11)
    rho0 = _random_state(rng, 4)
    worst = 0.0
    grid = np.linspace(0.0, 10.0, 11)
    for interaction in ("XXX", "DM"):
        cfg = CentralPairConfig(
            omega1=1.15, omega2=1.25, omega_a=1.1, omega_b=1.2,
            eps1=0.5, eps2=0.5, g12=0.75, interaction=interaction,
            beta_a=4.0, beta_b=1.0, M=2, N=2, initial_state=rho0,
        )
        fast = evolve_reduced(cfg, grid)
        slow = brute_force_evolve(cfg, grid)
        worst = max(worst, max(_trace_distance(a.matrix, b.matrix) for a, b in zip(fast, slow)))
    return CheckResult(
        "sector_vs_brute_force", worst <= 1e-9, worst, 1e-9,
        "M=N=2 reduced dynamics, XXX and DM, t in [0, 10]",
    )


def _reference_decoherence_config() -> DecoherenceConfig:
    return DecoherenceConfig(
        omega1=1.0, omega2=1.0, Gamma1=0.05, Gamma2=0.05, k0r12=0.5,
        initial_state=ket_dm(np.kron(KET0, KET_PLUS)),
        T=5.0, r_sq=0.5, Phi=np.pi / 4,
    )


def check_generator_trace_free(gamma_sign_flip: bool = False) -> CheckResult:
    cfg = _reference_decoherence_config()
    coeffs = lindblad_coefficients(cfg)
    rng = np.random.default_rng(7)
    sign = -1.0 if gamma_sign_flip else 1.0
    worst = 0.0
    for _ in range(100):
        rho = _random_state(rng, 4)
        worst = max(worst, abs(np.trace(lindblad_rhs(rho, cfg, coeffs, _recycling_sign=sign))))
    label = " (with injected recycling-term sign flip)" if gamma_sign_flip else ""
    return CheckResult(
        "lindblad_trace_free", worst <= 1e-12, worst, 1e-12,
        f"|Tr drho/dt| on 100 random states{label}",
    )


def raw_trace_drift(cfg: DecoherenceConfig, t_end: float, dt: float, substeps: int) -> float:
    """Max |Tr rho - 1| of the un-renormalized RK4 trajectory."""
    from .collective import _rk4_step_matrix, liouvillian

    coeffs = lindblad_coefficients(cfg)
    step = np.linalg.matrix_power(
        _rk4_step_matrix(liouvillian(cfg, coeffs), dt / substeps), substeps
    )
    vec = cfg.initial_state.ravel().astype(complex)
    drift = 0.0
    for _ in range(int(round(t_end / dt))):
        vec = step @ vec
        drift = max(drift, abs(vec.reshape(4, 4).trace() - 1.0))
    return drift


def check_trace_drift() -> CheckResult:
    cfg = _reference_decoherence_config()
    drift = raw_trace_drift(cfg, t_end=50.0, dt=1e-2, substeps=10)
    return CheckResult("trace_drift", drift <= 1e-8, drift, 1e-8, "raw trajectory to t=50, dt=1e-2/10")


def check_factorization() -> CheckResult:
    cfg = _reference_decoherence_config()
    coeffs = lindblad_coefficients(cfg)
    zeroed = replace(
        coeffs, Gamma=np.diag(np.diag(coeffs.Gamma)), Omega12=0.0
    )
    grid = np.linspace(0.0, 5.0, 101)
    cfg_nd = replace(cfg, include_dipole_shift=False)
    joint = evolve_collective(cfg_nd, grid, substeps=10, coeffs=zeroed)

    def single_qubit(omega: float, gamma: float, rho0: np.ndarray) -> list[np.ndarray]:
        n, m = coeffs.N_tilde, coeffs.M_tilde
        h = omega / 2 * SIGMA_Z
        pm = SIGMA_P @ SIGMA_M
        mp = SIGMA_M @ SIGMA_P

        def rhs(_t, rho):
            out = -1j * (h @ rho - rho @ h)
            out -= 0.5 * gamma * (1 + n) * (rho @ pm + pm @ rho - 2 * SIGMA_M @ rho @ SIGMA_P)
            out -= 0.5 * gamma * n * (rho @ mp + mp @ rho - 2 * SIGMA_P @ rho @ SIGMA_M)
            out += 0.5 * gamma * m * (-2 * SIGMA_P @ rho @ SIGMA_P)
            out += 0.5 * gamma * np.conj(m) * (-2 * SIGMA_M @ rho @ SIGMA_M)
            return out

        return integrate_ode(rhs, rho0, grid, substeps=10)

    q1 = single_qubit(cfg.omega1, cfg.Gamma1, ket_dm(KET0))
    q2 = single_qubit(cfg.omega2, cfg.Gamma2, ket_dm(KET_PLUS))
    worst = max(
        _trace_distance(joint[i].matrix, np.kron(q1[i], q2[i])) for i in range(len(grid))
    )
    return CheckResult(
        "cross_damping_factorization", worst <= 1e-8, worst, 1e-8,
        "Gamma_12 = 0 joint evolution vs independent single-qubit products",
    )


def check_damping_profile_limits() -> CheckResult:
    a = abs(collective_damping_profile(1e-3, 0.0) - 1.0)
    b = abs(collective_damping_profile(2 * np.pi, 0.0) - 3 / (8 * np.pi**2))
    worst = max(a, b / 1e-6)  # scale so one tolerance covers both
    passed = a <= 1e-6 and b <= 1e-12
    return CheckResult("damping_profile_limits", passed, max(a, b), 1e-6, "F(1e-3)=1, F(2pi)=3/(8 pi^2)")


def check_squeezing_inequality() -> CheckResult:
    worst = -np.inf
    for T in np.linspace(0.0, 10.0, 21):
        for r in np.linspace(0.0, 2.0, 21):
            n, m = squeezing_coeffs(T, r, np.pi / 3, 1.0)
            worst = max(worst, abs(m) ** 2 - n * (n + 1))
    return CheckResult(
        "squeezing_inequality", worst <= 1e-12, worst, 1e-12,
        "|M|^2 <= N(N+1) on the (T, r) grid",
    )


def check_rk4_convergence() -> CheckResult:
    rng = np.random.default_rng(3)
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    h = (a + a.conj().T) / 2
    rho0 = _random_state(rng, 8)
    t_end = 1.0

    def rhs(_t, rho):
        return -1j * (h @ rho - rho @ h)

    u = propagator(h, t_end)
    exact = u @ rho0 @ u.conj().T
    errs = []
    for substeps in (8, 16):
        final = integrate_ode(rhs, rho0, [0.0, t_end], substeps=substeps)[-1]
        errs.append(np.max(np.abs(final - exact)))
    ratio = errs[0] / errs[1]
    return CheckResult("rk4_order", ratio >= 12.0, ratio, 12.0, "error ratio under step halving")


ALL_CHECKS = {
    "sector_vs_brute_force": check_sector_vs_brute_force,
    "lindblad_trace_free": check_generator_trace_free,
    "trace_drift": check_trace_drift,
    "cross_damping_factorization": check_factorization,
    "damping_profile_limits": check_damping_profile_limits,
    "squeezing_inequality": check_squeezing_inequality,
    "rk4_order": check_rk4_convergence,
}


def run_checks(name_filter: str | None = None) -> list[CheckResult]:
    results = []
    for name, fn in ALL_CHECKS.items():
        if name_filter and name_filter not in name:
            continue
        results.append(fn())
    return results
