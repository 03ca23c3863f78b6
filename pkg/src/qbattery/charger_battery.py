"""Charger-battery pair: the charger sees an anisotropic XY chain with a
transverse field (critical at lambda = 1 for any anisotropy), the battery a
non-interacting spin bath. Dynamics are exact on the full product space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import (
    DensityMatrix,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    evolve_and_reduce,
    herm_eigen,
    ket_dm,
    kron_all,
    thermal_state,
    KET0,
    KET_PLUS,
)

MAX_TOTAL_QUBITS = 14


def _default_charger() -> np.ndarray:
    return ket_dm(KET0)


def _default_battery() -> np.ndarray:
    return ket_dm(KET_PLUS)


@dataclass(frozen=True)
class ChargerBatteryConfig:
    omega_C: float
    omega_B: float
    omega_EC: float
    omega_EB: float
    g_CB: float
    g_CEC: float
    g_BEB: float
    gamma: float
    lam: float
    N: int  # chain length
    M: int  # battery-bath size
    T_C: float
    T_B: float
    boundary: str = "periodic"
    initial_charger: np.ndarray | None = None
    initial_battery: np.ndarray | None = None

    def __post_init__(self):
        if self.N < 2 or self.M < 1:
            raise ValueError("need N >= 2 chain spins and M >= 1 bath spins")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("anisotropy must lie in [0, 1]")
        if (self.T_C <= 0 and not np.isinf(self.T_C)) or (self.T_B <= 0 and not np.isinf(self.T_B)):
            raise ValueError("temperatures must be positive (or +inf)")
        if self.boundary not in ("periodic", "open"):
            raise ValueError(f"unknown boundary {self.boundary!r}")
        if 2 + self.N + self.M > MAX_TOTAL_QUBITS:
            raise ValueError("total qubit count exceeds dense-evolution guard")
        if self.initial_charger is None:
            object.__setattr__(self, "initial_charger", _default_charger())
        if self.initial_battery is None:
            object.__setattr__(self, "initial_battery", _default_battery())

    @property
    def h_battery(self) -> np.ndarray:
        return self.omega_B / 2 * SIGMA_Z


def _embed(op: np.ndarray, pos: int, n: int) -> np.ndarray:
    ops = [np.eye(2, dtype=complex)] * n
    ops[pos] = op
    return kron_all(*ops)


def build_chain_hamiltonian(cfg: ChargerBatteryConfig) -> np.ndarray:
    """Anisotropic XY chain with transverse field on 2^N."""
    n = cfg.N
    h = np.zeros((2**n, 2**n), dtype=complex)
    bonds = range(n) if cfg.boundary == "periodic" else range(n - 1)
    for l in bonds:
        r = (l + 1) % n
        h += (1 + cfg.gamma) / 2 * _embed(SIGMA_X, l, n) @ _embed(SIGMA_X, r, n)
        h += (1 - cfg.gamma) / 2 * _embed(SIGMA_Y, l, n) @ _embed(SIGMA_Y, r, n)
    for l in range(n):
        h -= cfg.lam * _embed(SIGMA_Z, l, n)
    return cfg.omega_EC / 2 * h


def build_total_hamiltonian(cfg: ChargerBatteryConfig) -> np.ndarray:
    """Hermitian on factor order [charger, battery, chain(1..N), bath(1..M)]."""
    nq = 2 + cfg.N + cfg.M
    dim = 2**nq
    h = cfg.omega_C / 2 * _embed(SIGMA_Z, 0, nq)
    h += cfg.omega_B / 2 * _embed(SIGMA_Z, 1, nq)
    h += cfg.g_CB * (
        _embed(SIGMA_X, 0, nq) @ _embed(SIGMA_X, 1, nq)
        + _embed(SIGMA_Y, 0, nq) @ _embed(SIGMA_Y, 1, nq)
    )
    h += kron_all(np.eye(4, dtype=complex), build_chain_hamiltonian(cfg), np.eye(2**cfg.M, dtype=complex))
    for k in range(cfg.M):
        pos = 2 + cfg.N + k
        h += cfg.omega_EB / 2 * _embed(SIGMA_Z, pos, nq)
        h += cfg.g_BEB * (
            _embed(SIGMA_X, 1, nq) @ _embed(SIGMA_X, pos, nq)
            + _embed(SIGMA_Y, 1, nq) @ _embed(SIGMA_Y, pos, nq)
        )
    for l in range(cfg.N):
        pos = 2 + l
        h += cfg.g_CEC * (
            _embed(SIGMA_X, 0, nq) @ _embed(SIGMA_X, pos, nq)
            + _embed(SIGMA_Y, 0, nq) @ _embed(SIGMA_Y, pos, nq)
        )
    return h


def _bath_hamiltonian(cfg: ChargerBatteryConfig) -> np.ndarray:
    m = cfg.M
    h = np.zeros((2**m, 2**m), dtype=complex)
    for k in range(m):
        h += cfg.omega_EB / 2 * _embed(SIGMA_Z, k, m)
    return h


def evolve_battery(
    cfg: ChargerBatteryConfig, grid: Sequence[float]
) -> tuple[list[DensityMatrix], list[DensityMatrix]]:
    """(battery trajectory, charger-battery trajectory) from exact evolution."""
    times = np.asarray(grid, dtype=float)
    h = build_total_hamiltonian(cfg)
    vals, vecs = herm_eigen(h)
    rho_chain = thermal_state(build_chain_hamiltonian(cfg), 1.0 / cfg.T_C)
    rho_bath = thermal_state(_bath_hamiltonian(cfg), 1.0 / cfg.T_B)
    rho0 = kron_all(cfg.initial_charger, cfg.initial_battery, rho_chain, rho_bath)
    cb = evolve_and_reduce(vals, vecs, rho0, 4, times)
    cb_states = [DensityMatrix(cb[i], (2, 2)) for i in range(len(times))]
    b_states = [s.reduce([1]) for s in cb_states]
    return b_states, cb_states


def sweep_lambda(
    cfg: ChargerBatteryConfig, lambdas: Sequence[float], grid: Sequence[float]
):
    """Independent battery trajectories per transverse-field value, in order.

    Returns a list of (lambda, battery trajectory) pairs so duplicate
    sweep values are preserved.
    """
    from dataclasses import replace

    if len(lambdas) == 0:
        raise ValueError("lambda list must be non-empty")
    results = []
    for lam in lambdas:
        b_states, _ = evolve_battery(replace(cfg, lam=float(lam)), grid)
        results.append((float(lam), b_states))
    return results
