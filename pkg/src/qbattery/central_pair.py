"""Two coupled central spins, each in its own finite thermal spin bath.

Reduced dynamics are exact: the joint Hamiltonian depends on each bath only
through collective angular momentum operators, so the 2^M-dimensional bath
splits into Dicke sectors (j, multiplicity) that evolve independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .linalg import (
    DensityMatrix,
    I2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    evolve_and_reduce,
    herm_eigen,
    ket_dm,
    kron_all,
    partial_trace_array,
    thermal_state,
)

MAX_SECTOR_ENTRIES = 10**6
MAX_BRUTE_FORCE_SPINS = 8


@dataclass(frozen=True)
class CentralPairConfig:
    omega1: float
    omega2: float
    omega_a: float
    omega_b: float
    eps1: float
    eps2: float
    g12: float
    interaction: str  # "XXX" | "DM"
    beta_a: float
    beta_b: float
    M: int
    N: int
    initial_state: np.ndarray  # two-qubit density matrix

    def __post_init__(self):
        if self.M < 1 or self.N < 1:
            raise ValueError("bath sizes must be >= 1")
        if self.beta_a < 0 or self.beta_b < 0:
            raise ValueError("inverse temperatures must be >= 0")
        if self.interaction not in ("XXX", "DM"):
            raise ValueError(f"unknown interaction {self.interaction!r}")
        object.__setattr__(self, "initial_state", np.asarray(self.initial_state, dtype=complex))


@dataclass(frozen=True)
class DickeSector:
    j: float
    multiplicity: int
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray

    @property
    def dim(self) -> int:
        return self.jz.shape[0]


def spin_operators(j: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin-j operators in the |j, m> basis ordered m = j .. -j."""
    d = int(round(2 * j)) + 1
    m = j - np.arange(d)
    jz = np.diag(m).astype(complex)
    # <j, m+1 | J+ | j, m>
    raising = np.zeros((d, d), dtype=complex)
    for k in range(1, d):
        mm = m[k]
        raising[k - 1, k] = np.sqrt(j * (j + 1) - mm * (mm + 1))
    jx = (raising + raising.conj().T) / 2
    jy = (raising - raising.conj().T) / (2 * 1j)
    return jx, jy, jz


def dicke_sectors(m: int) -> list[DickeSector]:
    """Sectors j = m/2 down to (m mod 2)/2 with Catalan-triangle multiplicities."""
    if m < 1:
        raise ValueError("bath size must be >= 1")
    sectors = []
    j = m / 2
    while j >= (m % 2) / 2 - 1e-9:
        k = int(round(m / 2 - j))
        mult = comb(m, k) - (comb(m, k - 1) if k >= 1 else 0)
        jx, jy, jz = spin_operators(j)
        sectors.append(DickeSector(j, mult, jx, jy, jz))
        j -= 1
    return sectors


def coupling_term(g12: float, interaction: str) -> np.ndarray:
    """Inter-qubit interaction V on the two-qubit space."""
    if interaction == "XXX":
        return g12 * (
            kron_all(SIGMA_X, SIGMA_X) + kron_all(SIGMA_Y, SIGMA_Y) + kron_all(SIGMA_Z, SIGMA_Z)
        )
    if interaction == "DM":
        return g12 * (
            kron_all(SIGMA_X, SIGMA_Y)
            - kron_all(SIGMA_Y, SIGMA_X)
            + kron_all(SIGMA_Y, SIGMA_Z)
            - kron_all(SIGMA_Z, SIGMA_Y)
            + kron_all(SIGMA_Z, SIGMA_X)
            - kron_all(SIGMA_X, SIGMA_Z)
        )
    raise ValueError(f"unknown interaction {interaction!r}")


def battery_hamiltonian(cfg: CentralPairConfig, which: str = "local") -> np.ndarray:
    h = cfg.omega1 / 2 * kron_all(SIGMA_Z, I2) + cfg.omega2 / 2 * kron_all(I2, SIGMA_Z)
    if which == "full":
        h = h + coupling_term(cfg.g12, cfg.interaction)
    elif which != "local":
        raise ValueError(f"unknown battery Hamiltonian choice {which!r}")
    return h


def sector_hamiltonian(cfg: CentralPairConfig, s1: DickeSector, s2: DickeSector) -> np.ndarray:
    """Joint Hamiltonian on [spin1, spin2, bath1-sector, bath2-sector]."""
    d1, d2 = s1.dim, s2.dim
    dim = 4 * d1 * d2
    if dim * dim > MAX_SECTOR_ENTRIES:
        raise ValueError(f"sector dimension {dim} exceeds guard")
    i1 = np.eye(d1, dtype=complex)
    i2 = np.eye(d2, dtype=complex)
    h = cfg.omega1 / 2 * kron_all(SIGMA_Z, I2, i1, i2)
    h += cfg.omega2 / 2 * kron_all(I2, SIGMA_Z, i1, i2)
    h += kron_all(coupling_term(cfg.g12, cfg.interaction), i1, i2)
    h += cfg.omega_a / cfg.M * kron_all(I2, I2, s1.jz, i2)
    h += cfg.omega_b / cfg.N * kron_all(I2, I2, i1, s2.jz)
    h += cfg.eps1 / np.sqrt(cfg.M) * (
        kron_all(SIGMA_X, I2, s1.jx, i2) + kron_all(SIGMA_Y, I2, s1.jy, i2)
    )
    h += cfg.eps2 / np.sqrt(cfg.N) * (
        kron_all(I2, SIGMA_X, i1, s2.jx) + kron_all(I2, SIGMA_Y, i1, s2.jy)
    )
    return h


def _bath_weights(sector: DickeSector, size: int, beta: float, omega: float) -> np.ndarray:
    """Thermal weights e^{-beta omega m / size} / Z_full for m = j .. -j.

    Z_full is the full 2^size partition function so that sector weights
    and multiplicities compose to a normalized bath state.
    """
    m = sector.j - np.arange(sector.dim)
    log_z = size * np.log(2 * np.cosh(beta * omega / (2 * size)))
    return np.exp(-beta * omega * m / size - log_z)


def evolve_reduced(cfg: CentralPairConfig, grid: Sequence[float]) -> list[DensityMatrix]:
    """Exact reduced two-qubit dynamics via sector-wise unitary evolution."""
    times = np.asarray(grid, dtype=float)
    rho_s = cfg.initial_state
    acc = np.zeros((len(times), 4, 4), dtype=complex)
    for s1 in dicke_sectors(cfg.M):
        w1 = _bath_weights(s1, cfg.M, cfg.beta_a, cfg.omega_a)
        for s2 in dicke_sectors(cfg.N):
            w2 = _bath_weights(s2, cfg.N, cfg.beta_b, cfg.omega_b)
            h = sector_hamiltonian(cfg, s1, s2)
            vals, vecs = herm_eigen(h)
            rho0 = kron_all(rho_s, np.diag(w1).astype(complex), np.diag(w2).astype(complex))
            acc += s1.multiplicity * s2.multiplicity * evolve_and_reduce(
                vals, vecs, rho0, 4, times
            )
    return [DensityMatrix(acc[i], (2, 2)) for i in range(len(times))]


def _embed(op: np.ndarray, pos: int, dims: list[int]) -> np.ndarray:
    ops = [np.eye(d, dtype=complex) for d in dims]
    ops[pos] = op
    return kron_all(*ops)


def brute_force_hamiltonian(cfg: CentralPairConfig) -> np.ndarray:
    """Literal Hamiltonian on the full 2^(2+M+N) product space."""
    dims = [2] * (2 + cfg.M + cfg.N)
    h = cfg.omega1 / 2 * _embed(SIGMA_Z, 0, dims)
    h += cfg.omega2 / 2 * _embed(SIGMA_Z, 1, dims)
    v = coupling_term(cfg.g12, cfg.interaction)
    h += kron_all(v, np.eye(2 ** (cfg.M + cfg.N), dtype=complex))
    for i in range(cfg.M):
        pos = 2 + i
        h += cfg.omega_a / (2 * cfg.M) * _embed(SIGMA_Z, pos, dims)
        h += cfg.eps1 / (2 * np.sqrt(cfg.M)) * (
            _embed(SIGMA_X, 0, dims) @ _embed(SIGMA_X, pos, dims)
            + _embed(SIGMA_Y, 0, dims) @ _embed(SIGMA_Y, pos, dims)
        )
    for i in range(cfg.N):
        pos = 2 + cfg.M + i
        h += cfg.omega_b / (2 * cfg.N) * _embed(SIGMA_Z, pos, dims)
        h += cfg.eps2 / (2 * np.sqrt(cfg.N)) * (
            _embed(SIGMA_X, 1, dims) @ _embed(SIGMA_X, pos, dims)
            + _embed(SIGMA_Y, 1, dims) @ _embed(SIGMA_Y, pos, dims)
        )
    return h


def brute_force_evolve(cfg: CentralPairConfig, grid: Sequence[float]) -> list[DensityMatrix]:
    """Full-space oracle: propagator conjugation plus bath partial trace."""
    if cfg.M + cfg.N > MAX_BRUTE_FORCE_SPINS:
        raise ValueError(f"brute force limited to M + N <= {MAX_BRUTE_FORCE_SPINS}")
    times = np.asarray(grid, dtype=float)
    dims = [2] * (2 + cfg.M + cfg.N)
    h = brute_force_hamiltonian(cfg)
    vals, vecs = herm_eigen(h)

    spin_a = thermal_state(cfg.omega_a / (2 * cfg.M) * SIGMA_Z, cfg.beta_a)
    spin_b = thermal_state(cfg.omega_b / (2 * cfg.N) * SIGMA_Z, cfg.beta_b)
    rho0 = cfg.initial_state
    for _ in range(cfg.M):
        rho0 = np.kron(rho0, spin_a)
    for _ in range(cfg.N):
        rho0 = np.kron(rho0, spin_b)

    rho0_eig = vecs.conj().T @ rho0 @ vecs
    out = []
    for t in times:
        phase = np.exp(-1j * vals * t)
        rho_t = (vecs * phase) @ rho0_eig @ (vecs * phase).conj().T
        out.append(DensityMatrix(partial_trace_array(rho_t, dims, [0, 1]), (2, 2)))
    return out
