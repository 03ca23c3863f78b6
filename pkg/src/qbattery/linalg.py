"""Complex linear algebra shared by every model: states, propagators, RK4.

Conventions: hbar = k_B = 1; sigma_z = diag(1, -1) with |0> the excited
(+1) eigenstate; tensor factor order is [qubit 1, qubit 2, bath ...].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_P = np.array([[0, 1], [0, 0]], dtype=complex)  # |e><g|
SIGMA_M = np.array([[0, 0], [1, 0]], dtype=complex)  # |g><e|

KET0 = np.array([1, 0], dtype=complex)  # excited
KET1 = np.array([0, 1], dtype=complex)  # ground
KET_PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)


class InvariantViolation(RuntimeError):
    """A physics invariant (trace, positivity, hermiticity) failed."""


def ket_dm(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


@dataclass(frozen=True)
class DensityMatrix:
    """Validated quantum state over subsystems of dimensions ``dims``."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        d = int(np.prod(self.dims))
        if mat.shape != (d, d):
            raise ValueError(f"matrix shape {mat.shape} does not match dims {self.dims}")
        if not np.all(np.isfinite(mat)):
            raise InvariantViolation("non-finite entries in density matrix")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITICITY_TOL:
            raise InvariantViolation("density matrix not Hermitian within 1e-12")
        if abs(np.trace(mat).real - 1.0) > TRACE_TOL or abs(np.trace(mat).imag) > TRACE_TOL:
            raise InvariantViolation(f"trace deviates from 1: {np.trace(mat)}")
        if np.min(np.linalg.eigvalsh(mat)) < -POSITIVITY_TOL:
            raise InvariantViolation("density matrix not positive semidefinite within 1e-9")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def reduce(self, keep: Sequence[int]) -> "DensityMatrix":
        return partial_trace(self, keep)


class SpectralDecomposition(NamedTuple):
    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # orthonormal columns


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; left factor is the slowest-varying index."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise ValueError("kron expects square matrices")
    return np.kron(a, b)


def kron_all(*ops: np.ndarray) -> np.ndarray:
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def partial_trace_array(rho: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Trace out all subsystems not listed in ``keep`` (order preserved)."""
    dims = [int(d) for d in dims]
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {n} subsystems")
    rho = np.asarray(rho).reshape(dims + dims)
    # contract bra/ket indices of every traced subsystem
    traced = [i for i in range(n) if i not in keep]
    for count, i in enumerate(traced):
        # after each trace the tensor loses two axes; recompute position
        axis = i - count
        nleft = rho.ndim // 2
        rho = np.trace(rho, axis1=axis, axis2=axis + nleft)
    dk = int(np.prod([dims[i] for i in keep])) if keep else 1
    return rho.reshape(dk, dk)


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    reduced = partial_trace_array(rho.matrix, rho.dims, keep)
    kept_dims = tuple(rho.dims[i] for i in sorted(set(keep)))
    return DensityMatrix(reduced, kept_dims)


def herm_eigen(h: np.ndarray, tol: float = 1e-10) -> SpectralDecomposition:
    h = np.asarray(h, dtype=complex)
    scale = max(1.0, np.max(np.abs(h)))
    if np.max(np.abs(h - h.conj().T)) > tol * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    vals, vecs = np.linalg.eigh(h)
    return SpectralDecomposition(vals, vecs)


def propagator(h: np.ndarray, t: float) -> np.ndarray:
    """U = exp(-i H t) via spectral decomposition."""
    vals, vecs = herm_eigen(h)
    return (vecs * np.exp(-1j * vals * t)) @ vecs.conj().T


def thermal_state(h: np.ndarray, beta: float) -> np.ndarray:
    """Gibbs state exp(-beta H)/Z; beta=inf gives the ground-subspace mixture."""
    if beta < 0:
        raise ValueError("beta must be non-negative")
    vals, vecs = herm_eigen(h)
    if np.isinf(beta):
        ground = np.isclose(vals, vals[0], atol=1e-12 * max(1.0, abs(vals[0])))
        w = ground.astype(float)
    else:
        w = np.exp(-beta * (vals - vals[0]))
    w /= w.sum()
    return (vecs * w) @ vecs.conj().T


def expectation(rho: np.ndarray, obs: np.ndarray) -> float:
    rho = np.asarray(rho)
    obs = np.asarray(obs)
    if rho.shape != obs.shape:
        raise ValueError("dimension mismatch between state and observable")
    val = np.trace(rho @ obs)
    if abs(val.imag) > 1e-10 * max(1.0, abs(val.real)):
        raise InvariantViolation(f"expectation value has imaginary residual {val.imag}")
    return float(val.real)


def integrate_ode(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0: np.ndarray,
    grid: Sequence[float],
    substeps: int = 1,
) -> list[np.ndarray]:
    """Classical explicit RK4 between grid points, ``substeps`` steps each."""
    grid = np.asarray(grid, dtype=float)
    if len(grid) < 2 or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing with >= 2 points")
    y = np.array(y0, dtype=complex)
    out = [y.copy()]
    for t0, t1 in zip(grid[:-1], grid[1:]):
        h = (t1 - t0) / substeps
        t = t0
        for _ in range(substeps):
            k1 = rhs(t, y)
            k2 = rhs(t + h / 2, y + h / 2 * k1)
            k3 = rhs(t + h / 2, y + h / 2 * k2)
            k4 = rhs(t + h, y + h * k3)
            y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
            t += h
        out.append(y.copy())
    return out


def evolve_and_reduce(
    eigvals: np.ndarray,
    eigvecs: np.ndarray,
    rho0: np.ndarray,
    dim_keep: int,
    times: np.ndarray,
) -> np.ndarray:
    """Trajectory of Tr_env[U(t) rho0 U(t)^dag] for the leading factor.

    The environment is the trailing tensor factor of dimension D/dim_keep.
    Works in the eigenbasis so the cost per time point is O(dim_keep^2 D)
    instead of O(D^3); returns an array of shape (n_t, dim_keep, dim_keep).
    """
    D = eigvecs.shape[0]
    nb = D // dim_keep
    times = np.asarray(times, dtype=float)
    rho_eig = eigvecs.conj().T @ rho0 @ eigvecs
    vr = eigvecs.reshape(dim_keep, nb, D)
    # C[s,r,k,l] = sum_b V[(s,b),k] conj(V[(r,b),l]) * rho_eig[k,l]
    coeff = np.einsum("sbk,rbl->srkl", vr, vr.conj()) * rho_eig[None, None, :, :]
    phases = np.exp(-1j * np.outer(times, eigvals))  # (n_t, D)
    w = (coeff.reshape(dim_keep * dim_keep * D, D) @ phases.conj().T).reshape(
        dim_keep, dim_keep, D, len(times)
    )
    return np.einsum("tk,srkt->tsr", phases, w)
