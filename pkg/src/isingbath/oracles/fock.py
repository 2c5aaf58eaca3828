"""Brute-force check of the dephasing map: defects plus a truncated Fock bath.

The full Hamiltonian in normal-mode Fock space

    H = sum_k w_k (a_k^+ a_k + 1/2) - C_S (x) sum_k g^S_k x_k^S - C_A (x) sum_k g^A_k x_k^A

is propagated exactly and the bath is traced out. The defect operators are
built from Pauli matrices only: for distant defects ``C_S = (sx_A + sx_B)/2``
and ``C_A = (sx_B - sx_A)/2``; for a shared site both sectors couple to
``(sx_A + sx_B)/2``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

from ..bath import BathModes, ChainSpec, Placement, build_bath_modes
from ..defects import ID2, SIGMA_X, Basis, DefectState, to_basis

MAX_DIM = 200_000
DENSE_DIM = 4096


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class FockBathConfig:
    N_small: int = 2
    n_max: int = 4
    T: float = 0.0
    t_grid: np.ndarray = field(default_factory=lambda: np.linspace(0.0, 50.0, 101))
    weight_cutoff: float = 1e-10

    def __post_init__(self):
        if self.N_small > 3:
            raise OracleError("N_small must be <= 3")
        if self.dim > MAX_DIM:
            raise OracleError(f"Hilbert dimension {self.dim} exceeds {MAX_DIM}")

    @property
    def dim(self) -> int:
        return 4 * (self.n_max + 1) ** (2 * self.N_small)


@dataclass
class OracleResult:
    times: np.ndarray
    rhos: np.ndarray
    diagnostics: dict = field(default_factory=dict)

    @property
    def states(self) -> list[DefectState]:
        return [DefectState(r, Basis.STANDARD_Z) for r in self.rhos]


def defect_couplings(placement) -> tuple[np.ndarray, np.ndarray]:
    sxA = np.kron(SIGMA_X, ID2)
    sxB = np.kron(ID2, SIGMA_X)
    if Placement(placement) is Placement.DISTANT:
        return 0.5 * (sxA + sxB), 0.5 * (sxB - sxA)
    c = 0.5 * (sxA + sxB)
    return c, c


def _mode_ops(n_max: int):
    a = sp.diags(np.sqrt(np.arange(1, n_max + 1)), 1, format="csr")
    return a, sp.identity(n_max + 1, format="csr")


def _embed(op, k, n_modes, ident):
    out = None
    for j in range(n_modes):
        factor = op if j == k else ident
        out = factor if out is None else sp.kron(out, factor, format="csr")
    return out


def fock_hamiltonian(modes: BathModes, n_max: int) -> sp.csr_matrix:
    """Sparse Hamiltonian on defects (x) Fock(S modes, A modes)."""
    omegas = np.concatenate([modes.omega_S, modes.omega_A])
    gammas = np.concatenate([modes.gamma_S, modes.gamma_A])
    n_S = len(modes.omega_S)
    n_modes = len(omegas)
    a, ident = _mode_ops(n_max)
    num = (a.T @ a).tocsr()
    x_unit = (a + a.T).tocsr()
    bath_dim = (n_max + 1) ** n_modes
    H_b = sp.csr_matrix((bath_dim, bath_dim))
    X_S = sp.csr_matrix((bath_dim, bath_dim))
    X_A = sp.csr_matrix((bath_dim, bath_dim))
    for k, (w, g) in enumerate(zip(omegas, gammas)):
        H_b = H_b + w * (_embed(num, k, n_modes, ident) + 0.5 * sp.identity(bath_dim))
        xk = _embed(x_unit, k, n_modes, ident) / np.sqrt(2.0 * w)
        if k < n_S:
            X_S = X_S + g * xk
        else:
            X_A = X_A + g * xk
    C_S, C_A = defect_couplings(modes.spec.placement)
    H = (sp.kron(sp.identity(4), H_b) - sp.kron(sp.csr_matrix(C_S), X_S)
         - sp.kron(sp.csr_matrix(C_A), X_A))
    return H.tocsr()


def _thermal_fock_states(omegas, n_max, T, cutoff):
    """(weight, occupation tuple) pairs in descending weight up to 1 - cutoff."""
    if T == 0:
        return [(1.0, (0,) * len(omegas))]
    single = []
    for w in omegas:
        p = np.exp(-np.arange(n_max + 1) * w / T)
        single.append(p / p.sum())
    combos = []
    for occ in itertools.product(range(n_max + 1), repeat=len(omegas)):
        combos.append((float(np.prod([single[k][n] for k, n in enumerate(occ)])), occ))
    combos.sort(key=lambda c: -c[0])
    picked, acc = [], 0.0
    for wgt, occ in combos:
        picked.append((wgt, occ))
        acc += wgt
        if acc >= 1.0 - cutoff:
            break
    return picked


def _fock_index(occ, n_max):
    idx = 0
    for n in occ:
        idx = idx * (n_max + 1) + n
    return idx


def _propagate(H, psi0, times, dense: bool):
    """Columns of ``psi0`` evolved to every time; shape (T, dim, n_vec)."""
    if dense:
        E, V = np.linalg.eigh(H.toarray())
        c0 = V.conj().T @ psi0
        out = np.empty((len(times),) + psi0.shape, dtype=complex)
        for i, t in enumerate(times):
            out[i] = V @ (np.exp(-1j * E * t)[:, None] * c0)
        unitarity = np.abs(V.conj().T @ V - np.eye(len(E))).max()
        return out, unitarity
    times = np.asarray(times)
    uniform = len(times) > 1 and np.allclose(np.diff(times), times[1] - times[0], rtol=1e-12, atol=1e-12)
    A = (-1j * H).tocsc()
    if uniform:
        out = expm_multiply(A, psi0, start=times[0], stop=times[-1], num=len(times), endpoint=True)
    else:
        out = np.array([expm_multiply(A * t, psi0) for t in times])
    return np.asarray(out), float("nan")


def exact_boson_evolution(cfg: FockBathConfig, spec: ChainSpec, initial: DefectState) -> OracleResult:
    """Reduced defect states from exact propagation in the truncated Fock space."""
    if spec.h != 0:
        raise OracleError("the Fock oracle assumes h = 0")
    small = spec.replace(N=cfg.N_small, T=cfg.T, l=min(spec.l, cfg.N_small))
    modes = build_bath_modes(small)
    H = fock_hamiltonian(modes, cfg.n_max)
    dim = H.shape[0]
    bath_dim = dim // 4
    omegas = np.concatenate([modes.omega_S, modes.omega_A])

    rho_d0 = to_basis(initial, Basis.STANDARD_Z).rho
    p_d, vecs_d = np.linalg.eigh(0.5 * (rho_d0 + rho_d0.conj().T))
    keep = p_d > 1e-14
    p_d, vecs_d = p_d[keep], vecs_d[:, keep]

    bath_states = _thermal_fock_states(omegas, cfg.n_max, cfg.T, cfg.weight_cutoff)
    columns, weights = [], []
    for wb, occ in bath_states:
        e = np.zeros(bath_dim)
        e[_fock_index(occ, cfg.n_max)] = 1.0
        for pd, vd in zip(p_d, vecs_d.T):
            columns.append(np.kron(vd, e))
            weights.append(wb * pd)
    psi0 = np.array(columns, dtype=complex).T
    weights = np.array(weights)
    weights /= weights.sum()

    times = np.asarray(cfg.t_grid, dtype=float)
    psi_t, unitarity = _propagate(H, psi0, times, dense=dim <= DENSE_DIM)

    rhos = np.empty((len(times), 4, 4), dtype=complex)
    energy_drift = 0.0
    E0 = np.real(np.einsum("dk,dk->k", psi0.conj(), H @ psi0))
    for i in range(len(times)):
        blocks = psi_t[i].reshape(4, bath_dim, -1)
        rhos[i] = np.einsum("abk,cbk,k->ac", blocks, blocks.conj(), weights)
        if i % max(1, len(times) // 10) == 0 or i == len(times) - 1:
            Et = np.real(np.einsum("dk,dk->k", psi_t[i].conj(), H @ psi_t[i]))
            energy_drift = max(energy_drift, float(np.abs(Et - E0).max()))
    diag = {
        "dim": dim,
        "unitarity_error": unitarity,
        "energy_drift": energy_drift,
        "bath_states": len(bath_states),
        "modes": modes,
    }
    return OracleResult(times, rhos, diag)


def cutoff_convergence(cfg: FockBathConfig, spec: ChainSpec, initial: DefectState,
                       tolerance: float | None = None) -> float:
    """Largest element change of the reduced state when ``n_max`` is doubled.

    Raises :class:`OracleError` when ``tolerance`` is given and exceeded.
    """
    from dataclasses import replace

    a = exact_boson_evolution(cfg, spec, initial)
    b = exact_boson_evolution(replace(cfg, n_max=2 * cfg.n_max), spec, initial)
    change = float(np.abs(a.rhos - b.rhos).max())
    if tolerance is not None and change > tolerance:
        raise OracleError(f"Fock cutoff n_max={cfg.n_max} not converged: doubling changes rho by {change:.3e}")
    return change
