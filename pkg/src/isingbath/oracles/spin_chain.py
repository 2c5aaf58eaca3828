"""Exact evolution of the two defects coupled to the original spin ring.

Chain spins are ordered ``-N..-1, 1..N``; the full register is ``[A, B, chain]``.

    H = -J sum_<ij> sx_i sx_j - field * sum_i sz_i - gamma (sx_A sx_{-l} + sx_B sx_l) - h (sz_A + sz_B)

With ``field = 1/2`` the lowest-order Holstein-Primakoff map sends this onto
oscillators of unit frequency with nearest-neighbour coupling ``-2J x_i x_j``
and defect coupling ``-sqrt(2) gamma x sx``, i.e. the bosonized model with the
``derived`` coupling prefactor.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from ..bath import Placement
from ..defects import SIGMA_X, SIGMA_Z, Basis, DefectState, to_basis
from .fock import OracleError, OracleResult

MAX_DIM = 4096


@dataclass(frozen=True)
class SpinChainConfig:
    n_sites: int = 8
    J: float = 0.05
    gamma: float = 0.02
    T: float = 0.0
    l: int = 1
    placement: Placement = Placement.DISTANT
    t_grid: np.ndarray = field(default_factory=lambda: np.linspace(0.0, 100.0, 201))
    field: float = 0.5
    h: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "placement", Placement(self.placement))
        if self.n_sites % 2 or self.n_sites < 4:
            raise OracleError("n_sites must be even and >= 4")
        if 4 * 2 ** self.n_sites > MAX_DIM:
            raise OracleError(f"dimension {4 * 2 ** self.n_sites} exceeds {MAX_DIM}")
        if not 1 <= self.l <= self.n_sites // 2:
            raise OracleError("l out of range")

    def site_index(self, label: int) -> int:
        """Register position of chain label ``-N..-1, 1..N`` (defects occupy 0, 1)."""
        N = self.n_sites // 2
        pos = label + N if label < 0 else label + N - 1
        return 2 + pos


def _op(single, position, n_qubits):
    out = sp.identity(1, dtype=complex, format="csr")
    for q in range(n_qubits):
        out = sp.kron(out, sp.csr_matrix(single) if q == position else sp.identity(2), format="csr")
    return out


def chain_hamiltonians(cfg: SpinChainConfig):
    """``(H_total, H_chain_only, sz_ops)`` as dense matrices on the full register."""
    n = cfg.n_sites + 2
    sx = [_op(SIGMA_X, q, n) for q in range(n)]
    sz = [_op(SIGMA_Z, q, n) for q in range(n)]
    chain = list(range(2, n))
    H_b = sp.csr_matrix((2**n, 2**n), dtype=complex)
    for k in range(cfg.n_sites):
        i, j = chain[k], chain[(k + 1) % cfg.n_sites]
        H_b -= cfg.J * sx[i] @ sx[j]
    for i in chain:
        H_b -= cfg.field * sz[i]
    if cfg.placement is Placement.DISTANT:
        H_i = -cfg.gamma * (sx[0] @ sx[cfg.site_index(-cfg.l)] + sx[1] @ sx[cfg.site_index(cfg.l)])
    else:
        H_i = -cfg.gamma * (sx[0] + sx[1]) @ sx[cfg.site_index(cfg.l)]
    H_d = -cfg.h * (sz[0] + sz[1])
    return (H_b + H_i + H_d).toarray(), H_b.toarray(), sz


def _chain_thermal_states(cfg: SpinChainConfig):
    n = cfg.n_sites
    sx = [_op(SIGMA_X, q, n) for q in range(n)]
    sz = [_op(SIGMA_Z, q, n) for q in range(n)]
    H = sp.csr_matrix((2**n, 2**n), dtype=complex)
    for k in range(n):
        H -= cfg.J * sx[k] @ sx[(k + 1) % n]
        H -= cfg.field * sz[k]
    E, V = np.linalg.eigh(H.toarray())
    if cfg.T == 0:
        return np.array([1.0]), V[:, :1]
    w = np.exp(-(E - E[0]) / cfg.T)
    w /= w.sum()
    keep = w > 1e-12
    return w[keep] / w[keep].sum(), V[:, keep]


def exact_spin_chain_evolution(cfg: SpinChainConfig, initial: DefectState) -> OracleResult:
    H, _, sz = chain_hamiltonians(cfg)
    E, V = np.linalg.eigh(H)
    rho_d0 = to_basis(initial, Basis.STANDARD_Z).rho
    p_d, vecs_d = np.linalg.eigh(0.5 * (rho_d0 + rho_d0.conj().T))
    keep = p_d > 1e-14
    pb, vecs_b = _chain_thermal_states(cfg)
    cols, weights = [], []
    for pdi, vd in zip(p_d[keep], vecs_d[:, keep].T):
        for pbi, vb in zip(pb, vecs_b.T):
            cols.append(np.kron(vd, vb))
            weights.append(pdi * pbi)
    psi0 = np.array(cols).T
    weights = np.array(weights)
    c0 = V.conj().T @ psi0
    chain_dim = 2**cfg.n_sites
    times = np.asarray(cfg.t_grid, dtype=float)
    rhos = np.empty((len(times), 4, 4), dtype=complex)
    # (1 - sz)/2 on every chain site, diagonal in the computational basis
    zdiag = np.array([sz[q].diagonal().real for q in range(2, cfg.n_sites + 2)])
    mag_dev = 0.0
    energy_drift = 0.0
    E0 = np.real(np.einsum("dk,dk->k", psi0.conj(), H @ psi0))
    stride = max(1, len(times) // 10)
    for i, t in enumerate(times):
        psi = V @ (np.exp(-1j * E * t)[:, None] * c0)
        blocks = psi.reshape(4, chain_dim, -1)
        rhos[i] = np.einsum("abk,cbk,k->ac", blocks, blocks.conj(), weights)
        probs = (np.abs(psi) ** 2) @ weights
        mag_dev = max(mag_dev, float(((1.0 - zdiag) / 2.0 @ probs).max()))
        if i % stride == 0 or i == len(times) - 1:
            Et = np.real(np.einsum("dk,dk->k", psi.conj(), H @ psi))
            energy_drift = max(energy_drift, float(np.abs(Et - E0).max()))
    diag = {
        "unitarity_error": float(np.abs(V.conj().T @ V - np.eye(len(E))).max()),
        "energy": float(weights @ E0),
        "energy_drift": energy_drift,
        "max_magnetization_deviation": mag_dev,
    }
    return OracleResult(times, rhos, diag)
