"""Two-qubit concurrence."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .defects import Basis, DefectState, SIGMA_Y, to_basis

SYSY = np.kron(SIGMA_Y, SIGMA_Y)
# sigma_y (x) sigma_y is real in the standard basis
_SYSY_REAL = SYSY.real

EIG_CLAMP = 1e-12


@dataclass(frozen=True)
class ConcurrenceResult:
    value: float
    lambdas: np.ndarray


def spin_flip(rho) -> np.ndarray:
    """``(sigma_y x sigma_y) rho* (sigma_y x sigma_y)`` in the standard basis."""
    rho = np.asarray(rho.rho if isinstance(rho, DefectState) else rho, dtype=complex)
    return SYSY @ rho.conj() @ SYSY


def _standard_rho(state) -> np.ndarray:
    if isinstance(state, DefectState):
        if state.basis is not Basis.STANDARD_Z:
            state = to_basis(state, Basis.STANDARD_Z)
        return state.rho
    return np.asarray(state, dtype=complex)


def wootters_lambdas(rhos: np.ndarray, psd_tol: float = 1e-10) -> np.ndarray:
    """Descending square roots of the eigenvalues of ``rho rho~`` for a stack of states.

    With ``rho = W W^dagger`` (W from the Hermitian eigendecomposition, eigenvalues
    below ``EIG_CLAMP`` set to zero) the requested roots are the singular values
    of the complex-symmetric ``W^T (sy x sy) W``. This is the Hermitian route
    written so the roots come out directly rather than as square roots of
    roundoff-level eigenvalues.
    """
    rhos = np.asarray(rhos, dtype=complex)
    single = rhos.ndim == 2
    rhos = rhos[None] if single else rhos
    herm = 0.5 * (rhos + np.conj(np.swapaxes(rhos, -1, -2)))
    mu, V = np.linalg.eigh(herm)
    if np.any(mu[..., 0] < -psd_tol):
        raise ValueError(f"state is not positive semidefinite (min eigenvalue {mu[..., 0].min():.3e})")
    mu = np.where(mu < EIG_CLAMP, 0.0, mu)
    W = V * np.sqrt(mu)[..., None, :]
    M = np.swapaxes(W, -1, -2) @ _SYSY_REAL @ W
    lam = np.linalg.svd(M, compute_uv=False)
    return lam[0] if single else lam


def concurrence_values(rhos: np.ndarray) -> np.ndarray:
    """Concurrence of a stack of standard-basis density matrices."""
    lam = wootters_lambdas(rhos)
    return np.clip(lam[..., 0] - lam[..., 1] - lam[..., 2] - lam[..., 3], 0.0, 1.0)


def concurrence(state) -> ConcurrenceResult:
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)``."""
    lam = wootters_lambdas(_standard_rho(state))
    value = float(np.clip(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0))
    return ConcurrenceResult(value, lam)
