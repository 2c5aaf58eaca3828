"""Two-defect Hilbert space: bases, initial states and the exact dephasing map.

Basis conventions
-----------------
StandardZ  ``|++>, |+->, |-+>, |-->`` with ``|+>`` the sigma^z = +1 state and
           defect A as the left tensor factor.
Bell       ``phi^S, psi^S, phi^A, psi^A`` with
           ``phi^{S,A} = (|++> +- |-->)/sqrt2`` and ``psi^{S,A} = (|+-> +- |-+>)/sqrt2``.
Pointer    joint eigenbasis of the defect coupling operators; depends on the
           placement of the defects (see :func:`pointer_basis`).

``|up>`` and ``|down>`` in :func:`product_state` are sigma^z eigenstates. The
sigma^x eigenstates are pointer states and never become entangled.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bath import Placement
from .dephasing import DephasingCoefficients

SQ2 = np.sqrt(2.0)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
ID2 = np.eye(2, dtype=complex)


class Basis(str, enum.Enum):
    STANDARD_Z = "StandardZ"
    BELL = "Bell"
    POINTER = "Pointer"


class InvalidStateError(ValueError):
    pass


# columns are the Bell vectors in the standard basis
BELL_VECTORS = np.array([
    [1, 0, 0, 1],   # phi^S
    [0, 1, 1, 0],   # psi^S
    [1, 0, 0, -1],  # phi^A
    [0, 1, -1, 0],  # psi^A
], dtype=complex).T / SQ2

PHI_S, PSI_S, PHI_A, PSI_A = (BELL_VECTORS[:, k] for k in range(4))


def _flip(a, b):
    return np.outer(a, b.conj()) + np.outer(b, a.conj())


# operators in the standard basis
SX_S = _flip(PSI_S, PHI_S)
SX_A = _flip(PSI_A, PHI_A)


@dataclass(frozen=True)
class PointerBasis:
    """Pointer states as columns in the Bell basis, with their eigenvalue pairs.

    ``eigenvalues[k] = (s^S, s^A)`` enters the dephasing exponent directly.
    For the same-site placement the single operator S_x couples to both
    sectors, so both entries carry its eigenvalue ``(+1, -1, 0, 0)``.
    """

    placement: Placement
    from_bell: np.ndarray
    eigenvalues: np.ndarray

    @property
    def from_standard(self) -> np.ndarray:
        return BELL_VECTORS @ self.from_bell


def pointer_basis(placement) -> PointerBasis:
    placement = Placement(placement)
    r = 1.0 / SQ2
    if placement is Placement.DISTANT:
        U = np.array([
            [r, r, 0, 0],
            [r, -r, 0, 0],
            [0, 0, r, r],
            [0, 0, r, -r],
        ], dtype=complex)
        s = np.array([[1, 0], [-1, 0], [0, 1], [0, -1]], dtype=float)
    else:
        U = np.array([
            [r, r, 0, 0],
            [r, -r, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
        ], dtype=complex)
        s = np.array([[1, 1], [-1, -1], [0, 0], [0, 0]], dtype=float)
    return PointerBasis(placement, U, s)


def _change_matrix(basis: Basis, placement) -> np.ndarray:
    """Unitary whose columns are ``basis`` vectors in the standard basis."""
    if basis is Basis.STANDARD_Z:
        return np.eye(4, dtype=complex)
    if basis is Basis.BELL:
        return BELL_VECTORS
    if placement is None:
        raise InvalidStateError("the pointer basis needs a placement")
    return pointer_basis(placement).from_standard


@dataclass(frozen=True)
class DefectState:
    rho: np.ndarray
    basis: Basis = Basis.STANDARD_Z
    placement: Placement | None = None

    def __post_init__(self):
        rho = np.array(self.rho, dtype=complex)
        if rho.shape != (4, 4):
            raise InvalidStateError(f"expected a 4x4 matrix, got {rho.shape}")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "basis", Basis(self.basis))
        if self.placement is not None:
            object.__setattr__(self, "placement", Placement(self.placement))
        if self.basis is Basis.POINTER and self.placement is None:
            raise InvalidStateError("pointer-basis states must declare a placement")

    def check(self, herm_tol=1e-12, trace_tol=1e-12, psd_tol=1e-10) -> None:
        rho = self.rho
        herm = np.abs(rho - rho.conj().T).max()
        if herm > herm_tol:
            raise InvalidStateError(f"not Hermitian (deviation {herm:.2e})")
        tr = abs(np.trace(rho) - 1.0)
        if tr > trace_tol:
            raise InvalidStateError(f"trace deviates from 1 by {tr:.2e}")
        mineig = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min()
        if mineig < -psd_tol:
            raise InvalidStateError(f"negative eigenvalue {mineig:.2e}")

    def to_csv(self, path) -> Path:
        path = Path(path)
        write_state_series(path, [0.0], self.rho[None], self.basis, self.placement)
        return path


def product_state(alpha_A: float, alpha_B: float) -> DefectState:
    """``(cos a|up> + sin a|down>)_A (x) (cos b|up> + sin b|down>)_B``."""
    a = np.array([np.cos(alpha_A), np.sin(alpha_A)], dtype=complex)
    b = np.array([np.cos(alpha_B), np.sin(alpha_B)], dtype=complex)
    psi = np.kron(a, b)
    return DefectState(np.outer(psi, psi.conj()), Basis.STANDARD_Z)


def pure_state(psi, basis=Basis.STANDARD_Z, placement=None) -> DefectState:
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return DefectState(np.outer(psi, psi.conj()), basis, placement)


def to_basis(state: DefectState, target, placement=None) -> DefectState:
    target = Basis(target)
    placement = Placement(placement) if placement is not None else state.placement
    if state.placement is not None and placement is not state.placement and state.basis is Basis.POINTER:
        raise InvalidStateError("cannot reinterpret a pointer-basis state under another placement")
    if target is state.basis and (target is not Basis.POINTER or placement is state.placement):
        return DefectState(state.rho, target, placement)
    U_src = _change_matrix(state.basis, state.placement)
    U_dst = _change_matrix(target, placement)
    rho_std = U_src @ state.rho @ U_src.conj().T
    rho = U_dst.conj().T @ rho_std @ U_dst
    return DefectState(rho, target, placement)


def dephasing_mask(s: np.ndarray, f_S, f_A, phi_S, phi_A) -> np.ndarray:
    """Multiplicative mask for every time point, shape ``(len(t), 4, 4)``."""
    sS, sA = s[:, 0], s[:, 1]
    dS2 = (sS[:, None] - sS[None, :]) ** 2
    dA2 = (sA[:, None] - sA[None, :]) ** 2
    qS = sS[:, None] ** 2 - sS[None, :] ** 2
    qA = sA[:, None] ** 2 - sA[None, :] ** 2
    f_S, f_A, phi_S, phi_A = (np.asarray(v, dtype=float)[:, None, None] for v in (f_S, f_A, phi_S, phi_A))
    return np.exp(-(f_S * dS2 + f_A * dA2) + 1j * (phi_S * qS + phi_A * qA))


def _pointer_rho(state: DefectState, placement: Placement) -> np.ndarray:
    if state.basis is Basis.POINTER and state.placement is not placement:
        raise InvalidStateError(
            f"state pointer basis is for {state.placement.value}, coefficients for {placement.value}")
    return to_basis(state, Basis.POINTER, placement).rho


def evolve_series(state: DefectState, coeffs: DephasingCoefficients) -> np.ndarray:
    """Pointer-basis density matrices at every time of ``coeffs``, shape ``(T, 4, 4)``."""
    placement = coeffs.spec.placement
    if coeffs.spec.h != 0:
        raise ValueError("the exact dephasing map is only valid for h = 0")
    rho0 = _pointer_rho(state, placement)
    s = pointer_basis(placement).eigenvalues
    return rho0[None] * dephasing_mask(s, coeffs.f_S, coeffs.f_A, coeffs.phi_S, coeffs.phi_A)


def evolve(state: DefectState, coeffs: DephasingCoefficients, t_index: int) -> DefectState:
    """State at ``coeffs.times[t_index]`` evolved from t=0, in the pointer basis.

    Only evolution from the initial time is exposed: the coefficients are
    referenced to t=0 and do not compose.
    """
    placement = coeffs.spec.placement
    if coeffs.spec.h != 0:
        raise ValueError("the exact dephasing map is only valid for h = 0")
    rho0 = _pointer_rho(state, placement)
    s = pointer_basis(placement).eigenvalues
    i = t_index
    mask = dephasing_mask(s, [coeffs.f_S[i]], [coeffs.f_A[i]], [coeffs.phi_S[i]], [coeffs.phi_A[i]])[0]
    return DefectState(rho0 * mask, Basis.POINTER, placement)


def series_to_standard(rhos: np.ndarray, placement) -> np.ndarray:
    U = pointer_basis(placement).from_standard
    return U @ rhos @ U.conj().T


def zeeman_matrix(h: float) -> np.ndarray:
    """``-2h (|phi^A><phi^S| + |phi^S><phi^A|)`` in the Bell basis."""
    Z = np.zeros((4, 4), dtype=complex)
    Z[0, 2] = Z[2, 0] = -2.0 * h
    return Z


def sx_operators(basis=Basis.BELL) -> tuple[np.ndarray, np.ndarray]:
    """``(S_x^S, S_x^A)`` as 4x4 matrices in the Bell or standard basis."""
    basis = Basis(basis)
    if basis is Basis.STANDARD_Z:
        return SX_S.copy(), SX_A.copy()
    if basis is Basis.BELL:
        B = BELL_VECTORS
        return B.conj().T @ SX_S @ B, B.conj().T @ SX_A @ B
    raise ValueError("S_x operators are provided in the StandardZ or Bell basis")


# -- CSV ---------------------------------------------------------------------

def _state_columns():
    cols = []
    for i in range(4):
        for j in range(4):
            cols += [f"re_{i}{j}", f"im_{i}{j}"]
    return cols


def write_state_series(path, times, rhos, basis=Basis.STANDARD_Z, placement=None) -> Path:
    """Row-major 4x4 complex snapshots, one row per time, basis tag on line one."""
    path = Path(path)
    rhos = np.asarray(rhos, dtype=complex).reshape(len(times), 16)
    table = np.empty((len(times), 33))
    table[:, 0] = times
    table[:, 1::2] = rhos.real
    table[:, 2::2] = rhos.imag
    tag = f"# basis={Basis(basis).value}"
    if placement is not None:
        tag += f" placement={Placement(placement).value}"
    header = tag + "\n" + ",".join(["t"] + _state_columns())
    np.savetxt(path, table, delimiter=",", fmt="%.17g", header=header, comments="")
    return path


def read_state_series(path):
    """Inverse of :func:`write_state_series`: ``(times, rhos, basis, placement)``."""
    path = Path(path)
    with path.open() as fh:
        tag = fh.readline().strip().lstrip("#").split()
    meta = dict(item.split("=", 1) for item in tag)
    table = np.atleast_2d(np.loadtxt(path, delimiter=",", skiprows=2))
    rhos = (table[:, 1::2] + 1j * table[:, 2::2]).reshape(-1, 4, 4)
    placement = Placement(meta["placement"]) if "placement" in meta else None
    return table[:, 0], rhos, Basis(meta["basis"]), placement
