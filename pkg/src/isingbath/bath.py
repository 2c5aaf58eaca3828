"""Bosonized transverse-field Ising ring and its parity-resolved normal modes.

The chain has ``2N`` sites labelled ``-N..-1, 1..N`` (site 0 is absent) on a
ring, so ``-1`` neighbours ``1`` and ``N`` neighbours ``-N``. Position vectors
are ordered ``(x_{-N}, ..., x_{-1}, x_1, ..., x_N)``.

Under the reflection ``n -> -n`` the ring splits into a symmetric block
``x^S_n = (x_n + x_{-n})/sqrt(2)`` and an antisymmetric block
``x^A_n = (x_n - x_{-n})/sqrt(2)``, ``n = 1..N``. Site ``n`` of the chain maps
to index ``n - 1`` (zero based) of both reduced vectors.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

CACHE_VERSION = 1


class Placement(str, enum.Enum):
    DISTANT = "distant"
    SAME_SITE = "same_site"


class CouplingNorm(str, enum.Enum):
    """Prefactor of the single nonzero entry of the coupling vector.

    ``PAPER`` uses ``2*sqrt(2)*gamma``, the conventional figure normalization. ``DERIVED`` uses ``2*gamma``, which is
    what the parity transform of ``-sqrt(2) gamma x sigma^x`` actually gives.
    The two differ by a factor 2 in every time scale of the dephasing.
    """

    PAPER = "paper"
    DERIVED = "derived"

    def prefactor(self) -> float:
        return 2.0 * math.sqrt(2.0) if self is CouplingNorm.PAPER else 2.0


class SpecError(ValueError):
    """Invalid chain parameters."""


@dataclass(frozen=True)
class ChainSpec:
    """Physical parameters of the chain and of the two defects.

    Defect A sits at site ``-l`` and defect B at ``+l`` for the distant
    placement; for the same-site placement both couple to site ``l``.
    ``h`` is carried for spectral bookkeeping only, the dynamics assume h=0.
    """

    J: float
    gamma: float
    T: float = 1e-5
    N: int = 1000
    l: int = 1
    placement: Placement = Placement.DISTANT
    h: float = 0.0
    coupling_norm: CouplingNorm = CouplingNorm.PAPER

    def __post_init__(self):
        object.__setattr__(self, "placement", Placement(self.placement))
        object.__setattr__(self, "coupling_norm", CouplingNorm(self.coupling_norm))
        self.validate()

    def validate(self):
        if not 0.0 <= self.J < 0.25:
            raise SpecError(f"J={self.J} outside [0, 1/4); squared frequencies must stay positive")
        if self.N < 2:
            raise SpecError(f"N={self.N} must be >= 2")
        if not 1 <= self.l <= self.N:
            raise SpecError(f"l={self.l} must satisfy 1 <= l <= N={self.N}")
        if self.gamma < 0:
            raise SpecError(f"gamma={self.gamma} must be non-negative")
        if self.T < 0:
            raise SpecError(f"T={self.T} must be non-negative")

    @property
    def band(self) -> tuple[float, float]:
        return math.sqrt(1.0 - 4.0 * self.J), math.sqrt(1.0 + 4.0 * self.J)

    def replace(self, **changes) -> "ChainSpec":
        from dataclasses import replace
        return replace(self, **changes)


@dataclass(frozen=True)
class BathModes:
    """Normal-mode frequencies and effective couplings of both parity sectors."""

    spec: ChainSpec
    omega_S: np.ndarray
    omega_A: np.ndarray
    gamma_S: np.ndarray
    gamma_A: np.ndarray
    occupations_S: np.ndarray = field(repr=False)
    occupations_A: np.ndarray = field(repr=False)

    def __post_init__(self):
        for name in ("omega_S", "omega_A", "gamma_S", "gamma_A", "occupations_S", "occupations_A"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def sector(self, which: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(omega, gamma, occupation) for sector ``'S'`` or ``'A'``."""
        if which == "S":
            return self.omega_S, self.gamma_S, self.occupations_S
        if which == "A":
            return self.omega_A, self.gamma_A, self.occupations_A
        raise ValueError(f"unknown sector {which!r}")


def build_potential_matrix(spec: ChainSpec) -> np.ndarray:
    """Potential matrix ``V_b`` of the 2N-site ring (diag 1, neighbours -2J)."""
    spec.validate()
    n = 2 * spec.N
    V = np.eye(n)
    idx = np.arange(n)
    V[idx, (idx + 1) % n] = -2.0 * spec.J
    V[(idx + 1) % n, idx] = -2.0 * spec.J
    return V


def parity_matrix(N: int) -> np.ndarray:
    """Orthogonal map ``R`` from site coordinates to (symmetric, antisymmetric)."""
    flip = np.fliplr(np.eye(N))
    eye = np.eye(N)
    return np.block([[flip, eye], [-flip, eye]]) / math.sqrt(2.0)


def parity_split(V_b: np.ndarray, atol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Block-diagonalize ``V_b`` and return ``(V_S, V_A)``."""
    n2 = V_b.shape[0]
    if n2 % 2 or V_b.shape != (n2, n2):
        raise ValueError(f"V_b must be square with even dimension, got {V_b.shape}")
    N = n2 // 2
    R = parity_matrix(N)
    Lam = R @ V_b @ R.T
    off = max(np.abs(Lam[:N, N:]).max(), np.abs(Lam[N:, :N]).max())
    if off > atol:
        raise ArithmeticError(f"parity transform left off-diagonal blocks of size {off:.3e}")
    V_S = 0.5 * (Lam[:N, :N] + Lam[:N, :N].T)
    V_A = 0.5 * (Lam[N:, N:] + Lam[N:, N:].T)
    return V_S, V_A


def _fix_signs(O: np.ndarray) -> np.ndarray:
    # make the first component of (near-)largest magnitude positive in every column
    mags = np.abs(O)
    lead = np.argmax(mags >= mags.max(axis=0) * (1.0 - 1e-8), axis=0)
    signs = np.sign(O[lead, np.arange(O.shape[1])])
    signs[signs == 0] = 1.0
    return O * signs


def diagonalize_sector(V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return ascending frequencies ``omega`` and orthogonal ``O`` with ``O.T V O = diag(omega**2)``."""
    V = np.asarray(V, dtype=float)
    if not np.allclose(V, V.T, atol=1e-14, rtol=0):
        raise ValueError("sector matrix is not symmetric")
    try:
        w2, O = np.linalg.eigh(V)
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError("eigendecomposition failed to converge") from exc
    if w2[0] <= 0.0:
        raise ArithmeticError(f"non-positive squared frequency {w2[0]:.3e}; J out of range")
    return np.sqrt(w2), _fix_signs(O)


def coupling_vectors(spec: ChainSpec, O_S: np.ndarray, O_A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Effective couplings ``O^T g`` of both sectors, ``g`` nonzero only at site ``l``."""
    if not 1 <= spec.l <= O_S.shape[0]:
        raise SpecError(f"l={spec.l} out of range for N={O_S.shape[0]}")
    g = np.zeros(O_S.shape[0])
    g[spec.l - 1] = spec.coupling_norm.prefactor() * spec.gamma
    return O_S.T @ g, O_A.T @ g


def closed_form_frequencies(J: float, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Analytic sector spectra, ascending: S uses n=0..N-1 and A uses n=1..N."""
    nS = np.arange(0, N)
    nA = np.arange(1, N + 1)
    wS = np.sort(np.sqrt(1.0 - 4.0 * J * np.cos(nS * np.pi / N)))
    wA = np.sort(np.sqrt(1.0 - 4.0 * J * np.cos(nA * np.pi / N)))
    return wS, wA


def build_bath_modes(spec: ChainSpec) -> BathModes:
    from .dephasing import thermal_occupation

    V_S, V_A = parity_split(build_potential_matrix(spec))
    wS, O_S = diagonalize_sector(V_S)
    wA, O_A = diagonalize_sector(V_A)
    gS, gA = coupling_vectors(spec, O_S, O_A)
    return BathModes(
        spec=spec,
        omega_S=wS,
        omega_A=wA,
        gamma_S=gS,
        gamma_A=gA,
        occupations_S=thermal_occupation(wS, spec.T),
        occupations_A=thermal_occupation(wA, spec.T),
    )


# -- cache -------------------------------------------------------------------

def cache_key(spec: ChainSpec) -> str:
    return (f"v{CACHE_VERSION}_N{spec.N}_J{spec.J!r}_g{spec.gamma!r}"
            f"_l{spec.l}_{spec.coupling_norm.value}")


def save_bath_modes(modes: BathModes, path) -> Path:
    path = Path(path)
    s = modes.spec
    np.savez(
        path,
        version=CACHE_VERSION,
        J=s.J, gamma=s.gamma, N=s.N, l=s.l, convention=s.coupling_norm.value,
        omega_S=modes.omega_S, omega_A=modes.omega_A,
        gamma_S=modes.gamma_S, gamma_A=modes.gamma_A,
    )
    return path if path.suffix == ".npz" else path.with_suffix(path.suffix + ".npz")


def load_bath_modes(path, spec: ChainSpec) -> BathModes:
    """Load cached modes; occupations are recomputed for ``spec.T``."""
    from .dephasing import thermal_occupation

    with np.load(path) as data:
        if int(data["version"]) != CACHE_VERSION:
            raise ValueError(f"cache version {int(data['version'])} != {CACHE_VERSION}")
        stored = (float(data["J"]), float(data["gamma"]), int(data["N"]), int(data["l"]), str(data["convention"]))
        wanted = (spec.J, spec.gamma, spec.N, spec.l, spec.coupling_norm.value)
        if stored != wanted:
            raise ValueError(f"cache built for {stored}, requested {wanted}")
        wS, wA = data["omega_S"], data["omega_A"]
        return BathModes(spec, wS, wA, data["gamma_S"], data["gamma_A"],
                         thermal_occupation(wS, spec.T), thermal_occupation(wA, spec.T))


def cached_bath_modes(spec: ChainSpec, cache_dir=None) -> BathModes:
    """Build modes, reusing ``cache_dir/<key>.npz`` when present."""
    if cache_dir is None:
        return build_bath_modes(spec)
    cache_dir = Path(cache_dir)
    path = cache_dir / f"{cache_key(spec)}.npz"
    if path.exists():
        return load_bath_modes(path, spec)
    modes = build_bath_modes(spec)
    cache_dir.mkdir(parents=True, exist_ok=True)
    save_bath_modes(modes, path)
    return modes
