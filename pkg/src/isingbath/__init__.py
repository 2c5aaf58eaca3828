"""Exact dephasing and entanglement dynamics of two defect spins on a bosonized Ising ring."""
from .bath import (BathModes, ChainSpec, CouplingNorm, Placement, build_bath_modes, build_potential_matrix,
                   coupling_vectors, diagonalize_sector, parity_split)
from .defects import (Basis, DefectState, evolve, evolve_series, pointer_basis, product_state, to_basis,
                      zeeman_matrix)
from .dephasing import DephasingCoefficients, Occupation, dephasing_coefficients, thermal_occupation
from .entanglement import ConcurrenceResult, concurrence, concurrence_values, spin_flip
from .spectral import SpectralDensity, dfs_feasibility, node_frequencies, spectral_density

__version__ = "0.1.0"

__all__ = [
    "BathModes", "ChainSpec", "CouplingNorm", "Placement", "build_bath_modes", "build_potential_matrix",
    "coupling_vectors", "diagonalize_sector", "parity_split",
    "Basis", "DefectState", "evolve", "evolve_series", "pointer_basis", "product_state", "to_basis",
    "zeeman_matrix",
    "DephasingCoefficients", "Occupation", "dephasing_coefficients", "thermal_occupation",
    "ConcurrenceResult", "concurrence", "concurrence_values", "spin_flip",
    "SpectralDensity", "dfs_feasibility", "node_frequencies", "spectral_density",
]
