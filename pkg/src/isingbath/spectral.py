"""Spectral densities of the parity sectors and their analytic nodes."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bath import BathModes, ChainSpec

DEFAULT_BROADENING = 0.005
DEFAULT_H_THRESHOLD = 0.2


@dataclass(frozen=True)
class SpectralDensity:
    sector: str
    omegas: np.ndarray
    values: np.ndarray
    broadening: float
    nodes: np.ndarray
    band: tuple[float, float]


def lorentzian(x, half_width):
    return (half_width / np.pi) / (x**2 + half_width**2)


def spectral_density(modes: BathModes, sector: str, broadening: float = DEFAULT_BROADENING,
                     grid=None) -> SpectralDensity:
    """``(pi/2) sum_n g_n^2 / w_n  L(w - w_n)`` with normalized Lorentzians ``L``."""
    if broadening <= 0:
        raise ValueError("broadening must be positive")
    lo, hi = modes.spec.band
    if grid is None:
        grid = np.linspace(max(lo - 10 * broadening, 0.0), hi + 5 * broadening, 4001)
    grid = np.asarray(grid, dtype=float)
    if grid.min() < 0 or grid.max() > hi + 5 * broadening:
        raise ValueError(f"grid must lie within [0, {hi + 5 * broadening:.6g}]")
    w, g, _ = modes.sector(sector)
    weights = 0.5 * np.pi * g**2 / w
    values = np.zeros_like(grid)
    for start in range(0, len(grid), 1024):
        chunk = grid[start:start + 1024]
        values[start:start + 1024] = lorentzian(chunk[:, None] - w[None, :], broadening) @ weights
    nodes = node_frequencies(modes.spec, include_trivial=False) if sector == "A" else np.array([])
    return SpectralDensity(sector, grid, values, broadening, nodes, (lo, hi))


def node_frequencies(spec: ChainSpec, include_trivial: bool = True) -> np.ndarray:
    """Continuum zeros ``sqrt(1 - 4J cos(2 p pi / (2l - 1)))`` of the antisymmetric density.

    ``p = 0`` is the band edge; ``p = 1..l-1`` are the interior zeros.
    """
    if spec.l < 1:
        raise ValueError("l must be >= 1")
    p = np.arange(0 if include_trivial else 1, spec.l)
    return np.sort(np.sqrt(1.0 - 4.0 * spec.J * np.cos(2.0 * p * np.pi / (2 * spec.l - 1))))


def local_minima(sd: SpectralDensity) -> np.ndarray:
    """Grid frequencies of interior local minima, refined by a parabola through three samples."""
    v = sd.values
    idx = np.where((v[1:-1] < v[:-2]) & (v[1:-1] <= v[2:]))[0] + 1
    out = []
    for i in idx:
        x0, x1, x2 = sd.omegas[i - 1:i + 2]
        y0, y1, y2 = v[i - 1:i + 2]
        denom = (y0 - 2 * y1 + y2)
        shift = 0.5 * (y0 - y2) / denom if denom > 0 else 0.0
        out.append(x1 + shift * (x2 - x0) / 2)
    return np.array(out)


@dataclass
class FeasibilityReport:
    J: float
    l: int
    nodes: list = field(default_factory=list)
    threshold: float = DEFAULT_H_THRESHOLD

    @property
    def bosonization_compatible(self) -> bool:
        return any(n["bosonization_compatible"] for n in self.nodes)

    @property
    def has_interior_node(self) -> bool:
        return any(not n["trivial"] for n in self.nodes)

    def summary(self) -> str:
        lines = [f"J={self.J} l={self.l}: tuning h onto a spectral zero"]
        for n in self.nodes:
            kind = "band edge" if n["trivial"] else "interior"
            lines.append(f"  p={n['p']} ({kind}): omega={n['omega']:.6f} needs h={n['required_h']:.6f}"
                         f" -> {'compatible' if n['bosonization_compatible'] else 'incompatible'}")
        if not self.has_interior_node:
            lines.append("  no interior zero: no decoherence-free point away from the band edge")
        lines.append(f"  compatible with the weak-field bosonized regime (h < {self.threshold}): "
                     f"{self.bosonization_compatible}")
        return "\n".join(lines)


def dfs_feasibility(spec: ChainSpec, h_threshold: float = DEFAULT_H_THRESHOLD) -> FeasibilityReport:
    """Zeeman splitting needed to sit on each spectral zero, against the small-h regime.

    The dephasing solution assumes h much smaller than the chain gap; every zero
    lies in ``[sqrt(1-4J), sqrt(1+4J)]``, so for J << 1 the required h is ~1.
    """
    report = FeasibilityReport(spec.J, spec.l, threshold=h_threshold)
    for p in range(spec.l):
        w = math.sqrt(1.0 - 4.0 * spec.J * math.cos(2.0 * p * math.pi / (2 * spec.l - 1)))
        report.nodes.append({
            "p": p,
            "omega": w,
            "required_h": w,
            "trivial": p == 0,
            "bosonization_compatible": w < h_threshold,
        })
    return report
