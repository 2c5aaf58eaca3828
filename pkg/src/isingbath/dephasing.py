"""Exact attenuation and phase functions of the pure-dephasing map."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bath import BathModes, ChainSpec


class Occupation(str, enum.Enum):
    """Thermal factor multiplying each attenuation term.

    ``PLUS`` is ``2n+1 = coth(omega/2T)``; ``MINUS`` is the ``2n-1`` variant,
    kept only for auditing (it is negative at low temperature).
    """

    PLUS = "plus"
    MINUS = "minus"


def thermal_occupation(omega, T: float):
    """Bose-Einstein occupation ``1/(exp(omega/T) - 1)``, exactly 0 at T=0."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("frequencies must be positive")
    if T < 0:
        raise ValueError("temperature must be non-negative")
    if T == 0:
        out = np.zeros_like(omega)
    else:
        # x may overflow to inf and exp(-x) underflow to 0: both give the right limit
        with np.errstate(over="ignore", under="ignore"):
            x = omega / T
            out = np.exp(-x) / -np.expm1(-x)
    return out if out.ndim else float(out)


def neumaier_sum(terms: np.ndarray, axis: int = 0) -> np.ndarray:
    """Compensated (Kahan-Babuska) sum along ``axis``, accumulated in order."""
    terms = np.moveaxis(np.asarray(terms, dtype=float), axis, 0)
    s = np.zeros(terms.shape[1:])
    c = np.zeros(terms.shape[1:])
    for x in terms:
        t = s + x
        big = np.abs(s) >= np.abs(x)
        c += np.where(big, (s - t) + x, (x - t) + s)
        s = t
    return s + c


@dataclass(frozen=True)
class DephasingCoefficients:
    spec: ChainSpec
    times: np.ndarray
    f_S: np.ndarray
    f_A: np.ndarray
    phi_S: np.ndarray
    phi_A: np.ndarray
    occupation: Occupation = Occupation.PLUS

    def __len__(self):
        return len(self.times)

    def to_csv(self, path) -> Path:
        path = Path(path)
        table = np.column_stack([self.times, self.f_S, self.f_A, self.phi_S, self.phi_A])
        np.savetxt(path, table, delimiter=",", fmt="%.17g", header="t,f_S,f_A,phi_S,phi_A", comments="")
        return path


def _sector_terms(omega, gamma, occ, times, occupation: Occupation, chunk: int = 2048):
    order = np.argsort(omega, kind="stable")
    w = omega[order][:, None]
    g2 = (gamma[order] ** 2)[:, None]
    n = occ[order][:, None]
    factor = 2.0 * n + 1.0 if occupation is Occupation.PLUS else 2.0 * n - 1.0
    f = np.empty_like(times)
    phi = np.empty_like(times)
    for start in range(0, len(times), chunk):
        t = times[None, start:start + chunk]
        wt = w * t
        one_minus_cos = 2.0 * np.sin(0.5 * wt) ** 2
        f[start:start + chunk] = neumaier_sum(g2 * factor / (2.0 * w**3) * one_minus_cos)
        phi[start:start + chunk] = neumaier_sum(g2 / (2.0 * w**2) * (t - np.sin(wt) / w))
    return f, phi


def dephasing_coefficients(modes: BathModes, times, occupation=Occupation.PLUS) -> DephasingCoefficients:
    """Evaluate ``f^{S,A}(t)`` and ``phi^{S,A}(t)`` on ``times``.

    f(t)   = sum_i g_i^2 (2 n_i + 1) / (2 w_i^3) * (1 - cos w_i t)
    phi(t) = sum_i g_i^2 / (2 w_i^2) * (t - sin(w_i t) / w_i)

    Terms are accumulated in ascending frequency with compensated summation.
    """
    occupation = Occupation(occupation)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if not np.all(np.isfinite(times)) or np.any(times < 0):
        raise ValueError("times must be finite and non-negative")
    f_S, phi_S = _sector_terms(modes.omega_S, modes.gamma_S, modes.occupations_S, times, occupation)
    f_A, phi_A = _sector_terms(modes.omega_A, modes.gamma_A, modes.occupations_A, times, occupation)
    return DephasingCoefficients(modes.spec, times, f_S, f_A, phi_S, phi_A, occupation)


def phase_rates(modes: BathModes) -> tuple[float, float]:
    """Asymptotic slopes ``sum g^2 / (2 w^2)`` of phi^S and phi^A."""
    rS = float(np.sum(modes.gamma_S**2 / (2.0 * modes.omega_S**2)))
    rA = float(np.sum(modes.gamma_A**2 / (2.0 * modes.omega_A**2)))
    return rS, rA
