import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import unitary_group

from isingbath.defects import (BELL_VECTORS, PHI_S, PSI_A, Basis, DefectState, product_state, pure_state,
                               to_basis)
from isingbath.entanglement import SYSY, concurrence, concurrence_values, spin_flip, wootters_lambdas

seeds = st.integers(0, 2**32 - 1)


def random_rho(rng, rank=4):
    G = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = G @ G.conj().T
    return rho / np.trace(rho)


def werner(p):
    return p * np.outer(PSI_A, PSI_A.conj()) + (1 - p) * np.eye(4) / 4


def brute_force_concurrence(rho, dps=40):
    """Square roots of the eigenvalues of the non-Hermitian rho rho~, in extended precision."""
    mpmath.mp.dps = dps
    R = mpmath.matrix(rho.tolist())
    Y = mpmath.matrix(SYSY.tolist())
    Rc = mpmath.matrix([[mpmath.conj(R[i, j]) for j in range(4)] for i in range(4)])
    ev, _ = mpmath.eig(R * Y * Rc * Y)
    lam = sorted((mpmath.sqrt(max(mpmath.re(e), 0)) for e in ev), reverse=True)
    return float(max(0, lam[0] - lam[1] - lam[2] - lam[3]))


def test_spin_flip_fixed_points():
    rho = np.outer(PHI_S, PHI_S.conj())
    np.testing.assert_allclose(spin_flip(rho), rho, atol=1e-15)
    np.testing.assert_allclose(spin_flip(np.eye(4) / 4), np.eye(4) / 4, atol=1e-15)


@given(seed=seeds)
def test_spin_flip_involution(seed):
    rho = random_rho(np.random.default_rng(seed))
    assert np.abs(spin_flip(spin_flip(rho)) - rho).max() <= 1e-13


@pytest.mark.parametrize("k", range(4))
def test_bell_states(k):
    assert concurrence(pure_state(BELL_VECTORS[:, k])).value == pytest.approx(1.0, abs=1e-10)
    bell = pure_state(np.eye(4)[k], Basis.BELL)
    assert concurrence(bell).value == pytest.approx(1.0, abs=1e-10)


@given(a=st.floats(-4, 4), b=st.floats(-4, 4))
def test_product_states(a, b):
    assert concurrence(product_state(a, b)).value <= 1e-10


@pytest.mark.parametrize("p", [0.0, 1 / 3, 2 / 3, 1.0])
def test_werner(p):
    expected = max(0.0, (3 * p - 1) / 2)
    rho = werner(p)
    assert brute_force_concurrence(rho) == pytest.approx(expected, abs=1e-12)
    assert concurrence(rho).value == pytest.approx(expected, abs=1e-10)


@settings(max_examples=25, deadline=None)
@given(seed=seeds)
def test_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    rho = random_rho(rng, rank=int(rng.integers(1, 5)))
    assert concurrence(rho).value == pytest.approx(brute_force_concurrence(rho), abs=1e-10)


def test_local_unitary_invariance():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(100):
        rho = random_rho(rng, rank=int(rng.integers(1, 5)))
        U = np.kron(unitary_group.rvs(2, random_state=rng), unitary_group.rvs(2, random_state=rng))
        worst = max(worst, abs(concurrence(rho).value - concurrence(U @ rho @ U.conj().T).value))
    assert worst <= 1e-10


@settings(max_examples=50, deadline=None)
@given(seed=seeds, terms=st.integers(1, 6))
def test_separable_mixtures(seed, terms):
    rng = np.random.default_rng(seed)
    rho = np.zeros((4, 4), dtype=complex)
    for w in rng.dirichlet(np.ones(terms)):
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        b = rng.normal(size=2) + 1j * rng.normal(size=2)
        psi = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
        rho += w * np.outer(psi, psi.conj())
    assert concurrence(rho).value <= 1e-10


@given(seed=seeds)
def test_range(seed):
    rng = np.random.default_rng(seed)
    C = concurrence_values(np.array([random_rho(rng, r) for r in (1, 2, 3, 4)]))
    assert np.all(C >= 0) and np.all(C <= 1)


@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_continuity(seed):
    rng = np.random.default_rng(seed)
    rho = 0.8 * random_rho(rng, rank=1) + 0.2 * np.eye(4) / 4
    D = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    D = D + D.conj().T
    D -= np.trace(D) / 4 * np.eye(4)
    D /= np.abs(np.linalg.eigvalsh(D)).max()
    c0 = concurrence(rho).value
    diffs = [abs(concurrence(rho + eps * D).value - c0) for eps in (1e-2, 1e-4, 1e-6, 1e-8)]
    assert diffs[-1] <= 1e-6
    for eps, d in zip((1e-2, 1e-4, 1e-6, 1e-8), diffs):
        assert d <= 50 * eps


def test_batched_matches_single():
    rng = np.random.default_rng(7)
    rhos = np.array([random_rho(rng, r) for r in (1, 2, 4, 3)])
    batch = concurrence_values(rhos)
    np.testing.assert_array_equal(batch, [concurrence(r).value for r in rhos])
    assert wootters_lambdas(rhos).shape == (4, 4)


def test_basis_tag_respected():
    s = to_basis(pure_state(PHI_S), Basis.POINTER, "distant")
    assert concurrence(s).value == pytest.approx(1.0, abs=1e-12)
    assert concurrence(DefectState(np.eye(4) / 4)).value == 0.0


def test_rejects_non_positive():
    with pytest.raises(ValueError):
        concurrence(np.diag([1.2, -0.2, 0, 0]))
