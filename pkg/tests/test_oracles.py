import numpy as np
import pytest

from isingbath.bath import ChainSpec, build_bath_modes
from isingbath.defects import Basis, pointer_basis, product_state, series_to_standard, evolve_series, to_basis
from isingbath.dephasing import dephasing_coefficients
from isingbath.entanglement import concurrence_values
from isingbath.experiments import first_peak_time
from isingbath.oracles import (FockBathConfig, OracleError, SpinChainConfig, cutoff_convergence,
                               exact_boson_evolution, exact_spin_chain_evolution)
from isingbath.oracles.fock import _propagate, fock_hamiltonian

from conftest import ORACLE_TIMES


def _analytic(spec, times, initial):
    c = dephasing_coefficients(build_bath_modes(spec), times)
    return series_to_standard(evolve_series(initial, c), spec.placement)


def test_fock_decoupled_is_static():
    spec = ChainSpec(J=0.1, gamma=0.0, T=0.0, N=2)
    s0 = product_state(0.3, 0.8)
    r = exact_boson_evolution(FockBathConfig(n_max=2, t_grid=np.linspace(0, 30, 31)), spec, s0)
    assert np.abs(r.rhos - s0.rho).max() <= 1e-12


def test_fock_matches_dephasing_map(fock_up_up, oracle_spec):
    dev = np.abs(_analytic(oracle_spec, ORACLE_TIMES, product_state(0, 0)) - fock_up_up.rhos).max()
    assert dev <= 1e-6


def test_fock_invariants(fock_up_up):
    d = fock_up_up.diagnostics
    assert d["unitarity_error"] <= 1e-10
    assert d["energy_drift"] <= 1e-10
    U = pointer_basis("distant").from_standard
    pops = np.real(np.diagonal(U.conj().T @ fock_up_up.rhos @ U, axis1=1, axis2=2))
    assert np.abs(pops - pops[0]).max() <= 1e-10
    assert len(fock_up_up.states) == len(ORACLE_TIMES)
    assert fock_up_up.states[0].basis is Basis.STANDARD_Z


def test_fock_thermal_bath():
    spec = ChainSpec(J=0.1, gamma=0.05, T=0.25, N=2, l=1)
    t = np.linspace(0.0, 50.0, 51)
    cfg = FockBathConfig(N_small=2, n_max=4, T=0.25, t_grid=t, weight_cutoff=1e-8)
    r = exact_boson_evolution(cfg, spec, product_state(0, 0))
    assert r.diagnostics["bath_states"] > 1
    assert np.abs(_analytic(spec, t, product_state(0, 0)) - r.rhos).max() <= 1e-4


def test_sparse_propagator_matches_dense():
    spec = ChainSpec(J=0.1, gamma=0.05, T=0.0, N=2)
    H = fock_hamiltonian(build_bath_modes(spec), 2)
    rng = np.random.default_rng(3)
    psi0 = rng.normal(size=(H.shape[0], 2)) + 1j * rng.normal(size=(H.shape[0], 2))
    t = np.linspace(0.0, 20.0, 11)
    dense, unitarity = _propagate(H, psi0, t, dense=True)
    sparse, _ = _propagate(H, psi0, t, dense=False)
    assert unitarity <= 1e-10
    assert np.abs(dense - sparse).max() <= 1e-9
    uneven, _ = _propagate(H, psi0, t ** 1.1, dense=False)
    again, _ = _propagate(H, psi0, t ** 1.1, dense=True)
    assert np.abs(uneven - again).max() <= 1e-9


@pytest.mark.slow
def test_fock_cutoff_convergence(oracle_spec):
    cfg = FockBathConfig(N_small=2, n_max=4, t_grid=np.linspace(0.0, 50.0, 51))
    assert cutoff_convergence(cfg, oracle_spec, product_state(0, 0), tolerance=1e-6) <= 1e-6


def test_fock_cutoff_failure_reported():
    spec = ChainSpec(J=0.1, gamma=0.6, T=0.0, N=2)
    cfg = FockBathConfig(N_small=2, n_max=1, t_grid=np.linspace(0.0, 20.0, 11))
    with pytest.raises(OracleError):
        cutoff_convergence(cfg, spec, product_state(0, 0), tolerance=1e-6)


def test_fock_limits():
    with pytest.raises(OracleError):
        FockBathConfig(N_small=4, n_max=1)
    with pytest.raises(OracleError):
        FockBathConfig(N_small=3, n_max=8)
    with pytest.raises(OracleError):
        exact_boson_evolution(FockBathConfig(n_max=1), ChainSpec(J=0.1, gamma=0.05, N=2, h=0.1),
                              product_state(0, 0))


def test_spin_chain_decoupled_is_static():
    s0 = product_state(0.2, 1.3)
    cfg = SpinChainConfig(n_sites=6, J=0.0, gamma=0.0, t_grid=np.linspace(0, 100, 21))
    r = exact_spin_chain_evolution(cfg, s0)
    assert np.abs(r.rhos - s0.rho).max() <= 1e-12


def test_spin_chain_invariants():
    cfg = SpinChainConfig(n_sites=6, J=0.05, gamma=0.02, t_grid=np.linspace(0, 2000, 41))
    r = exact_spin_chain_evolution(cfg, product_state(0, 0))
    d = r.diagnostics
    assert d["unitarity_error"] <= 1e-10
    assert d["energy_drift"] <= 1e-10
    assert d["max_magnetization_deviation"] <= 0.05
    assert np.abs(np.trace(r.rhos, axis1=1, axis2=2) - 1).max() <= 1e-12


def test_spin_chain_same_site_runs():
    cfg = SpinChainConfig(n_sites=6, J=0.05, gamma=0.02, l=2, placement="same_site",
                          t_grid=np.linspace(0, 500, 11))
    r = exact_spin_chain_evolution(cfg, product_state(0, 0))
    assert np.linalg.eigvalsh(r.rhos).min() >= -1e-10


def test_spin_chain_tracks_bosonized_model():
    """Small chain, derived prefactor: first concurrence peaks within 15%."""
    cfg = SpinChainConfig(n_sites=6, J=0.05, gamma=0.02, l=1, t_grid=np.linspace(0, 20000, 2001))
    s0 = product_state(0, 0)
    chain = exact_spin_chain_evolution(cfg, s0)
    spec = ChainSpec(J=cfg.J, gamma=cfg.gamma, T=0.0, N=3, l=1, coupling_norm="derived")
    Cb = concurrence_values(_analytic(spec, cfg.t_grid, s0))
    Ce = concurrence_values(chain.rhos)
    pb, pe = first_peak_time(cfg.t_grid, Cb), first_peak_time(cfg.t_grid, Ce)
    assert pb is not None and pe is not None
    assert abs(pb - pe) / pe <= 0.15


def test_spin_chain_limits():
    with pytest.raises(OracleError):
        SpinChainConfig(n_sites=12)
    with pytest.raises(OracleError):
        SpinChainConfig(n_sites=5)
    with pytest.raises(OracleError):
        SpinChainConfig(n_sites=6, l=4)
    assert SpinChainConfig(n_sites=8).site_index(-4) == 2
    assert SpinChainConfig(n_sites=8).site_index(4) == 9


def test_initial_state_basis_is_honoured():
    spec = ChainSpec(J=0.1, gamma=0.05, T=0.0, N=2)
    s0 = product_state(0.4, 0.1)
    t = np.linspace(0.0, 10.0, 6)
    a = exact_boson_evolution(FockBathConfig(n_max=2, t_grid=t), spec, s0)
    b = exact_boson_evolution(FockBathConfig(n_max=2, t_grid=t), spec, to_basis(s0, Basis.POINTER, "distant"))
    assert np.abs(a.rhos - b.rhos).max() <= 1e-12
