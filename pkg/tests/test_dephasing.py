import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isingbath.bath import BathModes, ChainSpec, build_bath_modes
from isingbath.defects import Basis, pointer_basis, product_state, to_basis
from isingbath.dephasing import (Occupation, dephasing_coefficients, neumaier_sum, phase_rates,
                                 thermal_occupation)
from isingbath.oracles import FockBathConfig, exact_boson_evolution

from conftest import ORACLE_TIMES


def _bose_mp(omega, T):
    mpmath.mp.dps = 50
    x = mpmath.mpf(omega) / mpmath.mpf(T)
    return float(1 / mpmath.expm1(x))


def test_occupation_vacuum():
    assert thermal_occupation(1.0, 0.0) == 0.0
    assert thermal_occupation(1.0, 1e-3) == 0.0


def test_occupation_unit_temperature():
    assert thermal_occupation(1.0, 1.0) == pytest.approx(1.0 / (math.e - 1.0), rel=1e-15)
    assert thermal_occupation(1.0, 1.0) == pytest.approx(0.581977, abs=1e-6)


def test_occupation_deep_cold_no_overflow():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        with np.errstate(over="raise", divide="raise", invalid="raise"):
            n = thermal_occupation(0.45, 1e-5)
    assert n == _bose_mp(0.45, 1e-5) == 0.0


@given(omega=st.floats(0.3, 1.5), logT=st.floats(-6.0, 2.0))
def test_occupation_matches_high_precision(omega, logT):
    T = 10.0**logT
    # rounding of omega/T alone is amplified by x in exp(-x)
    x = omega / T
    rel = 4e-16 * max(1.0, x) + 1e-15
    assert thermal_occupation(omega, T) == pytest.approx(_bose_mp(omega, T), rel=rel, abs=1e-300)


def test_occupation_rejects_bad_input():
    with pytest.raises(ValueError):
        thermal_occupation(0.0, 1.0)
    with pytest.raises(ValueError):
        thermal_occupation(1.0, -1.0)


def test_zero_time():
    m = build_bath_modes(ChainSpec(J=0.2, gamma=0.04, N=100, l=10))
    c = dephasing_coefficients(m, [0.0])
    assert c.f_S[0] == c.f_A[0] == c.phi_S[0] == c.phi_A[0] == 0.0


def _single_mode(g):
    spec = ChainSpec(J=0.0, gamma=0.0, N=2, T=0.0)
    return BathModes(spec, [1.0], [1.0], [g], [0.0], [0.0], [0.0])


def test_single_mode_closed_form():
    g = 0.3
    t = np.linspace(0.0, 40.0, 401)
    c = dephasing_coefficients(_single_mode(g), t)
    np.testing.assert_allclose(c.f_S, g**2 * (1 - np.cos(t)) / 2, atol=1e-15)
    np.testing.assert_allclose(c.phi_S, g**2 * (t - np.sin(t)) / 2, atol=1e-14)
    assert not c.f_A.any() and not c.phi_A.any()


def test_minus_variant_flips_sign_at_zero_temperature():
    t = np.linspace(0.0, 20.0, 51)
    m = _single_mode(0.2)
    plus = dephasing_coefficients(m, t, Occupation.PLUS)
    minus = dephasing_coefficients(m, t, "minus")
    np.testing.assert_allclose(minus.f_S, -plus.f_S, atol=1e-16)
    np.testing.assert_array_equal(minus.phi_S, plus.phi_S)


def test_rejects_negative_times():
    m = _single_mode(0.1)
    with pytest.raises(ValueError):
        dephasing_coefficients(m, [-1.0, 0.0])


specs = st.builds(
    lambda J, g, N, T, frac: ChainSpec(J=J, gamma=g, N=N, T=T, l=max(1, int(frac * N))),
    st.floats(0.0, 0.24), st.floats(0.0, 0.1), st.integers(2, 40), st.floats(0.0, 2.0), st.floats(0.0, 1.0),
)


@settings(max_examples=40, deadline=None)
@given(spec=specs, tmax=st.floats(1.0, 500.0))
def test_attenuation_nonnegative_and_bounded(spec, tmax):
    m = build_bath_modes(spec)
    c = dephasing_coefficients(m, np.linspace(0.0, tmax, 97))
    for f, (w, g, n) in ((c.f_S, m.sector("S")), (c.f_A, m.sector("A"))):
        bound = np.sum(g**2 * (2 * n + 1) / w**3)
        assert f.min() >= 0.0
        assert f.max() <= bound * (1 + 1e-12) + 1e-300


@settings(max_examples=25, deadline=None)
@given(J=st.floats(0.0, 0.24), N=st.integers(2, 30), T1=st.floats(0.0, 1.0), dT=st.floats(0.0, 1.0))
def test_attenuation_grows_with_temperature(J, N, T1, dT):
    spec = ChainSpec(J=J, gamma=0.05, N=N, T=T1, l=1)
    t = np.linspace(0.0, 200.0, 73)
    cold = dephasing_coefficients(build_bath_modes(spec), t)
    hot = dephasing_coefficients(build_bath_modes(spec.replace(T=T1 + dT)), t)
    assert np.all(hot.f_S >= cold.f_S * (1 - 1e-13))
    assert np.all(hot.f_A >= cold.f_A * (1 - 1e-13))


@settings(max_examples=25, deadline=None)
@given(spec=specs)
def test_phase_linear_plus_bounded(spec):
    m = build_bath_modes(spec)
    t = np.linspace(0.0, 5000.0, 257)
    c = dephasing_coefficients(m, t)
    rS, rA = phase_rates(m)
    for phi, rate, (w, g, _) in ((c.phi_S, rS, m.sector("S")), (c.phi_A, rA, m.sector("A"))):
        wiggle = np.sum(g**2 / (2 * w**3))
        assert np.abs(phi - rate * t).max() <= wiggle * (1 + 1e-9) + 1e-12 * rate * t[-1]


def test_chunked_grid_consistent():
    m = build_bath_modes(ChainSpec(J=0.2, gamma=0.04, N=50, l=3))
    t = np.linspace(0.0, 300.0, 5000)
    full = dephasing_coefficients(m, t)
    part = dephasing_coefficients(m, t[4090:4110])
    np.testing.assert_array_equal(full.f_S[4090:4110], part.f_S)
    np.testing.assert_array_equal(full.phi_A[4090:4110], part.phi_A)


def test_csv_columns(tmp_path):
    m = build_bath_modes(ChainSpec(J=0.1, gamma=0.02, N=10))
    c = dephasing_coefficients(m, np.linspace(0, 10, 5))
    path = c.to_csv(tmp_path / "coeffs.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "t,f_S,f_A,phi_S,phi_A"
    table = np.loadtxt(path, delimiter=",", skiprows=1)
    np.testing.assert_array_equal(table[:, 1], c.f_S)
    np.testing.assert_array_equal(table[:, 4], c.phi_A)


@given(st.lists(st.floats(-1e12, 1e12), min_size=1, max_size=200))
def test_compensated_sum_against_fsum(values):
    exact = math.fsum(values)
    got = float(neumaier_sum(np.array(values)))
    eps = np.finfo(float).eps
    scale = sum(abs(v) for v in values)
    assert abs(got - exact) <= 2 * eps * abs(exact) + 2 * len(values) * eps**2 * scale


def test_compensated_sum_cancellation():
    vals = np.array([1e16, 1.0, -1e16, 1.0] * 5)
    assert float(neumaier_sum(vals)) == math.fsum(vals) == 10.0
    cols = np.stack([vals, vals[::-1]], axis=1)
    np.testing.assert_array_equal(neumaier_sum(cols, axis=0), [10.0, 10.0])


def _ratios(rhos_std, initial, placement):
    U = pointer_basis(placement).from_standard
    ptr = U.conj().T @ rhos_std @ U
    rho0 = to_basis(initial, Basis.POINTER, placement).rho
    return ptr / np.where(np.abs(rho0) > 0, rho0, 1.0)[None]


def test_distant_coefficients_match_fock_oracle(fock_up_up, oracle_spec):
    c = dephasing_coefficients(build_bath_modes(oracle_spec), ORACLE_TIMES)
    r = _ratios(fock_up_up.rhos, product_state(0.0, 0.0), "distant")
    # pointer pair (1,0)/(-1,0) sees only f_S, (0,1)/(0,-1) only f_A
    np.testing.assert_allclose(-np.log(np.abs(r[:, 0, 1])) / 4, c.f_S, atol=1e-6)
    np.testing.assert_allclose(-np.log(np.abs(r[:, 2, 3])) / 4, c.f_A, atol=1e-6)
    np.testing.assert_allclose(np.angle(r[:, 0, 2]), np.angle(np.exp(1j * (c.phi_S - c.phi_A))), atol=1e-6)


def test_same_site_coefficients_match_fock_oracle(oracle_spec):
    spec = oracle_spec.replace(placement="same_site")
    t = ORACLE_TIMES[::40]
    initial = product_state(0.3, 1.1)
    exact = exact_boson_evolution(FockBathConfig(N_small=2, n_max=4, t_grid=t), spec, initial)
    c = dephasing_coefficients(build_bath_modes(spec), t)
    r = _ratios(exact.rhos, initial, "same_site")
    np.testing.assert_allclose(-np.log(np.abs(r[:, 0, 1])) / 4, c.f_S + c.f_A, atol=1e-6)
    np.testing.assert_allclose(-np.log(np.abs(r[:, 0, 2])), c.f_S + c.f_A, atol=1e-6)
    np.testing.assert_allclose(np.angle(r[:, 0, 2]), np.angle(np.exp(1j * (c.phi_S + c.phi_A))), atol=1e-6)
