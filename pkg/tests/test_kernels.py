import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate as sp_integrate

from robin_dce import (
    DampedCosine,
    PhysicalParams,
    Tabulated,
    alpha_correction_kernel,
    beta_kernel,
    bose_einstein,
    delta_gamma,
    delta_gamma_ft,
    occupation_weighted,
    spectral_weight,
)
from robin_dce.errors import InvalidParameterError, OccupationPoleError

PROFILE = DampedCosine(epsilon0=1.0, omega0=1.0, tau=100.0)


def _ft_oracle(omega, prof):
    # cos(w0 t) cos(w t) = [cos((w-w0) t) + cos((w+w0) t)] / 2; even integrand
    total = 0.0
    for nu in (omega - prof.omega0, omega + prof.omega0):
        env = lambda t: prof.epsilon0 * math.exp(-t / prof.tau)
        if nu == 0:
            val, _ = sp_integrate.quad(env, 0, np.inf, epsabs=0, epsrel=1e-12)
        else:
            val, _ = sp_integrate.quad(env, 0, np.inf, weight="cos", wvar=abs(nu))
        total += val
    return total


def test_delta_gamma_at_origin():
    assert delta_gamma(0.0, DampedCosine(0.01, 1.0, 100.0)) == 0.01


def test_delta_gamma_decays_and_is_even():
    t = np.linspace(-300, 300, 1201)
    np.testing.assert_array_equal(delta_gamma(t, PROFILE), delta_gamma(-t, PROFILE))
    assert abs(delta_gamma(1e5, PROFILE)) < 1e-300


@pytest.mark.parametrize("omega,expected", [
    (0.0, 0.019998000199980001999800019998),
    (1.0, 100.002499937501562460938476538),
])
def test_delta_gamma_ft_values(omega, expected):
    val = delta_gamma_ft(omega, PROFILE)
    assert val.imag == 0.0
    assert val.real == pytest.approx(expected, rel=1e-12)
    assert val.real == pytest.approx(_ft_oracle(omega, PROFILE), rel=1e-8)


@pytest.mark.parametrize("omega", [0.3, 0.99, 1.7, 2.5])
def test_delta_gamma_ft_matches_numeric_integral(omega):
    assert delta_gamma_ft(omega, PROFILE).real == pytest.approx(_ft_oracle(omega, PROFILE), rel=1e-8)


def test_delta_gamma_ft_even():
    w = np.linspace(0, 3, 31)
    np.testing.assert_array_equal(delta_gamma_ft(-w, PROFILE), delta_gamma_ft(w, PROFILE))


def test_trapezoid_transform_of_sampled_drive():
    # w0 tau = 100, step tau/1000, support |t| <= 20 tau; deviation is
    # measured against the peak of the transform (pointwise relative error
    # at 3 w0 is limited by the O(h^2) kink at t = 0).
    tab = Tabulated.sample(lambda t: delta_gamma(t, PROFILE), -2000.0, 2000.0, 40001)
    w = np.linspace(0, 3, 121)
    num = delta_gamma_ft(w, tab)
    ref = delta_gamma_ft(w, PROFILE).real
    assert np.max(np.abs(num - ref)) / np.max(np.abs(ref)) <= 1e-6
    assert np.max(np.abs(num.imag)) < 1e-9


def test_tabulated_validation(tmp_path):
    with pytest.raises(InvalidParameterError):
        Tabulated(np.arange(5.0), np.zeros(5))
    with pytest.raises(InvalidParameterError):
        Tabulated(np.arange(10.0), np.ones(10))
    with pytest.raises(InvalidParameterError):
        Tabulated(np.r_[0, 1, 2, 3, 5, 6, 7, 8, 9.0], np.zeros(9))
    path = tmp_path / "profile.txt"
    t = np.linspace(-50, 50, 101)
    v = delta_gamma(t, DampedCosine(0.01, 1.0, 5.0))
    v[0] = v[-1] = 0.0
    path.write_text("# time delta_gamma\n" + "\n".join(f"{float(a)!r} {float(b)!r}" for a, b in zip(t, v)) + "\n")
    tab = Tabulated.from_file(path)
    np.testing.assert_array_equal(tab.values, v)
    assert delta_gamma(0.0, tab) == pytest.approx(0.01)
    assert delta_gamma(60.0, tab) == 0.0


def test_spectral_weight_values():
    assert spectral_weight(1.0, 1.0) == 0.5
    assert spectral_weight(0.37, 0.0) == 0.37
    w = np.linspace(-5, 5, 101)
    np.testing.assert_array_equal(spectral_weight(-w, 2.0), -spectral_weight(w, 2.0))


@pytest.mark.parametrize("gamma0", [0.5, 1.0, 5.0, 10.0])
def test_spectral_weight_maximum(gamma0):
    w = np.linspace(1e-4, 10 / gamma0, 200001)
    vals = spectral_weight(w, gamma0)
    assert w[np.argmax(vals)] == pytest.approx(1 / gamma0, abs=1e-4 / gamma0 * 1.5)
    assert vals.max() == pytest.approx(1 / (2 * gamma0), rel=1e-8)


def test_bose_einstein_values():
    T = 0.1
    assert bose_einstein(T * math.log(2), T) == pytest.approx(1.0, rel=1e-14)
    assert bose_einstein(1.0, 0.0) == 0.0
    assert bose_einstein(-1.0, 0.0) == -1.0
    assert bose_einstein(0.05, 0.1) + bose_einstein(-0.05, 0.1) == pytest.approx(-1.0, abs=1e-15)
    assert bose_einstein(1e4, 0.01) == 0.0


def test_bose_einstein_pole():
    with pytest.raises(OccupationPoleError):
        bose_einstein(0.0, 0.1)


@given(st.floats(min_value=1e-3, max_value=30.0), st.floats(min_value=1e-3, max_value=10.0))
def test_bose_einstein_reflection(x, T):
    # Absolute error of the sum is bounded by the rounding of 1 + nbar.
    n = bose_einstein(x * T, T)
    total = bose_einstein(-x * T, T) + n
    assert abs(total + 1.0) <= 1e-14 * max(1.0, abs(n))


def test_occupation_weighted_values():
    assert occupation_weighted(0.0, 0.1, 1.0) == 0.1
    assert occupation_weighted(0.05, 0.1, 1.0) == pytest.approx(0.0768824978821345861, rel=1e-13)
    assert occupation_weighted(1.0, 0.0, 1.0) == 0.0


def test_occupation_weighted_continuity():
    T = 0.1
    for w in (1e-9, -1e-9):
        assert abs(occupation_weighted(w, T, 1.0) - T) <= 1e-6 * T


@given(st.floats(min_value=-5, max_value=5).filter(lambda w: abs(w) > 1e-6),
       st.floats(min_value=1e-2, max_value=2.0))
def test_occupation_weighted_is_product(w, T):
    expected = spectral_weight(w, 1.3) * bose_einstein(w, T)
    assert occupation_weighted(w, T, 1.3) == pytest.approx(expected, rel=1e-12, abs=1e-300)


P = PhysicalParams(gamma0=1.0, epsilon0=0.01, omega0=1.0, tau=100.0)


@given(st.floats(min_value=1e-3, max_value=3.0), st.floats(min_value=1e-3, max_value=3.0))
def test_kernel_moduli(w, mu):
    b = beta_kernel(w, mu, P)
    a = alpha_correction_kernel(w, mu, P)
    dg = DampedCosine.from_params(P)
    weights = spectral_weight(w, 1.0) * spectral_weight(mu, 1.0)
    assert abs(b) ** 2 == pytest.approx(4 * weights * abs(delta_gamma_ft(w + mu, dg)) ** 2, rel=1e-12)
    assert abs(a) ** 2 == pytest.approx(4 * weights * abs(delta_gamma_ft(w - mu, dg)) ** 2, rel=1e-12)
    assert abs(b) == pytest.approx(abs(beta_kernel(mu, w, P)), rel=1e-12)
    assert abs(a) == pytest.approx(abs(alpha_correction_kernel(mu, w, P)), rel=1e-12)


def test_alpha_kernel_on_diagonal():
    w = 0.4
    dg = DampedCosine.from_params(P)
    expected = -2j * spectral_weight(w, 1.0) * delta_gamma_ft(0.0, dg)
    assert alpha_correction_kernel(w, w, P) == pytest.approx(expected, rel=1e-14)


def test_kernel_peak_locations():
    mu = np.linspace(1e-3, 3, 30001)
    for w in (0.2, 0.5, 0.8):
        peak = mu[np.argmax(np.abs(beta_kernel(w, mu, P)))]
        assert peak == pytest.approx(1.0 - w, abs=5e-3)
        alpha = np.abs(alpha_correction_kernel(w, mu, P))
        assert mu[np.argmax(alpha)] == pytest.approx(w + 1.0, abs=5e-3)
