import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from ptdiff.tbg import (
    KAPPA_CAP,
    CustomOmega,
    GainSaturationWarning,
    Rational,
    Reciprocal,
    Secant,
    Tangent,
    bisect_phi_inv,
    estimate_c,
    kappa_at,
    make_gain,
    omega_at,
    phi_at,
    phi_inv_at,
    validate_tbg,
)

PRESET_GAINS = [
    Reciprocal(alpha=1.0, Tc=1.0),
    Reciprocal(alpha=3.0, Tc=1.0),
    Secant(Tc=1.0),
    Tangent(gamma=0.01, Tc=5.0),
    Rational(alpha=1.0, beta=0.1, Tc=1.0),
]
ids = ["i", "i-a3", "ii", "iii", "iv"]

gains = st.one_of(
    st.builds(Reciprocal, alpha=st.floats(0.2, 5.0), Tc=st.floats(0.5, 10.0)),
    st.builds(Secant, Tc=st.floats(0.5, 10.0)),
    st.builds(Tangent, gamma=st.floats(0.005, 1.5), Tc=st.floats(0.5, 10.0)),
    st.builds(Rational, alpha=st.floats(0.2, 5.0), beta=st.floats(0.01, 2.0), Tc=st.floats(0.5, 10.0)),
)


def test_kappa_examples():
    assert kappa_at(Reciprocal(1.0, 1.0), 0.5) == pytest.approx(2.0, rel=1e-15)
    assert kappa_at(Secant(1.0), 0.0) == pytest.approx(math.pi / 2, rel=1e-15)
    assert kappa_at(Rational(1.0, 0.1, 1.0), 0.0) == pytest.approx(0.1, rel=1e-15)


def test_phi_examples():
    g = Reciprocal(1.0, 1.0)
    assert phi_at(g, 0.0) == 0.0
    assert phi_at(g, 1 - math.exp(-1)) == pytest.approx(1.0, rel=1e-14)
    assert phi_at(Secant(1.0), 0.5) == pytest.approx(1.0, rel=1e-14)


def test_phi_inv_examples():
    assert phi_inv_at(Reciprocal(1.0, 1.0), 1.0) == pytest.approx(1 - math.exp(-1), rel=1e-14)
    g = Tangent(gamma=0.01, Tc=5.0)
    assert phi_inv_at(g, phi_at(g, 0.3)) == pytest.approx(0.3, abs=1e-9)


@pytest.mark.parametrize("gain", PRESET_GAINS, ids=ids)
def test_phi_inv_zero(gain):
    assert phi_inv_at(gain, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_omega_examples():
    assert omega_at(Reciprocal(1.0, 1.0), 0.0) == pytest.approx(1.0)
    assert omega_at(Secant(1.0), 0.0) == pytest.approx(2 / math.pi)


@pytest.mark.parametrize("gain", PRESET_GAINS, ids=ids)
@pytest.mark.parametrize("tau", [0.0, 0.3, 2.0, 4.0])
def test_defining_relation(gain, tau):
    t = phi_inv_at(gain, tau)
    assert gain.Tc * omega_at(gain, tau) * kappa_at(gain, t) == pytest.approx(1.0, rel=1e-9)


@pytest.mark.parametrize("gain", PRESET_GAINS, ids=ids)
@pytest.mark.parametrize("frac", [0.05, 0.4, 0.8, 0.95])
def test_phi_matches_quadrature_of_kappa(gain, frac):
    t = frac * gain.Tc
    ref, _ = integrate.quad(gain.kappa, 0.0, t, epsabs=1e-13, epsrel=1e-12)
    assert phi_at(gain, t) == pytest.approx(ref, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("gain", PRESET_GAINS, ids=ids)
@pytest.mark.parametrize("tau", [0.1, 1.0, 5.0])
def test_phi_inv_matches_quadrature_of_omega(gain, tau):
    ref, _ = integrate.quad(gain.omega, 0.0, tau, epsabs=1e-13, epsrel=1e-12)
    assert phi_inv_at(gain, tau) == pytest.approx(gain.Tc * ref, rel=1e-9)


@pytest.mark.parametrize("gain", PRESET_GAINS, ids=ids)
@pytest.mark.parametrize("tau", [0.1, 1.0, 5.0])
def test_closed_form_inverse_matches_bisection(gain, tau):
    assert gain.phi_inv(tau) == pytest.approx(bisect_phi_inv(gain, tau), rel=1e-10)


@pytest.mark.parametrize("gain", PRESET_GAINS, ids=ids)
@pytest.mark.parametrize("tau", [0.5, 3.0, 20.0])
def test_logderiv_matches_finite_difference(gain, tau):
    d = 1e-5
    fd = (gain.log_omega(tau + d) - gain.log_omega(tau - d)) / (2 * d)
    assert gain.omega_logderiv(tau) == pytest.approx(fd, rel=1e-6, abs=1e-9)


@pytest.mark.parametrize("gain", PRESET_GAINS, ids=ids)
def test_validate_preset_gains(gain):
    rep = validate_tbg(gain)
    assert rep.passed, rep
    assert rep.integral == pytest.approx(1.0, abs=1e-6)


def test_validate_reciprocal_exact_c():
    rep = validate_tbg(Reciprocal(1.0, 1.0))
    assert rep.passed
    assert rep.c_estimate == 1.0


def test_validate_tangent_numeric_c():
    rep = validate_tbg(Tangent(gamma=0.01, Tc=5.0))
    assert rep.c_estimate == pytest.approx(1.0, abs=1e-2)


def test_validate_compact_support_fails():
    g = CustomOmega(lambda s: 1.0 if s <= 1.0 else 0.0, Tc=1.0, declared_c=0.0)
    assert not validate_tbg(g).passed


def test_rational_c_uses_tc():
    assert Rational(alpha=1.0, beta=0.1, Tc=1.0).c == pytest.approx(1 / 1.1)
    g = Rational(alpha=2.0, beta=0.5, Tc=3.0)
    assert estimate_c(g, tau=200.0) == pytest.approx(g.c, abs=1e-2)


def test_custom_exponential_matches_reciprocal():
    ref = Reciprocal(alpha=2.0, Tc=1.5)
    g = CustomOmega(lambda s: 2.0 * math.exp(-2.0 * s), Tc=1.5)
    assert g.c == pytest.approx(2.0, abs=1e-6)
    for t in (0.1, 0.7, 1.2):
        assert g.phi(t) == pytest.approx(ref.phi(t), rel=1e-9)
        assert g.kappa(t) == pytest.approx(ref.kappa(t), rel=1e-8)


def test_domain_errors():
    g = Reciprocal(1.0, 1.0)
    with pytest.raises(ValueError):
        kappa_at(g, 1.0)
    with pytest.raises(ValueError):
        kappa_at(g, -0.1)
    with pytest.raises(ValueError):
        phi_inv_at(g, -1.0)
    with pytest.raises(ValueError):
        Reciprocal(alpha=0.0)
    with pytest.raises(ValueError):
        make_gain("nope", Tc=1.0)


def test_kappa_saturation_warns():
    g = Reciprocal(1.0, 1.0)
    with pytest.warns(GainSaturationWarning):
        assert kappa_at(g, 1.0 - 1e-14) == KAPPA_CAP
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        kappa_at(g, 0.5)


def test_make_gain_aliases():
    assert make_gain("iv", Tc=1.0, alpha=1.0, beta=0.1) == Rational(1.0, 0.1, 1.0)
    assert make_gain("Secant", Tc=2.0) == Secant(2.0)


@settings(max_examples=80, deadline=None)
@given(gains, st.floats(0.0, 0.999))
def test_round_trip_phi(gain, frac):
    t = frac * gain.Tc
    tau = gain.phi(t)
    assert gain.phi_inv(tau) == pytest.approx(t, rel=1e-8, abs=1e-10 * gain.Tc)


@settings(max_examples=80, deadline=None)
@given(gains, st.floats(0.01, 0.98), st.floats(0.01, 0.98))
def test_phi_and_kappa_monotone(gain, a, b):
    lo, hi = sorted((a * gain.Tc, b * gain.Tc))
    if hi - lo < 1e-9:
        return
    assert gain.phi(lo) < gain.phi(hi)
    assert gain.kappa(lo) > 0 and np.isfinite(gain.kappa(hi))


@settings(max_examples=80, deadline=None)
@given(gains, st.floats(0.0, 30.0))
def test_omega_positive_and_bounded_logderiv(gain, tau):
    assert gain.omega(tau) > 0
    assert math.isfinite(gain.omega_logderiv(tau))
