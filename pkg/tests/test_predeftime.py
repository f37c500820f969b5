
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptdiff.levant import GrowthBound, levant_rhs, phi_correction
from ptdiff.predeftime import (
    DiffConfig,
    DiffState,
    Filtering,
    GainSaturationError,
    correction_H,
    filtering_derivative,
    from_scaled_coords,
    rhs_filtering,
    rhs_plain,
    rhs_scaled_tau,
    scaled_bound,
    to_scaled_coords,
)
from ptdiff.simlab import RunSpec, simulate, simulate_scaled
from ptdiff.tbg import Rational, Reciprocal, Secant, Tangent

UNIT = GrowthBound.constant(1.0, 0.1)


def cfg_i(**kw):
    base = dict(n=1, Tc=1.0, Mcal=3.2, gain=Reciprocal(1.0, 1.0), bound=UNIT, Tstar=0.95)
    base.update(kw)
    return DiffConfig(**base)


def test_reference_correction():
    np.testing.assert_allclose(correction_H(1.0, 0.0, cfg_i()), [10.1, 62.04], atol=1e-12)


def test_zero_error_gives_zero_correction():
    cfg = cfg_i()
    for t in (0.0, 0.4, 0.9, 0.96, 2.0):
        assert np.all(correction_H(0.0, t, cfg) == 0.0)


@pytest.mark.parametrize("t", [0.95, 0.99, 1.5])
def test_levant_branch_after_switch(t):
    cfg = cfg_i()
    np.testing.assert_array_equal(correction_H(0.3, t, cfg), phi_correction(0.3, UNIT.M, 1.0, cfg.params))


def test_rhs_plain_reference():
    z = np.array([3.0, -2.0])
    dz = rhs_plain(DiffState(0.0, z), 2.0, cfg_i())
    np.testing.assert_allclose(dz, [-10.1 + z[1], -62.04], atol=1e-12)


def test_rhs_plain_equilibrium():
    cfg = cfg_i()
    assert np.all(rhs_plain(DiffState(0.2, np.array([1.0, 0.0])), 1.0, cfg) == 0.0)


def test_rhs_plain_after_switch_is_levant():
    cfg = cfg_i()
    z = np.array([0.4, 1.3])
    np.testing.assert_array_equal(rhs_plain(DiffState(0.97, z), 0.1, cfg), levant_rhs(z, 0.1, 0.97, UNIT, cfg.params))


def filtering_cfg(nf, n=2):
    return DiffConfig(n=n, Tc=5.0, Mcal=8.0, gain=Tangent(0.01, 5.0), bound=UNIT, Tstar=4.5,
                      mode=Filtering(nf, n - nf))


def test_filtering_index_instantiation():
    cfg = filtering_cfg(1)
    w, z, y, t = np.array([0.3]), np.array([1.0, -0.5]), 0.2, 1.0
    h = correction_H(w[0], t, cfg)
    d = rhs_filtering(DiffState(t, z, w), y, cfg)
    np.testing.assert_allclose(d, [-h[0] + (z[0] - y), -h[1] + z[1], -h[2]], rtol=1e-14)


def test_filtering_zero_state():
    cfg = filtering_cfg(1)
    assert np.all(rhs_filtering(DiffState(0.5, np.zeros(2), np.zeros(1)), 0.0, cfg) == 0.0)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-100, 100), min_size=3, max_size=3), st.floats(-10, 10), st.floats(0.0, 6.0))
def test_filtering_nf0_reduces_to_plain(z, y, t):
    cfg = filtering_cfg(0)
    plain = DiffConfig(n=2, Tc=5.0, Mcal=8.0, gain=Tangent(0.01, 5.0), bound=UNIT, Tstar=4.5)
    z = np.array(z)
    np.testing.assert_allclose(rhs_filtering(DiffState(t, z), y, cfg), rhs_plain(DiffState(t, z), y, plain),
                               rtol=1e-14, atol=1e-12)


def test_filtering_derivative_wiring():
    d = filtering_derivative(np.zeros(3), np.array([1.0, 2.0, 3.0]), 0.5, 1)
    np.testing.assert_array_equal(d, [2.0 - 0.5, 3.0, 0.0])


def test_scaled_coords_examples():
    cfg = cfg_i()
    # kappa(0.5) = 2 for the reciprocal gain
    np.testing.assert_allclose(to_scaled_coords(np.array([1.0, 1.0]), 0.5, cfg), [1.0, 1.5], rtol=1e-14)
    assert np.all(to_scaled_coords(np.zeros(2), 0.3, cfg) == 0.0)
    sec = DiffConfig(n=2, Tc=1.0, Mcal=1.0, gain=Secant(1.0), bound=UNIT)
    e = np.array([1.0, 2.0, 3.0])
    k = sec.kappa(0.2)
    np.testing.assert_allclose(to_scaled_coords(e, 0.2, sec), e / k ** np.arange(3), rtol=1e-14)


def test_scaled_coords_rejects_after_switch():
    with pytest.raises(ValueError):
        to_scaled_coords(np.zeros(2), 0.95, cfg_i())


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=3, max_size=3), st.floats(0.0, 0.9))
def test_scaled_coords_round_trip(e, frac):
    cfg = DiffConfig(n=2, Tc=1.0, Mcal=10.0, gain=Rational(1.0, 0.1, 1.0), bound=UNIT)
    e = np.array(e)
    t = frac * cfg.Tstar
    back = from_scaled_coords(to_scaled_coords(e, t, cfg), t, cfg)
    np.testing.assert_allclose(back, e, rtol=1e-9, atol=1e-9)


def test_scaled_rhs_equilibrium():
    assert np.all(rhs_scaled_tau(np.zeros(2), 1.0, 0.0, cfg_i()) == 0.0)


def test_secant_logderiv_and_inactive_term():
    g = Secant(1.0)
    assert g.omega_logderiv(1.0) == pytest.approx(-1.0, rel=1e-14)
    cfg = DiffConfig(n=1, Tc=1.0, Mcal=1.0, gain=g, bound=UNIT)
    eps = np.array([0.0, 0.7])
    bare = -phi_correction(0.0, cfg.Mcal, scaled_bound(1.0, cfg), cfg.params)
    bare[:-1] += eps[1:]
    coef = g.omega_logderiv(1.0) + g.c
    s = cfg.structure
    np.testing.assert_allclose(rhs_scaled_tau(eps, 1.0, 0.0, cfg), bare + coef * (s.Qinv @ s.D @ s.Q @ eps))


def test_scaled_bound_matches_direct_product():
    cfg = cfg_i()
    tau = 1.3
    t = cfg.gain.phi_inv(tau)
    assert scaled_bound(tau, cfg) == pytest.approx(UNIT.L(t) * cfg.kappa(t) ** -2, rel=1e-12)


def test_mcal_condition_message():
    with pytest.raises(ValueError, match=r"Mcal must exceed \(n\+1\)·c = 2"):
        cfg_i(Mcal=1.0)


def test_config_validation():
    with pytest.raises(ValueError):
        cfg_i(Tstar=1.2)
    with pytest.raises(ValueError):
        cfg_i(Tc=2.0)
    with pytest.raises(ValueError):
        DiffConfig(n=2, Tc=1.0, Mcal=9.0, gain=Reciprocal(1.0, 1.0), bound=UNIT, mode=Filtering(1, 2))
    assert DiffConfig(n=1, Tc=2.0, Mcal=3.0, gain=Reciprocal(1.0, 2.0), bound=UNIT).Tstar == pytest.approx(1.9)


def test_gain_cap_raises():
    cfg = cfg_i(Tstar=1.0, kappa_cap=100.0)
    with pytest.raises(GainSaturationError):
        cfg.kappa(0.999)


def test_nonfinite_state_rejected():
    with pytest.raises(FloatingPointError):
        DiffState(0.0, np.array([np.nan, 0.0]))


def _dual_error(spec):
    """Sup-norm gap in scaled coordinates between the t-run and the tau-run."""
    run = simulate(spec)
    twin = simulate_scaled(spec)
    cfg = spec.build_config()
    sel = run.traj.t < cfg.Tstar
    t = run.traj.t[sel]
    eps_t = np.array([to_scaled_coords(e, tk, cfg) for e, tk in zip(run.traj.e[sel], t)])
    tau = np.array([cfg.gain.phi(tk) for tk in t])
    keep = tau <= twin.tau[-1]
    eps_tau = np.column_stack([np.interp(tau[keep], twin.tau, twin.eps[:, j]) for j in range(cfg.n + 1)])
    return float(np.max(np.abs(eps_t[keep] - eps_tau)))


def test_dual_simulation_consistency():
    spec = RunSpec(signal="trigmix", n=1, Tc=1.0, Tstar=0.99, Mcal=3.2,
                   gain={"family": "reciprocal", "alpha": 1.0}, ic_scale=10.0, horizon=1.0)
    assert _dual_error(spec) <= 0.05


def test_dual_simulation_converges_with_active_drift_term():
    # gain (iv) keeps the Q^-1 D Q term switched on; kappa(0) = 0.1 makes eps(0) ~ 100,
    # so the gap is judged relative to that scale and by its first-order decay in h
    spec = RunSpec(signal="trigmix", n=1, Tc=1.0, Tstar=0.99, Mcal=3.2,
                   gain={"family": "rational", "alpha": 1.0, "beta": 0.1}, ic_scale=10.0, horizon=1.0)
    scale = np.max(np.abs(to_scaled_coords(np.array([9.25, 8.975]), 0.0, spec.build_config())))
    coarse = _dual_error(spec.replace(h=4e-4))
    fine = _dual_error(spec)
    assert fine <= 0.01 * scale
    assert 1.8 <= coarse / fine <= 2.2
