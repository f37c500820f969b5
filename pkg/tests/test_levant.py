import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptdiff.levant import GrowthBound, LevantParams, chi_at, default_params, levant_rhs, phi_correction, sgn_pow
from ptdiff.simlab.engine import integrate_euler
from ptdiff.simlab.signals import make_signal

P1 = LevantParams(1, (1.1, 1.5), (2.0, 3.0))


def reference_phi(e0, M, L, params):
    """Direct recursion through chi_at, used as an oracle for the inlined loop."""
    out, w = [], e0
    for i in range(params.n + 1):
        w = chi_at(i, w, M, L, params)
        out.append(w)
    return np.array(out)


@pytest.mark.parametrize("w,a,expected", [(-4.0, 0.5, -2.0), (-3.0, 0.0, -1.0), (0.0, 0.0, 0.0), (8.0, 1 / 3, 2.0)])
def test_sgn_pow(w, a, expected):
    assert sgn_pow(w, a) == pytest.approx(expected)


def test_chi_examples():
    assert chi_at(1, 1.0, 0.5, 1.0, P1) == pytest.approx(2.1)
    assert chi_at(0, 1.0, 0.0, 1.0, P1) == pytest.approx(1.5)
    for i in range(2):
        assert chi_at(i, 0.0, 0.3, 2.0, P1) == 0.0


def test_phi_examples():
    np.testing.assert_allclose(phi_correction(1.0, 0.0, 1.0, P1), [1.5, 1.1], atol=1e-15)
    np.testing.assert_allclose(phi_correction(1.0, 0.1, 1.0, P1), [1.8, 1.46], atol=1e-15)
    for n in range(5):
        assert np.all(phi_correction(0.0, 0.7, 3.0, default_params(n)) == 0.0)


def test_default_params():
    assert default_params(1) == LevantParams(1, (1.1, 1.5), (2, 3))
    assert default_params(2) == LevantParams(2, (1.1, 1.5, 2.0), (2, 3, 4))
    assert default_params(4) == LevantParams(4, (1.1, 1.5, 2, 3, 5), (2, 3, 4, 7, 9))
    with pytest.raises(ValueError, match="explicitly"):
        default_params(5)


def test_param_validation():
    with pytest.raises(ValueError):
        LevantParams(1, (1.1,), (2.0, 3.0))
    with pytest.raises(ValueError):
        LevantParams(1, (1.1, -1.0), (2.0, 3.0))
    with pytest.raises(ValueError):
        phi_correction(1.0, 0.0, 0.0, P1)
    with pytest.raises(ValueError):
        GrowthBound.constant(-1.0, 0.0)


def test_chi_rejects_bad_index():
    with pytest.raises(ValueError):
        chi_at(2, 1.0, 0.0, 1.0, P1)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 4), st.floats(-50, 50), st.floats(0, 5), st.floats(1e-3, 1e3))
def test_inlined_loop_matches_chi_recursion(n, e0, M, L):
    p = default_params(n)
    np.testing.assert_allclose(phi_correction(e0, M, L, p), reference_phi(e0, M, L, p), rtol=1e-13, atol=1e-300)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 4), st.floats(-50, 50), st.floats(0, 5), st.floats(1e-3, 1e3))
def test_odd_in_error(n, e0, M, L):
    p = default_params(n)
    np.testing.assert_array_equal(phi_correction(-e0, M, L, p), -phi_correction(e0, M, L, p))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 4), st.floats(-20, 20), st.floats(-20, 20), st.floats(0, 5), st.floats(1e-2, 1e2))
def test_monotone_in_error(n, a, b, M, L):
    lo, hi = sorted((a, b))
    p = default_params(n)
    assert np.all(phi_correction(lo, M, L, p) <= phi_correction(hi, M, L, p) + 1e-12)


def test_levant_exact_with_constant_bound():
    sig = make_signal("trigmix")
    bound = GrowthBound.constant(1.0, 0.0)
    p = default_params(1)
    h, t_end = 1e-4, 8.0

    def rhs(t, z):
        return levant_rhs(z, float(sig.derivative(0, t)), t, bound, p)

    res = integrate_euler(rhs, np.array([sig.derivative(0, 0.0) + 1.0, sig.derivative(1, 0.0) - 1.0]), h, t_end)
    err = res.x - sig.derivatives(res.t, 1)
    tail = res.t >= 6.0
    assert np.max(np.abs(err[tail])) <= 0.05
    assert math.isfinite(err[-1, 0])


def test_constant_bound_vectorizes():
    b = GrowthBound.constant(2.5, 0.0)
    assert b.L(0.3) == 2.5
    np.testing.assert_array_equal(b.L(np.zeros(4)), np.full(4, 2.5))
