"""Invariant suites behind ``ptdiff verify``.

Each suite returns a list of :class:`Check` records; nothing here raises on
a failed check.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .levant import GrowthBound, default_params, phi_correction
from .predeftime import DiffConfig, correction_H, from_scaled_coords, to_scaled_coords
from .structmat import build_structure, lambda_diag, make_A
from .tbg import Rational, Reciprocal, Secant, Tangent, validate_tbg

ORDERS = range(7)
CS = (0.0, 0.5, 1.0, 2.7)


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def structmat_suite() -> list[Check]:
    out = []
    worst = {"unit_lower": 0.0, "commutation": 0.0, "QinvDQ_lower": 0.0, "lambda_conj": 0.0, "lambda_B": 0.0}
    for n in ORDERS:
        for c in CS:
            s = build_structure(n, c)
            worst["unit_lower"] = max(worst["unit_lower"], np.max(np.abs(np.triu(s.Q, 1))),
                                      np.max(np.abs(np.diag(s.Q) - 1.0)))
            lhs = s.Q @ s.U
            rhs = (s.U - c * s.D) @ s.Q + s.Q @ make_A(n, c)
            worst["commutation"] = max(worst["commutation"], np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(lhs))))
            worst["QinvDQ_lower"] = max(worst["QinvDQ_lower"], np.max(np.abs(np.triu(s.Qinv @ s.D @ s.Q, 1))))
            for kappa in (0.3, 1.0, 7.5):
                Lam = lambda_diag(kappa, n)
                Lin = np.diag(1.0 / np.diag(Lam))
                worst["lambda_conj"] = max(worst["lambda_conj"], np.max(np.abs(Lin @ s.U @ Lam - kappa * s.U)) / kappa)
                v = s.Qinv @ (Lin @ s.B)
                ref = kappa ** -(n + 1) * s.B
                worst["lambda_B"] = max(worst["lambda_B"], np.max(np.abs(v - ref)) / kappa ** -(n + 1))
    tol = {"unit_lower": 0.0, "commutation": 1e-12, "QinvDQ_lower": 1e-12, "lambda_conj": 1e-12, "lambda_B": 1e-12}
    for key, val in worst.items():
        out.append(Check("structmat", key, bool(val <= tol[key]), f"max residual {val:.3g}"))
    return out


def preset_gains() -> list:
    return [Reciprocal(alpha=1.0, Tc=1.0), Secant(Tc=1.0), Tangent(gamma=0.01, Tc=5.0),
            Rational(alpha=1.0, beta=0.1, Tc=1.0)]


def phi_slope_error(gain, ts=(0.1, 0.3, 0.5, 0.7, 0.9)) -> float:
    """Worst relative gap between a central difference of ``phi`` and ``kappa``."""
    worst = 0.0
    for frac in ts:
        t = frac * gain.Tc
        d = 1e-6 * gain.Tc
        fd = (gain.phi(t + d) - gain.phi(t - d)) / (2 * d)
        worst = max(worst, abs(fd - gain.kappa(t)) / gain.kappa(t))
    return worst


def tbg_suite() -> list[Check]:
    out = []
    for gain in preset_gains():
        name = type(gain).__name__.lower()
        rep = validate_tbg(gain)
        out.append(Check("tbg", f"{name}.integral", rep.integral_ok, f"int omega = {rep.integral:.12f}"))
        out.append(Check("tbg", f"{name}.c", rep.c_matches,
                         f"estimate {rep.c_estimate:.6g} vs declared {rep.c_declared:.6g}"))
        out.append(Check("tbg", f"{name}.density", rep.positive_finite and rep.logderiv_bounded))
        slope = phi_slope_error(gain)
        out.append(Check("tbg", f"{name}.dphi_dt", bool(slope <= 1e-4), f"rel err {slope:.3g}"))
        taus = (0.0, 0.5, 2.0, 10.0)
        rt = max(abs(gain.phi(gain.phi_inv(s)) - s) / max(1.0, s) for s in taus)
        out.append(Check("tbg", f"{name}.round_trip", bool(rt <= 1e-8), f"max err {rt:.3g}"))
    return out


def levant_suite() -> list[Check]:
    out = []
    odd = mono = True
    ws = np.linspace(-3, 3, 61)
    for n in range(5):
        p = default_params(n)
        vals = np.array([phi_correction(w, 0.5, 2.0, p) for w in ws])
        odd &= bool(np.allclose(vals, -vals[::-1], atol=1e-12))
        mono &= bool(np.all(np.diff(vals, axis=0) >= -1e-12))
        odd &= bool(np.all(phi_correction(0.0, 0.5, 2.0, p) == 0.0))
    out.append(Check("levant", "odd_and_zero", odd))
    out.append(Check("levant", "monotone", mono))
    got = phi_correction(1.0, 0.0, 1.0, default_params(1))
    out.append(Check("levant", "n1_reference", bool(np.allclose(got, [1.5, 1.1], atol=1e-12)), f"{got}"))
    return out


def predeftime_suite() -> list[Check]:
    out = []
    bound = GrowthBound.constant(1.0, 0.1)
    cfg = DiffConfig(n=1, Tc=1.0, Mcal=3.2, gain=Reciprocal(alpha=1.0, Tc=1.0), bound=bound, Tstar=0.95)
    H = correction_H(1.0, 0.0, cfg)
    out.append(Check("predeftime", "reference_H", bool(np.allclose(H, [10.1, 62.04], atol=1e-9)), f"{H}"))
    zero = all(np.all(correction_H(0.0, t, cfg) == 0.0) for t in (0.0, 0.5, 0.97))
    out.append(Check("predeftime", "zero_error_zero_correction", zero))
    after = correction_H(0.4, 0.97, cfg)
    ref = phi_correction(0.4, bound.M, 1.0, cfg.params)
    out.append(Check("predeftime", "levant_after_switch", bool(np.array_equal(after, ref))))
    eps = to_scaled_coords(np.array([1.0, 0.0]), 0.0, cfg)
    out.append(Check("predeftime", "scaled_coords_reference", bool(np.allclose(eps, [1.0, 1.0], atol=1e-12)), f"{eps}"))
    worst = 0.0
    for t in (0.0, 0.3, 0.9):
        e = np.array([0.7, -2.0])
        worst = max(worst, float(np.max(np.abs(from_scaled_coords(to_scaled_coords(e, t, cfg), t, cfg) - e))))
    out.append(Check("predeftime", "scaled_coords_round_trip", worst <= 1e-9, f"max err {worst:.3g}"))
    return out


SUITES = {
    "structmat": structmat_suite,
    "tbg": tbg_suite,
    "levant": levant_suite,
    "predeftime": predeftime_suite,
}


def run_all() -> list[Check]:
    checks = []
    for fn in SUITES.values():
        checks.extend(fn())
    return checks


