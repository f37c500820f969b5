"""Time-base-generator (TBG) gains.

A TBG gain is built from a probability density ``omega`` on ``[0, inf)``
through the time scale ``phi`` defined by its inverse
``phi_inv(tau) = Tc * int_0^tau omega``. The gain is ``kappa = dphi/dt``;
it is finite on ``[0, Tc)`` and blows up at ``Tc``. The limit constant
``c = -lim omega'/omega`` enters the differentiator design.

Four closed-form families are provided (reciprocal, secant, tangent and
rational) plus :class:`CustomOmega` for a user-supplied density.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate, optimize, special

KAPPA_CAP = 1e12


class GainSaturationWarning(RuntimeWarning):
    """Raised as a warning when a gain evaluation exceeds ``KAPPA_CAP``."""


class TbgGain:
    """Base class. Subclasses implement the raw evaluators."""

    name = "abstract"
    Tc: float

    # analytic value of -lim omega'/omega, when it is known in closed form
    analytic_c: float | None = None

    @property
    def c(self) -> float:
        raise NotImplementedError

    def kappa(self, t: float) -> float:
        raise NotImplementedError

    def phi(self, t: float) -> float:
        raise NotImplementedError

    def phi_inv(self, tau: float) -> float:
        return bisect_phi_inv(self, tau)

    def log_omega(self, tau: float) -> float:
        raise NotImplementedError

    def omega(self, tau: float) -> float:
        return math.exp(self.log_omega(tau))

    def omega_logderiv(self, tau: float) -> float:
        """``omega'(tau) / omega(tau)``."""
        d = 1e-5 * max(1.0, tau)
        lo = max(tau - d, 0.0)
        return (self.log_omega(tau + d) - self.log_omega(lo)) / (tau + d - lo)

    def params(self) -> dict:
        raise NotImplementedError


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be finite and > 0, got {value!r}")
    return value


@dataclass(frozen=True)
class Reciprocal(TbgGain):
    """Family (i): ``kappa = 1 / (alpha (Tc - t))``, ``c = alpha``."""

    alpha: float = 1.0
    Tc: float = 1.0
    name = "reciprocal"

    def __post_init__(self):
        _positive("alpha", self.alpha)
        _positive("Tc", self.Tc)

    @property
    def c(self) -> float:
        return float(self.alpha)

    @property
    def analytic_c(self) -> float:
        return float(self.alpha)

    def kappa(self, t):
        return 1.0 / (self.alpha * (self.Tc - t))

    def phi(self, t):
        return -math.log1p(-t / self.Tc) / self.alpha

    def phi_inv(self, tau):
        return -self.Tc * math.expm1(-self.alpha * tau)

    def log_omega(self, tau):
        return math.log(self.alpha) - self.alpha * tau

    def omega_logderiv(self, tau):
        return -float(self.alpha)

    def params(self):
        return {"alpha": self.alpha}


@dataclass(frozen=True)
class Secant(TbgGain):
    """Family (ii): ``kappa = (pi/2) sec(pi t / (2 Tc))**2``, ``c = 0``.

    The gain carries no ``1/Tc`` factor, so ``omega`` depends on ``Tc``.
    """

    Tc: float = 1.0
    name = "secant"
    analytic_c = 0.0

    def __post_init__(self):
        _positive("Tc", self.Tc)

    @property
    def c(self) -> float:
        return 0.0

    def kappa(self, t):
        return 0.5 * math.pi / math.cos(0.5 * math.pi * t / self.Tc) ** 2

    def phi(self, t):
        return self.Tc * math.tan(0.5 * math.pi * t / self.Tc)

    def phi_inv(self, tau):
        return 2.0 * self.Tc / math.pi * math.atan(tau / self.Tc)

    def log_omega(self, tau):
        return math.log(2.0 / (math.pi * self.Tc)) - math.log1p((tau / self.Tc) ** 2)

    def omega_logderiv(self, tau):
        return -2.0 * tau / (self.Tc**2 + tau**2)

    def params(self):
        return {}


@dataclass(frozen=True)
class Tangent(TbgGain):
    """Family (iii): ``kappa = (gamma/Tc) tan(gamma t/Tc + pi/2 - gamma)``, ``c = 1``."""

    gamma: float = 0.01
    Tc: float = 1.0
    name = "tangent"

    def __post_init__(self):
        if not 0 < self.gamma < math.pi / 2:
            raise ValueError(f"gamma must lie in (0, pi/2), got {self.gamma!r}")
        _positive("Tc", self.Tc)

    @property
    def c(self) -> float:
        return 1.0

    def _gap(self, t):
        # gamma * (Tc - t) / Tc, the distance of the tangent argument to pi/2
        return self.gamma * (self.Tc - t) / self.Tc

    def kappa(self, t):
        return self.gamma / self.Tc / math.tan(self._gap(t))

    def phi(self, t):
        return math.log(math.sin(self.gamma)) - math.log(math.sin(self._gap(t)))

    def _u(self, tau):
        return math.sin(self.gamma) * math.exp(-tau)

    def phi_inv(self, tau):
        return self.Tc * (1.0 - math.asin(self._u(tau)) / self.gamma)

    def log_omega(self, tau):
        u = self._u(tau)
        return (
            math.log(math.sin(self.gamma)) - tau - math.log(self.gamma)
            - 0.5 * math.log1p(-u * u)
        )

    def omega_logderiv(self, tau):
        u = self._u(tau)
        return -1.0 / (1.0 - u * u)

    def params(self):
        return {"gamma": self.gamma}


@dataclass(frozen=True)
class Rational(TbgGain):
    """Family (iv): ``kappa = (t + beta) / (alpha (Tc - t))``.

    The limit constant is ``alpha / (Tc + beta)``.
    """

    alpha: float = 1.0
    beta: float = 0.1
    Tc: float = 1.0
    name = "rational"

    def __post_init__(self):
        _positive("alpha", self.alpha)
        _positive("beta", self.beta)
        _positive("Tc", self.Tc)

    @property
    def c(self) -> float:
        return self.alpha / (self.Tc + self.beta)

    def kappa(self, t):
        return (t + self.beta) / (self.alpha * (self.Tc - t))

    def phi(self, t):
        return (-t + (self.Tc + self.beta) * -math.log1p(-t / self.Tc)) / self.alpha

    def _remaining(self, tau):
        """``s = Tc - phi_inv(tau)`` and ``log(s)`` via the Lambert W function."""
        K = self.Tc + self.beta
        a = math.log(self.Tc) - (self.alpha * tau + self.Tc) / K
        # s = -K W0(-exp(a) / K); s solves log(s) = a + s / K
        s = -K * special.lambertw(-math.exp(a) / K, 0).real
        s = min(max(s, 0.0), self.Tc)
        return s, a + s / K

    def phi_inv(self, tau):
        s, _ = self._remaining(tau)
        return self.Tc - s

    def log_omega(self, tau):
        s, log_s = self._remaining(tau)
        K = self.Tc + self.beta
        return math.log(self.alpha) + log_s - math.log(self.Tc) - math.log(K - s)

    def omega_logderiv(self, tau):
        s, _ = self._remaining(tau)
        K = self.Tc + self.beta
        return -self.alpha * K / (K - s) ** 2

    def params(self):
        return {"alpha": self.alpha, "beta": self.beta}


@dataclass(frozen=True)
class CustomOmega(TbgGain):
    """Gain defined by an arbitrary density ``omega_fn`` on ``[0, inf)``.

    ``phi_inv`` is evaluated by adaptive quadrature and ``phi`` by root
    finding on ``phi_inv``. If ``declared_c`` is omitted the limit constant
    is estimated numerically at ``tau = 50``.
    """

    omega_fn: Callable[[float], float] = field(compare=False)
    Tc: float = 1.0
    declared_c: float | None = None
    name = "custom"

    def __post_init__(self):
        _positive("Tc", self.Tc)

    @property
    def c(self) -> float:
        if self.declared_c is not None:
            return float(self.declared_c)
        return estimate_c(self)

    def omega(self, tau):
        return float(self.omega_fn(tau))

    def log_omega(self, tau):
        w = self.omega(tau)
        return math.log(w) if w > 0 else -math.inf

    def phi_inv(self, tau):
        if tau == 0:
            return 0.0
        val, _ = integrate.quad(self.omega, 0.0, tau, limit=200, epsabs=1e-13, epsrel=1e-12)
        return min(self.Tc * val, math.nextafter(self.Tc, 0.0))

    def phi(self, t):
        if t == 0:
            return 0.0
        hi = 1.0
        while self.phi_inv(hi) < t:
            hi *= 2.0
            if hi > 1e6:
                raise ValueError(f"phi({t}) exceeds the searchable range")
        return optimize.brentq(lambda s: self.phi_inv(s) - t, 0.0, hi, xtol=1e-14, rtol=1e-13)

    def kappa(self, t):
        return 1.0 / (self.Tc * self.omega(self.phi(t)))

    def params(self):
        return {"declared_c": self.declared_c}


FAMILIES = {
    "reciprocal": Reciprocal,
    "i": Reciprocal,
    "secant": Secant,
    "ii": Secant,
    "tangent": Tangent,
    "iii": Tangent,
    "rational": Rational,
    "iv": Rational,
}


def make_gain(family: str, Tc: float, **params) -> TbgGain:
    """Build a closed-form family by name (``"reciprocal"`` or ``"i"``, ...)."""
    try:
        cls = FAMILIES[family.lower()]
    except KeyError:
        raise ValueError(f"unknown gain family {family!r}; expected one of {sorted(FAMILIES)}") from None
    return cls(Tc=Tc, **params)


def bisect_phi_inv(gain: TbgGain, tau: float, rtol: float = 1e-12) -> float:
    """Invert ``phi`` by bisection on ``[0, Tc)``."""
    if tau == 0:
        return 0.0
    lo, hi = 0.0, gain.Tc
    while True:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi or hi - lo <= rtol * max(mid, 1e-300):
            return mid
        if gain.phi(mid) < tau:
            lo = mid
        else:
            hi = mid


def _check_t(gain: TbgGain, t: float) -> None:
    if not (0.0 <= t < gain.Tc):
        raise ValueError(f"t={t!r} outside [0, Tc={gain.Tc}); switch before Tc")


def _check_tau(tau: float) -> None:
    if not tau >= 0:
        raise ValueError(f"scaled time tau must be >= 0, got {tau!r}")


def kappa_at(gain: TbgGain, t: float) -> float:
    _check_t(gain, t)
    k = gain.kappa(t)
    if not k < KAPPA_CAP:
        warnings.warn(f"kappa({t}) = {k:g} saturated at {KAPPA_CAP:g}", GainSaturationWarning, stacklevel=2)
        return KAPPA_CAP
    return k


def phi_at(gain: TbgGain, t: float) -> float:
    _check_t(gain, t)
    return gain.phi(t)


def phi_inv_at(gain: TbgGain, tau: float) -> float:
    _check_tau(tau)
    return gain.phi_inv(tau)


def omega_at(gain: TbgGain, tau: float) -> float:
    _check_tau(tau)
    return gain.omega(tau)


def estimate_c(gain: TbgGain, tau: float = 50.0, d: float = 1e-3) -> float:
    """Numeric ``-omega'/omega`` at ``tau`` from a central difference of ``log omega``."""
    return -(gain.log_omega(tau + d) - gain.log_omega(tau - d)) / (2 * d)


@dataclass
class TbgReport:
    integral: float
    c_numeric: float
    c_estimate: float
    c_declared: float
    integral_ok: bool
    positive_finite: bool
    logderiv_bounded: bool
    c_matches: bool

    @property
    def passed(self) -> bool:
        return self.integral_ok and self.positive_finite and self.logderiv_bounded and self.c_matches


def validate_tbg(gain: TbgGain, c_tol: float = 1e-2, integral_tol: float = 1e-6) -> TbgReport:
    """Numerically check the density assumptions behind a TBG gain.

    Never raises on a failed check; inspect the returned report instead.
    """
    grid = np.concatenate([np.geomspace(1e-6, 1.0, 40), np.linspace(1.0, 60.0, 240)[1:]])

    with np.errstate(all="ignore"):
        try:
            integral, _ = integrate.quad(gain.omega, 0.0, np.inf, limit=500, epsabs=1e-12, epsrel=1e-10)
        except (ValueError, OverflowError, ZeroDivisionError):
            integral = math.nan
        omegas = np.array([_safe(gain.omega, s) for s in grid])
        positive_finite = bool(np.all(np.isfinite(omegas)) and np.all(omegas > 0))
        logders = np.array([_safe(gain.omega_logderiv, s) for s in grid]) if positive_finite else np.array([math.nan])
        logderiv_bounded = bool(np.all(np.isfinite(logders)))
        c_numeric = _safe(estimate_c, gain)

    c_estimate = gain.analytic_c if gain.analytic_c is not None else c_numeric
    try:
        c_declared = gain.c
    except (ValueError, ZeroDivisionError):
        c_declared = math.nan
    return TbgReport(
        integral=integral,
        c_numeric=c_numeric,
        c_estimate=c_estimate,
        c_declared=c_declared,
        integral_ok=bool(abs(integral - 1.0) <= integral_tol),
        positive_finite=positive_finite,
        logderiv_bounded=logderiv_bounded,
        c_matches=bool(abs(c_estimate - c_declared) <= c_tol),
    )


def _safe(fn, *args) -> float:
    try:
        return float(fn(*args))
    except (ValueError, OverflowError, ZeroDivisionError):
        return math.nan
