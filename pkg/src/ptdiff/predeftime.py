"""Predefined-time arbitrary-order exact differentiator.

Before the switch time ``Tstar`` the correction is

    H(e0, t) = Lambda(t) (Q(c) Phi(e0; Mcal, L(t) kappa(t)**-(n+1)) + P e0)

with ``Lambda = diag(kappa, ..., kappa**(n+1))`` and ``P = (U - cD)**(n+1) B``.
From ``Tstar`` on it is Levant's correction ``Phi(e0; M, L(t))``. With
``Tstar = Tc`` every admissible error is zero by ``Tc``; ``Tstar < Tc``
keeps the gain bounded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .levant import GrowthBound, LevantParams, default_params, phi_correction
from .structmat import StructuralMatrices, build_structure
from .tbg import TbgGain

DEFAULT_TSTAR_FRACTION = 0.95


class GainSaturationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Filtering:
    nf: int
    nd: int

    def __post_init__(self):
        if self.nf < 0 or self.nd < 0:
            raise ValueError("filter and differentiation orders must be >= 0")


@dataclass(frozen=True)
class DiffConfig:
    n: int
    Tc: float
    Mcal: float
    gain: TbgGain
    bound: GrowthBound
    Tstar: float | None = None
    params: LevantParams | None = None
    mode: Filtering | None = None
    kappa_cap: float = 1e12

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        if not self.Tc > 0:
            raise ValueError(f"Tc must be > 0, got {self.Tc!r}")
        if abs(self.gain.Tc - self.Tc) > 1e-12 * self.Tc:
            raise ValueError(f"gain was built for Tc={self.gain.Tc}, config has Tc={self.Tc}")
        if self.Tstar is None:
            object.__setattr__(self, "Tstar", DEFAULT_TSTAR_FRACTION * self.Tc)
        if not 0 < self.Tstar <= self.Tc:
            raise ValueError(f"Tstar must satisfy 0 < Tstar <= Tc={self.Tc}, got {self.Tstar!r}")
        limit = (self.n + 1) * self.gain.c
        if not self.Mcal > limit:
            raise ValueError(
                f"Mcal must exceed (n+1)·c = {limit:g} (got Mcal={self.Mcal:g}); "
                "this is required for predefined-time convergence"
            )
        if self.params is None:
            object.__setattr__(self, "params", default_params(self.n))
        elif self.params.n != self.n:
            raise ValueError(f"Levant parameters are for n={self.params.n}, config has n={self.n}")
        if self.mode is not None and self.mode.nf + self.mode.nd != self.n:
            raise ValueError(
                f"filtering mode needs nf + nd = n, got {self.mode.nf} + {self.mode.nd} != {self.n}"
            )

    @cached_property
    def structure(self) -> StructuralMatrices:
        return build_structure(self.n, self.gain.c)

    @property
    def filtering(self) -> bool:
        return self.mode is not None

    @property
    def nf(self) -> int:
        return self.mode.nf if self.mode is not None else 0

    def kappa(self, t: float) -> float:
        """Gain at ``t``; raises once ``kappa_cap`` is exceeded."""
        k = self.gain.kappa(t)
        if not (math.isfinite(k) and k <= self.kappa_cap):
            raise GainSaturationError(f"kappa({t:g}) = {k:g} exceeds kappa_cap={self.kappa_cap:g}")
        return k


@dataclass
class DiffState:
    t: float
    z: np.ndarray
    w: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        self.z = np.asarray(self.z, dtype=float)
        self.w = np.asarray(self.w, dtype=float)
        if not (np.all(np.isfinite(self.z)) and np.all(np.isfinite(self.w))):
            raise FloatingPointError(f"non-finite differentiator state at t={self.t}")


def correction_H(e0: float, t: float, cfg: DiffConfig) -> np.ndarray:
    if not math.isfinite(e0):
        raise ValueError(f"non-finite measurement error e0={e0!r} at t={t}")
    L = cfg.bound.L(t)
    if t >= cfg.Tstar:
        return phi_correction(e0, cfg.bound.M, L, cfg.params)
    n = cfg.n
    k = cfg.kappa(t)
    s = cfg.structure
    scaled_L = math.exp(math.log(L) - (n + 1) * math.log(k))
    Phi = phi_correction(e0, cfg.Mcal, scaled_L, cfg.params)
    return k ** np.arange(1, n + 2) * (s.Q @ Phi + s.P * e0)


def rhs_plain(state: DiffState, y: float, cfg: DiffConfig) -> np.ndarray:
    z = state.z
    dz = -correction_H(z[0] - y, state.t, cfg)
    dz[:-1] += z[1:]
    return dz


def rhs_filtering(state: DiffState, y: float, cfg: DiffConfig) -> np.ndarray:
    """Derivative of the stacked state ``(w_1..w_nf, z_0..z_nd)``."""
    if cfg.mode is None:
        raise ValueError("rhs_filtering needs a config in filtering mode")
    nf = cfg.mode.nf
    w, z = state.w, state.z
    if len(w) != nf or len(z) != cfg.mode.nd + 1:
        raise ValueError(f"state shape mismatch: expected {nf} filter states and {cfg.mode.nd + 1} estimates")
    w1 = w[0] if nf else z[0] - y
    return filtering_derivative(correction_H(w1, state.t, cfg), np.concatenate([w, z]), y, nf)


def filtering_derivative(h: np.ndarray, xi: np.ndarray, y: float, nf: int) -> np.ndarray:
    """Wire an evaluated correction ``h`` into the filtering chain.

    ``xi = (w_1..w_nf, z_0..z_nd)``; the last filter state is driven by
    ``z_0 - y`` instead of ``z_0``.
    """
    dxi = -h
    dxi[:-1] += xi[1:]
    if nf:
        dxi[nf - 1] -= y
    return dxi


def to_scaled_coords(e: np.ndarray, t: float, cfg: DiffConfig) -> np.ndarray:
    """``eps = kappa Q^-1 Lambda^-1 e``."""
    if t >= cfg.Tstar:
        raise ValueError(f"scaled coordinates are defined only before Tstar={cfg.Tstar}, got t={t}")
    k = cfg.kappa(t)
    e = np.asarray(e, dtype=float)
    return k * (cfg.structure.Qinv @ (e / k ** np.arange(1, cfg.n + 2)))


def from_scaled_coords(eps: np.ndarray, t: float, cfg: DiffConfig) -> np.ndarray:
    """Inverse of :func:`to_scaled_coords`."""
    k = cfg.kappa(t)
    return k ** np.arange(1, cfg.n + 2) * (cfg.structure.Q @ np.asarray(eps, dtype=float)) / k


def scaled_bound(tau: float, cfg: DiffConfig) -> float:
    """``L(phi_inv(tau)) * rho(tau)**-(n+1)`` with ``rho = 1/(Tc omega)``."""
    t = cfg.gain.phi_inv(tau)
    return math.exp(math.log(cfg.bound.L(t)) + (cfg.n + 1) * (math.log(cfg.Tc) + cfg.gain.log_omega(tau)))


def rhs_scaled_tau(eps: np.ndarray, tau: float, delta: float, cfg: DiffConfig) -> np.ndarray:
    """Error dynamics in scaled time, used to cross-check the ``t``-domain run.

    ``delta`` is the scaled disturbance, ``-kappa**-(n+1) y^(n+1)`` at
    ``t = phi_inv(tau)``.
    """
    if not tau >= 0:
        raise ValueError(f"tau must be >= 0, got {tau!r}")
    eps = np.asarray(eps, dtype=float)
    s = cfg.structure
    out = -phi_correction(eps[0], cfg.Mcal, scaled_bound(tau, cfg), cfg.params)
    out[:-1] += eps[1:]
    out[-1] += delta
    coef = cfg.gain.omega_logderiv(tau) + cfg.gain.c
    if coef != 0.0:
        out += coef * (s.Qinv @ (s.D @ (s.Q @ eps)))
    return out
