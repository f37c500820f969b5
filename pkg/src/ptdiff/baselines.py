"""Comparison differentiators.

* :func:`holloway_rhs` - second-order prescribed-time observer with linear
  gains that grow with the reciprocal TBG gain; the gain is frozen from
  ``Tstar`` on.
* :func:`seeber_rhs` - autonomous first-order differentiator with a fixed
  bound on the global convergence time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .levant import sgn_pow
from .tbg import Reciprocal


@dataclass(frozen=True)
class HollowayConfig:
    Tc: float = 1.0
    m: float = 1.0
    l: tuple[float, float, float] = (6.0, 11.0, 6.0)
    Tstar: float = 0.9
    kappa_cap: float = 1e12

    def __post_init__(self):
        if not self.Tc > 0:
            raise ValueError(f"Tc must be > 0, got {self.Tc!r}")
        if not 0 < self.Tstar < self.Tc:
            raise ValueError(f"Tstar must lie in (0, Tc), got {self.Tstar!r}")
        if len(self.l) != 3:
            raise ValueError("l must contain three linear gains")

    @property
    def gain(self) -> Reciprocal:
        return Reciprocal(alpha=1.0, Tc=self.Tc)

    @property
    def p(self) -> dict[str, float]:
        m, Tc = self.m, self.Tc
        return {
            "p11": 1.0,
            "p21": -2.0 * (m + 3) / Tc,
            "p31": (m + 3) * (m + 4) / Tc**2,
            "p32": -(m + 3) / Tc,
        }

    def kappa(self, t: float) -> float:
        k = self.gain.kappa(min(t, self.Tstar))
        if k > self.kappa_cap:
            raise OverflowError(f"kappa={k:g} exceeds kappa_cap={self.kappa_cap:g}")
        return k


def holloway_gains(t: float, cfg: HollowayConfig) -> tuple[float, float, float]:
    """Return ``(g0, g1, g2)`` at time ``t`` as printed for ``m``, ``l``, ``Tc``."""
    p = cfg.p
    m, Tc = cfg.m, cfg.Tc
    l1, l2, l3 = cfg.l
    k = cfg.kappa(t)
    g0 = l1 + Tc * k * (p["p11"] * (m + 3) / Tc - p["p21"])
    g1 = l2 + Tc**2 * k**2 * (p["p21"] * (m + 4) / Tc - p["p31"]) - p["p21"] * Tc * k * g0
    g2 = (
        l3
        + Tc**3 * k**3 * p["p31"] * (m + 5) / Tc
        - p["p31"] * Tc**2 * k**2 * g0
        - p["p32"] * Tc * k * g1
    )
    return g0, g1, g2


def holloway_correction(e0: float, t: float, cfg: HollowayConfig) -> np.ndarray:
    return np.array(holloway_gains(t, cfg)) * e0


def holloway_rhs(z: np.ndarray, y: float, t: float, cfg: HollowayConfig) -> np.ndarray:
    if len(z) != 3:
        raise ValueError("the Holloway observer is implemented for n=2 only")
    dz = -holloway_correction(z[0] - y, t, cfg)
    dz[:-1] += z[1:]
    return dz


@dataclass(frozen=True)
class SeeberConfig:
    L: float = 1.0
    Tc: float = 1.0

    def __post_init__(self):
        if not (self.L > 0 and self.Tc > 0):
            raise ValueError("L and Tc must both be > 0")

    @property
    def k1(self) -> float:
        return 4.0 * math.sqrt(self.L)

    @property
    def k2(self) -> float:
        return 2.0 * self.L

    @property
    def k3(self) -> float:
        return 9.8 / (self.Tc * math.sqrt(self.L))


def seeber_nu1(w: float, k3: float) -> float:
    return sgn_pow(w, 0.5) + k3**2 * sgn_pow(w, 1.5)


def seeber_nu2(w: float, k3: float) -> float:
    return sgn_pow(w, 0.0) + 4 * k3**2 * w + 3 * k3**4 * sgn_pow(w, 2.0)


def seeber_correction(e0: float, cfg: SeeberConfig) -> np.ndarray:
    k3 = cfg.k3
    return np.array([cfg.k1 * seeber_nu1(e0, k3), cfg.k2 * seeber_nu2(e0, k3)])


def seeber_rhs(z: np.ndarray, y: float, cfg: SeeberConfig) -> np.ndarray:
    if len(z) != 2:
        raise ValueError("the Seeber differentiator is first order (two states)")
    h = seeber_correction(z[0] - y, cfg)
    return np.array([-h[0] + z[1], -h[1]])
