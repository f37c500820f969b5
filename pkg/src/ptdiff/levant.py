"""Levant's exact differentiator correction with a time-varying bound.

The correction ``Phi = (phi_0, ..., phi_n)`` is built by the recursion
``phi_0 = chi_0(e0)``, ``phi_i = chi_i(phi_{i-1})`` with

    chi_i(w) = lambda_{n-i} L**(1/(n-i+1)) |w|**((n-i)/(n-i+1)) sign(w)
               + mu_{n-i} M w
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

# (lambda_i, mu_i) for i = 0..4, as commonly recommended for this differentiator
PUBLISHED_LAMBDAS = (1.1, 1.5, 2.0, 3.0, 5.0)
PUBLISHED_MUS = (2.0, 3.0, 4.0, 7.0, 9.0)


@dataclass(frozen=True)
class LevantParams:
    n: int
    lambdas: tuple[float, ...]
    mus: tuple[float, ...]

    def __post_init__(self):
        lam = tuple(float(v) for v in self.lambdas)
        mu = tuple(float(v) for v in self.mus)
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "mus", mu)
        if len(lam) != self.n + 1 or len(mu) != self.n + 1:
            raise ValueError(
                f"need n+1={self.n + 1} lambdas and mus, got {len(lam)} and {len(mu)}"
            )
        if min(lam) <= 0 or min(mu) <= 0:
            raise ValueError("all lambdas and mus must be strictly positive")


@dataclass(frozen=True)
class GrowthBound:
    """Bound ``|y^(n+1)(t)| <= L(t)`` with ``|L'/L| <= M``.

    ``L`` is a callable; ``name`` is a label used when serializing configs.
    """

    L: Callable[[float], float]
    M: float
    name: str = "custom"

    def __post_init__(self):
        if not (math.isfinite(self.M) and self.M >= 0):
            raise ValueError(f"M must be finite and >= 0, got {self.M!r}")

    @classmethod
    def constant(cls, L: float, M: float) -> "GrowthBound":
        L = float(L)
        if not L > 0:
            raise ValueError(f"constant bound must be > 0, got {L!r}")
        return cls(L=lambda t, _L=L: _L if np.ndim(t) == 0 else np.full(np.shape(t), _L), M=M, name=repr(L))


def default_params(n: int) -> LevantParams:
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    if n >= len(PUBLISHED_LAMBDAS):
        raise ValueError(
            f"no published parameters for n={n} (available up to n={len(PUBLISHED_LAMBDAS) - 1}); "
            "supply lambdas and mus explicitly"
        )
    return LevantParams(n, PUBLISHED_LAMBDAS[: n + 1], PUBLISHED_MUS[: n + 1])


def sgn_pow(w: float, a: float) -> float:
    """``|w|**a * sign(w)``, with sign(0) = 0 (also for ``a == 0``)."""
    if w == 0:
        return 0.0
    if a == 0:
        return 1.0 if w > 0 else -1.0
    return math.copysign(abs(w) ** a, w)


def chi_at(i: int, w: float, M: float, L: float, params: LevantParams) -> float:
    n = params.n
    if not 0 <= i <= n:
        raise ValueError(f"stage index {i} outside [0, {n}]")
    if not L > 0:
        raise ValueError(f"bound value L must be > 0, got {L!r}")
    k = n - i
    return params.lambdas[k] * L ** (1.0 / (k + 1)) * sgn_pow(w, k / (k + 1)) + params.mus[k] * M * w


def phi_correction(e0: float, M: float, L: float, params: LevantParams) -> np.ndarray:
    if not L > 0:
        raise ValueError(f"bound value L must be > 0, got {L!r}")
    n = params.n
    out = np.empty(n + 1)
    w = e0
    for i in range(n + 1):
        k = n - i
        # inlined chi_at; this sits in the integrator's inner loop
        if w == 0:
            s = 0.0
        elif k == 0:
            s = 1.0 if w > 0 else -1.0
        else:
            s = math.copysign(abs(w) ** (k / (k + 1)), w)
        w = params.lambdas[k] * L ** (1.0 / (k + 1)) * s + params.mus[k] * M * w
        out[i] = w
    return out


def levant_rhs(z: np.ndarray, y: float, t: float, bound: GrowthBound, params: LevantParams) -> np.ndarray:
    """Right-hand side ``-Phi(z0 - y; M, L(t)) + U z`` of the plain differentiator."""
    dz = -phi_correction(z[0] - y, bound.M, bound.L(t), params)
    dz[:-1] += z[1:]
    return dz
