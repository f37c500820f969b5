"""Scaled-time twin of a predefined-time run.

The error of the differentiator, mapped through ``eps = kappa Q^-1 Lambda^-1 e``
and ``tau = phi(t)``, obeys an autonomous-like system in ``tau``. Integrating
that system independently and mapping back gives a second route to the
same trajectory and settling time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..predeftime import DiffConfig, from_scaled_coords, rhs_scaled_tau, to_scaled_coords
from .experiments import RunSpec, initial_state


@dataclass
class ScaledRun:
    tau: np.ndarray
    t: np.ndarray
    eps: np.ndarray
    e: np.ndarray  # eps mapped back to t-domain error coordinates

    def settling_tau(self, tol: float) -> float | None:
        norms = np.max(np.abs(self.e), axis=1)
        bad = np.nonzero(norms > tol)[0]
        if bad.size == 0:
            return 0.0
        k = bad[-1] + 1
        return None if k >= len(norms) else float(self.tau[k])


def simulate_scaled(spec: RunSpec, dtau: float | None = None) -> ScaledRun:
    """Euler-integrate the scaled-time error system up to ``tau = phi(Tstar)``."""
    cfg = spec.build_config()
    if not isinstance(cfg, DiffConfig) or cfg.filtering:
        raise ValueError("scaled-time twin is defined for the plain predefined-time differentiator")
    if spec.sigma:
        raise ValueError("scaled-time twin assumes noise-free measurements")
    dtau = spec.h if dtau is None else dtau
    signal = spec.build_signal()
    n = cfg.n
    gain = cfg.gain
    tau_end = gain.phi(cfg.Tstar)
    steps = int(math.floor(tau_end / dtau))
    tau = np.arange(steps + 1) * dtau
    t = np.array([gain.phi_inv(s) for s in tau])
    y_top = signal.derivative(n + 1, t)

    e0 = initial_state(spec, signal) - signal.derivatives(np.zeros(1), n)[0]
    eps = np.empty((steps + 1, n + 1))
    back = np.empty_like(eps)
    x = to_scaled_coords(e0, 0.0, cfg)
    for j in range(steps + 1):
        eps[j] = x
        back[j] = from_scaled_coords(x, t[j], cfg)
        if j == steps:
            break
        # kappa^-(n+1) = (Tc omega)^(n+1)
        delta = -math.exp((n + 1) * (math.log(cfg.Tc) + gain.log_omega(tau[j]))) * y_top[j]
        x = x + dtau * rhs_scaled_tau(x, tau[j], delta, cfg)
    return ScaledRun(tau=tau, t=t, eps=eps, e=back)
