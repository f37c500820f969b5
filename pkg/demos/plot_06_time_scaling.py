"""
Scaled time
===========

Under tau = phi(t) and eps = kappa Q^-1 Lambda^-1 e the error obeys an
autonomous-like system. Integrating it directly and comparing with the
t-domain run gives the settling-time relation T = Tc (1 - exp(-alpha Tau))
for the reciprocal gain.
"""

import math

import numpy as np

from ptdiff.predeftime import to_scaled_coords
from ptdiff.simlab import preset_specs, simulate, simulate_scaled

spec = preset_specs("ex2", scales=[10.0])[0]
run = simulate(spec)
twin = simulate_scaled(spec)
cfg = spec.build_config()

T = run.metrics.settling_time
Tau = twin.settling_tau(spec.tol)
print(f"t-domain settling time      T   = {T:.4f}")
print(f"tau-domain settling time    Tau = {Tau:.4f}")
print(f"Tc (1 - exp(-alpha Tau))        = {spec.Tc * (1 - math.exp(-Tau)):.4f}")

# the two routes agree in the scaled coordinates
k = run.traj.t < cfg.Tstar
eps_t = np.array([to_scaled_coords(e, t, cfg) for e, t in zip(run.traj.e[k], run.traj.t[k])])
tau = np.array([cfg.gain.phi(t) for t in run.traj.t[k]])
keep = tau <= twin.tau[-1]
eps_tau = np.column_stack([np.interp(tau[keep], twin.tau, twin.eps[:, j]) for j in range(2)])
print(f"sup |eps_t - eps_tau| = {np.abs(eps_t[keep] - eps_tau).max():.4f}")
