"""
Bounded gains and the linear-observer contrast
==============================================

Both observers freeze their time-varying gain at T* = 0.9, where the
reciprocal gain equals 10. The linear observer then leaves a residual
proportional to the initial error. The nonlinear predefined-time
differentiator still reaches zero error before Tc because its Levant
stage takes over at T*.
"""

import math

from ptdiff.simlab import max_error, run_experiment

results = {r.label: r for r in run_experiment("ex1")}
prev = None
for scale in ("10", "100", "10000"):
    e = results[f"holloway@{scale}"].metrics.terminal_error_at_Tstar
    growth = ""
    if prev is not None:
        decades = math.log10(float(scale) / prev[0])
        growth = f"   x{(e / prev[1]) ** (1 / decades):.2f} per decade"
    print(f"Holloway, IC {scale:>5}: ||e(T*)|| = {e:.4g}{growth}")
    prev = (float(scale), e)

for scale in ("10", "100", "10000"):
    r = results[f"ours@{scale}"]
    print(f"predefined-time, IC {scale:>5}: max|e| on [1, 2] = {max_error(r.traj, 1, 2):.2e}")
