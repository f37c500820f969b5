"""
First-order differentiation of a trigonometric signal
=====================================================

y(t) = 0.75 cos t + 0.0025 sin 10t + t with |y''| <= 1. Both predefined-time
variants settle before Tc = 1 for initial errors up to 1e4, while the
autonomous comparison differentiator is fast for moderate errors but its
explicit Euler integration blows up for large ones.
"""

from ptdiff.simlab import max_error, run_experiment

for r in run_experiment("ex2"):
    m = r.metrics
    if r.diverged:
        print(f"{r.label:<16} diverged: {r.message}")
        continue
    print(f"{r.label:<16} settles at {m.settling_time:.4f}   max|e| on [1, 3] = {max_error(r.traj, 1, 3):.2e}"
          f"   int ||H|| on [0, Tc] = {m.effort_to_Tc:.4g}")
