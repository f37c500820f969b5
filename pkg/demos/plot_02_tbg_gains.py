"""
Time-base-generator gains
=========================

Each gain family comes from a density on the half line. We tabulate
kappa, the time scale phi and the limit constant c for the four
closed-form families.
"""

import numpy as np

from ptdiff.tbg import Rational, Reciprocal, Secant, Tangent, validate_tbg

gains = {
    "reciprocal": Reciprocal(alpha=1.0, Tc=1.0),
    "secant": Secant(Tc=1.0),
    "tangent": Tangent(gamma=0.01, Tc=1.0),
    "rational": Rational(alpha=1.0, beta=0.1, Tc=1.0),
}

ts = np.array([0.0, 0.5, 0.9, 0.99, 0.999])
print(f"{'family':<11}" + "".join(f"kappa({t:g})".rjust(14) for t in ts))
for name, g in gains.items():
    print(f"{name:<11}" + "".join(f"{g.kappa(t):14.4g}" for t in ts))

# phi blows up at Tc; its inverse squeezes infinite scaled time into [0, Tc)
for name, g in gains.items():
    tau = g.phi(0.99)
    print(f"{name:<11} phi(0.99) = {tau:8.4f}   phi_inv(phi(0.99)) = {g.phi_inv(tau):.12f}")

# the density checks: unit mass, positivity, bounded log-derivative, and c
for name, g in gains.items():
    rep = validate_tbg(g)
    print(f"{name:<11} int omega = {rep.integral:.10f}  c = {rep.c_estimate:.4f} (declared {rep.c_declared:.4f})"
          f"  {'ok' if rep.passed else 'FAILED'}")
