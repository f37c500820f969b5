"""
Structural matrices
===================

The differentiator is assembled from a handful of small triangular
matrices. This script builds them for a second-order case and checks the
identities the design relies on.
"""

import numpy as np

from ptdiff.structmat import build_structure, lambda_diag, make_A

np.set_printoptions(precision=4, suppress=True)

# n = 2 with c = 1, the limit constant of the tangent gain
s = build_structure(2, 1.0)
print("Q =\n", s.Q)
print("Q^-1 =\n", s.Qinv)
print("P =", s.P)

# Q maps the shift matrix U onto U - cD, up to a rank-one correction A
A = make_A(2, 1.0)
residual = s.Q @ s.U - ((s.U - s.c * s.D) @ s.Q + s.Q @ A)
print("max |QU - (U-cD)Q - QA| =", np.abs(residual).max())

# Q^-1 D Q stays lower triangular, so the drift it adds in scaled time is harmless
print("Q^-1 D Q =\n", s.Qinv @ s.D @ s.Q)

# the gain matrix conjugates U into kappa * U
kappa = 3.0
Lam = lambda_diag(kappa, 2)
print("Lambda^-1 U Lambda / kappa =\n", np.linalg.solve(Lam, s.U @ Lam) / kappa)

# and it scales B with exponent n + 1
print("Q^-1 Lambda^-1 B =", s.Qinv @ np.linalg.solve(Lam, s.B), " kappa^-3 =", kappa**-3)
