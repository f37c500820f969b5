"""Structural matrices of the predefined-time differentiator.

For an order ``n`` and a TBG limit constant ``c`` this module builds the
shift matrix ``U``, the weight matrix ``D = diag(0, ..., n)``, the input
vector ``B = (0, ..., 0, 1)``, the unit-lower-triangular change of basis
``Q(c)`` whose columns are ``(U - cD)^(n-j) B`` and the vector
``P = (U - cD)^(n+1) B``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class StructuralMatrices:
    n: int
    c: float
    U: np.ndarray
    D: np.ndarray
    B: np.ndarray
    Q: np.ndarray
    Qinv: np.ndarray
    P: np.ndarray

    @property
    def size(self) -> int:
        return self.n + 1


def _check(n: int, c: float) -> None:
    if int(n) != n or n < 0:
        raise ValueError(f"order n must be a non-negative integer, got {n!r}")
    if not math.isfinite(c) or c < 0:
        raise ValueError(f"limit constant c must be finite and >= 0, got {c!r}")


def shift_matrix(n: int) -> np.ndarray:
    return np.eye(n + 1, k=1)


def unit_lower_inverse(Q: np.ndarray) -> np.ndarray:
    """Invert a unit-lower-triangular matrix by forward substitution."""
    m = Q.shape[0]
    if Q.shape != (m, m) or np.any(np.diag(Q) != 1.0) or np.any(np.triu(Q, 1) != 0.0):
        raise ValueError("expected a square unit-lower-triangular matrix")
    X = np.zeros_like(Q, dtype=float)
    for col in range(m):
        X[col, col] = 1.0
        for i in range(col + 1, m):
            X[i, col] = -Q[i, col:i] @ X[col:i, col]
    return X


def build_structure(n: int, c: float) -> StructuralMatrices:
    _check(n, c)
    n = int(n)
    c = float(c)
    U = shift_matrix(n)
    D = np.diag(np.arange(n + 1, dtype=float))
    B = np.zeros(n + 1)
    B[-1] = 1.0
    S = U - c * D

    # columns[k] = S^k B, k = 0..n+1
    powers = [B]
    for _ in range(n + 1):
        powers.append(S @ powers[-1])
    Q = np.column_stack([powers[n - j] for j in range(n + 1)])
    Qinv = unit_lower_inverse(Q)
    P = powers[n + 1]
    for arr in (U, D, B, Q, Qinv, P):
        arr.setflags(write=False)
    return StructuralMatrices(n=n, c=c, U=U, D=D, B=B, Q=Q, Qinv=Qinv, P=P)


def make_A(n: int, c: float) -> np.ndarray:
    """Rank-one matrix ``-Q^-1 (U - cD)^(n+1) B [1, 0, ..., 0]``."""
    s = build_structure(n, c)
    A = np.zeros((s.size, s.size))
    A[:, 0] = -(s.Qinv @ s.P)
    return A


def lambda_diag(kappa: float, n: int) -> np.ndarray:
    """``diag(kappa, kappa**2, ..., kappa**(n+1))``."""
    if not math.isfinite(kappa) or kappa <= 0:
        raise ValueError(f"kappa must be finite and > 0, got {kappa!r}")
    return np.diag(kappa ** np.arange(1, n + 2, dtype=float))
