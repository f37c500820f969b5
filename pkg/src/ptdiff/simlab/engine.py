"""Fixed-step explicit Euler integration."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass
class EulerResult:
    t: np.ndarray
    x: np.ndarray
    aux: np.ndarray | None = None


class DivergenceError(FloatingPointError):
    """The state became non-finite. ``partial`` holds the finite prefix."""

    def __init__(self, step: int, t: float, partial: EulerResult):
        super().__init__(f"state became non-finite after step {step} (t={t:g}); last finite state kept")
        self.step = step
        self.t = t
        self.partial = partial


def time_grid(h: float, t_end: float) -> np.ndarray:
    """Uniform grid ``k*h`` for ``k = 0..round(t_end/h)``; never accumulated."""
    if not h > 0:
        raise ValueError(f"step must be > 0, got {h!r}")
    if not t_end >= 0:
        raise ValueError(f"horizon must be >= 0, got {t_end!r}")
    steps = int(round(t_end / h))
    return np.arange(steps + 1) * h


def integrate_euler(
    rhs: Callable,
    x0,
    h: float,
    t_end: float,
    n_aux: int = 0,
) -> EulerResult:
    """Integrate ``x' = rhs(t, x)`` with ``x_{k+1} = x_k + h rhs(t_k, x_k)``.

    With ``n_aux > 0`` the right-hand side must return ``(dx, aux)`` where
    ``aux`` holds ``n_aux`` per-step diagnostics; they are also evaluated at
    the final grid point.
    """
    t = time_grid(h, t_end)
    x = np.array(x0, dtype=float)
    if x.ndim != 1:
        raise ValueError("x0 must be a 1-D state vector")
    X = np.empty((len(t), len(x)))
    A = np.full((len(t), n_aux), np.nan) if n_aux else None
    last = len(t) - 1
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(len(t)):
            X[k] = x
            try:
                out = rhs(t[k], x)
            except (OverflowError, FloatingPointError, ZeroDivisionError):
                raise DivergenceError(k, t[k], _prefix(t, X, A, k)) from None
            if n_aux:
                dx, A[k] = out
            else:
                dx = out
            if k == last:
                break
            x = x + h * dx
            if not np.all(np.isfinite(x)):
                raise DivergenceError(k, t[k], _prefix(t, X, A, k + 1))
    return EulerResult(t, X, A)


def _prefix(t, X, A, k):
    return EulerResult(t[:k], X[:k], None if A is None else A[:k])
