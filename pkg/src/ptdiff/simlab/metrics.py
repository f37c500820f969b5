"""Trajectory records and derived metrics."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np


@dataclass
class Trajectory:
    """Time-gridded record of one differentiator run.

    ``y`` holds the analytic derivatives ``y, y', ..., y^(n)`` matching the
    columns of ``z``; errors are always recomputed as ``z - y``.
    """

    t: np.ndarray
    y: np.ndarray
    z: np.ndarray
    kappa: np.ndarray
    H_norm: np.ndarray
    h: float
    w: np.ndarray | None = None
    y_meas: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    @property
    def e(self) -> np.ndarray:
        return self.z - self.y

    @property
    def H_integral(self) -> np.ndarray:
        """Running left-Riemann sum of ``||H||`` on the grid (zero at t=0)."""
        out = np.zeros_like(self.H_norm)
        out[1:] = np.cumsum(self.H_norm[:-1]) * self.h
        return out

    def __len__(self) -> int:
        return len(self.t)

    def index(self, t: float) -> int:
        """Grid index nearest to ``t``."""
        return int(min(max(round(t / self.h), 0), len(self.t) - 1))


@dataclass
class Metrics:
    settling_time: float | None
    terminal_error_at_Tstar: float
    peak_error: float
    correction_effort: float
    effort_to_Tc: float
    tol: float

    def to_dict(self) -> dict:
        return asdict(self)


def error_norms(traj: Trajectory) -> np.ndarray:
    """``||e(t_k)||_inf`` per grid point."""
    if len(traj) == 0:
        return np.zeros(0)
    return np.max(np.abs(traj.e), axis=1)


def settling_time(traj: Trajectory, tol: float) -> float | None:
    """First grid time from which ``||e||_inf <= tol`` up to the end of the run.

    Returns ``None`` when the error is above ``tol`` at the last grid point.
    """
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol!r}")
    norms = error_norms(traj)
    if norms.size == 0:
        return None
    bad = np.nonzero(norms > tol)[0]
    if bad.size == 0:
        return 0.0
    k = bad[-1] + 1
    if k >= len(norms):
        return None
    return float(traj.t[k])


def max_error(traj: Trajectory, t0: float, t1: float) -> float:
    """Largest ``||e||_inf`` over grid points in ``[t0, t1]``."""
    sel = (traj.t >= t0 - 1e-12) & (traj.t <= t1 + 1e-12)
    if not np.any(sel):
        raise ValueError(f"no grid points in [{t0}, {t1}]")
    return float(np.max(np.abs(traj.e[sel])))


def rms_error(traj: Trajectory, channel: int, t0: float, t1: float | None = None) -> float:
    t1 = traj.t[-1] if t1 is None else t1
    sel = (traj.t >= t0 - 1e-12) & (traj.t <= t1 + 1e-12)
    return float(np.sqrt(np.mean(traj.e[sel, channel] ** 2)))


def correction_effort(traj: Trajectory, t_end: float | None = None) -> float:
    """Left-Riemann ``int_0^t_end ||H|| dt`` consistent with the Euler grid."""
    if len(traj) == 0:
        return 0.0
    if t_end is None:
        t_end = traj.t[-1]
    sel = traj.t < t_end - 1e-12
    return float(np.sum(traj.H_norm[sel]) * traj.h)


def compute_metrics(traj: Trajectory, tol: float, Tstar: float, Tc: float) -> Metrics:
    norms = error_norms(traj)
    if len(traj):
        k = traj.index(Tstar)
        terminal = float(np.linalg.norm(traj.e[k]))
        peak = float(np.max(norms))
    else:
        terminal = peak = math.nan
    return Metrics(
        settling_time=settling_time(traj, tol),
        terminal_error_at_Tstar=terminal,
        peak_error=peak,
        correction_effort=correction_effort(traj),
        effort_to_Tc=correction_effort(traj, Tc),
        tol=tol,
    )
