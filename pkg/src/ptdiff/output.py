"""CSV trajectory output with a JSON metrics sidecar."""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .simlab.metrics import Metrics, Trajectory


def csv_columns(traj: Trajectory) -> list[str]:
    n = traj.z.shape[1] - 1
    cols = ["t", "y"] + [f"y_d{k}" for k in range(1, n + 1)]
    cols += [f"z_{k}" for k in range(n + 1)] + [f"e_{k}" for k in range(n + 1)]
    cols += ["kappa", "H_norm_integral"]
    if traj.w is not None:
        cols += [f"w_{k}" for k in range(1, traj.w.shape[1] + 1)]
    return cols


def trajectory_table(traj: Trajectory) -> np.ndarray:
    parts = [traj.t[:, None], traj.y, traj.z, traj.e, traj.kappa[:, None], traj.H_integral[:, None]]
    if traj.w is not None:
        parts.append(traj.w)
    return np.hstack(parts) if len(traj) else np.zeros((0, len(csv_columns(traj))))


def sidecar_path(path) -> Path:
    path = Path(path)
    stem = path.name[:-4] if path.name.endswith(".csv") else path.name
    return path.with_name(stem + ".metrics.json")


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def emit_csv(traj: Trajectory, metrics: Metrics, path, extra: dict | None = None) -> Path:
    """Write ``traj`` as CSV (17 significant digits) plus a metrics sidecar.

    Returns the CSV path. I/O errors are re-raised with the path attached.
    """
    path = Path(path)
    table = trajectory_table(traj)
    lines = [",".join(csv_columns(traj))]
    lines += [",".join("%.17g" % v for v in row) for row in table]
    summary = {k: _json_value(v) for k, v in metrics.to_dict().items()}
    summary.update(traj.meta)
    summary["rows"] = len(table)
    if extra:
        summary.update(extra)
    try:
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        sidecar_path(path).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path
