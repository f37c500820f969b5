"""Simulation harness: integrator, signals, metrics and experiment presets."""
from .engine import DivergenceError, EulerResult, integrate_euler, time_grid
from .experiments import PRESETS, RunResult, RunSpec, SpecError, preset_specs, run_experiment, simulate
from .metrics import Metrics, Trajectory, compute_metrics, correction_effort, max_error, rms_error, settling_time
from .signals import TestSignal, add_noise, make_bound, make_signal, validate_signal_class
from .timescale import ScaledRun, simulate_scaled

__all__ = [
    "DivergenceError", "EulerResult", "integrate_euler", "time_grid",
    "PRESETS", "RunResult", "RunSpec", "SpecError", "preset_specs", "run_experiment", "simulate",
    "Metrics", "Trajectory", "compute_metrics", "correction_effort", "max_error", "rms_error", "settling_time",
    "TestSignal", "add_noise", "make_bound", "make_signal", "validate_signal_class",
    "ScaledRun", "simulate_scaled",
]
