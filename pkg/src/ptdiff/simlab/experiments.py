"""Run specifications, single simulations and the experiment presets."""
from __future__ import annotations

import dataclasses
import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np

from ..baselines import HollowayConfig, SeeberConfig, holloway_correction, seeber_correction
from ..levant import LevantParams, default_params, phi_correction
from ..predeftime import DiffConfig, Filtering, correction_H, filtering_derivative
from ..tbg import make_gain
from .engine import DivergenceError, integrate_euler, time_grid
from .metrics import Metrics, Trajectory, compute_metrics
from .signals import add_noise, make_bound, make_signal

ALGORITHMS = ("predefined", "levant", "holloway", "seeber")
DEFAULT_STEP = 2e-4
DEFAULT_TOL = 0.05
DEFAULT_SCALES = (10.0, 100.0, 10000.0)


class SpecError(ValueError):
    """Invalid run specification; ``field`` names the offending entry."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass
class RunSpec:
    """Everything needed for one simulation run.

    ``bound`` defaults to the signal's declared bound. Initial conditions:
    ``ic`` (full state) wins over ``ic_scale`` (every estimate set to the
    scale, filter states to zero); with neither, the run starts from the
    exact derivatives (zero error).
    """

    algorithm: str = "predefined"
    signal: str = "trigmix"
    n: int = 1
    Tc: float = 1.0
    Tstar: float | None = None
    Mcal: float | None = None
    gain: dict | None = None
    bound: dict | None = None
    levant: dict | None = None
    mode: str = "plain"
    nf: int = 0
    ic: list | None = None
    ic_scale: float | None = None
    sigma: float = 0.0
    seed: int = 0
    h: float = DEFAULT_STEP
    horizon: float = 3.0
    tol: float = DEFAULT_TOL
    m: float = 1.0
    l: list = field(default_factory=lambda: [6.0, 11.0, 6.0])
    label: str = ""

    @classmethod
    def field_names(cls) -> set[str]:
        return {f.name for f in dataclasses.fields(cls)}

    @classmethod
    def from_dict(cls, data: dict) -> "RunSpec":
        unknown = set(data) - cls.field_names()
        if unknown:
            raise SpecError(sorted(unknown)[0], "unknown key")
        return cls(**data)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def replace(self, **changes) -> "RunSpec":
        unknown = set(changes) - self.field_names()
        if unknown:
            raise SpecError(sorted(unknown)[0], "unknown override")
        return dataclasses.replace(self, **changes)

    def config_hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, default=float)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    @property
    def nd(self) -> int:
        return self.n - self.nf if self.mode == "filtering" else self.n

    # -- builders ---------------------------------------------------------

    def build_signal(self):
        try:
            return make_signal(self.signal)
        except ValueError as exc:
            raise SpecError("signal", str(exc)) from None

    def build_bound(self):
        if self.bound is None:
            return self.build_signal().bound
        missing = {"L", "M"} - set(self.bound)
        if missing:
            raise SpecError(f"bound.{sorted(missing)[0]}", "missing required field")
        extra = set(self.bound) - {"L", "M"}
        if extra:
            raise SpecError(f"bound.{sorted(extra)[0]}", "unknown key")
        try:
            return make_bound(self.bound["L"], self.bound["M"])
        except (ValueError, TypeError) as exc:
            raise SpecError("bound", str(exc)) from None

    def build_params(self) -> LevantParams:
        try:
            if self.levant is None:
                return default_params(self.n)
            return LevantParams(self.n, tuple(self.levant["lambdas"]), tuple(self.levant["mus"]))
        except KeyError as exc:
            raise SpecError(f"levant.{exc.args[0]}", "missing required field") from None
        except ValueError as exc:
            raise SpecError("levant", str(exc)) from None

    def build_config(self):
        """The algorithm configuration object this spec describes."""
        if self.algorithm not in ALGORITHMS:
            raise SpecError("algorithm", f"expected one of {ALGORITHMS}, got {self.algorithm!r}")
        if not (self.h > 0 and math.isfinite(self.h)):
            raise SpecError("h", f"step must be > 0, got {self.h!r}")
        if not self.horizon > 0:
            raise SpecError("horizon", f"must be > 0, got {self.horizon!r}")
        if not self.tol > 0:
            raise SpecError("tol", f"must be > 0, got {self.tol!r}")
        if self.sigma < 0:
            raise SpecError("sigma", f"must be >= 0, got {self.sigma!r}")
        if self.algorithm == "holloway":
            if self.n != 2:
                raise SpecError("n", "the Holloway observer is second order (n=2)")
            try:
                return HollowayConfig(Tc=self.Tc, m=self.m, l=tuple(self.l), Tstar=self.Tstar or 0.9)
            except ValueError as exc:
                raise SpecError("Tstar", str(exc)) from None
        if self.algorithm == "seeber":
            if self.n != 1:
                raise SpecError("n", "the Seeber differentiator is first order (n=1)")
            bound = self.build_bound()
            return SeeberConfig(L=float(bound.L(0.0)), Tc=self.Tc)
        if self.algorithm == "levant":
            return (self.build_bound(), self.build_params())

        if self.Mcal is None:
            raise SpecError("Mcal", "missing required field")
        if self.gain is None or "family" not in self.gain:
            raise SpecError("gain.family", "missing required field")
        params = {k: v for k, v in self.gain.items() if k != "family"}
        try:
            gain = make_gain(self.gain["family"], Tc=self.Tc, **params)
        except TypeError as exc:
            raise SpecError("gain", str(exc)) from None
        except ValueError as exc:
            raise SpecError("gain", str(exc)) from None
        mode = None
        if self.mode == "filtering":
            if not 0 <= self.nf <= self.n:
                raise SpecError("nf", f"must lie in [0, n={self.n}]")
            mode = Filtering(self.nf, self.n - self.nf)
        elif self.mode != "plain":
            raise SpecError("mode", f"expected 'plain' or 'filtering', got {self.mode!r}")
        bound, params = self.build_bound(), self.build_params()
        try:
            return DiffConfig(
                n=self.n, Tc=self.Tc, Mcal=self.Mcal, gain=gain, bound=bound,
                Tstar=self.Tstar, params=params, mode=mode,
            )
        except ValueError as exc:
            msg = str(exc)
            name = "Mcal" if msg.startswith("Mcal") else "Tstar" if "Tstar" in msg else "n"
            raise SpecError(name, msg) from None


@dataclass
class RunResult:
    spec: RunSpec
    traj: Trajectory
    metrics: Metrics
    diverged: bool = False
    message: str = ""

    @property
    def label(self) -> str:
        return self.spec.label


def initial_state(spec: RunSpec, signal) -> np.ndarray:
    nz = spec.nd + 1
    nf = spec.nf if spec.mode == "filtering" else 0
    if spec.ic is not None:
        x0 = np.asarray(spec.ic, dtype=float)
        if x0.shape != (nf + nz,):
            raise SpecError("ic", f"expected {nf + nz} entries, got {x0.size}")
        return x0
    if spec.ic_scale is not None:
        return np.concatenate([np.zeros(nf), np.full(nz, float(spec.ic_scale))])
    return np.concatenate([np.zeros(nf), signal.derivatives(np.zeros(1), nz - 1)[0]])


def _norm(v: np.ndarray) -> float:
    return math.sqrt(v @ v) if np.all(np.abs(v) < 1e150) else float(np.linalg.norm(v))


def _rhs_for(spec: RunSpec, cfg, y_meas: np.ndarray):
    h = spec.h
    nan = math.nan

    def meas(t):
        return y_meas[int(round(t / h))]

    if spec.algorithm == "predefined" and cfg.filtering:
        nf = cfg.nf

        def rhs(t, x):
            y = meas(t)
            w1 = x[0] if nf else x[nf] - y
            H = correction_H(w1, t, cfg)
            kap = cfg.gain.kappa(t) if t < cfg.Tstar else nan
            return filtering_derivative(H, x, y, nf), (kap, _norm(H))

    elif spec.algorithm == "predefined":

        def rhs(t, x):
            H = correction_H(x[0] - meas(t), t, cfg)
            kap = cfg.gain.kappa(t) if t < cfg.Tstar else nan
            dx = -H
            dx[:-1] += x[1:]
            return dx, (kap, _norm(H))

    elif spec.algorithm == "levant":
        bound, params = cfg

        def rhs(t, x):
            H = phi_correction(x[0] - meas(t), bound.M, bound.L(t), params)
            dx = -H
            dx[:-1] += x[1:]
            return dx, (nan, _norm(H))

    elif spec.algorithm == "holloway":

        def rhs(t, x):
            H = holloway_correction(x[0] - meas(t), t, cfg)
            dx = -H
            dx[:-1] += x[1:]
            return dx, (cfg.kappa(t), _norm(H))

    else:

        def rhs(t, x):
            H = seeber_correction(x[0] - meas(t), cfg)
            return np.array([-H[0] + x[1], -H[1]]), (nan, _norm(H))

    return rhs


def switch_time(spec: RunSpec, cfg) -> float:
    if spec.algorithm in ("predefined", "holloway"):
        return cfg.Tstar
    return spec.Tstar if spec.Tstar is not None else spec.Tc


def simulate(spec: RunSpec) -> RunResult:
    """Run one specification with explicit Euler.

    A diverging run is returned with ``diverged=True`` and its finite prefix.
    """
    cfg = spec.build_config()
    signal = spec.build_signal()
    t_grid = time_grid(spec.h, spec.horizon)
    y_meas = add_noise(signal.derivative(0, t_grid), spec.sigma, spec.seed)
    x0 = initial_state(spec, signal)
    nf = len(x0) - (spec.nd + 1)
    diverged, message = False, ""
    try:
        res = integrate_euler(_rhs_for(spec, cfg, y_meas), x0, spec.h, spec.horizon, n_aux=2)
    except DivergenceError as exc:
        res, diverged, message = exc.partial, True, str(exc)
    t = res.t
    traj = Trajectory(
        t=t,
        y=signal.derivatives(t, spec.nd),
        z=res.x[:, nf:],
        w=res.x[:, :nf] if nf else None,
        kappa=res.aux[:, 0],
        H_norm=res.aux[:, 1],
        h=spec.h,
        y_meas=y_meas[: len(t)],
        meta={"config_hash": spec.config_hash(), "seed": spec.seed, "label": spec.label},
    )
    metrics = compute_metrics(traj, spec.tol, switch_time(spec, cfg), spec.Tc)
    if diverged:
        metrics.settling_time = None
    return RunResult(spec, traj, metrics, diverged, message)


# -- presets ---------------------------------------------------------------

def _ex1_arms():
    common = dict(signal="quad", n=2, Tc=1.0, Tstar=0.9, horizon=2.0)
    return [
        RunSpec(label="ours", algorithm="predefined", Mcal=20.0,
                gain={"family": "reciprocal", "alpha": 1.0}, **common),
        RunSpec(label="holloway", algorithm="holloway", m=1.0, l=[6.0, 11.0, 6.0], **common),
    ]


def _ex2_arms():
    common = dict(signal="trigmix", n=1, Tc=1.0, horizon=3.0)
    return [
        RunSpec(label="ours-i", algorithm="predefined", Mcal=3.2, Tstar=0.99,
                gain={"family": "reciprocal", "alpha": 1.0}, **common),
        RunSpec(label="ours-iv", algorithm="predefined", Mcal=3.2, Tstar=0.99,
                gain={"family": "rational", "alpha": 1.0, "beta": 0.1}, **common),
        RunSpec(label="seeber", algorithm="seeber", **common),
    ]


def _ex2_noise_arms():
    common = dict(signal="trigmix", n=1, Tc=1.0, horizon=3.0)
    arms = []
    for sigma in (0.01, 0.1, 0.5):
        arms.append(RunSpec(label=f"ours-i-a3/s{sigma:g}", algorithm="predefined", Mcal=6.4, Tstar=0.95,
                            gain={"family": "reciprocal", "alpha": 3.0}, sigma=sigma, **common))
        arms.append(RunSpec(label=f"seeber/s{sigma:g}", algorithm="seeber", sigma=sigma, **common))
    return arms


def _ex4_arms():
    return [
        RunSpec(label="ours", algorithm="predefined", signal="chirp", n=2, Tc=5.0, Tstar=4.5, Mcal=8.0,
                gain={"family": "tangent", "gamma": 0.01}, horizon=10.0, tol=0.1),
    ]


def _ex4_filtering_arms():
    return [
        RunSpec(label="ours-filtering", algorithm="predefined", signal="chirp_filtering", n=2, Tc=5.0,
                Tstar=4.5, Mcal=8.0, gain={"family": "tangent", "gamma": 0.01}, mode="filtering", nf=1,
                sigma=0.5, horizon=10.0, tol=0.1),
    ]


PRESETS = {
    "ex1": ("quadratic signal; ours vs Holloway observer, gains frozen at T*=0.9", _ex1_arms, DEFAULT_SCALES),
    "ex2": ("trigonometric signal; ours with gains (i) and (iv) vs Seeber", _ex2_arms, DEFAULT_SCALES),
    "ex2_noise": ("trigonometric signal under Gaussian noise; ours (i), alpha=3 vs Seeber", _ex2_noise_arms, (10.0,)),
    "ex4": ("chirp signal, second-order differentiator with gain (iii)", _ex4_arms, DEFAULT_SCALES),
    "ex4_filtering": ("chirp signal, filtering differentiator nf=1, nd=1, sigma=0.5", _ex4_filtering_arms, DEFAULT_SCALES),
}


def preset_specs(preset: str, overrides: dict | None = None, scales=None) -> list[RunSpec]:
    """Expand a preset into one :class:`RunSpec` per arm and IC scale.

    ``overrides`` patches every arm; ``scales=[None]`` gives exact initial
    conditions.
    """
    try:
        _, arms_fn, default_scales = PRESETS[preset]
    except KeyError:
        raise SpecError("preset", f"unknown preset {preset!r}; expected one of {sorted(PRESETS)}") from None
    overrides = dict(overrides or {})
    scales = default_scales if scales is None else scales
    specs = []
    for arm in arms_fn():
        arm = arm.replace(**overrides)
        for s in scales:
            tag = "exact" if s is None else f"{s:g}"
            specs.append(arm.replace(ic_scale=s, label=f"{arm.label}@{tag}"))
    return specs


def run_experiment(preset: str, overrides: dict | None = None, scales=None) -> list[RunResult]:
    return [simulate(spec) for spec in preset_specs(preset, overrides, scales)]
