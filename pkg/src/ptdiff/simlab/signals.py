"""Test signals with analytic derivatives, growth bounds and noise."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..levant import GrowthBound


def _exp_decay(t):
    return 0.1 * np.exp(-5.0 * t)


def _chirp3(t):
    return np.sqrt(1.0 + 4.0 * t**6 + 36.0 * t**2)


def _chirp2(t):
    return np.sqrt(4.0 + 4.0 * t**4)


NAMED_BOUNDS: dict[str, Callable] = {
    "exp_decay": _exp_decay,
    "chirp3": _chirp3,
    "chirp2": _chirp2,
}


def make_bound(L, M: float) -> GrowthBound:
    """Bound from a registered name (see ``NAMED_BOUNDS``) or a positive constant."""
    if isinstance(L, str):
        try:
            return GrowthBound(NAMED_BOUNDS[L], float(M), name=L)
        except KeyError:
            raise ValueError(f"unknown bound {L!r}; expected a number or one of {sorted(NAMED_BOUNDS)}") from None
    return GrowthBound.constant(float(L), float(M))


@dataclass(frozen=True)
class TestSignal:
    """Signal ``y`` with derivatives ``derivs[k] = y^(k)`` (vectorized in ``t``).

    ``bound`` constrains derivative number ``order``.
    """

    __test__ = False  # not a pytest class

    name: str
    derivs: Sequence[Callable] = field(repr=False)
    bound: GrowthBound
    order: int

    def derivative(self, k: int, t):
        return self.derivs[k](np.asarray(t, dtype=float))

    def derivatives(self, t, upto: int) -> np.ndarray:
        """Array ``(len(t), upto+1)`` of ``y, y', ..., y^(upto)``."""
        t = np.asarray(t, dtype=float)
        return np.column_stack([np.broadcast_to(self.derivs[k](t), t.shape) for k in range(upto + 1)])


def _quad():
    derivs = (
        lambda t: 0.5 * t**2 + t + 1.0,
        lambda t: t + 1.0,
        lambda t: np.ones_like(t),
        lambda t: np.zeros_like(t),
    )
    return TestSignal("quad", derivs, make_bound("exp_decay", 0.5), order=3)


def _trigmix():
    derivs = (
        lambda t: 0.75 * np.cos(t) + 0.0025 * np.sin(10 * t) + t,
        lambda t: -0.75 * np.sin(t) + 0.025 * np.cos(10 * t) + 1.0,
        lambda t: -0.75 * np.cos(t) - 0.25 * np.sin(10 * t),
        lambda t: 0.75 * np.sin(t) - 2.5 * np.cos(10 * t),
    )
    return TestSignal("trigmix", derivs, make_bound(1.0, 0.1), order=2)


_CHIRP = (
    lambda t: 2.0 * np.sin(0.5 * t**2),
    lambda t: 2.0 * t * np.cos(0.5 * t**2),
    lambda t: 2.0 * np.cos(0.5 * t**2) - 2.0 * t**2 * np.sin(0.5 * t**2),
    lambda t: -6.0 * t * np.sin(0.5 * t**2) - 2.0 * t**3 * np.cos(0.5 * t**2),
)


def _chirp():
    return TestSignal("chirp", _CHIRP, make_bound("chirp3", 3.5), order=3)


def _chirp_filtering():
    return TestSignal("chirp_filtering", _CHIRP, make_bound("chirp2", 3.5), order=2)


SIGNALS = {
    "quad": _quad,
    "trigmix": _trigmix,
    "chirp": _chirp,
    "chirp_filtering": _chirp_filtering,
}


def make_signal(preset: str) -> TestSignal:
    try:
        return SIGNALS[preset]()
    except KeyError:
        raise ValueError(f"unknown signal preset {preset!r}; expected one of {sorted(SIGNALS)}") from None


@dataclass
class SignalClassReport:
    bound_ok: bool
    logderiv_ok: bool
    max_bound_ratio: float
    max_logderiv: float
    M: float

    @property
    def status(self) -> str:
        if not self.bound_ok:
            return "fail"
        return "pass" if self.logderiv_ok else "warn"


def validate_signal_class(
    sig: TestSignal,
    grid,
    bound: GrowthBound | None = None,
    relaxed_from: float = 0.0,
) -> SignalClassReport:
    """Check ``|y^(order)| <= L`` and ``|L'/L| <= M`` on ``grid``.

    The log-derivative uses a central difference. With ``relaxed_from > 0``
    the log-derivative condition is only checked for ``t >= relaxed_from``.
    """
    bound = bound or sig.bound
    t = np.asarray(grid, dtype=float)
    L = np.broadcast_to(bound.L(t), t.shape)
    ratio = np.abs(sig.derivative(sig.order, t)) / L
    d = 1e-6 * np.maximum(1.0, t)
    lo = np.maximum(t - d, 0.0)
    logder = np.abs(np.log(bound.L(t + d)) - np.log(bound.L(lo))) / (t + d - lo)
    logder = np.broadcast_to(logder, t.shape)[t >= relaxed_from]
    max_ratio = float(np.max(ratio)) if ratio.size else 0.0
    max_logder = float(np.max(logder)) if logder.size else 0.0
    return SignalClassReport(
        bound_ok=bool(max_ratio <= 1.0 + 1e-12),
        logderiv_ok=bool(max_logder <= bound.M),
        max_bound_ratio=max_ratio,
        max_logderiv=max_logder,
        M=bound.M,
    )


def add_noise(samples, sigma: float, seed: int) -> np.ndarray:
    """Add zero-mean white Gaussian noise with a seeded generator."""
    samples = np.asarray(samples, dtype=float)
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma!r}")
    if sigma == 0:
        return samples.copy()
    rng = np.random.default_rng(seed)
    return samples + rng.normal(0.0, sigma, size=samples.shape)
