"""TOML run configurations.

A document either references a preset::

    preset = "ex2"
    scales = [10.0, 100.0]
    [overrides]
    horizon = 2.0

or describes a custom run in a ``[run]`` table (fields of
:class:`~ptdiff.simlab.RunSpec`)::

    [run]
    signal = "trigmix"
    n = 1
    Tc = 1.0
    Mcal = 3.2
    [run.gain]
    family = "reciprocal"
    alpha = 1.0

Top-level ``step``, ``seed`` and ``tol`` apply to every run. Unknown keys
are errors.
"""
from __future__ import annotations

import dataclasses
import sys
from dataclasses import dataclass, field

import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .simlab.experiments import RunSpec, SpecError, preset_specs

TOP_LEVEL_KEYS = {"preset", "run", "overrides", "scales", "seed", "step", "tol", "out"}
REQUIRED_RUN_KEYS = ("signal", "n", "Tc")
REQUIRED_PREDEFINED_KEYS = ("Mcal", "gain")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    preset: str | None = None
    run: dict | None = None
    overrides: dict = field(default_factory=dict)
    scales: list | None = None
    seed: int | None = None
    step: float | None = None
    tol: float | None = None
    out: str | None = None

    def _globals(self) -> dict:
        out = {}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.step is not None:
            out["h"] = self.step
        if self.tol is not None:
            out["tol"] = self.tol
        return out

    def specs(self) -> list[RunSpec]:
        """Expand into concrete run specifications."""
        if self.preset is not None:
            return preset_specs(self.preset, {**self.overrides, **self._globals()}, self.scales)
        base = RunSpec.from_dict({**self.run, **self.overrides, **self._globals()})
        if not base.label:
            base = base.replace(label="custom")
        if self.scales is None:
            return [base]
        return [base.replace(ic_scale=s, label=f"{base.label}@{s:g}") for s in self.scales]

    def to_dict(self) -> dict:
        return _drop_none(dataclasses.asdict(self))

    def to_toml(self) -> str:
        return tomli_w.dumps(self.to_dict())


def _drop_none(obj):
    if isinstance(obj, dict):
        return {k: _drop_none(v) for k, v in obj.items() if v is not None and v != {}}
    if isinstance(obj, list):
        return [_drop_none(v) for v in obj]
    return obj


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate a TOML run configuration."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    unknown = set(doc) - TOP_LEVEL_KEYS
    if unknown:
        raise ConfigError(f"unknown key {sorted(unknown)[0]!r} (allowed: {sorted(TOP_LEVEL_KEYS)})")
    has_preset, has_run = "preset" in doc, "run" in doc
    if has_preset == has_run:
        raise ConfigError("exactly one of 'preset' or a [run] table is required")
    if has_run:
        run = doc["run"]
        if not isinstance(run, dict):
            raise ConfigError("'run' must be a table")
        for key in REQUIRED_RUN_KEYS:
            if key not in run:
                raise ConfigError(f"missing required field 'run.{key}'")
        if run.get("algorithm", "predefined") == "predefined":
            for key in REQUIRED_PREDEFINED_KEYS:
                if key not in run:
                    raise ConfigError(f"missing required field 'run.{key}'")
    overrides = doc.get("overrides", {})
    if not isinstance(overrides, dict):
        raise ConfigError("'overrides' must be a table")
    cfg = RunConfig(
        preset=doc.get("preset"),
        run=doc.get("run"),
        overrides=overrides,
        scales=doc.get("scales"),
        seed=doc.get("seed"),
        step=doc.get("step"),
        tol=doc.get("tol"),
        out=doc.get("out"),
    )
    try:
        for spec in cfg.specs():
            spec.build_config()
    except SpecError as exc:
        prefix = "run." if has_run else "overrides/preset: "
        raise ConfigError(f"{prefix}{exc}") from None
    except TypeError as exc:
        raise ConfigError(f"invalid field type: {exc}") from None
    return cfg


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
