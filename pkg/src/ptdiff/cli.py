"""``ptdiff`` command line: run presets or configs, verify invariants, check signals."""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, load_config
from .output import emit_csv
from .simlab.experiments import PRESETS, SpecError, simulate
from .simlab.signals import SIGNALS, make_signal, validate_signal_class
from .verify import run_all


def _fmt(v) -> str:
    if v is None:
        return "-"
    return f"{v:.4g}"


def _safe_name(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9@._+-]", "_", label)


def build_run_config(args) -> RunConfig:
    if args.config:
        cfg = load_config(args.config)
        if args.preset:
            raise ConfigError("--preset and --config are mutually exclusive")
    elif args.preset:
        cfg = RunConfig(preset=args.preset)
    else:
        raise ConfigError("run needs --preset NAME or --config PATH")
    if args.seed is not None:
        cfg.seed = args.seed
    if args.step is not None:
        cfg.step = args.step
    if args.tol is not None:
        cfg.tol = args.tol
    if args.out is not None:
        cfg.out = args.out
    return cfg


def cmd_run(args) -> int:
    try:
        cfg = build_run_config(args)
        specs = cfg.specs()
        for spec in specs:
            spec.build_config()
    except (ConfigError, SpecError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out_dir = Path(cfg.out) if cfg.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    stem = cfg.preset or "custom"
    print(f"{'run':<28} {'settle':>8} {'|e(T*)|':>10} {'peak':>10} {'effort[0,Tc]':>13}")
    for spec in specs:
        res = simulate(spec)
        m = res.metrics
        flag = "  DIVERGED" if res.diverged else ""
        print(f"{spec.label:<28} {_fmt(m.settling_time):>8} {_fmt(m.terminal_error_at_Tstar):>10} "
              f"{_fmt(m.peak_error):>10} {_fmt(m.effort_to_Tc):>13}{flag}")
        if out_dir:
            emit_csv(res.traj, m, out_dir / f"{stem}_{_safe_name(spec.label)}.csv",
                     extra={"diverged": res.diverged, "message": res.message})
    return 0


def cmd_verify(args) -> int:
    checks = run_all()
    failed = 0
    for c in checks:
        failed += not c.passed
        status = "PASS" if c.passed else "FAIL"
        print(f"{status} {c.suite}.{c.name} {c.detail}".rstrip())
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 1 if failed else 0


def cmd_presets(args) -> int:
    for name, (desc, _, scales) in PRESETS.items():
        print(f"{name:<14} {desc} (IC scales {', '.join(f'{s:g}' for s in scales)})")
    return 0


def cmd_validate_signal(args) -> int:
    try:
        sig = make_signal(args.signal)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    grid = np.linspace(0.0, args.t_end, int(round(args.t_end / args.step)) + 1)
    rep = validate_signal_class(sig, grid)
    print(f"{args.signal}: {rep.status} (max |y^({sig.order})|/L = {rep.max_bound_ratio:.4g}, "
          f"max |L'/L| = {rep.max_logderiv:.4g}, M = {rep.M:g})")
    return 1 if rep.status == "fail" else 0


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ptdiff", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate a preset or a config file")
    run.add_argument("--preset", help="experiment preset name (see `ptdiff presets`)")
    run.add_argument("--config", help="TOML run configuration")
    run.add_argument("--seed", type=int)
    run.add_argument("--out", help="directory for CSV trajectories and metrics sidecars")
    run.add_argument("--step", type=float, help="Euler step h")
    run.add_argument("--tol", type=float, help="settling tolerance")
    run.set_defaults(func=cmd_run)

    ver = sub.add_parser("verify", help="run the invariant suites")
    ver.set_defaults(func=cmd_verify)

    pre = sub.add_parser("presets", help="list experiment presets")
    pre.set_defaults(func=cmd_presets)

    val = sub.add_parser("validate-signal", help="check a test signal against its declared growth bound")
    val.add_argument("signal", choices=sorted(SIGNALS))
    val.add_argument("--t-end", type=float, default=10.0)
    val.add_argument("--step", type=float, default=1e-3)
    val.set_defaults(func=cmd_validate_signal)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
