"""Command-line front end.

Subcommands:

    simulate   run one scenario, write CSV log + metrics + plot script
    compare    run the same scenario under three controller variants and
               print a side-by-side metrics table
    gains      pole-placement gain synthesis with analytic predictions
    step-test  shortcut for the unit x-step scenario with a full metric
               report against the design targets

Exit codes: 0 success, 2 config error, 3 simulation divergence,
4 I/O error.  Every error path prints one line starting with ``error:``.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .artifacts import (STEP_TARGETS, metrics_lines, write_csv,
                        write_manifest, write_metrics, write_plot_script)
from .config import build_scenario, load_config_file
from .errors import ConfigError, DivergedSimulationError, QuadCruiseError
from .metrics import step_metrics, tracking_metrics
from .position import PolePair, analytic_step_response, synthesize_pd_gains
from .simulation import run_scenario

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DIVERGED = 3
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadcruise",
        description="Quadrotor cruise-control simulator")
    parser.add_argument("--version", action="version",
                        version=f"quadcruise {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_scenario_flags(p):
        p.add_argument("--scenario", metavar="PATH",
                       help="config file (flat key = value)")
        p.add_argument("--out", metavar="DIR", default="out",
                       help="output directory (default: out)")
        p.add_argument("--dt", type=float, help="integrator step (s)")
        p.add_argument("--duration", type=float, help="run length (s)")
        p.add_argument("--trajectory",
                       choices=["circle", "square", "step", "hover"])
        p.add_argument("--controller", choices=["nlpd", "linpd"])
        p.add_argument("--no-decoupling", action="store_true",
                       help="disable gyroscopic cross-term cancellation")
        p.add_argument("--ideal-attitude", action="store_true",
                       help="apply attitude commands instantly (outer-loop "
                            "isolation mode)")
        p.add_argument("--step-x", type=float, metavar="M",
                       help="x setpoint for the step trajectory")
        p.add_argument("--seed", type=int, default=0,
                       help="reserved; no stochastic features ship")

    p_sim = sub.add_parser("simulate", help="run one scenario")
    add_scenario_flags(p_sim)

    p_cmp = sub.add_parser("compare",
                           help="A/B controller and decoupling comparison")
    add_scenario_flags(p_cmp)

    p_gains = sub.add_parser("gains", help="pole-placement gain synthesis")
    p_gains.add_argument("pole1", type=float)
    p_gains.add_argument("pole2", type=float)

    p_step = sub.add_parser("step-test",
                            help="unit x-step with full metric report")
    add_scenario_flags(p_step)

    return parser


def _scenario_values(args) -> dict[str, object]:
    values = load_config_file(args.scenario) if args.scenario else {}
    if args.trajectory:
        values["trajectory"] = args.trajectory
    if args.dt is not None:
        values["dt"] = args.dt
    if args.duration is not None:
        values["duration"] = args.duration
    if args.controller:
        values["controller"] = args.controller
    if args.no_decoupling:
        values["decoupling"] = False
    if args.ideal_attitude:
        values["ideal_attitude"] = True
    if args.step_x is not None:
        values["step.x"] = args.step_x
        values.setdefault("trajectory", "step")
    return values


def _materialize(values: dict[str, object]):
    """Fill in every default so the manifest records the resolved config."""
    cfg = build_scenario(values)
    resolved = dict(values)
    resolved.setdefault("trajectory", cfg.trajectory.kind)
    resolved.setdefault("duration", cfg.duration)
    resolved.setdefault("dt", cfg.dt)
    resolved.setdefault("controller", cfg.controller)
    resolved.setdefault("decoupling", cfg.decoupling)
    resolved.setdefault("ideal_attitude", cfg.ideal_attitude)
    resolved.setdefault("ideal_actuators", cfg.ideal_actuators)
    resolved.setdefault("decimation", cfg.decimation)
    return cfg, resolved


def _run_and_write(values: dict[str, object], out_dir: Path) -> int:
    cfg, resolved = _materialize(values)
    log = run_scenario(cfg)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = write_csv(log, out_dir / "log.csv")
    metrics_path = write_metrics(log, out_dir / "metrics.txt")
    plot_path = write_plot_script(csv_path, out_dir / "plot.gnu")
    write_manifest(resolved, {
        "log": csv_path.name,
        "metrics": metrics_path.name,
        "plot": plot_path.name,
    }, out_dir / "manifest.json")
    print(f"wrote {csv_path}, {metrics_path}, {plot_path}")
    for line in metrics_lines(log):
        print(line)
    return EXIT_OK


def cmd_simulate(args) -> int:
    return _run_and_write(_scenario_values(args), Path(args.out))


def cmd_step_test(args) -> int:
    values = _scenario_values(args)
    values.setdefault("trajectory", "step")
    values.setdefault("step.x", 1.0)
    values.setdefault("duration", 12.0)
    return _run_and_write(values, Path(args.out))


_COMPARE_VARIANTS = (
    ("nlpd/dec-on", {"controller": "nlpd", "decoupling": True}),
    ("nlpd/dec-off", {"controller": "nlpd", "decoupling": False}),
    ("linpd/dec-on", {"controller": "linpd", "decoupling": True}),
)


def cmd_compare(args) -> int:
    base = _scenario_values(args)
    rows = []
    logs = {}
    for name, patch in _COMPARE_VARIANTS:
        values = dict(base)
        values["controller"] = patch["controller"]
        values["decoupling"] = patch["decoupling"]
        cfg, _ = _materialize(values)
        log = run_scenario(cfg)
        logs[name] = log
        rows.append((name, _variant_metrics(log)))

    header = ("variant", "t_r (s)", "t_s5 (s)", "overshoot (%)", "RMS (m)",
              "peak|theta| (rad)")
    widths = [14, 10, 10, 14, 12, 18]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for name, vals in rows:
        cells = [name] + [_cell(v) for v in vals]
        print("  ".join(c.ljust(w) for c, w in zip(cells, widths)))

    on = rows[0][1][4]
    off = rows[1][1][4]
    if on and off and on > 0.0:
        print(f"cross-axis peak ratio (dec off / dec on) = {off / on:.3g}")
    return EXIT_OK


def _cell(v) -> str:
    return "-" if v is None else f"{v:.4g}"


def _variant_metrics(log):
    cfg = log.config
    t = log.column("t")
    t_r = t_s = ov = None
    if cfg.trajectory.kind == "step" and cfg.trajectory.step_x != 0.0:
        sm = step_metrics(t, log.column("x"), cfg.trajectory.step_x)
        t_r, t_s, ov = sm.rise_time, sm.settling_time, sm.overshoot
    tm = tracking_metrics(log, (float(t[-1]) / 2.0, float(t[-1])))
    peak_theta = float(np.abs(log.column("theta")).max())
    return (t_r, t_s, ov, tm.rms_error, peak_theta)


def cmd_gains(args) -> int:
    poles = PolePair(args.pole1, args.pole2)
    gains = synthesize_pd_gains(poles)
    print(f"Kp = {gains.kp:.6g}")
    print(f"Kd = {gains.kd:.6g}")
    print(f"tau_d = {gains.tau_d:.6g}")
    t = np.arange(0.0, 20.0 / min(poles.p1, poles.p2), 1e-3)
    trace = analytic_step_response(poles, t)
    sm = step_metrics(t, trace, 1.0)
    print(f"predicted overshoot = {sm.overshoot:.3f} %")
    if sm.settling_time is not None:
        print(f"predicted 5%-settling = {sm.settling_time:.3f} s")
    if sm.rise_time is not None:
        print(f"predicted 10-90% rise = {sm.rise_time:.3f} s")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "simulate": cmd_simulate,
        "compare": cmd_compare,
        "gains": cmd_gains,
        "step-test": cmd_step_test,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DivergedSimulationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except QuadCruiseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
