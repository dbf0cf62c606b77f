"""Run artifacts: CSV log, metrics report, plot script, manifest.

The CSV schema is exact and stable (see LOG_COLUMNS); numeric fields use
the shortest round-trip decimal representation so identical configs
reproduce byte-identical files and the values reload losslessly.
"""

import json
from pathlib import Path

from . import __version__
from .config import config_checksum, resolved_items
from .metrics import StepMetrics, TrackingMetrics, step_metrics, tracking_metrics
from .simulation import LOG_COLUMNS, SimLog

# Acceptance window for the full-cascade unit step; reported next to the
# measured values so any discrepancy is visible in the artifact itself.
STEP_TARGETS = {
    "rise_time_max_s": 2.0,
    "settling_time_5pct_max_s": 4.0,
    "overshoot_max_pct": 12.0,
    "steady_state_error_max_m": 0.01,
}


def format_number(value) -> str:
    """Shortest decimal that round-trips to the same float."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def write_csv(log: SimLog, path) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(LOG_COLUMNS) + "\n")
        sat_idx = len(LOG_COLUMNS) - 1
        for row in log.rows:
            fields = [format_number(v) if i != sat_idx else str(int(v))
                      for i, v in enumerate(row)]
            fh.write(",".join(fields) + "\n")
    return path


def _fmt_metric(value) -> str:
    return "undefined" if value is None else repr(float(value))


def metrics_lines(log: SimLog) -> list[str]:
    """Flat key=value metric report for one run."""
    cfg = log.config
    t = log.column("t")
    lines = [f"trajectory = {cfg.trajectory.kind}",
             f"controller = {cfg.controller}",
             f"decoupling = {'on' if cfg.decoupling else 'off'}"]

    if cfg.trajectory.kind == "step":
        for axis, ref_col, target in (("x", "xr", cfg.trajectory.step_x),
                                      ("y", "yr", cfg.trajectory.step_y)):
            if target == 0.0:
                continue
            sm = step_metrics(t, log.column(axis), target)
            lines += step_metric_lines(axis, sm)
        lines.append("")
        lines.append("# reference targets for the step scenario")
        for key, bound in STEP_TARGETS.items():
            lines.append(f"target.{key} = {bound}")

    if cfg.attitude_step is not None:
        for col in ("phi", "theta", "psi"):
            peak = float(abs(log.column(col)).max())
            lines.append(f"peak_abs_{col}_rad = {peak!r}")

    half = (float(t[-1]) / 2.0, float(t[-1]))
    tm = tracking_metrics(log, half)
    lines += [
        f"tracking.window_s = {tm.window[0]!r},{tm.window[1]!r}",
        f"tracking.rms_error_m = {tm.rms_error!r}",
        f"tracking.max_error_m = {tm.max_error!r}",
        f"tracking.rms_x_m = {tm.rms_x!r}",
        f"tracking.rms_y_m = {tm.rms_y!r}",
        f"tracking.rms_z_m = {tm.rms_z!r}",
        f"saturation_steps = {int(log.column('sat').sum())}",
    ]
    return lines


def step_metric_lines(axis: str, sm: StepMetrics) -> list[str]:
    p = f"step.{axis}."
    return [
        f"{p}rise_time_s = {_fmt_metric(sm.rise_time)}",
        f"{p}settling_time_5pct_s = {_fmt_metric(sm.settling_time)}",
        f"{p}settling_time_2pct_s = {_fmt_metric(sm.settling_time_2pct)}",
        f"{p}overshoot_pct = {sm.overshoot!r}",
        f"{p}steady_state_error_m = {sm.steady_state_error!r}",
        f"{p}peak = {sm.peak!r}",
        f"{p}peak_time_s = {sm.peak_time!r}",
    ]


def write_metrics(log: SimLog, path) -> Path:
    path = Path(path)
    path.write_text("\n".join(metrics_lines(log)) + "\n", encoding="utf-8")
    return path


PLOT_TEMPLATE = """\
# gnuplot script generated by quadcruise; run:  gnuplot {name}
set datafile separator ','
set key autotitle columnhead
set grid

set terminal pngcairo size 900,700
set output 'path_xy.png'
set xlabel 'x (m)'
set ylabel 'y (m)'
set size ratio -1
plot '{csv}' using 2:3 with lines title 'actual', \\
     '{csv}' using 14:15 with lines dashtype 2 title 'reference'

set output 'position_time.png'
set size noratio
set xlabel 't (s)'
set ylabel 'position (m)'
plot '{csv}' using 1:2 with lines title 'x', \\
     '{csv}' using 1:14 with lines dashtype 2 title 'xr', \\
     '{csv}' using 1:3 with lines title 'y', \\
     '{csv}' using 1:15 with lines dashtype 2 title 'yr', \\
     '{csv}' using 1:4 with lines title 'z', \\
     '{csv}' using 1:16 with lines dashtype 2 title 'zr'

set output 'attitude_time.png'
set ylabel 'angle (rad)'
plot '{csv}' using 1:8 with lines title 'phi', \\
     '{csv}' using 1:9 with lines title 'theta', \\
     '{csv}' using 1:10 with lines title 'psi'
"""


def write_plot_script(csv_path, path) -> Path:
    path = Path(path)
    path.write_text(
        PLOT_TEMPLATE.format(csv=Path(csv_path).name, name=path.name),
        encoding="utf-8")
    return path


def write_manifest(values: dict, artifact_paths: dict[str, str],
                   path) -> Path:
    """Run manifest: resolved config, artifact paths, version, checksum."""
    path = Path(path)
    doc = {
        "tool": "quadcruise",
        "version": __version__,
        "config": {k: v for k, v in resolved_items(values)},
        "config_checksum": config_checksum(values),
        "artifacts": artifact_paths,
    }
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")
    return path
