"""Step-response and trajectory-tracking metrics.

Conventions:

    rise time      10% -> 90% of the step magnitude, by linear
                   interpolation between bracketing samples
    settling time  last entry into a band around the final value; the
                   band half-width is a fraction of the step magnitude
                   (5% headline, 2% also reported)
    overshoot      peak excursion beyond the final value, as a
                   percentage of the step magnitude

Metrics that never occur (e.g. a trace that never reaches 90%) are
reported as None rather than zero.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .simulation import SimLog

_ZERO_STEP = 1e-12


@dataclass(frozen=True)
class StepMetrics:
    rise_time: float | None          # s, 10-90%
    settling_time: float | None      # s, 5% band
    settling_time_2pct: float | None  # s, 2% band
    overshoot: float                 # % of step magnitude
    steady_state_error: float        # setpoint - final value
    peak: float
    peak_time: float


@dataclass(frozen=True)
class TrackingMetrics:
    rms_error: float
    max_error: float
    rms_x: float
    rms_y: float
    rms_z: float
    window: tuple[float, float]


def _first_crossing(t: np.ndarray, s: np.ndarray, level: float) -> float | None:
    """Interpolated time of the first upward crossing of `level`."""
    above = s >= level
    if not above.any():
        return None
    i = int(np.argmax(above))
    if i == 0:
        return float(t[0])
    frac = (level - s[i - 1]) / (s[i] - s[i - 1])
    return float(t[i - 1] + frac * (t[i] - t[i - 1]))


def _settling(t: np.ndarray, y: np.ndarray, final: float,
              band: float) -> float | None:
    """Time of the last entry into [final - band, final + band]."""
    dev = np.abs(y - final)
    outside = dev > band
    if not outside.any():
        return 0.0
    last = int(np.nonzero(outside)[0][-1])
    if last == len(y) - 1:
        return None  # never settles within the trace
    # interpolate the band crossing between samples last and last+1
    d0, d1 = dev[last], dev[last + 1]
    frac = (d0 - band) / (d0 - d1) if d0 != d1 else 1.0
    return float(t[last] + frac * (t[last + 1] - t[last]))


def step_metrics(t, y, setpoint: float,
                 settle_band: float = 0.05) -> StepMetrics:
    """Metrics of a step-response trace sampled at uniform spacing."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if t.size == 0 or t.size != y.size:
        raise InvalidInputError("trace must be non-empty and consistent")

    baseline = float(y[0])
    final = float(y[-1])
    step = setpoint - baseline
    peak_idx = int(np.argmax(y - baseline) if step >= 0
                   else np.argmin(y - baseline))

    if abs(step) < _ZERO_STEP:
        settled = _settling(t, y, final, _ZERO_STEP)
        return StepMetrics(rise_time=None, settling_time=settled,
                           settling_time_2pct=settled, overshoot=0.0,
                           steady_state_error=setpoint - final,
                           peak=float(y[peak_idx]),
                           peak_time=float(t[peak_idx]))

    s = (y - baseline) / step  # normalized: 0 at start, ~1 at setpoint
    t10 = _first_crossing(t, s, 0.1)
    t90 = _first_crossing(t, s, 0.9)
    rise = None if (t10 is None or t90 is None) else t90 - t10

    s_final = (final - baseline) / step
    overshoot = max(0.0, float(s.max() - s_final)) * 100.0

    return StepMetrics(
        rise_time=rise,
        settling_time=_settling(t, y, final, settle_band * abs(step)),
        settling_time_2pct=_settling(t, y, final, 0.02 * abs(step)),
        overshoot=overshoot,
        steady_state_error=setpoint - final,
        peak=float(y[peak_idx]),
        peak_time=float(t[peak_idx]),
    )


def tracking_metrics(log: SimLog, window: tuple[float, float]
                     ) -> TrackingMetrics:
    """RMS and max position error over a time window of a run log."""
    t = log.column("t")
    t0, t1 = window
    mask = (t >= t0 - 1e-12) & (t <= t1 + 1e-12)
    if not mask.any():
        raise InvalidInputError("evaluation window contains no samples")
    ex = log.column("x")[mask] - log.column("xr")[mask]
    ey = log.column("y")[mask] - log.column("yr")[mask]
    ez = log.column("z")[mask] - log.column("zr")[mask]
    norm = np.sqrt(ex**2 + ey**2 + ez**2)
    return TrackingMetrics(
        rms_error=float(np.sqrt(np.mean(norm**2))),
        max_error=float(norm.max()),
        rms_x=float(np.sqrt(np.mean(ex**2))),
        rms_y=float(np.sqrt(np.mean(ey**2))),
        rms_z=float(np.sqrt(np.mean(ez**2))),
        window=(float(t[mask][0]), float(t[mask][-1])),
    )
