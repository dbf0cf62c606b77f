"""Reference trajectory generators.

Supported kinds:

    hover   hold the origin (or a configured point)
    step    constant setpoint from t = 0
    circle  (R cos(W t), R sin(W t), z0) at angular rate W
    square  perimeter of a side-L square at constant speed with a dwell
            at each corner

Square corner ordering is fixed and part of the logging contract:
start at (L/2, -L/2), then (L/2, L/2), (-L/2, L/2), (-L/2, -L/2),
repeat (counter-clockwise).  Velocities are the exact derivatives of
the position fields (piecewise constant for the square, zero during
dwells).
"""

import math
from dataclasses import dataclass

from .errors import ConfigError

SQUARE_CORNERS = ((0.5, -0.5), (0.5, 0.5), (-0.5, 0.5), (-0.5, -0.5))


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    x: float
    y: float
    z: float
    vx: float
    vy: float
    vz: float
    psi: float = 0.0


@dataclass(frozen=True)
class TrajectorySpec:
    kind: str = "hover"           # hover | step | circle | square
    # step
    step_x: float = 0.0
    step_y: float = 0.0
    step_z: float = 0.0
    # circle
    radius: float = 1.0
    omega: float = 0.2
    # square
    side: float = 2.0
    speed: float = 0.5
    dwell: float = 2.0
    # shared
    altitude: float = 0.0

    def __post_init__(self):
        if self.kind not in ("hover", "step", "circle", "square"):
            raise ConfigError(f"unknown trajectory kind {self.kind!r}")
        if self.kind == "circle" and not (self.radius > 0 and self.omega > 0):
            raise ConfigError("circle radius and omega must be positive")
        if self.kind == "square":
            if not (self.side > 0 and self.speed > 0):
                raise ConfigError("square side and speed must be positive")
            if self.dwell < 0:
                raise ConfigError("square dwell must be >= 0")


def square_corners(side: float) -> tuple[tuple[float, float], ...]:
    """The four corners in visiting order, scaled to the given side."""
    return tuple((cx * side, cy * side) for cx, cy in SQUARE_CORNERS)


def sample_trajectory(spec: TrajectorySpec, t: float) -> TrajectorySample:
    if t < 0.0:
        raise ConfigError(f"trajectory time must be >= 0, got {t}")
    z0 = spec.altitude
    if spec.kind == "hover":
        return TrajectorySample(t, 0.0, 0.0, z0, 0.0, 0.0, 0.0)
    if spec.kind == "step":
        return TrajectorySample(t, spec.step_x, spec.step_y, z0 + spec.step_z,
                                0.0, 0.0, 0.0)
    if spec.kind == "circle":
        a = spec.omega * t
        rw = spec.radius * spec.omega
        return TrajectorySample(
            t,
            spec.radius * math.cos(a), spec.radius * math.sin(a), z0,
            -rw * math.sin(a), rw * math.cos(a), 0.0,
        )
    return _sample_square(spec, t)


def _sample_square(spec: TrajectorySpec, t: float) -> TrajectorySample:
    corners = square_corners(spec.side)
    leg_time = spec.side / spec.speed
    seg_time = leg_time + spec.dwell
    cycle = 4.0 * seg_time
    tau = math.fmod(t, cycle)
    z0 = spec.altitude
    for i in range(4):
        start = corners[i]
        end = corners[(i + 1) % 4]
        if tau < leg_time:
            frac = tau / leg_time
            ux = (end[0] - start[0]) / leg_time
            uy = (end[1] - start[1]) / leg_time
            return TrajectorySample(
                t,
                start[0] + (end[0] - start[0]) * frac,
                start[1] + (end[1] - start[1]) * frac,
                z0, ux, uy, 0.0,
            )
        tau -= leg_time
        if tau < spec.dwell:
            return TrajectorySample(t, end[0], end[1], z0, 0.0, 0.0, 0.0)
        tau -= spec.dwell
    # fmod roundoff can leave tau marginally past the cycle end
    return TrajectorySample(t, corners[0][0], corners[0][1], z0, 0.0, 0.0, 0.0)
