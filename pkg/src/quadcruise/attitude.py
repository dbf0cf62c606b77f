"""Inner-loop attitude PID on the decoupled double integrators.

Default gains place a double pole at -8.6 per axis (Kp = 73.96,
Kd = 17.2, Ki = 0), roughly twice as fast as the outer loop's fast pole
so the bandwidth-separation assumption of the cascade holds.  Derivative
action uses the measured body rate (command rates are taken as zero), so
a step command sees the zero-free transfer Kp / (s^2 + Kd s + Kp): no
overshoot with critically damped gains.
"""

import math
from dataclasses import dataclass

from .decoupling import VirtualTorques
from .dynamics import QuadState
from .errors import InvalidInputError


@dataclass(frozen=True)
class PidGains:
    kp: float = 73.96   # 1/s^2
    ki: float = 0.0     # 1/s^3
    kd: float = 17.2    # 1/s
    i_max: float = 1.0  # integral clamp (rad s)
    a_max: float = 60.0  # output clamp (rad/s^2)

    def __post_init__(self):
        if not self.kp > 0.0:
            raise InvalidInputError(f"Kp must be > 0, got {self.kp}")
        if self.ki < 0.0 or self.kd < 0.0:
            raise InvalidInputError("Ki and Kd must be >= 0")
        if not (self.i_max > 0.0 and self.a_max > 0.0):
            raise InvalidInputError("I_max and a_max must be > 0")


@dataclass(frozen=True)
class AttitudeCommand:
    roll: float = 0.0
    pitch: float = 0.0
    yaw: float = 0.0


@dataclass(frozen=True)
class PidState:
    """Integrator memory carried explicitly between pid_step calls."""

    integral: float = 0.0
    prev_error: float | None = None


def pid_step(error: float, error_rate: float, state: PidState,
             gains: PidGains, dt: float) -> tuple[float, PidState]:
    """One PID update; returns (output, new state).

    Integral uses the trapezoidal rule clamped to +/-I_max and is frozen
    while the output is saturated (anti-windup).  Output is clamped to
    +/-a_max.
    """
    if not dt > 0.0:
        raise InvalidInputError(f"dt must be > 0, got {dt}")
    prev = error if state.prev_error is None else state.prev_error
    integral = state.integral + 0.5 * dt * (prev + error)
    integral = min(max(integral, -gains.i_max), gains.i_max)

    u = gains.kp * error + gains.ki * integral + gains.kd * error_rate
    if abs(u) > gains.a_max:
        u = math.copysign(gains.a_max, u)
        integral = state.integral  # freeze while saturated
    return u, PidState(integral=integral, prev_error=error)


class AttitudeLoop:
    """Three PID axes wired onto (phi, theta, psi).

    Holds the per-axis integrator state; one instance per scenario run.
    """

    def __init__(self, roll: PidGains | None = None,
                 pitch: PidGains | None = None,
                 yaw: PidGains | None = None):
        self.gains = (roll or PidGains(), pitch or PidGains(),
                      yaw or PidGains())
        self.reset()

    def reset(self):
        self._states = [PidState(), PidState(), PidState()]
        self.saturated = False  # any axis at a_max on the last update

    def update(self, state: QuadState, cmd: AttitudeCommand,
               dt: float) -> VirtualTorques:
        """Virtual angular accelerations for the current attitude error."""
        errors = (cmd.roll - state.phi, cmd.pitch - state.theta,
                  cmd.yaw - state.psi)
        rates = (state.p, state.q, state.r)
        out = []
        for i, (e, rate, g) in enumerate(zip(errors, rates, self.gains)):
            u, self._states[i] = pid_step(e, -rate, self._states[i], g, dt)
            out.append(u)
        self.saturated = any(
            abs(u) >= g.a_max - 1e-12 for u, g in zip(out, self.gains))
        return VirtualTorques(roll=out[0], pitch=out[1], yaw=out[2])
