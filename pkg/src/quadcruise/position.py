"""Outer-loop nonlinear PD position control.

The outer loop computes a desired translational acceleration with a PD
law whose gains come from pole placement (default poles 0.7 and 4.3,
giving Kp = 3.01, Kd = 5, tau_d = 5/3.01), then inverts the
thrust-projection dynamics to turn that acceleration into attitude
commands:

    x_dd = (sin(phi) sin(psi) + cos(phi) sin(theta) cos(psi)) * U1/m
    y_dd = (-sin(phi) cos(psi) + cos(phi) sin(theta) sin(psi)) * U1/m

invert_pitch solves the first equation for theta given (phi, psi, U1);
invert_roll solves the second for phi given (theta, psi, U1) via the
amplitude-phase form a sin(phi) + b cos(phi) = R sin(phi + delta),
keeping the sign of the commanded roll.  The altitude law
feedback-linearizes the vertical axis: U1 = m (g + u_z) / (cos phi cos theta).
"""

import math
from dataclasses import dataclass

from .dynamics import QuadState
from .errors import (DegenerateProjectionError, InvalidInputError,
                     NearSingularAttitudeError, ThrustTooLowError)
from .params import QuadParams

DEFAULT_TILT_LIMIT = 0.5   # rad, max |phi_cmd|, |theta_cmd|
DEFAULT_ACCEL_LIMIT = 5.0  # m/s^2, max |u| from the PD law
U1_MIN = 1.0               # N, below this the inversions are refused
ATTITUDE_EPS = 1e-3        # cos-product floor for the inversions


@dataclass(frozen=True)
class PolePair:
    """Magnitudes of two real left-half-plane closed-loop poles (rad/s)."""

    p1: float
    p2: float

    def __post_init__(self):
        if not (self.p1 > 0.0 and self.p2 > 0.0):
            raise InvalidInputError(
                f"poles must be positive, got ({self.p1}, {self.p2})")


@dataclass(frozen=True)
class PdGains:
    kp: float      # 1/s^2
    tau_d: float   # s

    def __post_init__(self):
        if not (self.kp > 0.0 and self.tau_d > 0.0):
            raise InvalidInputError("Kp and tau_d must be > 0")

    @property
    def kd(self) -> float:
        return self.kp * self.tau_d


def synthesize_pd_gains(poles: PolePair) -> PdGains:
    """PD gains placing the double-integrator closed loop at (-p1, -p2).

    The loop x/x_r = Kp (tau_d s + 1) / (s^2 + Kp tau_d s + Kp) has
    denominator (s + p1)(s + p2) when Kp = p1 p2 and Kp tau_d = p1 + p2.
    """
    kp = poles.p1 * poles.p2
    kd = poles.p1 + poles.p2
    return PdGains(kp=kp, tau_d=kd / kp)


def pd_virtual_accel(pos: float, vel: float, ref_pos: float, ref_vel: float,
                     gains: PdGains,
                     u_max: float = DEFAULT_ACCEL_LIMIT) -> float:
    """Commanded acceleration u = Kp (e + tau_d e_dot), e = ref - pos.

    The error rate uses the state and reference velocities directly;
    output is clamped to +/-u_max.
    """
    u = gains.kp * (ref_pos - pos) + gains.kd * (ref_vel - vel)
    return min(max(u, -u_max), u_max)


def _check_thrust(u1: float):
    if not u1 > U1_MIN:
        raise ThrustTooLowError(
            f"collective thrust {u1:.3g} N is below the {U1_MIN} N floor")


def invert_pitch(u_x: float, state: QuadState, u1: float, params: QuadParams,
                 tilt_limit: float = DEFAULT_TILT_LIMIT) -> float:
    """Pitch command realizing x-acceleration u_x at the current phi, psi.

        sin(theta) = (u_x m / U1 - sin(phi) sin(psi)) / (cos(phi) cos(psi))

    The asin argument is clamped to [-1, 1] and the result to the tilt
    limit.
    """
    _check_thrust(u1)
    cc = math.cos(state.phi) * math.cos(state.psi)
    if abs(cc) <= ATTITUDE_EPS:
        raise NearSingularAttitudeError(
            "cos(phi)*cos(psi) too small to invert for pitch")
    arg = (u_x * params.m / u1 - math.sin(state.phi) * math.sin(state.psi)) / cc
    theta = math.asin(min(max(arg, -1.0), 1.0))
    return min(max(theta, -tilt_limit), tilt_limit)


def _wrap_pi(angle: float) -> float:
    return (angle + math.pi) % (2.0 * math.pi) - math.pi


def invert_roll(u_y: float, state: QuadState, u1: float, params: QuadParams,
                tilt_limit: float = DEFAULT_TILT_LIMIT) -> float:
    """Roll command realizing y-acceleration u_y at the current theta, psi.

    Solves a sin(phi) + b cos(phi) = u_y with a = -cos(psi) U1/m and
    b = sin(theta) sin(psi) U1/m.  Of the two solutions per period the
    one with the smaller magnitude is returned (flight attitudes stay
    near level), clamped to the tilt limit.
    """
    _check_thrust(u1)
    scale = u1 / params.m
    a = -math.cos(state.psi) * scale
    b = math.sin(state.theta) * math.sin(state.psi) * scale
    amp = math.hypot(a, b)
    if amp <= ATTITUDE_EPS:
        raise DegenerateProjectionError(
            "roll projection amplitude too small to invert")
    delta = math.atan2(b, a)
    base = math.asin(min(max(u_y / amp, -1.0), 1.0))
    cand1 = _wrap_pi(base - delta)
    cand2 = _wrap_pi(math.pi - base - delta)
    phi = cand1 if abs(cand1) <= abs(cand2) else cand2
    return min(max(phi, -tilt_limit), tilt_limit)


def analytic_step_response(poles: PolePair, t):
    """Unit-step response of the pole-placed outer loop.

    Closed loop Kp (tau_d s + 1) / ((s + p1)(s + p2)) driven by 1/s,
    expanded in partial fractions.  Accepts scalars or numpy arrays.
    Distinct poles:

        x(t) = 1 + B exp(-p1 t) + C exp(-p2 t)
        B = (Kp - Kd p1) / (p1 (p1 - p2)),  C likewise with p1 <-> p2

    Repeated pole p: x(t) = 1 + ((Kd - p) t - 1) exp(-p t).
    """
    import numpy as np

    gains = synthesize_pd_gains(poles)
    kp, kd = gains.kp, gains.kd
    p1, p2 = poles.p1, poles.p2
    t = np.asarray(t, dtype=float)
    if math.isclose(p1, p2, rel_tol=1e-12):
        return 1.0 + ((kd - p1) * t - 1.0) * np.exp(-p1 * t)
    b = (kp - kd * p1) / (p1 * (p1 - p2))
    c = (kp - kd * p2) / (p2 * (p2 - p1))
    return 1.0 + b * np.exp(-p1 * t) + c * np.exp(-p2 * t)


def altitude_thrust(z: float, vz: float, ref_z: float, ref_vz: float,
                    phi: float, theta: float, gains: PdGains,
                    params: QuadParams,
                    u_max: float = DEFAULT_ACCEL_LIMIT) -> float:
    """Collective thrust holding altitude: U1 = m (g + u_z) / (cos phi cos theta).

    At hover with level attitude this is exactly m*g.  Clamped to
    [0, 4*f_max] (four rotors at full scale).
    """
    cc = math.cos(phi) * math.cos(theta)
    if abs(cc) <= ATTITUDE_EPS:
        raise NearSingularAttitudeError(
            "cos(phi)*cos(theta) too small for the altitude law")
    u_z = pd_virtual_accel(z, vz, ref_z, ref_vz, gains, u_max)
    u1 = params.m * (params.g + u_z) / cc
    return min(max(u1, 0.0), 4.0 * params.f_max)
