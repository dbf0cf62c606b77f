"""Rigid-body quadrotor model: mixing, actuators, and accelerations.

State convention (earth frame E(O,X,Y,Z), body frame b(O',x,y,z)):

    position   x, y, z          (m)
    velocity   vx, vy, vz       (m/s)
    attitude   phi, theta, psi  (rad)  roll / pitch / yaw
    body rates p, q, r          (rad/s)

Euler-angle kinematics use the small-angle identification
(phi_dot, theta_dot, psi_dot) = (p, q, r); this keeps the rotational
decoupling exact.  All functions here are pure.
"""

import math
from dataclasses import dataclass

from .decoupling import CouplingConstants, coupling_constants
from .errors import InvalidInputError, SingularMixerError
from .params import QuadParams


@dataclass(frozen=True)
class QuadState:
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0
    vx: float = 0.0
    vy: float = 0.0
    vz: float = 0.0
    phi: float = 0.0
    theta: float = 0.0
    psi: float = 0.0
    p: float = 0.0
    q: float = 0.0
    r: float = 0.0

    def as_tuple(self) -> tuple[float, ...]:
        return (self.x, self.y, self.z, self.vx, self.vy, self.vz,
                self.phi, self.theta, self.psi, self.p, self.q, self.r)

    @classmethod
    def from_tuple(cls, values) -> "QuadState":
        return cls(*values)


@dataclass(frozen=True)
class MotorForces:
    """Individual rotor thrusts (N), rotor 1..4."""

    f1: float
    f2: float
    f3: float
    f4: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.f1, self.f2, self.f3, self.f4)


@dataclass(frozen=True)
class ControlVector:
    """Collective thrust and torque-level inputs.

    u1 (N) collective thrust; u2, u3 (N) differential forces for roll and
    pitch; u4 (N m) yaw torque.
    """

    u1: float
    u2: float
    u3: float
    u4: float


def mixer(forces: MotorForces, params: QuadParams) -> ControlVector:
    """Compose per-rotor thrusts into the control vector.

        U1 = F1 + F2 + F3 + F4
        U2 = F2 - F4
        U3 = F1 - F3
        U4 = d * (F1 + F3 - F2 - F4)
    """
    f1, f2, f3, f4 = forces.as_tuple()
    if not all(map(math.isfinite, (f1, f2, f3, f4))):
        raise InvalidInputError("motor forces must be finite")
    return ControlVector(
        u1=f1 + f2 + f3 + f4,
        u2=f2 - f4,
        u3=f1 - f3,
        u4=params.d * (f1 + f3 - f2 - f4),
    )


def inverse_mixer(u: ControlVector, params: QuadParams) -> MotorForces:
    """Solve the mixer for per-rotor thrusts.

    With c = U4/d the 4x4 system splits into pair sums
    F1+F3 = (U1+c)/2 and F2+F4 = (U1-c)/2, each resolved by its
    differential (U3, U2).  No saturation is applied here; clamping to
    [0, f_max] is the caller's responsibility.
    """
    if params.d == 0.0:
        raise SingularMixerError("mixer is singular for d = 0")
    c = u.u4 / params.d
    s13 = 0.5 * (u.u1 + c)
    s24 = 0.5 * (u.u1 - c)
    return MotorForces(
        f1=0.5 * (s13 + u.u3),
        f2=0.5 * (s24 + u.u2),
        f3=0.5 * (s13 - u.u3),
        f4=0.5 * (s24 - u.u2),
    )


def actuator_step(f_actual: MotorForces, f_cmd: MotorForces,
                  params: QuadParams) -> tuple[float, float, float, float]:
    """First-order actuator lag: dF/dt = omega * (F_cmd - F) per rotor.

    Commanded forces are saturated to [0, f_max] before the lag so the
    model can never chase an unphysical command.
    """
    w = params.omega_act
    fmax = params.f_max
    cmd = tuple(min(max(f, 0.0), fmax) for f in f_cmd.as_tuple())
    act = f_actual.as_tuple()
    return tuple(w * (c - a) for c, a in zip(cmd, act))


def translational_accel(state: QuadState, u1: float,
                        params: QuadParams) -> tuple[float, float, float]:
    """Linear accelerations from collective thrust and attitude.

        x_dd = (sin(phi) sin(psi) + cos(phi) sin(theta) cos(psi)) * U1/m
        y_dd = (-sin(phi) cos(psi) + cos(phi) sin(theta) sin(psi)) * U1/m
        z_dd = cos(phi) cos(theta) * U1/m - g
    """
    sphi, cphi = math.sin(state.phi), math.cos(state.phi)
    sth = math.sin(state.theta)
    spsi, cpsi = math.sin(state.psi), math.cos(state.psi)
    a = u1 / params.m
    return (
        (sphi * spsi + cphi * sth * cpsi) * a,
        (-sphi * cpsi + cphi * sth * spsi) * a,
        cphi * math.cos(state.theta) * a - params.g,
    )


def rotational_accel(state: QuadState, u: ControlVector, params: QuadParams,
                     k: CouplingConstants | None = None
                     ) -> tuple[float, float, float]:
    """Angular accelerations in the compact k-constant form.

        phi_dd   = k1*q*r + k2*U2
        theta_dd = k3*p*r + k4*U3
        psi_dd   = k5*p*q + k6*U4
    """
    if k is None:
        k = coupling_constants(params)
    return (
        k.k1 * state.q * state.r + k.k2 * u.u2,
        k.k3 * state.p * state.r + k.k4 * u.u3,
        k.k5 * state.p * state.q + k.k6 * u.u4,
    )


def state_derivative(state: QuadState, forces: MotorForces,
                     params: QuadParams) -> QuadState:
    """Full 12-dim rigid-body derivative for the given rotor thrusts."""
    u = mixer(forces, params)
    ax, ay, az = translational_accel(state, u.u1, params)
    ap, aq, ar = rotational_accel(state, u, params)
    return QuadState(
        x=state.vx, y=state.vy, z=state.vz,
        vx=ax, vy=ay, vz=az,
        phi=state.p, theta=state.q, psi=state.r,
        p=ap, q=aq, r=ar,
    )
