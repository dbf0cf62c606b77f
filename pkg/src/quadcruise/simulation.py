"""Fixed-step closed-loop simulation engine.

Each control step runs the cascade

    trajectory -> altitude thrust -> position PD -> attitude inversion
               -> attitude PID -> decoupling -> inverse mixer -> saturation

and the resulting rotor commands are held (zero-order hold) while the
plant is advanced one classical RK4 step.  The actuator first-order lag
states integrate inside the same RK4 composite as the rigid body, so
there is no operator-splitting error and determinism is trivial: two
runs of the same config produce bit-identical logs.

Special modes:

    ideal_attitude   attitude commands are applied instantly (inner loop
                     and motors bypassed); isolates the outer loop so it
                     can be compared against its analytic linear response
    ideal_actuators  rotor forces track their commands instantly (no lag
                     states); used by the decoupling A/B contrast, where
                     actuator lag would blur the comparison
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .attitude import AttitudeCommand, AttitudeLoop, PidGains
from .decoupling import VirtualTorques, coupling_constants, decouple, passthrough
from .dynamics import ControlVector, MotorForces, QuadState, inverse_mixer
from .errors import ConfigError, DivergedSimulationError
from .params import QuadParams
from .position import (DEFAULT_ACCEL_LIMIT, DEFAULT_TILT_LIMIT, PolePair,
                       altitude_thrust, invert_pitch, invert_roll,
                       pd_virtual_accel, synthesize_pd_gains)
from .trajectory import TrajectorySample, TrajectorySpec, sample_trajectory

LOG_COLUMNS = (
    "t", "x", "y", "z", "vx", "vy", "vz", "phi", "theta", "psi",
    "p", "q", "r", "xr", "yr", "zr", "psir",
    "U1", "U2", "U3", "U4", "U2v", "U3v", "U4v",
    "F1", "F2", "F3", "F4", "sat",
)

_SAT_EPS = 1e-12


@dataclass(frozen=True)
class ScenarioConfig:
    trajectory: TrajectorySpec = TrajectorySpec()
    duration: float = 10.0
    dt: float = 0.001
    controller: str = "nlpd"          # nlpd | linpd
    decoupling: bool = True
    ideal_attitude: bool = False
    ideal_actuators: bool = False
    decimation: int = 1               # controller runs every N plant steps
    params: QuadParams = QuadParams()
    initial: QuadState = QuadState()
    attitude_step: AttitudeCommand | None = None  # bypasses the outer loop
    step_kick: bool = True            # see _apply_step_kick
    position_poles: PolePair = PolePair(0.7, 4.3)
    altitude_poles: PolePair = PolePair(0.7, 4.3)
    attitude_gains: PidGains = PidGains()
    tilt_limit: float = DEFAULT_TILT_LIMIT
    u_max: float = DEFAULT_ACCEL_LIMIT

    def validate(self):
        if not self.dt > 0.0:
            raise ConfigError(f"dt must be > 0, got {self.dt}")
        if self.duration < self.dt:
            raise ConfigError("duration must be at least one step")
        if self.controller not in ("nlpd", "linpd"):
            raise ConfigError(f"unknown controller {self.controller!r}")
        if self.decimation < 1:
            raise ConfigError("decimation must be >= 1")
        if not self.tilt_limit > 0.0 or not self.u_max > 0.0:
            raise ConfigError("tilt_limit and u_max must be > 0")
        return self


@dataclass
class SimLog:
    """Uniformly sampled time-series of one scenario run."""

    columns: tuple[str, ...]
    rows: list[tuple]
    config: ScenarioConfig

    def __len__(self):
        return len(self.rows)

    def array(self) -> np.ndarray:
        return np.asarray(self.rows, dtype=float)

    def column(self, name: str) -> np.ndarray:
        idx = self.columns.index(name)
        return np.array([row[idx] for row in self.rows], dtype=float)


def rk4_step(f, t: float, y: tuple, dt: float) -> tuple:
    """One classical 4-stage Runge-Kutta step for y' = f(t, y).

    Raises DivergedSimulationError if the result is non-finite.
    """
    half = 0.5 * dt
    k1 = f(t, y)
    k2 = f(t + half, tuple(yi + half * ki for yi, ki in zip(y, k1)))
    k3 = f(t + half, tuple(yi + half * ki for yi, ki in zip(y, k2)))
    k4 = f(t + dt, tuple(yi + dt * ki for yi, ki in zip(y, k3)))
    sixth = dt / 6.0
    out = tuple(
        yi + sixth * (a + 2.0 * (b + c) + d)
        for yi, a, b, c, d in zip(y, k1, k2, k3, k4))
    if not all(map(math.isfinite, out)):
        raise DivergedSimulationError(t + dt)
    return out


class _Controller:
    """Per-run cascade state: attitude PIDs plus cached gain objects."""

    def __init__(self, cfg: ScenarioConfig):
        self.cfg = cfg
        self.pos_gains = synthesize_pd_gains(cfg.position_poles)
        self.alt_gains = synthesize_pd_gains(cfg.altitude_poles)
        self.loop = AttitudeLoop(cfg.attitude_gains, cfg.attitude_gains,
                                 cfg.attitude_gains)
        self.k = coupling_constants(cfg.params)

    def attitude_command(self, s: QuadState, ref: TrajectorySample,
                         u1: float) -> tuple[AttitudeCommand, bool]:
        cfg = self.cfg
        if cfg.attitude_step is not None:
            return cfg.attitude_step, False
        ux = pd_virtual_accel(s.x, s.vx, ref.x, ref.vx, self.pos_gains,
                              cfg.u_max)
        uy = pd_virtual_accel(s.y, s.vy, ref.y, ref.vy, self.pos_gains,
                              cfg.u_max)
        sat = max(abs(ux), abs(uy)) >= cfg.u_max - _SAT_EPS
        if cfg.controller == "nlpd":
            theta_cmd = invert_pitch(ux, s, u1, cfg.params, cfg.tilt_limit)
            phi_cmd = invert_roll(uy, s, u1, cfg.params, cfg.tilt_limit)
        else:
            # linpd baseline: small-angle inversion about hover
            g = cfg.params.g
            spsi, cpsi = math.sin(s.psi), math.cos(s.psi)
            phi_cmd = (ux * spsi - uy * cpsi) / g
            theta_cmd = (ux * cpsi + uy * spsi) / g
            lim = cfg.tilt_limit
            phi_cmd = min(max(phi_cmd, -lim), lim)
            theta_cmd = min(max(theta_cmd, -lim), lim)
        sat = sat or max(abs(phi_cmd),
                         abs(theta_cmd)) >= cfg.tilt_limit - _SAT_EPS
        return AttitudeCommand(roll=phi_cmd, pitch=theta_cmd,
                               yaw=ref.psi), sat

    def step(self, s: QuadState, ref: TrajectorySample, dt_ctrl: float):
        """Full cascade; returns (u1, cmd, virtual, cv, forces_cmd, sat)."""
        cfg = self.cfg
        u1 = altitude_thrust(s.z, s.vz, ref.z, ref.vz, s.phi, s.theta,
                             self.alt_gains, cfg.params, cfg.u_max)
        sat = u1 <= _SAT_EPS or u1 >= 4.0 * cfg.params.f_max - _SAT_EPS
        cmd, sat_cmd = self.attitude_command(s, ref, u1)
        virtual = self.loop.update(s, cmd, dt_ctrl)
        sat = sat or sat_cmd or self.loop.saturated
        if cfg.decoupling:
            u2, u3, u4 = decouple(virtual, s.p, s.q, s.r, self.k)
        else:
            u2, u3, u4 = passthrough(virtual, self.k)
        cv = ControlVector(u1, u2, u3, u4)
        raw = inverse_mixer(cv, cfg.params)
        fmax = cfg.params.f_max
        clamped = tuple(min(max(f, 0.0), fmax) for f in raw.as_tuple())
        sat = sat or any(
            abs(c - f) > _SAT_EPS for c, f in zip(clamped, raw.as_tuple()))
        return u1, cmd, virtual, cv, MotorForces(*clamped), sat


def _make_plant_deriv(params: QuadParams, k, cmd_cell: list):
    """16-dim derivative closure: rigid body + lagged rotor forces.

    cmd_cell is a mutable 4-list the engine updates each control step;
    scalar math keeps the hot loop fast.
    """
    m, g, d, w = params.m, params.g, params.d, params.omega_act
    k1, k2, k3, k4, k5, k6 = k.k1, k.k2, k.k3, k.k4, k.k5, k.k6
    sin, cos = math.sin, math.cos

    def deriv(t, y):
        (_, _, _, vx, vy, vz, phi, th, psi, p, q, r, f1, f2, f3, f4) = y
        u1 = f1 + f2 + f3 + f4
        u2 = f2 - f4
        u3 = f1 - f3
        u4 = d * (f1 + f3 - f2 - f4)
        sphi, cphi = sin(phi), cos(phi)
        sth = sin(th)
        spsi, cpsi = sin(psi), cos(psi)
        a = u1 / m
        c = cmd_cell
        return (
            vx, vy, vz,
            (sphi * spsi + cphi * sth * cpsi) * a,
            (-sphi * cpsi + cphi * sth * spsi) * a,
            cphi * cos(th) * a - g,
            p, q, r,
            k1 * q * r + k2 * u2,
            k3 * p * r + k4 * u3,
            k5 * p * q + k6 * u4,
            w * (c[0] - f1), w * (c[1] - f2), w * (c[2] - f3), w * (c[3] - f4),
        )

    return deriv


def _make_rigid_deriv(params: QuadParams, k, u_cell: list):
    """12-dim derivative closure with ideal actuators (U held in u_cell)."""
    m, g = params.m, params.g
    k1, k2, k3, k4, k5, k6 = k.k1, k.k2, k.k3, k.k4, k.k5, k.k6
    sin, cos = math.sin, math.cos

    def deriv(t, y):
        (_, _, _, vx, vy, vz, phi, th, psi, p, q, r) = y
        u1, u2, u3, u4 = u_cell
        sphi, cphi = sin(phi), cos(phi)
        sth = sin(th)
        spsi, cpsi = sin(psi), cos(psi)
        a = u1 / m
        return (
            vx, vy, vz,
            (sphi * spsi + cphi * sth * cpsi) * a,
            (-sphi * cpsi + cphi * sth * spsi) * a,
            cphi * cos(th) * a - g,
            p, q, r,
            k1 * q * r + k2 * u2,
            k3 * p * r + k4 * u3,
            k5 * p * q + k6 * u4,
        )

    return deriv


def run_scenario(config: ScenarioConfig) -> SimLog:
    """Run one closed-loop scenario and return its log.

    Raises DivergedSimulationError (with the partial log attached) if any
    integrated state goes non-finite.
    """
    cfg = config.validate()
    log = SimLog(columns=LOG_COLUMNS, rows=[], config=cfg)
    try:
        if cfg.ideal_attitude:
            _run_ideal_attitude(cfg, log)
        else:
            _run_cascade(cfg, log)
    except DivergedSimulationError as err:
        err.partial_log = log
        raise
    return log


def _n_steps(cfg: ScenarioConfig) -> int:
    return int(cfg.duration / cfg.dt + 1e-9)


def _apply_step_kick(cfg: ScenarioConfig, ctrl: "_Controller") -> QuadState:
    """Initial state for the run, with the step scenario's velocity kick.

    The outer PD realizes Kp (tau_d s + 1) on the error.  For a setpoint
    that jumps at t = 0 the (tau_d s + 1) factor contributes an
    acceleration impulse of area Kd * (jump height); on the
    double-integrator translational axes that impulse is exactly an
    instantaneous velocity increment, which is applied here as an
    initial condition.  Without it the loop would realize the zero-free
    transfer Kp / (s^2 + Kd s + Kp) instead of the designed closed loop.
    Disable with step_kick=False to study the zero-free response.
    """
    s = cfg.initial
    if cfg.trajectory.kind != "step" or not cfg.step_kick:
        return s
    kd_pos = ctrl.pos_gains.kd
    kd_alt = ctrl.alt_gains.kd
    spec = cfg.trajectory
    return replace(
        s,
        vx=s.vx + kd_pos * spec.step_x,
        vy=s.vy + kd_pos * spec.step_y,
        vz=s.vz + kd_alt * spec.step_z,
    )


def _log_row(log, t, s: QuadState, ref, u1, u2, u3, u4, virtual, forces, sat):
    log.rows.append((
        t, s.x, s.y, s.z, s.vx, s.vy, s.vz, s.phi, s.theta, s.psi,
        s.p, s.q, s.r, ref.x, ref.y, ref.z, ref.psi,
        u1, u2, u3, u4, virtual.roll, virtual.pitch, virtual.yaw,
        forces[0], forces[1], forces[2], forces[3], int(sat),
    ))


def _run_cascade(cfg: ScenarioConfig, log: SimLog):
    ctrl = _Controller(cfg)
    dt = cfg.dt
    dt_ctrl = dt * cfg.decimation
    n = _n_steps(cfg)
    s = _apply_step_kick(cfg, ctrl)

    cell = [0.0, 0.0, 0.0, 0.0]
    if cfg.ideal_actuators:
        deriv = _make_rigid_deriv(cfg.params, ctrl.k, cell)
        y = s.as_tuple()
    else:
        deriv = _make_plant_deriv(cfg.params, ctrl.k, cell)
        y = None  # force states initialized from the first command (trim)

    controls = None
    for i in range(n + 1):
        t = i * dt
        if y is not None:
            s = QuadState.from_tuple(y[:12])
        ref = sample_trajectory(cfg.trajectory, t)
        if controls is None or i % cfg.decimation == 0:
            controls = ctrl.step(s, ref, dt_ctrl)
            _, _, _, cv, f_cmd, _ = controls
            if cfg.ideal_actuators:
                cell[:] = (cv.u1, cv.u2, cv.u3, cv.u4)
            else:
                cell[:] = f_cmd.as_tuple()
                if y is None:
                    y = s.as_tuple() + f_cmd.as_tuple()
        u1, cmd, virtual, cv, f_cmd, sat = controls
        forces = f_cmd.as_tuple() if cfg.ideal_actuators else y[12:]
        _log_row(log, t, s, ref, cv.u1, cv.u2, cv.u3, cv.u4, virtual,
                 forces, sat)
        if i == n:
            break
        y = rk4_step(deriv, t, y, dt)


def _run_ideal_attitude(cfg: ScenarioConfig, log: SimLog):
    """Outer loop only: attitude commands take effect instantly.

    The outer loop is memoryless, so the cascade is re-evaluated inside
    every RK4 stage; the mode then realizes the continuous-time closed
    loop (up to RK4 order) instead of a zero-order-hold discretization,
    which is what makes it comparable to the analytic linear response.
    """
    ctrl = _Controller(cfg)
    dt = cfg.dt
    n = _n_steps(cfg)
    s0 = _apply_step_kick(cfg, ctrl)
    zero_v = VirtualTorques(0.0, 0.0, 0.0)
    zero_f = (0.0, 0.0, 0.0, 0.0)
    from .dynamics import translational_accel

    att = [s0.phi, s0.theta, s0.psi]  # last applied attitude command

    def cascade(t, y):
        """Returns (state-with-command-attitude, u1, accelerations, sat)."""
        ref = sample_trajectory(cfg.trajectory, t)
        u1 = altitude_thrust(y[2], y[5], ref.z, ref.vz, att[0], att[1],
                             ctrl.alt_gains, cfg.params, cfg.u_max)
        probe = QuadState(x=y[0], y=y[1], z=y[2], vx=y[3], vy=y[4], vz=y[5],
                          phi=att[0], theta=att[1], psi=att[2])
        cmd, sat = ctrl.attitude_command(probe, ref, u1)
        s = replace(probe, phi=cmd.roll, theta=cmd.pitch, psi=ref.psi,
                    p=0.0, q=0.0, r=0.0)
        att[:] = (s.phi, s.theta, s.psi)
        return ref, s, u1, translational_accel(s, u1, cfg.params), sat

    def deriv(t, y):
        _, _, _, acc, _ = cascade(t, y)
        return (y[3], y[4], y[5], acc[0], acc[1], acc[2])

    y = (s0.x, s0.y, s0.z, s0.vx, s0.vy, s0.vz)
    for i in range(n + 1):
        t = i * dt
        ref, s, u1, _, sat = cascade(t, y)
        _log_row(log, t, s, ref, u1, 0.0, 0.0, 0.0, zero_v, zero_f, sat)
        if i == n:
            break
        y = rk4_step(deriv, t, y, dt)
        if not all(map(math.isfinite, y)):
            raise DivergedSimulationError(t + dt)
