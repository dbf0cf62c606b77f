"""Quadrotor cruise-control simulation and control library."""

__version__ = "0.1.0"

from .attitude import AttitudeCommand, AttitudeLoop, PidGains, PidState, pid_step
from .decoupling import (CouplingConstants, VirtualTorques, coupling_constants,
                         decouple, passthrough)
from .dynamics import (ControlVector, MotorForces, QuadState, actuator_step,
                       inverse_mixer, mixer, rotational_accel,
                       state_derivative, translational_accel)
from .metrics import StepMetrics, TrackingMetrics, step_metrics, tracking_metrics
from .params import QuadParams
from .position import (PdGains, PolePair, altitude_thrust,
                       analytic_step_response, invert_pitch, invert_roll,
                       pd_virtual_accel, synthesize_pd_gains)
from .simulation import ScenarioConfig, SimLog, rk4_step, run_scenario
from .trajectory import (TrajectorySample, TrajectorySpec, sample_trajectory,
                         square_corners)

__all__ = [
    "AttitudeCommand", "AttitudeLoop", "PidGains", "PidState", "pid_step",
    "CouplingConstants", "VirtualTorques", "coupling_constants", "decouple",
    "passthrough",
    "ControlVector", "MotorForces", "QuadState", "actuator_step",
    "inverse_mixer", "mixer", "rotational_accel", "state_derivative",
    "translational_accel",
    "StepMetrics", "TrackingMetrics", "step_metrics", "tracking_metrics",
    "QuadParams",
    "PdGains", "PolePair", "altitude_thrust", "analytic_step_response",
    "invert_pitch", "invert_roll", "pd_virtual_accel", "synthesize_pd_gains",
    "ScenarioConfig", "SimLog", "rk4_step", "run_scenario",
    "TrajectorySample", "TrajectorySpec", "sample_trajectory",
    "square_corners",
]
