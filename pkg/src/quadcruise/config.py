"""Scenario config files: flat ``key = value`` text with ``#`` comments.

Nested concerns use dotted keys, e.g.::

    trajectory = circle
    duration = 120
    dt = 0.002
    circle.radius = 1.0
    circle.omega = 0.2
    gains.position.pole1 = 0.7
    gains.position.pole2 = 4.3
    params.d = 0.05

Unknown keys are rejected so typos fail loudly.
"""

import hashlib

from .attitude import AttitudeCommand, PidGains
from .dynamics import QuadState
from .errors import ConfigError
from .params import QuadParams
from .position import PolePair
from .simulation import ScenarioConfig
from .trajectory import TrajectorySpec

_BOOL = {"on": True, "true": True, "1": True, "yes": True,
         "off": False, "false": False, "0": False, "no": False}

_FLOAT_KEYS = {
    "duration", "dt", "altitude",
    "circle.radius", "circle.omega",
    "square.side", "square.speed", "square.dwell",
    "step.x", "step.y", "step.z",
    "attitude_step.roll", "attitude_step.pitch", "attitude_step.yaw",
    "initial.x", "initial.y", "initial.z",
    "initial.vx", "initial.vy", "initial.vz",
    "initial.phi", "initial.theta", "initial.psi",
    "initial.p", "initial.q", "initial.r",
    "params.m", "params.jxx", "params.jyy", "params.jzz",
    "params.l", "params.d", "params.k", "params.omega", "params.g",
    "gains.position.pole1", "gains.position.pole2",
    "gains.altitude.pole1", "gains.altitude.pole2",
    "gains.attitude.kp", "gains.attitude.ki", "gains.attitude.kd",
    "gains.attitude.imax", "gains.attitude.amax",
    "limits.tilt", "limits.u_max",
}
_BOOL_KEYS = {"decoupling", "ideal_attitude", "ideal_actuators", "step.kick"}
_STR_KEYS = {"trajectory", "controller", "out"}
_INT_KEYS = {"decimation"}
_ALL_KEYS = _FLOAT_KEYS | _BOOL_KEYS | _STR_KEYS | _INT_KEYS


def parse_config_text(text: str) -> dict[str, object]:
    """Parse config text into a typed key -> value mapping."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            values[key] = _coerce(key, val)
        except (ValueError, KeyError) as exc:
            raise ConfigError(
                f"line {lineno}: bad value {val!r} for {key!r}") from exc
    return values


def _coerce(key: str, val: str):
    if key in _FLOAT_KEYS:
        return float(val)
    if key in _INT_KEYS:
        return int(val)
    if key in _BOOL_KEYS:
        return _BOOL[val.lower()]
    return val


def load_config_file(path) -> dict[str, object]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def build_scenario(values: dict[str, object]) -> ScenarioConfig:
    """Materialize a validated ScenarioConfig from parsed key/values."""
    get = values.get

    traj = TrajectorySpec(
        kind=get("trajectory", "hover"),
        step_x=get("step.x", 0.0), step_y=get("step.y", 0.0),
        step_z=get("step.z", 0.0),
        radius=get("circle.radius", 1.0), omega=get("circle.omega", 0.2),
        side=get("square.side", 2.0), speed=get("square.speed", 0.5),
        dwell=get("square.dwell", 2.0),
        altitude=get("altitude", 0.0),
    )

    params = QuadParams(
        m=get("params.m", 3.499),
        jxx=get("params.jxx", 0.03), jyy=get("params.jyy", 0.03),
        jzz=get("params.jzz", 0.04),
        l=get("params.l", 0.2), d=get("params.d", 0.05),
        k_act=get("params.k", 120.0), omega_act=get("params.omega", 15.0),
        g=get("params.g", 9.81),
    )

    initial = QuadState(
        x=get("initial.x", 0.0), y=get("initial.y", 0.0),
        z=get("initial.z", get("altitude", 0.0)),
        vx=get("initial.vx", 0.0), vy=get("initial.vy", 0.0),
        vz=get("initial.vz", 0.0),
        phi=get("initial.phi", 0.0), theta=get("initial.theta", 0.0),
        psi=get("initial.psi", 0.0),
        p=get("initial.p", 0.0), q=get("initial.q", 0.0),
        r=get("initial.r", 0.0),
    )

    att_step = None
    if any(k.startswith("attitude_step.") for k in values):
        att_step = AttitudeCommand(
            roll=get("attitude_step.roll", 0.0),
            pitch=get("attitude_step.pitch", 0.0),
            yaw=get("attitude_step.yaw", 0.0),
        )

    cfg = ScenarioConfig(
        trajectory=traj,
        duration=get("duration", 10.0),
        dt=get("dt", 0.001),
        controller=get("controller", "nlpd"),
        decoupling=get("decoupling", True),
        ideal_attitude=get("ideal_attitude", False),
        ideal_actuators=get("ideal_actuators", False),
        decimation=get("decimation", 1),
        params=params,
        initial=initial,
        attitude_step=att_step,
        step_kick=get("step.kick", True),
        position_poles=PolePair(get("gains.position.pole1", 0.7),
                                get("gains.position.pole2", 4.3)),
        altitude_poles=PolePair(get("gains.altitude.pole1", 0.7),
                                get("gains.altitude.pole2", 4.3)),
        attitude_gains=PidGains(
            kp=get("gains.attitude.kp", 73.96),
            ki=get("gains.attitude.ki", 0.0),
            kd=get("gains.attitude.kd", 17.2),
            i_max=get("gains.attitude.imax", 1.0),
            a_max=get("gains.attitude.amax", 60.0),
        ),
        tilt_limit=get("limits.tilt", 0.5),
        u_max=get("limits.u_max", 5.0),
    )
    return cfg.validate()


def resolved_items(values: dict[str, object]) -> list[tuple[str, object]]:
    """Deterministic ordering of the resolved key/value pairs."""
    return sorted(values.items())


def config_checksum(values: dict[str, object]) -> str:
    """Stable checksum over the resolved (sorted) key/value pairs."""
    blob = "\n".join(f"{k} = {v!r}" for k, v in resolved_items(values))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()
