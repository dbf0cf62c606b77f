"""Physical parameters of the simulated quadrotor.

Default values correspond to a ~3.5 kg X-4 class vehicle:

    m    = 3.499 kg       total mass
    Jxx  = 0.03  kg m^2   roll inertia
    Jyy  = 0.03  kg m^2   pitch inertia
    Jzz  = 0.04  kg m^2   yaw inertia
    l    = 0.2   m        rotor arm length
    K    = 120   N        full-scale thrust per rotor (unit command)
    omega= 15    rad/s    first-order actuator bandwidth

The yaw-moment coefficient d maps differential rotor thrust to yaw
torque (U4 = d * (F1 + F3 - F2 - F4)); 0.05 is a plausible default and
is configurable like everything else.
"""

from dataclasses import dataclass

from .errors import InvalidInputError


@dataclass(frozen=True)
class QuadParams:
    m: float = 3.499      # mass (kg)
    jxx: float = 0.03     # roll inertia (kg m^2)
    jyy: float = 0.03     # pitch inertia (kg m^2)
    jzz: float = 0.04     # yaw inertia (kg m^2)
    l: float = 0.2        # rotor arm length (m)
    d: float = 0.05       # thrust-to-yaw-torque coefficient
    k_act: float = 120.0  # full-scale rotor thrust (N)
    omega_act: float = 15.0  # actuator bandwidth (rad/s)
    g: float = 9.81       # gravity (m/s^2)

    def __post_init__(self):
        positive = {
            "m": self.m, "jxx": self.jxx, "jyy": self.jyy, "jzz": self.jzz,
            "l": self.l, "k_act": self.k_act, "omega_act": self.omega_act,
            "g": self.g,
        }
        for name, value in positive.items():
            if not value > 0.0:
                raise InvalidInputError(f"{name} must be > 0, got {value}")
        if self.d == 0.0:
            raise InvalidInputError("yaw-moment coefficient d must be nonzero")

    @property
    def hover_thrust(self) -> float:
        """Collective thrust that exactly balances gravity (N)."""
        return self.m * self.g

    @property
    def f_max(self) -> float:
        """Per-rotor thrust ceiling: unit command at full actuator gain (N)."""
        return self.k_act
