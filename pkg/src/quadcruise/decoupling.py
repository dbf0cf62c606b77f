"""Rotational decoupling.

The rotational dynamics in compact form are

    phi_dd   = k1*q*r + k2*U2
    theta_dd = k3*p*r + k4*U3
    psi_dd   = k5*p*q + k6*U4

with the k-constants pure functions of the inertia triple and arm
length.  The decoupling law inverts the input gains and subtracts the
gyroscopic cross-terms, so each axis becomes an exact double integrator
driven by a "virtual" angular-acceleration input.
"""

from dataclasses import dataclass

from .params import QuadParams


@dataclass(frozen=True)
class CouplingConstants:
    k1: float  # (Jyy - Jzz) / Jxx   roll gyroscopic gain
    k2: float  # l / Jxx             roll input gain
    k3: float  # (Jzz - Jxx) / Jyy   pitch gyroscopic gain
    k4: float  # l / Jyy             pitch input gain
    k5: float  # (Jxx - Jyy) / Jzz   yaw gyroscopic gain
    k6: float  # 1 / Jzz             yaw input gain (U4 is already a torque)


@dataclass(frozen=True)
class VirtualTorques:
    """Desired angular accelerations per axis (rad/s^2)."""

    roll: float
    pitch: float
    yaw: float


def coupling_constants(params: QuadParams) -> CouplingConstants:
    """Coupling constants for the compact rotational dynamics."""
    return CouplingConstants(
        k1=(params.jyy - params.jzz) / params.jxx,
        k2=params.l / params.jxx,
        k3=(params.jzz - params.jxx) / params.jyy,
        k4=params.l / params.jyy,
        k5=(params.jxx - params.jyy) / params.jzz,
        k6=1.0 / params.jzz,
    )


def decouple(virtual: VirtualTorques, p: float, q: float, r: float,
             k: CouplingConstants) -> tuple[float, float, float]:
    """Torque-level inputs (U2, U3, U4) realizing the virtual accelerations.

    Substituting the result back into the rotational dynamics cancels the
    gyroscopic cross-terms identically, leaving
    (phi_dd, theta_dd, psi_dd) = (virtual.roll, virtual.pitch, virtual.yaw).
    """
    u2 = (virtual.roll - k.k1 * q * r) / k.k2
    u3 = (virtual.pitch - k.k3 * p * r) / k.k4
    u4 = (virtual.yaw - k.k5 * p * q) / k.k6
    return u2, u3, u4


def passthrough(virtual: VirtualTorques,
                k: CouplingConstants) -> tuple[float, float, float]:
    """Input-gain inversion only, no cross-term cancellation.

    The contrast case for decoupling A/B experiments: gyroscopic coupling
    is left in the loop as a disturbance.
    """
    return virtual.roll / k.k2, virtual.pitch / k.k4, virtual.yaw / k.k6
