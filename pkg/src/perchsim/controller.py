"""Trajectory tracking: outer acceleration law and attitude/thrust mapping.

The outer loop blends position, velocity and integral feedback with the
reference acceleration.  The feedforward weight shrinks when feedback is
large relative to the reference so the two do not fight mid-maneuver, and
snaps to one with all feedback gains zeroed inside a short window before the
rendezvous instant: the final attitude command must come from the reference
alone, uncorrupted by position error against a surface the vehicle is about
to touch.

Commanded accelerations map to a thrust magnitude and a zero-yaw attitude.
The planar plant realizes them through a roll PD loop on differential lift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .dynamics import GRAVITY, QuadParams, RotorCommand
from .flatness import FreeFallSingularityError


@dataclass(frozen=True)
class ControllerGains:
    """Per-axis outer-loop gains and the handover window.

    delta_t is the terminal pure-feedforward window length; i_limit clamps
    each axis integral (anti-windup).
    """

    k_p: Tuple[float, float, float] = (6.0, 6.0, 6.0)
    k_v: Tuple[float, float, float] = (4.0, 4.0, 4.0)
    k_i: Tuple[float, float, float] = (0.5, 0.5, 0.5)
    delta_t: float = 0.1
    i_limit: float = 0.5


@dataclass(frozen=True)
class AttitudeThrustCmd:
    """Collective thrust (N) and zero-yaw attitude command (rad)."""

    f: float
    phi: float
    theta: float
    psi: float = 0.0


class TrackingController:
    """Owns the integral state; one instance per tracked vehicle."""

    def __init__(self, gains: ControllerGains = ControllerGains()):
        self.gains = gains
        self.integral = np.zeros(3)

    def reset(self) -> None:
        self.integral[:] = 0.0

    def command(
        self,
        ref_p: np.ndarray,
        ref_v: np.ndarray,
        ref_a: np.ndarray,
        act_p: np.ndarray,
        act_v: np.ndarray,
        t: float,
        T: float,
        dt: float,
    ) -> np.ndarray:
        """Commanded acceleration for reference sample (p, v, a) at time t.

        Inside the terminal window t > T - delta_t the reference acceleration
        is returned as-is (the integral is frozen there).  Otherwise the
        integral advances by e_p dt under the anti-windup clamp and each axis
        blends feedback with the weighted reference.
        """
        g = self.gains
        ref_a = np.asarray(ref_a, dtype=float)
        if t > T - g.delta_t:
            return ref_a
        e_p = np.asarray(ref_p, dtype=float) - np.asarray(act_p, dtype=float)
        e_v = np.asarray(ref_v, dtype=float) - np.asarray(act_v, dtype=float)
        self.integral += e_p * dt
        np.clip(self.integral, -g.i_limit, g.i_limit, out=self.integral)
        fb = np.array(g.k_p) * e_p + np.array(g.k_v) * e_v
        k_a = 1.0 / (1.0 + np.abs(fb) / (np.abs(ref_a) + 0.5))
        return fb + np.array(g.k_i) * self.integral + k_a * ref_a


def body_z(phi: float, theta: float) -> np.ndarray:
    """Body z axis in world frame for a zero-yaw roll/pitch attitude."""
    return np.array([
        math.sin(theta) * math.cos(phi),
        -math.sin(phi),
        math.cos(theta) * math.cos(phi),
    ])


def acceleration_to_attitude_thrust(
    cmd: np.ndarray, m: float, g: float = GRAVITY
) -> AttitudeThrustCmd:
    """Map a commanded world acceleration to thrust and zero-yaw attitude.

    The desired thrust direction is the commanded acceleration plus gravity
    compensation; roll comes from its lateral component, pitch from the
    two-argument arctangent of the forward over vertical components, and the
    thrust magnitude is the projection of the desired specific force onto the
    commanded body z axis times the mass.

    Raises:
        FreeFallSingularityError: the commanded specific force vanishes.
    """
    ax, ay, az = float(cmd[0]), float(cmd[1]), float(cmd[2])
    vz = az + g
    norm = math.sqrt(ax * ax + ay * ay + vz * vz)
    if norm <= 1e-12:
        raise FreeFallSingularityError("thrust direction undefined in free fall")
    phi = -math.asin(ay / norm)
    theta = math.atan2(ax, vz)
    zq = body_z(phi, theta)
    f = m * (ax * zq[0] + ay * zq[1] + vz * zq[2])
    return AttitudeThrustCmd(f=f, phi=phi, theta=theta)


def attitude_pd_lifts(
    att: AttitudeThrustCmd,
    phi: float,
    dphi: float,
    params: QuadParams,
    k_p_phi: float = 120.0,
    k_d_phi: float = 22.0,
) -> RotorCommand:
    """Inner roll loop: realize a thrust/attitude command as pair lifts.

    Differential lift is a PD law on the roll error scaled by the inertia
    over lever ratio; each resulting pair lift is clamped to [0, F_max].
    """
    diff = (params.J / params.d_s) * (k_p_phi * (att.phi - phi) - k_d_phi * dphi)
    f1 = 0.5 * (att.f + diff)
    f2 = 0.5 * (att.f - diff)
    f1 = min(max(f1, 0.0), params.F_max)
    f2 = min(max(f2, 0.0), params.F_max)
    return RotorCommand(F1=f1, F2=f2)
