"""Differential flatness of the planar vehicle and trajectory feasibility.

Position in the Y-Z plane is a flat output: attitude and the two pair lifts
are algebraic functions of its derivatives up to snap.  That lets a candidate
trajectory pair be screened against state and actuator limits by sampling,
with no integration in the loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import math

import numpy as np

from .dynamics import QuadParams
from .minjerk import AxisTrajectory

#: violation kinds reported by check_feasible
ALTITUDE = "altitude"
VELOCITY = "velocity"
LIFT = "lift"

_SINGULAR_EPS = 1e-12


class FreeFallSingularityError(ValueError):
    """Attitude is undefined at exact free fall (zdd + g = 0 and ydd = 0)."""


@dataclass(frozen=True)
class Constraints:
    """Sampled feasibility limits.

    Altitude band and per-axis velocity band follow the state limits; the lift
    band [0, F_max] applies to each rotor pair.  n_samples uniform instants
    over [0, T] are tested, endpoints included.
    """

    z_min: float
    z_max: float
    v_min: float
    v_max: float
    F_max: float
    n_samples: int = 50

    def __post_init__(self):
        if self.z_min >= self.z_max:
            raise ValueError("z band is empty")
        if self.v_min >= self.v_max:
            raise ValueError("velocity band is empty")
        if self.n_samples < 2:
            raise ValueError("need at least 2 samples")


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    violation: Optional[str] = None  # ALTITUDE, VELOCITY or LIFT
    t: Optional[float] = None
    value: Optional[float] = None

    def __bool__(self) -> bool:
        return self.feasible


def flat_to_attitude(ay: float, az: float, g: float = 9.8) -> float:
    """Roll angle realizing a flat-output acceleration, in (-pi, pi].

    Uses the two-argument arctangent so attitudes beyond +-90 deg (thrust
    pointing below the horizon) are still defined.

    Raises:
        FreeFallSingularityError: ay = 0 and az + g = 0.
    """
    b = az + g
    if abs(ay) <= _SINGULAR_EPS and abs(b) <= _SINGULAR_EPS:
        raise FreeFallSingularityError("attitude undefined in exact free fall")
    return -math.atan2(ay, b)


def flat_to_attitude_rate(ay: float, az: float, jy: float, jz: float, g: float = 9.8) -> float:
    """Roll rate along a flat trajectory, from acceleration and jerk.

    Raises:
        FreeFallSingularityError: acceleration sits at the free-fall point.
    """
    b = az + g
    d = ay * ay + b * b
    if d <= _SINGULAR_EPS:
        raise FreeFallSingularityError("attitude rate undefined in exact free fall")
    return -(jy * b - ay * jz) / d


def flat_to_lifts(
    ay: float, az: float, jy: float, jz: float, sy: float, sz: float,
    params: QuadParams,
) -> Tuple[float, float]:
    """Pair lifts (F1, F2) realizing a flat trajectory point exactly.

    The lift sum is m times the thrust acceleration magnitude.  The lift
    difference follows from the roll acceleration, obtained by expanding the
    time derivative of the roll rate

        dphi = -(jy*b - ay*jz) / (ay^2 + b^2),   b = az + g

    by the quotient rule in terms of jerk and snap.  No numeric
    differentiation is involved.

    Raises:
        FreeFallSingularityError: acceleration sits at the free-fall point.
    """
    a = ay
    b = az + params.g
    d = a * a + b * b
    if d <= _SINGULAR_EPS:
        raise FreeFallSingularityError("lifts undefined in exact free fall")
    total = params.m * math.sqrt(d)
    n = jy * b - a * jz
    n_dot = sy * b - a * sz
    d_dot = 2.0 * (a * jy + b * jz)
    ddphi = -(n_dot * d - n * d_dot) / (d * d)
    diff = ddphi * params.J / params.d_s
    return (0.5 * (total + diff), 0.5 * (total - diff))


def check_feasible(
    traj_y: AxisTrajectory,
    traj_z: AxisTrajectory,
    c: Constraints,
    params: QuadParams,
) -> FeasibilityResult:
    """Screen a trajectory pair against altitude, velocity and lift limits.

    Both trajectories must share one horizon.  n_samples uniform instants in
    [0, T] are checked; a sample sitting exactly on a state bound counts as a
    violation.  The earliest offending sample wins, with altitude checked
    before velocity before lift at equal times.  A free-fall singularity at a
    sample is reported as a lift violation there (conservative rejection).
    """
    if traj_y.T != traj_z.T:
        raise ValueError("trajectory pair must share one horizon")
    ts = np.linspace(0.0, traj_y.T, c.n_samples)
    py, vy, ay, jy, sy = traj_y.eval_arrays(ts)
    pz, vz, az, jz, sz = traj_z.eval_arrays(ts)

    bad_alt = (pz <= c.z_min) | (pz >= c.z_max)
    bad_vel = (vy <= c.v_min) | (vy >= c.v_max) | (vz <= c.v_min) | (vz >= c.v_max)

    a = ay
    b = az + params.g
    d = a * a + b * b
    singular = d <= _SINGULAR_EPS
    d_safe = np.where(singular, 1.0, d)
    total = params.m * np.sqrt(d_safe)
    n = jy * b - a * jz
    n_dot = sy * b - a * sz
    d_dot = 2.0 * (a * jy + b * jz)
    ddphi = -(n_dot * d_safe - n * d_dot) / (d_safe * d_safe)
    diff = ddphi * params.J / params.d_s
    f1 = 0.5 * (total + diff)
    f2 = 0.5 * (total - diff)
    bad_lift = singular | (f1 < 0.0) | (f1 > c.F_max) | (f2 < 0.0) | (f2 > c.F_max)

    bad_any = bad_alt | bad_vel | bad_lift
    if not bad_any.any():
        return FeasibilityResult(True)
    i = int(np.argmax(bad_any))
    t_bad = float(ts[i])
    if bad_alt[i]:
        return FeasibilityResult(False, ALTITUDE, t_bad, float(pz[i]))
    if bad_vel[i]:
        v_bad = vy[i] if (vy[i] <= c.v_min or vy[i] >= c.v_max) else vz[i]
        return FeasibilityResult(False, VELOCITY, t_bad, float(v_bad))
    f_bad = f1[i] if (singular[i] or f1[i] < 0.0 or f1[i] > c.F_max) else f2[i]
    return FeasibilityResult(False, LIFT, t_bad, float(f_bad))
