"""
Angles on the parameter circle of circumference pi/2.

The half-wave-plate angle theta and theta + pi/2 describe the same physical
state, so every angle is stored wrapped into [0, pi/2) and every difference is
taken as a wrapped deviation in (-pi/4, pi/4].
"""
import math
from dataclasses import dataclass

import numpy as np

HALF_PI = math.pi / 2
QUARTER_PI = math.pi / 4


def wrap_angle(value):
    """
    Wrap radians into [0, pi/2).
    """
    wrapped = math.fmod(float(value), HALF_PI)
    if wrapped < 0.0:
        wrapped += HALF_PI
    # fmod of a tiny negative value can round up to exactly pi/2
    if wrapped >= HALF_PI:
        wrapped = 0.0
    return wrapped


def wrapped_deviation(value):
    """
    Signed deviation in (-pi/4, pi/4] on the circle of circumference pi/2.
    """
    deviation = wrap_angle(value)
    if deviation > QUARTER_PI:
        deviation -= HALF_PI
    return deviation


def wrap_angles(values):
    """Vectorized wrap_angle for numpy arrays."""
    wrapped = np.mod(np.asarray(values, dtype=float), HALF_PI)
    wrapped[wrapped >= HALF_PI] = 0.0
    return wrapped


def wrapped_deviations(values):
    """Vectorized wrapped_deviation for numpy arrays."""
    deviations = wrap_angles(values)
    deviations[deviations > QUARTER_PI] -= HALF_PI
    return deviations


@dataclass(frozen=True)
class AngleRad:
    """
    A parameter value theta in radians, wrapped into [0, pi/2).

    Two instances compare equal iff their wrapped values are equal, which is
    exactly model equivalence for the polarization state.
    """
    value: float

    def __post_init__(self):
        object.__setattr__(self, 'value', wrap_angle(self.value))

    @classmethod
    def from_degrees(cls, degrees):
        return cls(math.radians(degrees))

    @property
    def degrees(self):
        return math.degrees(self.value)

    @property
    def phase(self):
        """Relative phase phi = 4 theta between circular polarizations."""
        return 4.0 * self.value

    def deviation_from(self, other):
        """Wrapped deviation self - other in (-pi/4, pi/4]."""
        return wrapped_deviation(self.value - as_radians(other))

    def __float__(self):
        return self.value


def as_radians(angle):
    """Accept an AngleRad or a plain number of radians."""
    if isinstance(angle, AngleRad):
        return angle.value
    return float(angle)


def as_angle(angle):
    """Accept an AngleRad or a plain number of radians; return an AngleRad."""
    if isinstance(angle, AngleRad):
        return angle
    return AngleRad(float(angle))
