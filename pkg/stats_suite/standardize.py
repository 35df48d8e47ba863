"""
Circular averaging of final estimates and their standardization
sqrt(n J) * wrapped(theta_hat - theta_bar).
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from adaptive_estimator.grid import DEFAULT_GRID_SIZE
from core.validators import ParameterValidator
from qubit_model.angles import HALF_PI, AngleRad, as_radians, wrapped_deviations
from qubit_model.information import QUANTUM_FISHER_INFORMATION

logger = logging.getLogger(__name__)

CENTERING_ITERATIONS = 10


def angle_array(angles):
    """Radians of a sequence of AngleRad or floats."""
    if isinstance(angles, np.ndarray):
        return angles.astype(float)
    return np.array([as_radians(angle) for angle in angles], dtype=float)


def circular_mean(angles):
    """
    Mean on the circle of circumference pi/2.

    Deviations are wrapped about a reference, averaged, and the reference is
    moved to the result until it stops moving.
    """
    angles = angle_array(angles)
    ParameterValidator.validate_sample_size(angles.size, 1, 'circular mean')
    reference = angles[0]
    for _ in range(CENTERING_ITERATIONS):
        correction = wrapped_deviations(angles - reference).mean()
        reference = reference + correction
        if abs(correction) <= 1e-15:
            break
    return AngleRad(reference)


def deviations_about_mean(angles):
    """(theta_bar, wrapped deviations theta_i - theta_bar)."""
    angles = angle_array(angles)
    theta_bar = circular_mean(angles)
    return theta_bar, wrapped_deviations(angles - theta_bar.value)


def scaled_resolution(n, fisher_information=QUANTUM_FISHER_INFORMATION, grid_size=DEFAULT_GRID_SIZE):
    """delta = sqrt(n J) times the grid step (pi/2)/G."""
    return math.sqrt(n * fisher_information) * HALF_PI / grid_size


@dataclass(frozen=True, eq=False)
class StandardizedSample:
    values: np.ndarray
    n: int
    r: int
    theta_bar: AngleRad
    delta: float
    fisher_information: float = QUANTUM_FISHER_INFORMATION


def standardize(final_mles, n, fisher_information=QUANTUM_FISHER_INFORMATION, grid_size=DEFAULT_GRID_SIZE):
    """
    Standardize r final estimates about their circular mean.

    Raises InsufficientSampleError for r < 2.
    """
    angles = angle_array(final_mles)
    ParameterValidator.validate_sample_size(angles.size, 2, 'standardize')
    theta_bar, deviations = deviations_about_mean(angles)
    scale = math.sqrt(n * fisher_information)
    values = scale * deviations
    values.setflags(write=False)
    return StandardizedSample(
        values=values,
        n=int(n),
        r=int(angles.size),
        theta_bar=theta_bar,
        delta=scaled_resolution(n, fisher_information, grid_size),
        fisher_information=fisher_information,
    )
