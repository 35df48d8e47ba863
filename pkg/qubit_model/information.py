"""
Symmetric logarithmic derivative, Fisher information and the optimal locally
unbiased estimator for the polarization model.
"""
import math
from dataclasses import dataclass

import numpy as np

from core.exceptions import DegenerateMeasurementError
from core.validators import ParameterValidator
from qubit_model.angles import QUARTER_PI, AngleRad, as_angle, as_radians
from qubit_model.states import HermitianMatrix2, density_matrix, probability_of_first

# Tr[rho L^2] for this model, at every theta
QUANTUM_FISHER_INFORMATION = 16.0

DEGENERACY_TOLERANCE = 1e-12


def density_derivative(theta):
    """
    d rho / d theta for rho = [[cos^2 2t, cos 2t sin 2t], [., sin^2 2t]].
    """
    theta = as_radians(as_angle(theta))
    s = math.sin(4.0 * theta)
    c = math.cos(4.0 * theta)
    return HermitianMatrix2(-2.0 * s, 2.0 * c, 2.0 * c, 2.0 * s)


def sld_operator(theta):
    """
    SLD L solving d rho/d theta = (L rho + rho L)/2.

    For a pure state rho^2 = rho, so L = 2 d rho / d theta.
    """
    derivative = density_derivative(theta).to_array()
    return HermitianMatrix2.from_array(2.0 * derivative)


def quantum_fisher_information():
    """J = Tr[rho L^2] = 16, independent of theta."""
    return QUANTUM_FISHER_INFORMATION


def sld_fisher_information(theta):
    """Tr[rho_theta L_theta^2] evaluated by matrix algebra."""
    rho = density_matrix(theta).to_array()
    sld = sld_operator(theta).to_array()
    return float(np.trace(rho @ sld @ sld))


def first_outcome_slope(theta, theta_hat):
    """d p(1; theta, theta_hat) / d theta = 2 sin(2u), u = 2 (theta_hat - theta) + pi/4."""
    u = 2.0 * (as_radians(theta_hat) - as_radians(theta)) + QUARTER_PI
    return 2.0 * math.sin(2.0 * u)


def classical_fisher_information(theta, theta_hat):
    """
    Fisher information of the binary outcome density (dp1/dtheta)^2 / (p1 p2).

    Raises DegenerateMeasurementError where the setting makes the outcome
    certain and the information singular.
    """
    u = 2.0 * (as_radians(theta_hat) - as_radians(theta)) + QUARTER_PI
    # sin^2 rather than 1 - cos^2 keeps p2 relatively accurate near p1 = 1
    p1 = math.cos(u) ** 2
    p2 = math.sin(u) ** 2
    if p1 <= DEGENERACY_TOLERANCE or p2 <= DEGENERACY_TOLERANCE:
        raise DegenerateMeasurementError(
            f"Outcome probabilities ({p1:.3e}, {p2:.3e}) are degenerate at "
            f"theta={as_radians(theta)!r}, theta_hat={as_radians(theta_hat)!r}"
        )
    slope = first_outcome_slope(theta, theta_hat)
    return slope ** 2 / (p1 * p2)


@dataclass(frozen=True)
class LueEstimator:
    """
    Estimator map paired with M(center): outcome 1 -> center + offset,
    outcome 2 -> center - offset.
    """
    center: AngleRad
    offset: float

    def estimate(self, outcome):
        outcome = ParameterValidator.validate_outcome(outcome)
        sign = 1.0 if outcome == 1 else -1.0
        # Unwrapped on purpose: expectation and variance are taken on the real line
        return self.center.value + sign * self.offset

    def expectation(self, theta):
        """E_theta[estimate] under the measurement M(center)."""
        p1 = probability_of_first(theta, self.center)
        return p1 * self.estimate(1) + (1.0 - p1) * self.estimate(2)

    def variance(self, theta):
        """V_theta[estimate] under the measurement M(center)."""
        p1 = probability_of_first(theta, self.center)
        return 4.0 * self.offset ** 2 * p1 * (1.0 - p1)


def lue_estimator(theta0):
    """
    Best locally unbiased estimator at theta0.

    The offset c solves the unit-slope condition
    d/dtheta E_theta[estimate] |theta0 = 2 c dp1/dtheta |theta0 = 1,
    which gives c = 1/4 for this model.
    """
    center = as_angle(theta0)
    slope = first_outcome_slope(center, center)
    return LueEstimator(center=center, offset=1.0 / (2.0 * slope))
