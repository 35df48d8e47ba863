"""
Polarization qubit states, the optimal binary POVM and outcome probabilities.

All amplitudes are real in the {|H>, |V>} basis: the state of a half-wave-plate
angle theta is cos(2 theta)|H> + sin(2 theta)|V>, i.e. the linear polarization
(|R> + e^{i phi}|L>)/sqrt(2) with phi = 4 theta written in the real basis.
"""
import math
from dataclasses import dataclass

import numpy as np

from core.validators import ParameterValidator
from qubit_model.angles import QUARTER_PI, AngleRad, as_angle, as_radians

NORMALIZATION_TOLERANCE = 1e-12


@dataclass(frozen=True)
class HermitianMatrix2:
    """
    Real symmetric 2x2 matrix [[m00, m01], [m10, m11]] in the {H, V} basis.
    """
    m00: float
    m01: float
    m10: float
    m11: float

    @classmethod
    def from_array(cls, array):
        array = np.asarray(array, dtype=float)
        return cls(array[0, 0], array[0, 1], array[1, 0], array[1, 1])

    def to_array(self):
        return np.array([[self.m00, self.m01], [self.m10, self.m11]])

    def is_hermitian(self, tolerance=NORMALIZATION_TOLERANCE):
        return abs(self.m01 - self.m10) <= tolerance

    def trace(self):
        return self.m00 + self.m11


@dataclass(frozen=True)
class PureQubitState:
    """Real amplitudes of a pure polarization state."""
    amplitude_h: float
    amplitude_v: float

    def __post_init__(self):
        norm = self.amplitude_h ** 2 + self.amplitude_v ** 2
        if abs(norm - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValueError(f"State is not normalized: |psi|^2 = {norm}")

    def to_vector(self):
        return np.array([self.amplitude_h, self.amplitude_v])

    def density_matrix(self):
        """rho = |psi><psi|."""
        vector = self.to_vector()
        return HermitianMatrix2.from_array(np.outer(vector, vector))

    def expectation(self, operator):
        """<psi|A|psi> for a HermitianMatrix2 A."""
        vector = self.to_vector()
        return float(vector @ operator.to_array() @ vector)


@dataclass(frozen=True)
class BinaryPovm:
    """
    Two-outcome projective measurement {|xi><xi|, I - |xi><xi|}.

    `setting` is the estimate the measurement was built for (the physical
    angle of the analyzing half-wave plate).
    """
    xi_h: float
    xi_v: float
    setting: AngleRad

    def __post_init__(self):
        norm = self.xi_h ** 2 + self.xi_v ** 2
        if abs(norm - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValueError(f"POVM vector is not normalized: |xi|^2 = {norm}")

    def element(self, outcome):
        """M(1) = |xi><xi|, M(2) = I - M(1)."""
        outcome = ParameterValidator.validate_outcome(outcome)
        xi = np.array([self.xi_h, self.xi_v])
        projector = np.outer(xi, xi)
        if outcome == 1:
            return HermitianMatrix2.from_array(projector)
        return HermitianMatrix2.from_array(np.eye(2) - projector)

    def elements(self):
        return self.element(1), self.element(2)


def state_of(theta):
    """
    Polarization state (cos 2 theta, sin 2 theta) for a half-wave-plate angle.
    """
    theta = as_radians(as_angle(theta))
    return PureQubitState(math.cos(2.0 * theta), math.sin(2.0 * theta))


def density_matrix(theta):
    return state_of(theta).density_matrix()


def povm_of(theta_hat):
    """
    Optimal POVM at the estimate theta_hat:
    <xi| = (cos(2 theta_hat + pi/4), sin(2 theta_hat + pi/4)).
    """
    setting = as_angle(theta_hat)
    angle = 2.0 * setting.value + QUARTER_PI
    return BinaryPovm(math.cos(angle), math.sin(angle), setting)


def probability_of_first(theta, theta_hat):
    """
    p(1; theta, theta_hat) = cos^2(2 (theta_hat - theta) + pi/4).

    Any representative of the angles may be passed: cos^2 has period pi in
    its argument, i.e. period pi/2 in either angle.
    """
    u = 2.0 * (as_radians(theta_hat) - as_radians(theta)) + QUARTER_PI
    return math.cos(u) ** 2


def outcome_probability(outcome, theta, theta_hat):
    """
    Probability <psi(theta)|M(outcome; theta_hat)|psi(theta)> of one detector click.
    """
    outcome = ParameterValidator.validate_outcome(outcome)
    p1 = probability_of_first(theta, theta_hat)
    return p1 if outcome == 1 else 1.0 - p1


def outcome_probabilities(outcome, thetas, theta_hat):
    """
    Vectorized outcome_probability over an array of parameter values.
    """
    outcome = ParameterValidator.validate_outcome(outcome)
    thetas = np.asarray(thetas, dtype=float)
    u = 2.0 * (as_radians(theta_hat) - thetas) + QUARTER_PI
    p1 = np.cos(u) ** 2
    return p1 if outcome == 1 else 1.0 - p1
