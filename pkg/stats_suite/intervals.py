"""
Confidence intervals for the mean (Student t) and for the scaled variance
v of sqrt(n) (theta_hat - mu) (chi-square).
"""
import math
from dataclasses import dataclass

import numpy as np

from core.validators import ParameterValidator
from qubit_model.angles import as_radians, wrapped_deviation
from stats_suite.distributions import chisq_quantile, t_quantile
from stats_suite.standardize import angle_array, deviations_about_mean

MEAN = 'mean'
VARIANCE = 'variance'


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    level: float
    target: str
    estimate: float
    units: str = ''

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"Interval bounds out of order: [{self.lower}, {self.upper}]")

    @property
    def half_width(self):
        return 0.5 * (self.upper - self.lower)

    def contains(self, value):
        return self.lower <= value <= self.upper


def _sample(values, what):
    values = np.asarray(values, dtype=float)
    ParameterValidator.validate_sample_size(values.size, 2, what)
    return values


def student_t_interval(values, level):
    """mean +/- t_{r-1,(1+level)/2} sqrt(V/r) with V the unbiased sample variance."""
    level = ParameterValidator.validate_probability(level, 'level')
    values = _sample(values, 'mean interval')
    r = values.size
    mean = float(values.mean())
    half_width = t_quantile(r - 1, 0.5 * (1.0 + level)) * math.sqrt(values.var(ddof=1) / r)
    return ConfidenceInterval(mean - half_width, mean + half_width, level, MEAN, mean)


def chi_square_variance_interval(values, n, level):
    """
    Interval for v = n Var(values):
    [n (r-1) V / chi^2_{r-1,(1+level)/2}, n (r-1) V / chi^2_{r-1,(1-level)/2}].
    """
    level = ParameterValidator.validate_probability(level, 'level')
    values = _sample(values, 'variance interval')
    r = values.size
    scaled = n * (r - 1) * values.var(ddof=1)
    lower = scaled / chisq_quantile(r - 1, 0.5 * (1.0 + level))
    upper = scaled / chisq_quantile(r - 1, 0.5 * (1.0 - level))
    return ConfidenceInterval(lower, upper, level, VARIANCE, scaled / (r - 1))


def mean_ci(final_mles, level, reference=None):
    """
    Student t interval for mu from the final estimates, in degrees.

    Spread is taken from wrapped deviations about the circular mean. With a
    `reference` angle the center is reported as reference + wrapped(theta_bar
    - reference), so ensembles around 0 read as small negatives, not ~90 deg.
    """
    angles = angle_array(final_mles)
    theta_bar, deviations = deviations_about_mean(angles)
    center = theta_bar.value
    if reference is not None:
        reference = as_radians(reference)
        center = reference + wrapped_deviation(center - reference)
    interval = student_t_interval(center + deviations, level)
    return ConfidenceInterval(
        math.degrees(interval.lower),
        math.degrees(interval.upper),
        interval.level,
        MEAN,
        math.degrees(interval.estimate),
        units='deg',
    )


def variance_ci(final_mles, n, level):
    """Chi-square interval for v in rad^2 from wrapped deviations about the circular mean."""
    _, deviations = deviations_about_mean(angle_array(final_mles))
    interval = chi_square_variance_interval(deviations, n, level)
    return ConfidenceInterval(
        interval.lower, interval.upper, interval.level, VARIANCE, interval.estimate, units='rad^2'
    )
