"""
Pearson chi-square goodness-of-fit of a standardized sample against N(0, 1)
on 23 bins: two open tails and 21 bins of width 1/3 over [-3.5, 3.5].
"""
import logging
from dataclasses import dataclass, field, replace

import numpy as np

from core.exceptions import BinningError
from core.validators import ParameterValidator
from stats_suite.distributions import chisq_quantile, chisq_sf, normal_cdf

logger = logging.getLogger(__name__)

BIN_COUNT = 23
INNER_LIMIT = 3.5
DEFAULT_DOF = 21
DEFAULT_SIGNIFICANCE = 0.10
MINIMUM_SAMPLE = 50
SHIFT_FRACTION = 1e-4


@dataclass(frozen=True, eq=False)
class BinSpec:
    """
    Bin b covers [edges[b-1], edges[b]) with edges[-1] = -inf and edges[22] = +inf.
    Every inner edge is moved by `shift`.
    """
    base_edges: np.ndarray = field(
        default_factory=lambda: np.linspace(-INNER_LIMIT, INNER_LIMIT, BIN_COUNT - 1)
    )
    shift: float = 0.0

    def __post_init__(self):
        edges = np.asarray(self.base_edges, dtype=float)
        if edges.ndim != 1 or edges.size < 1:
            raise BinningError('Bin edges must be a non-empty 1-d sequence')
        if not (np.diff(edges) > 0).all():
            raise BinningError('Bin edges must be strictly increasing')
        object.__setattr__(self, 'base_edges', edges)

    @property
    def count(self):
        return self.base_edges.size + 1

    @property
    def inner_edges(self):
        return self.base_edges + self.shift

    @property
    def lower_edges(self):
        return np.concatenate([[-np.inf], self.inner_edges])

    @property
    def upper_edges(self):
        return np.concatenate([self.inner_edges, [np.inf]])

    def shifted_for(self, sample):
        """Same bins moved by delta/10000 so grid-quantized values avoid edges."""
        return replace(self, shift=sample.delta * SHIFT_FRACTION)


def bin_counts(sample, bins=None):
    """N_b for every bin after shifting the edges for this sample."""
    bins = (bins or BinSpec()).shifted_for(sample)
    indices = np.searchsorted(bins.inner_edges, sample.values, side='right')
    return np.bincount(indices, minlength=bins.count)


def normal_bin_probs(bins=None):
    """
    p_b = Phi(upper_b) - Phi(lower_b), evaluated on the lower tail for bins
    above zero so that symmetric bins get identical probabilities.
    """
    bins = bins or BinSpec()
    probabilities = np.empty(bins.count)
    for b, (lower, upper) in enumerate(zip(bins.lower_edges, bins.upper_edges)):
        if lower >= 0:
            probabilities[b] = normal_cdf(-lower) - normal_cdf(-upper)
        else:
            probabilities[b] = normal_cdf(upper) - normal_cdf(lower)
    return probabilities


def chi_square_decision(statistic, dof=DEFAULT_DOF, significance=DEFAULT_SIGNIFICANCE):
    """(critical value, accept) for X^2 against chi^2_dof at the given level."""
    significance = ParameterValidator.validate_probability(significance, 'significance')
    critical_value = chisq_quantile(dof, 1.0 - significance)
    return critical_value, bool(statistic <= critical_value)


@dataclass(frozen=True, eq=False)
class GofResult:
    counts: np.ndarray
    expected: np.ndarray
    probabilities: np.ndarray
    statistic: float
    dof: int
    critical_value: float
    accept: bool
    significance: float
    p_value: float
    bins: BinSpec

    @property
    def r(self):
        return int(self.counts.sum())


def gof_test(sample, significance=DEFAULT_SIGNIFICANCE, bins=None, dof=DEFAULT_DOF):
    """
    X^2 = sum_b (N_b - r p_b)^2 / (r p_b) over all bins, tails included,
    compared with the (1 - significance) quantile of chi^2_dof.

    Raises InsufficientSampleError for r < 50 and BinningError when a bin
    has zero expected count.
    """
    ParameterValidator.validate_sample_size(sample.r, MINIMUM_SAMPLE, 'goodness-of-fit test')
    bins = (bins or BinSpec()).shifted_for(sample)
    counts = bin_counts(sample, bins)
    probabilities = normal_bin_probs(bins)
    expected = sample.r * probabilities
    if (expected <= 0).any():
        empty = [int(b) for b in np.flatnonzero(expected <= 0)]
        raise BinningError(f"Bins {empty} have zero expected count")
    statistic = float((((counts - expected) ** 2) / expected).sum())
    critical_value, accept = chi_square_decision(statistic, dof, significance)
    result = GofResult(
        counts=counts,
        expected=expected,
        probabilities=probabilities,
        statistic=statistic,
        dof=dof,
        critical_value=critical_value,
        accept=accept,
        significance=significance,
        p_value=chisq_sf(dof, statistic),
        bins=bins,
    )
    if not accept:
        logger.warning(f"Goodness-of-fit rejected N(0,1): X2={statistic:.3f} > {critical_value:.3f} (dof={dof})")
    return result
