"""
Parameter validation shared by the model, estimator and statistics apps.
"""
import math
import numbers

from core.exceptions import (
    DistributionDomainError,
    InsufficientSampleError,
    InvalidOutcomeError,
)

OUTCOMES = (1, 2)


class ParameterValidator:
    """
    Validate scalar parameters before they reach numerical code.
    """

    @classmethod
    def validate_outcome(cls, outcome):
        """
        Outcome labels are the integers 1 and 2 (booleans are rejected).
        """
        if isinstance(outcome, bool) or not isinstance(outcome, numbers.Integral):
            raise InvalidOutcomeError(outcome)
        if outcome not in OUTCOMES:
            raise InvalidOutcomeError(outcome)
        return int(outcome)

    @classmethod
    def validate_probability(cls, p, name='p'):
        """Probability strictly inside (0, 1)."""
        try:
            p = float(p)
        except (TypeError, ValueError):
            raise DistributionDomainError(f"{name} must be a number, got {p!r}")
        if not (0.0 < p < 1.0):
            raise DistributionDomainError(f"{name} must lie in (0, 1), got {p}")
        return p

    @classmethod
    def validate_dof(cls, dof):
        """Degrees of freedom: finite and at least 1."""
        try:
            dof = float(dof)
        except (TypeError, ValueError):
            raise DistributionDomainError(f"Degrees of freedom must be a number, got {dof!r}")
        if not math.isfinite(dof) or dof < 1:
            raise DistributionDomainError(f"Degrees of freedom must be >= 1, got {dof}")
        return dof

    @classmethod
    def validate_sample_size(cls, size, minimum, what='sample'):
        if size < minimum:
            raise InsufficientSampleError(minimum, size, what)
        return size
