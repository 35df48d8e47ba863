"""
Normal, chi-square and Student t distribution functions.

CDFs come from the in-repo incomplete gamma/beta functions; quantiles invert
them with Brent's method.
"""
import math

from scipy.optimize import brentq

from core.exceptions import DistributionDomainError
from core.validators import ParameterValidator
from stats_suite.special import betai, igam, igamc

QUANTILE_XTOL = 1e-12
SQRT_TWO = math.sqrt(2.0)
INV_SQRT_TWO_PI = 1.0 / math.sqrt(2.0 * math.pi)


def normal_cdf(x):
    """Phi(x) through the complementary error function."""
    return 0.5 * math.erfc(-x / SQRT_TWO)


def normal_pdf(x):
    return INV_SQRT_TWO_PI * math.exp(-0.5 * x * x)


def chisq_cdf(dof, x):
    """P(chi^2_dof <= x) = P(dof/2, x/2)."""
    dof = ParameterValidator.validate_dof(dof)
    if x <= 0:
        return 0.0
    return igam(dof / 2.0, x / 2.0)


def chisq_sf(dof, x):
    """Upper tail P(chi^2_dof > x)."""
    dof = ParameterValidator.validate_dof(dof)
    if x <= 0:
        return 1.0
    return igamc(dof / 2.0, x / 2.0)


def t_cdf(dof, t):
    """
    Student t CDF: 1 - I_{dof/(dof+t^2)}(dof/2, 1/2) / 2 for t >= 0.
    """
    dof = ParameterValidator.validate_dof(dof)
    if t == 0:
        return 0.5
    tail = 0.5 * betai(dof / 2.0, 0.5, dof / (dof + t * t))
    return 1.0 - tail if t > 0 else tail


def _upper_bracket(cdf, p, start):
    upper = start
    while cdf(upper) < p:
        upper *= 2.0
        if not math.isfinite(upper):
            raise DistributionDomainError(f"Cannot bracket quantile for p={p}")
    return upper


def chisq_quantile(dof, p):
    """x with chisq_cdf(dof, x) = p."""
    dof = ParameterValidator.validate_dof(dof)
    p = ParameterValidator.validate_probability(p)
    cdf = lambda x: chisq_cdf(dof, x)  # noqa: E731
    upper = _upper_bracket(cdf, p, dof + 10.0 * math.sqrt(2.0 * dof))
    return brentq(lambda x: cdf(x) - p, 0.0, upper, xtol=QUANTILE_XTOL, maxiter=500)


def t_quantile(dof, p):
    """t with t_cdf(dof, t) = p; symmetric about p = 1/2."""
    dof = ParameterValidator.validate_dof(dof)
    p = ParameterValidator.validate_probability(p)
    if p == 0.5:
        return 0.0
    if p < 0.5:
        return -t_quantile(dof, 1.0 - p)
    cdf = lambda t: t_cdf(dof, t)  # noqa: E731
    upper = _upper_bracket(cdf, p, 2.0)
    return brentq(lambda t: cdf(t) - p, 0.0, upper, xtol=QUANTILE_XTOL, maxiter=500)
