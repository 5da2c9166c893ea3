"""
Scalar building blocks: standard-normal density, distribution function and
quantile, and inverse-variance (fixed-effects) pooling.

Tail work is delegated to scipy.special, whose ``ndtr``/``log_ndtr`` use the
complementary error function in the tails, so upper-tail probabilities at
z ~ 8 keep full relative precision.
"""
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import special
from scipy.stats import norm

from .errors import DomainError

Probability = float


def check_finite(name, *values):
    for value in values:
        if not np.isfinite(value):
            raise DomainError("{} must be finite, got {!r}".format(name, value))


def check_positive(name, value):
    check_finite(name, value)
    if value <= 0:
        raise DomainError("{} must be > 0, got {!r}".format(name, value))


def check_probability(name, p, open_interval=False):
    """Validate a probability; ``open_interval`` excludes 0 and 1."""
    check_finite(name, p)
    if open_interval:
        if not 0.0 < p < 1.0:
            raise DomainError("{} must lie in (0, 1), got {!r}".format(name, p))
    elif not 0.0 <= p <= 1.0:
        raise DomainError("{} must lie in [0, 1], got {!r}".format(name, p))


@dataclass(frozen=True)
class WeightedEstimate:
    """Point estimate with its squared standard error."""

    mean: float
    variance: float

    def __post_init__(self):
        check_finite("mean", self.mean)
        check_positive("variance", self.variance)

    @property
    def sd(self):
        return math.sqrt(self.variance)

    @property
    def precision(self):
        return 1.0 / self.variance


def normal_pdf(x, mean=0.0, variance=1.0):
    """
    Normal density N(mean, variance) evaluated at x.

    Arguments:
        x {float} -- [point of evaluation]
        mean {float} -- [location] (default: {0.0})
        variance {float} -- [variance, must be > 0] (default: {1.0})

    Returns:
        float -- [density value]
    """
    check_finite("x", x, mean)
    check_positive("variance", variance)
    return float(norm.pdf(x, loc=mean, scale=math.sqrt(variance)))


def normal_logpdf(x, mean=0.0, variance=1.0):
    """Log of ``normal_pdf``; stays finite where the density underflows."""
    check_finite("x", x, mean)
    check_positive("variance", variance)
    return float(norm.logpdf(x, loc=mean, scale=math.sqrt(variance)))


def normal_cdf(x):
    """Standard-normal distribution function Phi(x)."""
    check_finite("x", x)
    return float(special.ndtr(x))


def normal_log_sf(x):
    """log(1 - Phi(x)), accurate far into the upper tail."""
    check_finite("x", x)
    return float(special.log_ndtr(-x))


def normal_quantile(p):
    """
    Inverse of ``normal_cdf``.

    Raises:
        DomainError -- [if p is not strictly inside (0, 1)]
    """
    check_probability("p", p, open_interval=True)
    return float(special.ndtri(p))


def two_sided_critical_value(alpha):
    """C = Phi^-1(1 - alpha/2), evaluated as -Phi^-1(alpha/2) to keep digits."""
    check_probability("alpha", alpha, open_interval=True)
    return -float(special.ndtri(alpha / 2.0))


def pool_fixed(estimates: Sequence[WeightedEstimate]) -> WeightedEstimate:
    """
    Fixed-effects (inverse-variance) combination of independent estimates.

    Arguments:
        estimates {Sequence[WeightedEstimate]} -- [non-empty list of estimates]

    Returns:
        WeightedEstimate -- [pooled mean and variance; pooled precision is
            the sum of the input precisions]
    """
    if len(estimates) == 0:
        raise DomainError("pool_fixed needs at least one estimate")
    means = np.array([e.mean for e in estimates], dtype=float)
    precisions = np.array([1.0 / e.variance for e in estimates], dtype=float)
    if len(estimates) == 1:
        return WeightedEstimate(float(means[0]), float(estimates[0].variance))
    total_precision = math.fsum(precisions)
    pooled_mean = math.fsum(means * precisions) / total_precision
    return WeightedEstimate(pooled_mean, 1.0 / total_precision)
