"""
Kullback-Leibler based criterion.

The divergence of the posterior from a vague initial distribution
N(0, sigma_I^2) measures how important a covariate looks; the gain in that
divergence measures what the new study adds. ``omega`` is added to every
variance so that precision beyond a practical floor stops counting.
"""
import math

from ..evidence import NormalSummary, ProjectedEvidence
from .base import Category, Criterion, CriterionConfig, CriterionId
from .bayesian import BayesFactorChange
from .frequentist import _check_after_variance


def kl_normal(p: NormalSummary, q: NormalSummary):
    """K(p || q) for two normal distributions."""
    ratio = p.variance / q.variance
    return 0.5 * (ratio + (p.mean - q.mean) ** 2 / q.variance - 1.0 - math.log(ratio))


def expected_kl_plain(sigma1_sq, sigma2_sq):
    """
    Expected K(N(mu_2, s2) || N(mu_1, s1)) when mu_2 ~ N(mu_1, s2).

    Depends on the variance ratio only, which is why it is not used as a
    criterion on its own.
    """
    ratio = sigma2_sq / sigma1_sq
    return -0.5 - 0.5 * math.log(ratio) + ratio


def kl_expected_impact(before: NormalSummary, after_variance, cfg: CriterionConfig):
    """
    Expected KL impact of the planned study.

    Arguments:
        before {NormalSummary} -- [current evidence N(mu_1, sigma_1^2)]
        after_variance {float} -- [projected variance sigma_2^2]
        cfg {CriterionConfig} -- [supplies sigma_init_sq and omega]

    Returns:
        float -- [(1/4) * (mu_1^2 + s2) / (s2 + w)
                  * ((2 s2 - s1) / (sI + w) - log((s2 + w) / (s1 + w)))]
    """
    _check_after_variance(before, after_variance)
    s1 = before.variance
    s2 = after_variance
    w = cfg.omega
    importance = (before.mean ** 2 + s2) / (s2 + w)
    gain = (2.0 * s2 - s1) / (cfg.sigma_init_sq + w) - math.log((s2 + w) / (s1 + w))
    return 0.25 * importance * gain


def realized_kl_impact(before: NormalSummary, after: NormalSummary, cfg: CriterionConfig):
    w = cfg.omega
    initial = NormalSummary(0.0, cfg.sigma_init_sq + w)
    posterior = NormalSummary(after.mean, after.variance + w)
    prior = NormalSummary(before.mean, before.variance + w)
    importance = kl_normal(posterior, NormalSummary(0.0, after.variance + w))
    return importance * (kl_normal(posterior, initial) - kl_normal(prior, initial))


class KullbackLeiblerImpact(Criterion):
    criterion_id = CriterionId.KL

    def _compute(self, projected: ProjectedEvidence):
        return kl_expected_impact(projected.before, projected.after.variance, self.cfg)

    def _classify(self, projected, value):
        # ranks only; the Bayes factor rule supplies the label when it can
        if projected.has_spike:
            return BayesFactorChange(self.cfg).classify(projected)
        return Category.UNRANKED
