"""
Frequentist criteria: conditional power, change of p-value and change in
the lower confidence limit.
"""
import math

from scipy import special

from ..errors import DomainError
from ..evidence import NormalSummary, ProjectedEvidence
from .base import Category, Criterion, CriterionConfig, CriterionId


def _check_after_variance(before, after_variance):
    # equality is the limit of a planned study that carries no information
    if not 0.0 < after_variance <= before.variance:
        raise DomainError(
            "after_variance must lie in (0, {!r}], got {!r}".format(before.variance, after_variance)
        )


def conditional_power(before: NormalSummary, after_variance, cfg: CriterionConfig):
    """
    Power to reject beta = 0 once the planned study is pooled with the
    current evidence, when the planned study's estimate is centred on delta.

    Arguments:
        before {NormalSummary} -- [current evidence N(mu_1, sigma_1^2)]
        after_variance {float} -- [projected variance sigma_2^2 <= sigma_1^2]
        cfg {CriterionConfig} -- [supplies delta and alpha]

    Returns:
        float -- [probability of a two-sided rejection at level alpha; with
            sigma_2^2 = sigma_1^2, 1.0 if the current evidence already
            rejects beta = 0 and 0.0 otherwise]
    """
    _check_after_variance(before, after_variance)
    c = cfg.critical_value
    if after_variance == before.variance:
        return 1.0 if abs(before.mean) / before.sd > c else 0.0
    a1 = 1.0 / before.variance
    a2 = 1.0 / after_variance
    r = math.sqrt(a2 - a1)
    upper = (before.mean * a1 - c * math.sqrt(a2)) / r + cfg.delta * r
    lower = (-before.mean * a1 - c * math.sqrt(a2)) / r - cfg.delta * r
    return float(special.ndtr(upper) + special.ndtr(lower))


def _log_p_value(mean, sd, delta):
    # two-sided p-value of beta = delta, log scale
    return math.log(2.0) + float(special.log_ndtr(-abs(mean - delta) / sd))


def p_value_change(before: NormalSummary, after_variance, cfg: CriterionConfig):
    """
    Expected drop in log p-value of the hypothesis beta = delta.

    Returns None when mu_1 <= delta: the expected p-value would not drop.
    """
    _check_after_variance(before, after_variance)
    if before.mean <= cfg.delta:
        return None
    return _log_p_value(before.mean, before.sd, cfg.delta) - _log_p_value(
        before.mean, math.sqrt(after_variance), cfg.delta
    )


def lower_limit(mean, sd, alpha):
    return mean + sd * float(special.ndtri(alpha / 2.0))


def lcl_change(before: NormalSummary, after_variance, cfg: CriterionConfig):
    """Expected gain in the lower confidence limit, both limits clipped at zero."""
    _check_after_variance(before, after_variance)
    l1 = lower_limit(before.mean, before.sd, cfg.alpha)
    l2 = lower_limit(before.mean, math.sqrt(after_variance), cfg.alpha)
    return max(0.0, l2) - max(0.0, l1)


def realized_rejection(after: NormalSummary, cfg: CriterionConfig):
    """1.0 when the updated meta-analysis rejects beta = 0 at alpha, else 0.0."""
    return 1.0 if abs(after.mean) / after.sd > cfg.critical_value else 0.0


def realized_p_value_change(before: NormalSummary, after: NormalSummary, cfg: CriterionConfig):
    """log p_1 - log p_2 for beta = delta; None if the p-value went up."""
    log_p1 = _log_p_value(before.mean, before.sd, cfg.delta)
    log_p2 = _log_p_value(after.mean, after.sd, cfg.delta)
    if log_p2 > log_p1:
        return None
    return log_p1 - log_p2


def realized_lcl_change(before: NormalSummary, after: NormalSummary, cfg: CriterionConfig):
    l1 = lower_limit(before.mean, before.sd, cfg.alpha)
    l2 = lower_limit(after.mean, after.sd, cfg.alpha)
    return max(0.0, l2) - max(0.0, l1)


class ConditionalPower(Criterion):
    criterion_id = CriterionId.CP

    def _compute(self, projected: ProjectedEvidence):
        return conditional_power(projected.before, projected.after.variance, self.cfg)

    def _classify(self, projected, value):
        before = projected.before
        # beta = delta rejected on the side of the estimate
        if abs(before.mean) - self.cfg.delta > self.cfg.critical_value * before.sd:
            return Category.I
        if value >= self.cfg.cp_threshold:
            return Category.II
        return Category.III


class PValueChange(Criterion):
    criterion_id = CriterionId.DLOGP

    def _compute(self, projected: ProjectedEvidence):
        return p_value_change(projected.before, projected.after.variance, self.cfg)

    def _classify(self, projected, value):
        before = projected.before
        if before.mean <= self.cfg.delta:
            return Category.III
        p1 = math.exp(_log_p_value(before.mean, before.sd, self.cfg.delta))
        if p1 < self.cfg.category_i_p_limit:
            return Category.I
        return Category.II


class LowerLimitChange(Criterion):
    criterion_id = CriterionId.LCL

    def _compute(self, projected: ProjectedEvidence):
        return lcl_change(projected.before, projected.after.variance, self.cfg)

    def _classify(self, projected, value):
        before = projected.before
        if lower_limit(before.mean, before.sd, self.cfg.alpha) > self.cfg.delta:
            return Category.I
        if value > 0.0:
            return Category.II
        return Category.III
