"""
Criteria under the spike-and-slab model: difference of expectations,
change in Bayes factor, and the per-covariate input to Bayesian FDR.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from ..errors import DomainError
from ..evidence import ProjectedEvidence
from .base import Category, Criterion, CriterionConfig, CriterionId


def _require_spike(projected):
    if not projected.has_spike:
        raise DomainError("projected evidence carries no spike-and-slab state")


def expectation_change(projected: ProjectedEvidence):
    """pi_2 * mu_2 - pi_1 * mu_1 for the projected spike-and-slab states."""
    _require_spike(projected)
    before = projected.spike_before
    after = projected.spike_after
    return after.inclusion_prob * after.slab.mean - before.inclusion_prob * before.slab.mean


@dataclass(frozen=True)
class BayesFactors:
    """
    Inclusion Bayes factors against the prior odds, kept on the log scale.

    ``saturated`` is set when an inclusion probability is exactly 0 or 1 and
    the corresponding factor is infinite.
    """

    log_bf_before: float
    log_bf_after: float
    saturated: bool = False

    @property
    def bf_before(self):
        with np.errstate(over="ignore"):
            return float(np.exp(self.log_bf_before))

    @property
    def bf_after(self):
        with np.errstate(over="ignore"):
            return float(np.exp(self.log_bf_after))

    def __iter__(self):
        return iter((self.bf_before, self.bf_after))


def bayes_factors(projected: ProjectedEvidence, cfg: CriterionConfig) -> BayesFactors:
    """
    odds(pi_1) / odds(pi0) and odds(pi_2) / odds(pi0).

    Unpacks as ``bf_before, bf_after``.
    """
    _require_spike(projected)
    prior_log_odds = float(special.logit(cfg.pi0))
    before = projected.spike_before.log_odds
    after = projected.spike_after.log_odds
    saturated = math.isinf(before) or math.isinf(after)
    return BayesFactors(before - prior_log_odds, after - prior_log_odds, saturated)


def bf_category(factors: BayesFactors, cfg: CriterionConfig):
    """I if decisive before the study, II if decisive only after, III otherwise."""
    log_limit = math.log(cfg.bf_limit)
    if factors.log_bf_before > log_limit:
        return Category.I
    if factors.log_bf_after > log_limit:
        return Category.II
    return Category.III


class ExpectationChange(Criterion):
    criterion_id = CriterionId.DE
    needs_spike = True

    def _compute(self, projected):
        return expectation_change(projected)

    def _classify(self, projected, value):
        return bf_category(bayes_factors(projected, self.cfg), self.cfg)


class BayesFactorChange(Criterion):
    """Criterion value is the gain in log Bayes factor."""

    criterion_id = CriterionId.BF
    needs_spike = True

    def _compute(self, projected):
        factors = bayes_factors(projected, self.cfg)
        if factors.saturated:
            return None
        return factors.log_bf_after - factors.log_bf_before

    def _classify(self, projected, value):
        return bf_category(bayes_factors(projected, self.cfg), self.cfg)


class BfdrInput(Criterion):
    """
    Gain in inclusion probability, i.e. the drop in local false discovery
    rate. Its category needs the whole covariate set and is filled in by
    ``selection.bfdr_categorize``.
    """

    criterion_id = CriterionId.BFDR_INPUT
    needs_spike = True

    def _compute(self, projected):
        return projected.spike_after.inclusion_prob - projected.spike_before.inclusion_prob

    def _classify(self, projected, value):
        return Category.UNRANKED
