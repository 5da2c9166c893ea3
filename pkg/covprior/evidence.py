"""
Evidence states for one covariate and their projection through a planned
study, for the plain normal model and for the spike-and-slab model.
"""
import math
from dataclasses import dataclass, field
from typing import Optional

from scipy import special

from .errors import DomainError
from .stats import (
    WeightedEstimate,
    check_finite,
    check_positive,
    check_probability,
    normal_logpdf,
)


class NormalSummary(WeightedEstimate):
    """Normal evidence state N(mean, variance) for one covariate's effect."""


@dataclass(frozen=True)
class SpikeSlabState:
    """
    Inclusion probability plus the slab distribution of a nonzero effect.

    ``log_odds`` is the working representation; ``inclusion_prob`` is kept
    in step with it. Pass either one: if ``log_odds`` is given it wins.
    """

    inclusion_prob: float
    slab: NormalSummary
    log_odds: float = field(default=None)

    def __post_init__(self):
        if self.log_odds is None:
            check_probability("inclusion_prob", self.inclusion_prob)
            object.__setattr__(self, "log_odds", float(special.logit(self.inclusion_prob)))
        else:
            if math.isnan(self.log_odds):
                raise DomainError("log_odds must not be NaN")
            object.__setattr__(self, "inclusion_prob", float(special.expit(self.log_odds)))

    @classmethod
    def from_log_odds(cls, log_odds, slab):
        return cls(inclusion_prob=float(special.expit(log_odds)), slab=slab, log_odds=log_odds)

    @property
    def lfdr(self):
        """Local false discovery rate, P(effect is zero)."""
        return float(special.expit(-self.log_odds))


@dataclass(frozen=True)
class StudyPlan:
    """
    A planned new study.

    Either ``within_variance`` is given directly, or ``sample_size`` together
    with a reference pair (``n_ref``, ``v_ref``) so that
    v = v_ref * n_ref / sample_size. ``heterogeneity`` is the between-study
    variance gamma^2; 0 means a fixed-effects analysis.
    """

    within_variance: Optional[float] = None
    sample_size: Optional[float] = None
    n_ref: Optional[float] = None
    v_ref: Optional[float] = None
    heterogeneity: float = 0.0

    def __post_init__(self):
        check_finite("heterogeneity", self.heterogeneity)
        if self.heterogeneity < 0:
            raise DomainError("heterogeneity must be >= 0, got {!r}".format(self.heterogeneity))
        if self.within_variance is not None:
            check_positive("within_variance", self.within_variance)
            return
        if self.sample_size is None or self.n_ref is None or self.v_ref is None:
            raise DomainError(
                "StudyPlan needs within_variance or sample_size with n_ref and v_ref"
            )
        check_positive("sample_size", self.sample_size)
        check_positive("n_ref", self.n_ref)
        check_positive("v_ref", self.v_ref)

    @classmethod
    def from_sample_size(cls, sample_size, n_ref, v_ref, heterogeneity=0.0):
        return cls(sample_size=sample_size, n_ref=n_ref, v_ref=v_ref, heterogeneity=heterogeneity)

    @property
    def variance(self):
        """Resolved within-study variance v of the planned study."""
        if self.within_variance is not None:
            return self.within_variance
        return self.v_ref * self.n_ref / self.sample_size

    @property
    def effective_variance(self):
        """Variance of the planned study's estimate around beta, v + gamma^2."""
        return self.variance + self.heterogeneity


@dataclass(frozen=True)
class ProjectedEvidence:
    before: NormalSummary
    after: NormalSummary
    planned_observation: NormalSummary
    spike_before: Optional[SpikeSlabState] = None
    spike_after: Optional[SpikeSlabState] = None

    def __post_init__(self):
        # equality only where the planned study is too small to register in floating point
        if self.after.variance > self.before.variance:
            raise DomainError("projected variance must not exceed the current variance")

    @property
    def has_spike(self):
        return self.spike_before is not None and self.spike_after is not None


def project_variance_fixed(sigma1_sq, v):
    """Posterior variance after adding a study of variance v (precisions add)."""
    check_positive("sigma1_sq", sigma1_sq)
    check_positive("v", v)
    # never above sigma1_sq, also when v is too large to register
    return min(1.0 / (1.0 / sigma1_sq + 1.0 / v), sigma1_sq)


def project_variance_random(sigma1_sq, v, gamma_sq):
    """
    Variance after a new study under a random-effects meta-analysis.

    Arguments:
        sigma1_sq {float} -- [current variance]
        v {float} -- [within-study variance of the new study]
        gamma_sq {float} -- [between-study variance, >= 0]

    Returns:
        float -- [sigma1_sq * (v + gamma_sq) / (v + gamma_sq + sigma1_sq)]
    """
    check_positive("sigma1_sq", sigma1_sq)
    check_positive("v", v)
    check_finite("gamma_sq", gamma_sq)
    if gamma_sq < 0:
        raise DomainError("gamma_sq must be >= 0, got {!r}".format(gamma_sq))
    total = v + gamma_sq
    return min(sigma1_sq * total / (total + sigma1_sq), sigma1_sq)


def init_spike_slab(pi0, observed: NormalSummary) -> SpikeSlabState:
    """
    Update the prior inclusion probability with the current estimate.

    The slab is taken flat before the data, so its marginal likelihood is
    the plug-in density at the estimate itself; the spike likelihood is the
    density of the estimate around zero. The update runs on the log-odds
    scale.

    Arguments:
        pi0 {float} -- [prior inclusion probability in (0, 1)]
        observed {NormalSummary} -- [current estimate and its variance]

    Returns:
        SpikeSlabState -- [inclusion probability pi_1 with slab = observed]
    """
    check_probability("pi0", pi0, open_interval=True)
    log_slab = normal_logpdf(observed.mean, observed.mean, observed.variance)
    log_null = normal_logpdf(observed.mean, 0.0, observed.variance)
    log_odds = float(special.logit(pi0)) + (log_slab - log_null)
    return SpikeSlabState.from_log_odds(log_odds, _as_summary(observed))


def project_spike_slab(state: SpikeSlabState, plan: StudyPlan) -> ProjectedEvidence:
    """
    Expected spike-and-slab state after the planned study.

    The planned study is expected to reproduce the current slab mean. The
    inclusion probability is updated with the slab density at the updated
    mean against the null density at zero, both with the planned study's
    variance.
    """
    v = plan.effective_variance
    slab = state.slab
    observed = NormalSummary(slab.mean, v)
    # pooling an observation at the slab mean leaves the mean where it is
    after = NormalSummary(slab.mean, project_variance_fixed(slab.variance, v))
    log_slab = normal_logpdf(observed.mean, after.mean, v)
    log_null = normal_logpdf(observed.mean, 0.0, v)
    log_odds_after = state.log_odds + (log_slab - log_null)
    return ProjectedEvidence(
        before=slab,
        after=after,
        planned_observation=observed,
        spike_before=state,
        spike_after=SpikeSlabState.from_log_odds(log_odds_after, after),
    )


def project_plain(summary: NormalSummary, plan: StudyPlan) -> ProjectedEvidence:
    """Expected normal state after the planned study; the mean is carried over."""
    summary = _as_summary(summary)
    after_variance = project_variance_random(summary.variance, plan.variance, plan.heterogeneity)
    return ProjectedEvidence(
        before=summary,
        after=NormalSummary(summary.mean, after_variance),
        planned_observation=NormalSummary(summary.mean, plan.effective_variance),
    )


def project_evidence(summary: NormalSummary, plan: StudyPlan, pi0=None) -> ProjectedEvidence:
    """
    Plain projection, with the spike-and-slab fields filled in when a prior
    inclusion probability is given.
    """
    plain = project_plain(summary, plan)
    if pi0 is None:
        return plain
    spike = project_spike_slab(init_spike_slab(pi0, plain.before), plan)
    return ProjectedEvidence(
        before=plain.before,
        after=plain.after,
        planned_observation=plain.planned_observation,
        spike_before=spike.spike_before,
        spike_after=spike.spike_after,
    )


def _as_summary(estimate):
    if isinstance(estimate, NormalSummary):
        return estimate
    return NormalSummary(estimate.mean, estimate.variance)
