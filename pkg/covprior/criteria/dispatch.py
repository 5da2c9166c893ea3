"""
Lookup of criteria by id, and evaluation of every criterion for one
covariate.
"""
from ..errors import DomainError
from ..evidence import NormalSummary, ProjectedEvidence
from .base import Category, CriterionConfig, CriterionId
from .bayesian import BayesFactorChange, BfdrInput, ExpectationChange
from .frequentist import (
    ConditionalPower,
    LowerLimitChange,
    PValueChange,
    realized_lcl_change,
    realized_p_value_change,
    realized_rejection,
)
from .information import KullbackLeiblerImpact, realized_kl_impact

CRITERIA = {
    CriterionId.CP: ConditionalPower,
    CriterionId.DLOGP: PValueChange,
    CriterionId.LCL: LowerLimitChange,
    CriterionId.KL: KullbackLeiblerImpact,
    CriterionId.DE: ExpectationChange,
    CriterionId.BF: BayesFactorChange,
    CriterionId.BFDR_INPUT: BfdrInput,
}

# criteria that need the spike-and-slab state
SPIKE_CRITERIA = frozenset(cid for cid, cls in CRITERIA.items() if cls.needs_spike)


def get_criterion(criterion_id, cfg: CriterionConfig):
    return CRITERIA[CriterionId.parse(criterion_id)](cfg)


def criterion_value(criterion_id, projected: ProjectedEvidence, cfg: CriterionConfig):
    """Value of one criterion, or None when it does not apply."""
    return get_criterion(criterion_id, cfg).value(projected)


def classify(criterion_id, projected: ProjectedEvidence, cfg: CriterionConfig) -> Category:
    """
    Category of one covariate under one criterion's rule.

    Raises:
        DomainError -- [unknown criterion id, or spike state missing for a
            criterion that needs it]
    """
    return get_criterion(criterion_id, cfg).classify(projected)


def evaluate_criteria(projected: ProjectedEvidence, cfg: CriterionConfig, criteria=None):
    """
    Evaluate several criteria on one projected covariate.

    Arguments:
        projected {ProjectedEvidence} -- [projection of one covariate]
        cfg {CriterionConfig} -- [criterion parameters]

    Keyword Arguments:
        criteria {[list]} -- [criterion ids to evaluate; by default every
            criterion the projection supports] (default: {None})

    Returns:
        dict -- [CriterionId -> CriterionResult, in CriterionId order]
    """
    if criteria is None:
        criteria = [
            cid for cid in CriterionId if projected.has_spike or cid not in SPIKE_CRITERIA
        ]
    ids = [CriterionId.parse(cid) for cid in criteria]
    return {cid: CRITERIA[cid](cfg).evaluate(projected) for cid in ids}


def realized_impact(criterion_id, before: NormalSummary, after: NormalSummary, cfg: CriterionConfig):
    """
    Impact a study actually had once its result is in.

    CP becomes 1.0 or 0.0 (rejection of beta = 0 at alpha), DLOGP the drop
    in log p-value (None if it went up), LCL the change in the clipped lower
    limit, KL the divergence-based impact.
    """
    criterion_id = CriterionId.parse(criterion_id)
    if criterion_id is CriterionId.CP:
        return realized_rejection(after, cfg)
    if criterion_id is CriterionId.DLOGP:
        return realized_p_value_change(before, after, cfg)
    if criterion_id is CriterionId.LCL:
        return realized_lcl_change(before, after, cfg)
    if criterion_id is CriterionId.KL:
        return realized_kl_impact(before, after, cfg)
    raise DomainError("no realized form for criterion {}".format(criterion_id.value))
