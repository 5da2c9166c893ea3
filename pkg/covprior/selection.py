"""
Bayesian FDR set selection and per-criterion ranking of covariates.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Sequence, Tuple

import numpy as np

from .criteria.base import Category, CriterionId, CriterionResult
from .errors import DomainError
from .evidence import SpikeSlabState
from .stats import check_probability

logger = logging.getLogger(__name__)

# value columns whose top entries form RankTable.top_set
TOP_SET_CRITERIA = (
    CriterionId.CP,
    CriterionId.DLOGP,
    CriterionId.LCL,
    CriterionId.KL,
    CriterionId.DE,
)


@dataclass(frozen=True)
class LfdrEntry:
    covariate_id: str
    lfdr: float

    def __post_init__(self):
        check_probability("lfdr", self.lfdr)

    @classmethod
    def from_state(cls, covariate_id, state: SpikeSlabState):
        return cls(covariate_id, state.lfdr)


def _check_unique(entries):
    ids = [e.covariate_id for e in entries]
    if len(set(ids)) != len(ids):
        raise DomainError("duplicate covariate ids among lfdr entries")
    return ids


def bfdr_select(entries: Sequence[LfdrEntry], level) -> FrozenSet[str]:
    """
    Bayesian FDR selection.

    Covariates are ordered by ascending lfdr (ties by id) and the longest
    prefix whose mean lfdr stays strictly below ``level`` is selected.

    Arguments:
        entries {Sequence[LfdrEntry]} -- [one entry per covariate]
        level {float} -- [FDR level in (0, 1)]

    Returns:
        frozenset -- [selected covariate ids]
    """
    check_probability("level", level, open_interval=True)
    _check_unique(entries)
    if len(entries) == 0:
        return frozenset()
    ordered = sorted(entries, key=lambda e: (e.lfdr, e.covariate_id))
    lfdr = np.array([e.lfdr for e in ordered], dtype=float)
    running_mean = np.cumsum(lfdr) / np.arange(1, len(lfdr) + 1)
    failing = np.flatnonzero(running_mean >= level)
    # stop at the first failing prefix so the result is always a prefix
    n_selected = len(ordered) if len(failing) == 0 else int(failing[0])
    return frozenset(e.covariate_id for e in ordered[:n_selected])


@dataclass(frozen=True)
class BfdrCategorization:
    categories: Dict[str, Category]
    before_selected: FrozenSet[str]
    after_selected: FrozenSet[str]
    anomalies: FrozenSet[str] = field(default_factory=frozenset)

    def bits(self, covariate_id):
        """(after, before) selection flags, the "1-0" pair of reports."""
        return (
            int(covariate_id in self.after_selected),
            int(covariate_id in self.before_selected),
        )


def bfdr_categorize(before: Sequence[LfdrEntry], after: Sequence[LfdrEntry], level):
    """
    Categorize covariates by BFDR selection before and after the planned
    study: selected in both is I, after only is II, neither is III.

    A covariate selected before but not after cannot happen under the
    projection used here. It is reported in ``anomalies``, logged, and left
    UNRANKED.

    Raises:
        DomainError -- [if the two entry lists cover different covariates]
    """
    before_ids = _check_unique(before)
    after_ids = _check_unique(after)
    if set(before_ids) != set(after_ids):
        raise DomainError("before and after lfdr entries cover different covariates")
    before_selected = bfdr_select(before, level)
    after_selected = bfdr_select(after, level)
    logger.info(
        "BFDR at level %g: %d selected before, %d after",
        level,
        len(before_selected),
        len(after_selected),
    )
    categories = {}
    anomalies = set()
    for cov_id in sorted(before_ids):
        in_before = cov_id in before_selected
        in_after = cov_id in after_selected
        if in_before and in_after:
            categories[cov_id] = Category.I
        elif in_after:
            categories[cov_id] = Category.II
        elif in_before:
            anomalies.add(cov_id)
            categories[cov_id] = Category.UNRANKED
        else:
            categories[cov_id] = Category.III
    if anomalies:
        logger.warning(
            "covariates selected before but not after the planned study: %s",
            ", ".join(sorted(anomalies)),
        )
    return BfdrCategorization(categories, before_selected, after_selected, frozenset(anomalies))


@dataclass(frozen=True)
class RankTable:
    """
    Per-criterion prioritization orders.

    ``orders`` maps each criterion to ``(covariate_id, value)`` pairs in
    decreasing value; category I and inapplicable covariates are left out.
    ``top_set`` holds the covariates found in the first ``top_k`` entries of
    every value column.
    """

    orders: Dict[CriterionId, Tuple[Tuple[str, float], ...]]
    top_k: int
    top_set: FrozenSet[str]

    def ids(self, criterion_id):
        return [cov_id for cov_id, _ in self.orders[CriterionId.parse(criterion_id)]]

    def top(self, criterion_id, k=None):
        return self.ids(criterion_id)[: self.top_k if k is None else k]


def rank_covariates(results: Mapping[str, Mapping[CriterionId, CriterionResult]], top_k=4):
    """
    Rank covariates under each criterion.

    Arguments:
        results {Mapping} -- [covariate id -> {CriterionId: CriterionResult}];
            every covariate must carry the same criteria

    Keyword Arguments:
        top_k {int} -- [size of the per-criterion head used for the
            aggregate top set] (default: {4})

    Returns:
        RankTable
    """
    if top_k < 1:
        raise DomainError("top_k must be >= 1, got {!r}".format(top_k))
    criteria = None
    for cov_id, by_criterion in results.items():
        keys = set(by_criterion)
        if criteria is None:
            criteria = keys
        elif keys != criteria:
            raise DomainError("covariate {} carries a different set of criteria".format(cov_id))
    criteria = sorted(criteria or (), key=list(CriterionId).index)

    orders = {}
    for cid in criteria:
        eligible = [
            (cov_id, by_criterion[cid].value)
            for cov_id, by_criterion in results.items()
            if by_criterion[cid].applicable and by_criterion[cid].category is not Category.I
        ]
        orders[cid] = tuple(sorted(eligible, key=lambda item: (-item[1], item[0])))

    heads = [
        {cov_id for cov_id, _ in orders[cid][:top_k]} for cid in TOP_SET_CRITERIA if cid in orders
    ]
    top_set = frozenset(set.intersection(*heads)) if heads else frozenset()
    return RankTable(orders, top_k, top_set)
