import dataclasses
import logging
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from .config import RunConfig
from .criteria.base import CriterionId, CriterionResult
from .criteria.dispatch import evaluate_criteria
from .evidence import ProjectedEvidence, project_evidence
from .records import CovariateRecord
from .selection import BfdrCategorization, LfdrEntry, RankTable, bfdr_categorize, rank_covariates

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CovariateAssessment:
    record: CovariateRecord
    projected: ProjectedEvidence
    results: Dict[CriterionId, CriterionResult]

    @property
    def id(self):
        return self.record.id


@dataclass(frozen=True)
class Prioritization:
    """Assessments in input order, with the BFDR categorization and rankings."""

    assessments: Tuple[CovariateAssessment, ...]
    bfdr: BfdrCategorization
    ranking: RankTable
    config: RunConfig

    @property
    def ids(self):
        return [a.id for a in self.assessments]

    def __getitem__(self, covariate_id):
        for assessment in self.assessments:
            if assessment.id == covariate_id:
                return assessment
        raise KeyError(covariate_id)

    def __len__(self):
        return len(self.assessments)


def assess(record: CovariateRecord, config: RunConfig, sample_size=None, criteria=None):
    """Project one covariate through the planned study and evaluate criteria."""
    if record.evidence_source is not config.evidence_source:
        record = dataclasses.replace(record, evidence_source=config.evidence_source)
    plan = record.study_plan(sample_size=sample_size, n_ref=config.n_ref, gamma_sq=config.gamma_sq)
    projected = project_evidence(record.stage1, plan, pi0=config.criteria.pi0)
    return CovariateAssessment(record, projected, evaluate_criteria(projected, config.criteria, criteria))


def prioritize(
        records: Sequence[CovariateRecord],
        config: RunConfig = None,
        sample_size=None,
        criteria=None,
):
    """
    Score, categorize and rank covariates for a planned study.

    Parameters
    ----------
    records : sequence of CovariateRecord
        covariates with unique ids
    config : RunConfig, optional
        run parameters, by default the built-in defaults
    sample_size : float, optional
        size of the planned study; by default each covariate's new-study
        standard error is used as it is
    criteria : list of CriterionId, optional
        criteria to evaluate, by default all seven

    Returns
    -------
    Prioritization
        per-covariate results where the BFDR_INPUT category is the BFDR
        category, plus per-criterion rankings
    """
    config = RunConfig() if config is None else config
    assessments = [assess(r, config, sample_size, criteria) for r in records]
    categorization = bfdr_categorize(
        [LfdrEntry.from_state(a.id, a.projected.spike_before) for a in assessments],
        [LfdrEntry.from_state(a.id, a.projected.spike_after) for a in assessments],
        config.criteria.bfdr_level,
    )
    filled = []
    for a in assessments:
        results = dict(a.results)
        if CriterionId.BFDR_INPUT in results:
            results[CriterionId.BFDR_INPUT] = dataclasses.replace(
                results[CriterionId.BFDR_INPUT], category=categorization.categories[a.id]
            )
        filled.append(dataclasses.replace(a, results=results))
    ranking = rank_covariates({a.id: a.results for a in filled}, top_k=config.top_k)
    return Prioritization(tuple(filled), categorization, ranking, config)
