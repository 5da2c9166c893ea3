import enum
import math
from dataclasses import dataclass
from typing import Optional

from ..errors import DomainError
from ..evidence import ProjectedEvidence
from ..stats import check_finite, check_positive, check_probability, two_sided_critical_value


class CriterionId(str, enum.Enum):
    CP = "CP"
    DLOGP = "DLOGP"
    LCL = "LCL"
    KL = "KL"
    DE = "DE"
    BF = "BF"
    BFDR_INPUT = "BFDR_INPUT"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise DomainError(
                "unknown criterion {!r}; expected one of {}".format(
                    value, ", ".join(c.value for c in cls)
                )
            ) from None


class Category(str, enum.Enum):
    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    UNRANKED = "UNRANKED"


@dataclass(frozen=True)
class CriterionConfig:
    """
    User-set parameters shared by the criteria.

    Arguments:
        delta {float} -- [smallest clinically significant effect, outcome units]
        alpha {float} -- [two-sided significance level]
        sigma_init_sq {float} -- [variance of the initial N(0, .) used by the KL criterion]
        omega {float} -- [variance floor added by the KL criterion]
        pi0 {float} -- [prior inclusion probability]
        bf_limit {float} -- [Bayes factor limit of decisive support]
        bfdr_level {float} -- [Bayesian FDR level for set selection]
        cp_threshold {float} -- [conditional power splitting category II from III]
        p_limit {[float]} -- [p-value limit for category I under the p-value
            criterion; None means alpha]
    """

    delta: float = 0.03
    alpha: float = 6.9e-4
    sigma_init_sq: float = 100.0
    omega: float = 1e-4
    pi0: float = 1e-6
    bf_limit: float = 1e6
    bfdr_level: float = 0.05
    cp_threshold: float = 0.8
    p_limit: Optional[float] = None

    def __post_init__(self):
        check_finite("delta", self.delta)
        if self.delta < 0:
            raise DomainError("delta must be >= 0, got {!r}".format(self.delta))
        check_probability("alpha", self.alpha, open_interval=True)
        check_positive("sigma_init_sq", self.sigma_init_sq)
        check_positive("omega", self.omega)
        check_probability("pi0", self.pi0, open_interval=True)
        check_finite("bf_limit", self.bf_limit)
        if self.bf_limit <= 1:
            raise DomainError("bf_limit must be > 1, got {!r}".format(self.bf_limit))
        check_probability("bfdr_level", self.bfdr_level, open_interval=True)
        check_probability("cp_threshold", self.cp_threshold)
        if self.p_limit is not None:
            check_probability("p_limit", self.p_limit, open_interval=True)

    @property
    def critical_value(self):
        return two_sided_critical_value(self.alpha)

    @property
    def category_i_p_limit(self):
        return self.alpha if self.p_limit is None else self.p_limit


@dataclass(frozen=True)
class CriterionResult:
    criterion_id: CriterionId
    value: float
    applicable: bool
    category: Category

    def __post_init__(self):
        if not self.applicable and not math.isnan(self.value):
            raise DomainError("an inapplicable criterion result carries a NaN value")


class Criterion:
    """
    Base class of the expected-impact criteria.

    Subclasses set ``criterion_id`` and override ``_compute`` (value or None
    when not applicable) and ``_classify``.
    """

    criterion_id: CriterionId = None
    needs_spike = False

    def __init__(self, cfg: CriterionConfig):
        self.cfg = cfg

    def _compute(self, projected: ProjectedEvidence):
        """Criterion value for one covariate"""
        raise NotImplementedError

    def _classify(self, projected: ProjectedEvidence, value):
        """Category implied by the criterion's own rule"""
        raise NotImplementedError

    def _check(self, projected):
        if self.needs_spike and not projected.has_spike:
            raise DomainError(
                "criterion {} needs the spike-and-slab state".format(self.criterion_id.value)
            )

    def value(self, projected: ProjectedEvidence):
        self._check(projected)
        return self._compute(projected)

    def classify(self, projected: ProjectedEvidence):
        return self._classify(projected, self.value(projected))

    def evaluate(self, projected: ProjectedEvidence) -> CriterionResult:
        value = self.value(projected)
        category = self._classify(projected, value)
        if value is None:
            return CriterionResult(self.criterion_id, math.nan, False, category)
        return CriterionResult(self.criterion_id, float(value), True, category)
