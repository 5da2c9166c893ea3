from .base import Category, Criterion, CriterionConfig, CriterionId, CriterionResult
from .bayesian import BayesFactors, bayes_factors, expectation_change
from .dispatch import classify, criterion_value, evaluate_criteria, get_criterion, realized_impact
from .frequentist import conditional_power, lcl_change, lower_limit, p_value_change
from .information import expected_kl_plain, kl_expected_impact, kl_normal
