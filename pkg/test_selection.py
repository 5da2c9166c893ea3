import numpy as np
import pytest

from covprior.criteria.base import Category, CriterionId, CriterionResult
from covprior.errors import DomainError
from covprior.selection import LfdrEntry, bfdr_categorize, bfdr_select, rank_covariates

BEFORE_SET = {"CRP", "APOC1", "HNF1A"}
AFTER_SET = {"CRP", "APOC1", "HNF1A", "LEPR", "IL6R", "IL1F10"}


def _entries(values):
    return [LfdrEntry(k, v) for k, v in values.items()]


def test_bfdr_select_trivial_cases():
    assert bfdr_select(_entries({"a": 0.0, "b": 0.0}), 0.05) == {"a", "b"}
    assert bfdr_select(_entries({"a": 0.05}), 0.05) == frozenset()
    assert bfdr_select(_entries({"a": 0.2}), 0.05) == frozenset()
    assert bfdr_select([], 0.05) == frozenset()


def test_bfdr_select_strict_boundary():
    # mean of the first two is exactly 0.05
    assert bfdr_select(_entries({"a": 0.0, "b": 0.1}), 0.05) == {"a"}


def test_bfdr_select_ties_break_by_id():
    assert bfdr_select(_entries({"b": 0.04, "a": 0.04, "c": 0.2}), 0.05) == {"a", "b"}
    assert bfdr_select(_entries({"b": 0.0, "a": 0.09}), 0.05) == {"a", "b"}
    assert bfdr_select(_entries({"b": 0.07, "a": 0.07, "c": 0.02}), 0.05) == {"c", "a"}


def test_bfdr_select_rejects_bad_input():
    with pytest.raises(DomainError):
        bfdr_select(_entries({"a": 0.1}), 0.0)
    with pytest.raises(DomainError):
        bfdr_select([LfdrEntry("a", 0.1), LfdrEntry("a", 0.2)], 0.05)
    with pytest.raises(DomainError):
        LfdrEntry("a", 1.2)


def test_bfdr_select_prefix_and_level_laws():
    rng = np.random.default_rng(21)
    for _ in range(50):
        n = int(rng.integers(1, 30))
        entries = _entries({"c{:02d}".format(i): float(x) for i, x in enumerate(rng.beta(0.3, 2.0, n))})
        ordered = sorted(entries, key=lambda e: (e.lfdr, e.covariate_id))
        levels = np.sort(rng.uniform(0.001, 0.5, 4))
        previous = frozenset()
        for level in levels:
            chosen = bfdr_select(entries, level)
            k = len(chosen)
            assert chosen == {e.covariate_id for e in ordered[:k]}
            if k:
                assert np.mean([e.lfdr for e in ordered[:k]]) < level
            if k < n:
                assert np.mean([e.lfdr for e in ordered[: k + 1]]) >= level
            assert previous <= chosen
            previous = chosen


def test_bfdr_sets_on_table(outcome):
    assert outcome.bfdr.before_selected == BEFORE_SET
    assert outcome.bfdr.after_selected == AFTER_SET
    assert not outcome.bfdr.anomalies


def test_bfdr_categories_on_table(outcome):
    for cov_id in outcome.ids:
        category = outcome.bfdr.categories[cov_id]
        if cov_id in BEFORE_SET:
            assert category is Category.I
        elif cov_id in AFTER_SET:
            assert category is Category.II
        else:
            assert category is Category.III
        assert outcome[cov_id].results[CriterionId.BFDR_INPUT].category is category
    assert outcome.bfdr.bits("CRP") == (1, 1)
    assert outcome.bfdr.bits("LEPR") == (1, 0)
    assert outcome.bfdr.bits("SALL1") == (0, 0)


def test_bfdr_categorize_flags_anomalies(caplog):
    before = _entries({"a": 0.01, "b": 0.3})
    after = _entries({"a": 0.9, "b": 0.3})
    result = bfdr_categorize(before, after, 0.05)
    assert result.anomalies == {"a"}
    assert result.categories["a"] is Category.UNRANKED
    assert result.categories["b"] is Category.III
    assert "selected before but not after" in caplog.text


def test_bfdr_categorize_needs_same_ids():
    with pytest.raises(DomainError):
        bfdr_categorize(_entries({"a": 0.1}), _entries({"b": 0.1}), 0.05)


def test_bfdr_category_ii_only_for_dropping_lfdr(outcome):
    for a in outcome.assessments:
        if outcome.bfdr.categories[a.id] is Category.II:
            assert a.projected.spike_after.lfdr <= a.projected.spike_before.lfdr


def test_rankings_on_table(outcome):
    ranking = outcome.ranking
    assert ranking.top_set == {"LEPR", "IL6R", "IL1F10"}
    assert set(ranking.top(CriterionId.CP)) == {"LEPR", "IL6R", "GCKR", "IL1F10"}
    for criterion_id in (CriterionId.DLOGP, CriterionId.LCL, CriterionId.KL):
        assert "SALL1" in ranking.top(criterion_id)
    for criterion_id in ranking.orders:
        assert not set(ranking.ids(criterion_id)) & {"CRP", "APOC1", "HNF1A"}
    assert "RORA" not in ranking.ids(CriterionId.DLOGP)


def _results(values):
    return {
        cov_id: {CriterionId.CP: CriterionResult(CriterionId.CP, v, True, Category.II)}
        for cov_id, v in values.items()
    }


def test_rank_covariates_invariances():
    rng = np.random.default_rng(8)
    values = {"c{}".format(i): float(x) for i, x in enumerate(rng.uniform(0, 1, 12))}
    base = rank_covariates(_results(values)).ids(CriterionId.CP)

    shuffled = dict(sorted(values.items(), key=lambda kv: rng.random()))
    assert rank_covariates(_results(shuffled)).ids(CriterionId.CP) == base

    transformed = {k: float(np.log(v) * 3 + 1) for k, v in values.items()}
    assert rank_covariates(_results(transformed)).ids(CriterionId.CP) == base


def test_rank_covariates_single_and_ties():
    assert rank_covariates(_results({"x": 0.5})).ids(CriterionId.CP) == ["x"]
    assert rank_covariates(_results({"b": 0.5, "a": 0.5})).ids(CriterionId.CP) == ["a", "b"]
    with pytest.raises(DomainError):
        rank_covariates(_results({"x": 0.5}), top_k=0)
