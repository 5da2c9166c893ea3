import math

import numpy as np
import pytest

from covprior.errors import DomainError
from covprior.evidence import (
    NormalSummary,
    SpikeSlabState,
    StudyPlan,
    init_spike_slab,
    project_evidence,
    project_plain,
    project_spike_slab,
    project_variance_fixed,
    project_variance_random,
)

LEPR = NormalSummary(0.045, 0.009 ** 2)
IL6R = NormalSummary(0.045, 0.010 ** 2)
SALL1 = NormalSummary(0.089, 0.028 ** 2)


def test_project_variance_fixed():
    assert project_variance_fixed(0.5, 0.5) == pytest.approx(0.25)
    assert project_variance_fixed(0.009 ** 2, 0.009 ** 2) == pytest.approx(4.05e-5)
    assert project_variance_fixed(0.3, 1e12) == pytest.approx(0.3)
    with pytest.raises(DomainError):
        project_variance_fixed(0.0, 1.0)


def test_project_variance_random():
    assert project_variance_random(0.04, 0.01, 0.01) == pytest.approx(0.04 * 0.02 / 0.06)
    assert project_variance_random(0.04, 0.01, 0.0) == pytest.approx(project_variance_fixed(0.04, 0.01))
    assert project_variance_random(0.04, 0.01, 1e12) == pytest.approx(0.04)
    with pytest.raises(DomainError):
        project_variance_random(0.04, 0.01, -1.0)


def test_project_variance_random_increasing_in_heterogeneity():
    values = [project_variance_random(0.04, 0.01, g) for g in np.linspace(0, 1, 50)]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert all(v < 0.04 for v in values)


def test_study_plan_from_sample_size():
    plan = StudyPlan.from_sample_size(8270, 16540, 0.009 ** 2)
    assert plan.variance == pytest.approx(2 * 0.009 ** 2)
    assert StudyPlan(within_variance=0.1, heterogeneity=0.05).effective_variance == pytest.approx(0.15)
    with pytest.raises(DomainError):
        StudyPlan()
    with pytest.raises(DomainError):
        StudyPlan.from_sample_size(0, 16540, 0.01)
    with pytest.raises(DomainError):
        StudyPlan(within_variance=1.0, heterogeneity=-1.0)


def test_project_plain():
    plan = StudyPlan(within_variance=LEPR.variance)
    projected = project_plain(LEPR, plan)
    assert projected.after.mean == LEPR.mean
    assert projected.after.variance == pytest.approx(4.05e-5)
    assert not projected.has_spike

    projected = project_plain(SALL1, StudyPlan(within_variance=SALL1.variance))
    assert projected.after.variance == pytest.approx(3.92e-4)

    wide = project_plain(LEPR, StudyPlan(within_variance=LEPR.variance, heterogeneity=1e9))
    assert wide.after.variance == pytest.approx(LEPR.variance, rel=1e-9)


def test_projection_chain_composes():
    rng = np.random.default_rng(3)
    for _ in range(20):
        s1, va, vb = rng.uniform(0.001, 1.0, size=3)
        start = NormalSummary(0.1, s1)
        first = project_plain(start, StudyPlan(within_variance=va))
        second = project_plain(first.after, StudyPlan(within_variance=vb))
        once = project_plain(start, StudyPlan(within_variance=1.0 / (1.0 / va + 1.0 / vb)))
        assert second.after.variance == pytest.approx(once.after.variance, rel=1e-12)


def test_init_spike_slab_table_values():
    assert init_spike_slab(1e-6, LEPR).inclusion_prob == pytest.approx(0.2115, abs=2e-4)
    assert init_spike_slab(1e-6, IL6R).inclusion_prob == pytest.approx(0.0244, abs=1e-4)


def test_init_spike_slab_matches_bayes_rule():
    pi0 = 1e-3
    observed = NormalSummary(0.02, 0.01 ** 2)
    slab = 1.0 / math.sqrt(2 * math.pi * observed.variance)
    null = math.exp(-observed.mean ** 2 / (2 * observed.variance)) * slab
    expected = pi0 * slab / (pi0 * slab + (1 - pi0) * null)
    assert init_spike_slab(pi0, observed).inclusion_prob == pytest.approx(expected, rel=1e-12)


def test_init_spike_slab_zero_estimate_keeps_prior():
    state = init_spike_slab(1e-6, NormalSummary(0.0, 0.01))
    assert state.inclusion_prob == pytest.approx(1e-6, rel=1e-12)
    with pytest.raises(DomainError):
        init_spike_slab(0.0, LEPR)


def test_project_spike_slab_lepr():
    state = init_spike_slab(1e-6, LEPR)
    projected = project_spike_slab(state, StudyPlan(within_variance=LEPR.variance))
    assert projected.planned_observation.mean == LEPR.mean
    assert projected.after.mean == pytest.approx(LEPR.mean)
    assert projected.after.variance == pytest.approx(LEPR.variance / 2)
    assert projected.spike_after.inclusion_prob == pytest.approx(0.99999, abs=1e-4)


def test_project_spike_slab_uninformative_study():
    state = init_spike_slab(1e-6, LEPR)
    projected = project_spike_slab(state, StudyPlan(within_variance=1e14))
    assert projected.spike_after.inclusion_prob == pytest.approx(state.inclusion_prob, rel=1e-9)
    assert projected.after.variance == pytest.approx(LEPR.variance, rel=1e-9)


def test_project_spike_slab_spike_is_absorbing():
    state = SpikeSlabState(0.0, LEPR)
    projected = project_spike_slab(state, StudyPlan(within_variance=LEPR.variance))
    assert projected.spike_after.inclusion_prob == 0.0


def test_inclusion_probability_never_decreases():
    rng = np.random.default_rng(5)
    for _ in range(50):
        summary = NormalSummary(float(rng.normal(0, 0.05)), float(rng.uniform(1e-5, 1e-3)))
        pi0 = float(10 ** rng.uniform(-12, -0.5))
        projected = project_evidence(summary, StudyPlan(within_variance=float(rng.uniform(1e-5, 1e-2))), pi0)
        assert projected.spike_after.log_odds >= projected.spike_before.log_odds - 1e-12


def test_log_odds_stay_finite_in_the_tail():
    crp = NormalSummary(0.086, 0.010 ** 2)
    projected = project_evidence(crp, StudyPlan(within_variance=crp.variance), pi0=1e-6)
    assert math.isfinite(projected.spike_after.log_odds)
    assert projected.spike_after.lfdr > 0.0
    assert projected.spike_after.lfdr < 1e-10


def test_spike_state_validation():
    with pytest.raises(DomainError):
        SpikeSlabState(1.5, LEPR)
    state = SpikeSlabState.from_log_odds(0.0, LEPR)
    assert state.inclusion_prob == pytest.approx(0.5)
    assert state.lfdr == pytest.approx(0.5)
