"""
Design-space sweeps: criterion values over the planned sample size,
BFDR categories over the prior inclusion probability, and the smallest
sample size reaching a target impact.
"""
import enum
import logging
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from tqdm.auto import tqdm

from .config import RunConfig
from .covprior import assess, prioritize
from .criteria.base import Category, CriterionId
from .errors import DomainError
from .records import CovariateRecord
from .stats import check_probability

logger = logging.getLogger(__name__)


class Axis(str, enum.Enum):
    SAMPLE_SIZE = "sample_size"
    PRIOR_PROB = "prior_prob"


def default_sample_size_grid(n_min=1000, n_max=200000, n_points=200):
    """Logarithmic grid of planned sample sizes."""
    return np.geomspace(n_min, n_max, n_points)


def default_prior_grid():
    """pi0 = 10^x for x = -16, -15.8, ..., -0.2."""
    return 10.0 ** (0.2 * np.arange(-80, 0))


@dataclass(frozen=True)
class SweepSpec:
    """
    Arguments:
        axis {Axis} -- [swept quantity]
        grid {Sequence[float]} -- [strictly increasing grid values]
        criterion_id {CriterionId} -- [criterion reported per grid point]
        n_ref {[float]} -- [reference sample size of the records' new-study
            SE; the run configuration's when None] (default: {None})
    """

    axis: Axis
    grid: Tuple[float, ...]
    criterion_id: CriterionId = CriterionId.DE
    n_ref: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "axis", Axis(self.axis))
        object.__setattr__(self, "criterion_id", CriterionId.parse(self.criterion_id))
        grid = np.asarray(self.grid, dtype=float)
        if grid.ndim != 1 or len(grid) == 0:
            raise DomainError("sweep grid must be a non-empty list of values")
        if not np.all(np.isfinite(grid)):
            raise DomainError("sweep grid values must be finite")
        if np.any(np.diff(grid) <= 0):
            raise DomainError("sweep grid must be strictly increasing")
        if self.axis is Axis.SAMPLE_SIZE:
            if grid[0] <= 0:
                raise DomainError("sample sizes must be > 0")
        else:
            for value in grid:
                check_probability("prior probability", value, open_interval=True)
        if self.n_ref is not None and not self.n_ref > 0:
            raise DomainError("n_ref must be > 0, got {!r}".format(self.n_ref))
        object.__setattr__(self, "grid", tuple(float(g) for g in grid))

    @classmethod
    def sample_size(cls, grid=None, criterion_id=CriterionId.DE, n_ref=None):
        grid = default_sample_size_grid() if grid is None else grid
        return cls(Axis.SAMPLE_SIZE, grid, criterion_id, n_ref)

    @classmethod
    def prior(cls, grid=None, criterion_id=CriterionId.DE):
        grid = default_prior_grid() if grid is None else grid
        return cls(Axis.PRIOR_PROB, grid, criterion_id)


@dataclass(frozen=True)
class SweepResult:
    """
    Criterion values and categories on a grid.

    ``values`` and ``categories`` are indexed [covariate, grid point];
    inapplicable values are NaN. Categories are the criterion's own on the
    sample-size axis and the BFDR categories on the prior axis.
    """

    spec: SweepSpec
    covariate_ids: Tuple[str, ...]
    values: np.ndarray
    categories: Tuple[Tuple[Category, ...], ...]

    @property
    def grid(self):
        return np.asarray(self.spec.grid)

    @property
    def shape(self):
        return self.values.shape

    def argmax(self):
        """
        Leading covariate per grid point; None where no value applies.
        Ties go to the smaller id.
        """
        order = np.argsort(np.asarray(self.covariate_ids), kind="stable")
        leaders = []
        for column in self.values.T:
            ordered = column[order]
            if np.all(np.isnan(ordered)):
                leaders.append(None)
                continue
            leaders.append(self.covariate_ids[order[int(np.nanargmax(ordered))]])
        return leaders

    def crossovers(self):
        """
        Grid points where the leader changes, as (grid value, previous
        leader, new leader); no interpolation between grid points.
        """
        leaders = self.argmax()
        changes = []
        for value, previous, current in zip(self.spec.grid[1:], leaders[:-1], leaders[1:]):
            if current != previous:
                changes.append((value, previous, current))
        return changes

    def series(self, covariate_id):
        return self.values[self.covariate_ids.index(covariate_id)]


def _sample_size_point(records, config, criterion_id, sample_size):
    results = [
        assess(r, config, sample_size=sample_size, criteria=[criterion_id]).results[criterion_id]
        for r in records
    ]
    return [r.value for r in results], [r.category for r in results]


def _prior_point(records, config, criterion_id, pi0):
    config = replace(config, criteria=replace(config.criteria, pi0=pi0))
    criteria = sorted({criterion_id, CriterionId.BFDR_INPUT}, key=list(CriterionId).index)
    outcome = prioritize(records, config, criteria=criteria)
    values = [a.results[criterion_id].value for a in outcome.assessments]
    categories = [outcome.bfdr.categories[a.id] for a in outcome.assessments]
    return values, categories


def _run_sweep(point_fn, records, config, spec, use_tqdm):
    if len(records) == 0:
        raise DomainError("sweep needs at least one record")
    logger.info(
        "sweeping %s over %d grid points for %d covariates (%s)",
        spec.axis.value,
        len(spec.grid),
        len(records),
        spec.criterion_id.value,
    )
    points = Parallel(n_jobs=config.n_jobs)(
        delayed(point_fn)(records, config, spec.criterion_id, x)
        for x in tqdm(spec.grid, disable=not use_tqdm)
    )
    # joblib returns results in submission order
    values = np.array([p[0] for p in points], dtype=float).T
    categories = tuple(zip(*[p[1] for p in points]))
    return SweepResult(spec, tuple(r.id for r in records), values, categories)


def sweep_sample_size(
        records: Sequence[CovariateRecord],
        config: RunConfig = None,
        spec: SweepSpec = None,
        use_tqdm=False,
) -> SweepResult:
    """
    Evaluate one criterion for every covariate as the planned sample size
    varies; at size n the planned study's variance is new_se^2 * n_ref / n.

    Parameters
    ----------
    records : sequence of CovariateRecord
    config : RunConfig, optional
        run parameters, by default the built-in defaults
    spec : SweepSpec, optional
        a sample-size sweep, by default DE over the 200-point grid
        1000 .. 200,000
    use_tqdm : bool, optional
        show a progress bar, by default False
    """
    config = RunConfig() if config is None else config
    spec = SweepSpec.sample_size() if spec is None else spec
    if spec.axis is not Axis.SAMPLE_SIZE:
        raise DomainError("sweep_sample_size needs a sample_size sweep spec")
    if spec.n_ref is not None:
        config = replace(config, n_ref=spec.n_ref)
    return _run_sweep(_sample_size_point, list(records), config, spec, use_tqdm)


def sweep_prior(
        records: Sequence[CovariateRecord],
        config: RunConfig = None,
        spec: SweepSpec = None,
        use_tqdm=False,
) -> SweepResult:
    """
    BFDR categories of every covariate as the prior inclusion probability
    varies, with the planned study held fixed. The criterion values of
    ``spec.criterion_id`` are kept alongside.
    """
    config = RunConfig() if config is None else config
    spec = SweepSpec.prior() if spec is None else spec
    if spec.axis is not Axis.PRIOR_PROB:
        raise DomainError("sweep_prior needs a prior_prob sweep spec")
    return _run_sweep(_prior_point, list(records), config, spec, use_tqdm)


@dataclass(frozen=True)
class MinSampleSize:
    covariate_id: str
    target: float
    sample_size: Optional[float]
    value: float
    method: str
    grid: Tuple[float, ...] = field(repr=False, default=())

    @property
    def attainable(self):
        return self.sample_size is not None


def _nondecreasing(values, rtol=1e-12):
    """Nondecreasing up to rounding noise relative to the largest value."""
    values = np.asarray(values, dtype=float)
    if len(values) < 2:
        return not np.any(np.isnan(values))
    if np.any(np.isnan(values)):
        return False
    slack = rtol * np.max(np.abs(values))
    return bool(np.all(np.diff(values) >= -slack))


def min_sample_size(
        record: CovariateRecord,
        config: RunConfig = None,
        criterion_id=CriterionId.DE,
        target=0.01,
        n_bounds=(1000, 200000),
        n_points=200,
) -> MinSampleSize:
    """
    Smallest grid sample size at which the criterion reaches ``target``.

    The grid is logarithmic over ``n_bounds``. The criterion is assumed
    nondecreasing in n and the grid is bisected, evaluating only the points
    visited. If the visited values contradict that order the whole grid is
    evaluated and scanned in order, with a warning. The ``method`` field
    says which was used.

    Returns:
        MinSampleSize -- [``sample_size`` is None when even the upper bound
            misses the target]
    """
    config = RunConfig() if config is None else config
    criterion_id = CriterionId.parse(criterion_id)
    if not np.isfinite(target) or target <= 0:
        raise DomainError("target must be > 0, got {!r}".format(target))
    n_min, n_max = n_bounds
    if not 0 < n_min < n_max:
        raise DomainError("n_bounds must satisfy 0 < low < high, got {!r}".format(n_bounds))
    if n_points < 2:
        raise DomainError("n_points must be >= 2")
    grid = default_sample_size_grid(n_min, n_max, n_points)
    evaluated = {}

    def value_at(i):
        if i not in evaluated:
            evaluated[i] = _sample_size_point([record], config, criterion_id, grid[i])[0][0]
        return evaluated[i]

    lo, hi = 0, len(grid) - 1
    if value_at(lo) >= target:
        index = lo
    elif not value_at(hi) >= target:
        index = len(grid)
    else:
        # value_at(lo) < target <= value_at(hi)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if value_at(mid) >= target:
                hi = mid
            else:
                lo = mid
        index = hi
    # the upper end always takes part in the order check
    value_at(len(grid) - 1)
    method = "bisection"

    if not _nondecreasing([evaluated[i] for i in sorted(evaluated)]):
        method = "scan"
        logger.warning(
            "%s for %s is not monotone over %s; scanning the grid",
            criterion_id.value,
            record.id,
            n_bounds,
        )
        values = np.array([value_at(i) for i in range(len(grid))], dtype=float)
        hits = np.flatnonzero(values >= target)
        index = int(hits[0]) if len(hits) else len(grid)
    logger.debug("%s: %d of %d grid points evaluated", record.id, len(evaluated), len(grid))

    if index >= len(grid):
        return MinSampleSize(record.id, target, None, float(evaluated[len(grid) - 1]), method, tuple(grid))
    return MinSampleSize(record.id, target, float(grid[index]), float(evaluated[index]), method, tuple(grid))
