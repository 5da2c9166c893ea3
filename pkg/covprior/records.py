"""
Covariate summary records: reading and writing the input CSV.
"""
import enum
import io
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import pandas as pd

from .errors import CovpriorError, InputError
from .evidence import NormalSummary, StudyPlan
from .stats import WeightedEstimate, check_finite, check_positive, pool_fixed

logger = logging.getLogger(__name__)

DEFAULT_DATA = Path(__file__).parent / "data" / "crp_gwas.csv"

REQUIRED_COLUMNS = (
    "id",
    "label",
    "sublabel",
    "discovery_beta",
    "discovery_se",
    "replication_beta",
    "replication_se",
)
_NUMERIC_COLUMNS = ("discovery_beta", "discovery_se", "replication_beta", "replication_se")


class EvidenceSource(str, enum.Enum):
    """Which panels form the current evidence state."""

    REPLICATION_ONLY = "replication_only"
    POOLED = "pooled"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise InputError(
                "evidence_source must be one of {}, got {!r}".format(
                    ", ".join(s.value for s in cls), value
                )
            ) from None


@dataclass(frozen=True)
class CovariateRecord:
    """
    One covariate's summary statistics.

    ``new_se`` is the standard error the planned study is expected to have;
    when absent the planned study is taken to be the size of the
    replication panel.
    """

    id: str
    label: str
    sublabel: str
    discovery_beta: float
    discovery_se: float
    replication_beta: float
    replication_se: float
    new_se: Optional[float] = None
    evidence_source: EvidenceSource = EvidenceSource.REPLICATION_ONLY

    def __post_init__(self):
        if not str(self.id).strip():
            raise InputError("covariate id must not be empty")
        check_finite("discovery_beta", self.discovery_beta)
        check_finite("replication_beta", self.replication_beta)
        check_positive("discovery_se", self.discovery_se)
        check_positive("replication_se", self.replication_se)
        if self.new_se is not None:
            check_positive("new_se", self.new_se)
        object.__setattr__(self, "evidence_source", EvidenceSource.parse(self.evidence_source))

    @property
    def stage1(self) -> NormalSummary:
        """Current evidence state under the record's evidence source."""
        replication = WeightedEstimate(self.replication_beta, self.replication_se ** 2)
        if self.evidence_source is EvidenceSource.REPLICATION_ONLY:
            return NormalSummary(replication.mean, replication.variance)
        discovery = WeightedEstimate(self.discovery_beta, self.discovery_se ** 2)
        pooled = pool_fixed([discovery, replication])
        return NormalSummary(pooled.mean, pooled.variance)

    @property
    def stage1_mean(self):
        return self.stage1.mean

    @property
    def stage1_se(self):
        return self.stage1.sd

    @property
    def new_study_se(self):
        return self.replication_se if self.new_se is None else self.new_se

    def study_plan(self, sample_size=None, n_ref=16540, gamma_sq=0.0) -> StudyPlan:
        """
        Plan of the new study for this covariate.

        Without ``sample_size`` the planned study has variance new_study_se^2;
        with it, that variance is rescaled from ``n_ref`` to ``sample_size``.
        """
        v_ref = self.new_study_se ** 2
        if sample_size is None:
            return StudyPlan(within_variance=v_ref, heterogeneity=gamma_sq)
        return StudyPlan.from_sample_size(sample_size, n_ref, v_ref, heterogeneity=gamma_sq)


def _parse_float(text, column, path, line):
    try:
        value = float(text)
    except ValueError:
        raise InputError(
            "column {!r}: {!r} is not a number".format(column, text), path, line
        ) from None
    if not math.isfinite(value):
        raise InputError("column {!r}: {!r} is not finite".format(column, text), path, line)
    return value


def _read_frame(source, path):
    try:
        return pd.read_csv(
            source,
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise InputError("no records", path) from None
    except pd.errors.ParserError as err:
        raise InputError("malformed CSV: {}".format(err), path) from None
    except UnicodeDecodeError as err:
        raise InputError("not UTF-8 text: {}".format(err.reason), path) from None
    except OSError as err:
        raise InputError("cannot read: {}".format(err.strerror or err), path) from None


def records_from_frame(frame, evidence_source=EvidenceSource.REPLICATION_ONLY, path=None):
    """
    Validate a data frame of string cells into records.

    Line numbers in errors count the header as line 1.
    """
    evidence_source = EvidenceSource.parse(evidence_source)
    frame = frame.rename(columns=lambda c: str(c).strip())
    missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
    if missing:
        raise InputError("missing required columns: {}".format(", ".join(missing)), path, 1)
    if len(frame) == 0:
        raise InputError("no records", path)
    has_new_se = "new_se" in frame.columns

    records = []
    seen = {}
    for offset, cells in enumerate(frame.to_dict("records")):
        line = offset + 2
        cov_id = str(cells["id"]).strip()
        if cov_id in seen:
            raise InputError(
                "duplicate id {!r} (first seen on line {})".format(cov_id, seen[cov_id]), path, line
            )
        seen[cov_id] = line
        values = {c: _parse_float(str(cells[c]).strip(), c, path, line) for c in _NUMERIC_COLUMNS}
        new_se = None
        if has_new_se and str(cells["new_se"]).strip():
            new_se = _parse_float(str(cells["new_se"]).strip(), "new_se", path, line)
        try:
            records.append(
                CovariateRecord(
                    id=cov_id,
                    label=str(cells["label"]).strip(),
                    sublabel=str(cells["sublabel"]).strip(),
                    new_se=new_se,
                    evidence_source=evidence_source,
                    **values
                )
            )
        except InputError as err:
            raise InputError(err.message, path, line) from None
        except CovpriorError as err:
            raise InputError(str(err), path, line) from None
    return records


def load_records(path=None, evidence_source=EvidenceSource.REPLICATION_ONLY) -> List[CovariateRecord]:
    """
    Read covariate records from a CSV file.

    Arguments:
        path {[str, Path]} -- [CSV with header
            id,label,sublabel,discovery_beta,discovery_se,replication_beta,replication_se[,new_se];
            the bundled CRP data when None] (default: {None})
        evidence_source {EvidenceSource} -- [replication_only or pooled]

    Raises:
        InputError -- [missing columns, non-numeric cells, duplicate ids or
            an empty file; carries the path and line]

    Returns:
        list -- [records in file order]
    """
    path = DEFAULT_DATA if path is None else Path(path)
    if not path.is_file():
        raise InputError("no such file", path)
    records = records_from_frame(_read_frame(path, path), evidence_source, path)
    logger.info(
        "loaded %d records from %s (evidence source %s)",
        len(records),
        path,
        EvidenceSource.parse(evidence_source).value,
    )
    return records


def records_to_frame(records) -> pd.DataFrame:
    rows = []
    for record in records:
        row = {c: getattr(record, c) for c in REQUIRED_COLUMNS}
        row["new_se"] = "" if record.new_se is None else repr(record.new_se)
        for c in _NUMERIC_COLUMNS:
            row[c] = repr(float(row[c]))
        rows.append(row)
    columns = list(REQUIRED_COLUMNS)
    if any(r.new_se is not None for r in records):
        columns.append("new_se")
    return pd.DataFrame(rows, columns=columns)


def serialize_records(records, path=None):
    """
    Write records in the input CSV layout; floats keep their shortest exact
    repr so reading the file back gives identical records.

    Returns the CSV text when ``path`` is None.
    """
    text = records_to_frame(records).to_csv(index=False, lineterminator="\n")
    if path is None:
        return text
    Path(path).write_text(text, encoding="utf-8")
    return None


def parse_records(text, evidence_source=EvidenceSource.REPLICATION_ONLY):
    """``load_records`` for CSV text already in memory."""
    return records_from_frame(_read_frame(io.StringIO(text), None), evidence_source)
