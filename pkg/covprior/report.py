"""
Rendering of results as tsv, csv or markdown tables.

Numbers are rounded for display only: CP to 2 decimals, change of log
p-value to 1, LCL change to 3, KL times 1000 to an integer, change of
expectation to 3. A trailing ``*`` marks category I under the column's
criterion and ``--`` an inapplicable value.
"""
import math

import pandas as pd

from . import __version__
from .criteria.base import Category, CriterionId
from .criteria.bayesian import bayes_factors
from .errors import DomainError

FORMATS = ("tsv", "csv", "md")

_VALUE_COLUMNS = (
    (CriterionId.CP, "CP", "{:.2f}", 1.0),
    (CriterionId.DLOGP, "dlogp", "{:.1f}", 1.0),
    (CriterionId.LCL, "LCL", "{:.3f}", 1.0),
    (CriterionId.KL, "KLx1000", "{:.0f}", 1000.0),
    (CriterionId.DE, "dE", "{:.3f}", 1.0),
)


def _estimate(beta, se):
    return "{:.3f} ({:.3f})".format(beta, se)


def format_value(result, template, scale=1.0):
    if not result.applicable:
        return "--"
    text = template.format(result.value * scale)
    if text.startswith("-") and float(text) == 0.0:
        text = text[1:]
    if result.category is Category.I:
        text += "*"
    return text


def bits_label(after, before):
    """Selection flags after and before the planned study as "1-0"."""
    return "{}-{}".format(int(after), int(before))


def table_frame(prioritization) -> pd.DataFrame:
    """One row per covariate in input order with the display columns and selection flags."""
    cfg = prioritization.config.criteria
    log_limit = math.log(cfg.bf_limit)
    rows = []
    for a in prioritization.assessments:
        record = a.record
        row = {
            "id": record.id,
            "sublabel": record.sublabel,
            "discovery": _estimate(record.discovery_beta, record.discovery_se),
            "replication": _estimate(record.replication_beta, record.replication_se),
        }
        for cid, column, template, scale in _VALUE_COLUMNS:
            row[column] = format_value(a.results[cid], template, scale) if cid in a.results else ""
        if a.projected.has_spike:
            factors = bayes_factors(a.projected, cfg)
            row["BF"] = bits_label(factors.log_bf_after > log_limit, factors.log_bf_before > log_limit)
        else:
            row["BF"] = ""
        row["BFDR"] = bits_label(*prioritization.bfdr.bits(a.id))
        rows.append(row)
    return pd.DataFrame(rows)


def categories_frame(prioritization) -> pd.DataFrame:
    """Category per covariate and criterion; the BFDR column holds the BFDR category."""
    rows = []
    for a in prioritization.assessments:
        row = {"id": a.id}
        for cid in CriterionId:
            if cid in a.results:
                row[cid.value] = a.results[cid].category.value
        rows.append(row)
    frame = pd.DataFrame(rows)
    return frame.rename(columns={CriterionId.BFDR_INPUT.value: "BFDR"})


def rankings_frame(ranking) -> pd.DataFrame:
    """Long format: criterion, rank (from 1), covariate id, value, top-set flag."""
    rows = []
    for cid, order in ranking.orders.items():
        for position, (cov_id, value) in enumerate(order, start=1):
            rows.append(
                {
                    "criterion": cid.value,
                    "rank": position,
                    "id": cov_id,
                    "value": "{:.10g}".format(value),
                    "top_set": int(cov_id in ranking.top_set),
                }
            )
    return pd.DataFrame(rows, columns=["criterion", "rank", "id", "value", "top_set"])


def sweep_frame(result) -> pd.DataFrame:
    """
    Long format (covariate_id, axis_value, criterion_value, category),
    ordered by covariate id then axis value.
    """
    rows = []
    for i in sorted(range(len(result.covariate_ids)), key=lambda k: result.covariate_ids[k]):
        for j, x in enumerate(result.spec.grid):
            value = result.values[i, j]
            rows.append(
                {
                    "covariate_id": result.covariate_ids[i],
                    "axis_value": "{:.10g}".format(x),
                    "criterion_value": "NA" if math.isnan(value) else "{:.10g}".format(value),
                    "category": result.categories[i][j].value,
                }
            )
    return pd.DataFrame(rows, columns=["covariate_id", "axis_value", "criterion_value", "category"])


def min_sample_size_frame(results) -> pd.DataFrame:
    rows = []
    for r in results:
        rows.append(
            {
                "covariate_id": r.covariate_id,
                "target": "{:.10g}".format(r.target),
                "sample_size": "NA" if r.sample_size is None else "{:.0f}".format(r.sample_size),
                "value": "{:.10g}".format(r.value) if math.isfinite(r.value) else "NA",
                "attainable": int(r.attainable),
                "method": r.method,
            }
        )
    return pd.DataFrame(
        rows, columns=["covariate_id", "target", "sample_size", "value", "attainable", "method"]
    )


def render(frame: pd.DataFrame, fmt="tsv", header=True) -> str:
    """
    Render a frame of display strings.

    Arguments:
        frame {pd.DataFrame} -- [table to render]

    Keyword Arguments:
        fmt {str} -- [tsv, csv or md] (default: {"tsv"})
        header {bool} -- [prepend a comment line naming the package
            version] (default: {True})

    Returns:
        str -- [rendered table ending in a newline]
    """
    if fmt not in FORMATS:
        raise DomainError("unknown format {!r}; expected one of {}".format(fmt, ", ".join(FORMATS)))
    frame = frame.astype(str)
    if fmt == "md":
        body = frame.to_markdown(index=False, disable_numparse=True) + "\n"
        comment = "<!-- covprior {} -->\n".format(__version__)
    else:
        body = frame.to_csv(index=False, sep="\t" if fmt == "tsv" else ",", lineterminator="\n")
        comment = "# covprior {}\n".format(__version__)
    return comment + body if header else body
