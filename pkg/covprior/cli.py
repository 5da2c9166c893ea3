"""
Command-line front end.

    covprior rank [--input data.csv] [--config run.cfg] [--format md]
    covprior classify
    covprior sweep-n --criterion DE
    covprior sweep-prior
    covprior min-n --target 0.01 --ids SALL1

Exit codes: 0 success, 2 input or validation error, 3 numeric domain error.
"""
import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .config import CONFIG_KEYS, CRITERION_KEYS, RunConfig, load_config
from .covprior import prioritize
from .criteria.base import CriterionId
from .errors import DomainError, InputError
from .planner import (
    Axis,
    SweepSpec,
    default_sample_size_grid,
    min_sample_size,
    sweep_prior,
    sweep_sample_size,
)
from .records import load_records
from .report import (
    FORMATS,
    categories_frame,
    min_sample_size_frame,
    rankings_frame,
    render,
    sweep_frame,
    table_frame,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3


def cmd_rank(records, config: RunConfig, orders=False):
    """Table of criterion values, BF and BFDR pairs; or the per-criterion orders."""
    outcome = prioritize(records, config)
    logger.info("top set over %d criteria heads: %s", config.top_k, sorted(outcome.ranking.top_set))
    if orders:
        return rankings_frame(outcome.ranking)
    return table_frame(outcome)


def cmd_classify(records, config: RunConfig):
    return categories_frame(prioritize(records, config))


def cmd_sweep(records, config: RunConfig, spec: SweepSpec, use_tqdm=False):
    """Long-format sweep table for either axis."""
    if spec.axis is Axis.SAMPLE_SIZE:
        result = sweep_sample_size(records, config, spec, use_tqdm=use_tqdm)
    else:
        result = sweep_prior(records, config, spec, use_tqdm=use_tqdm)
    for value, previous, current in result.crossovers():
        logger.info("leader changes from %s to %s at %g", previous, current, value)
    return sweep_frame(result)


def cmd_min_n(records, config: RunConfig, criterion_id, target, n_bounds, n_points, ids=None):
    if ids:
        known = {r.id for r in records}
        missing = [i for i in ids if i not in known]
        if missing:
            raise InputError("unknown covariate ids: {}".format(", ".join(missing)))
        records = [r for r in records if r.id in set(ids)]
    results = [
        min_sample_size(r, config, criterion_id, target, n_bounds=n_bounds, n_points=n_points)
        for r in records
    ]
    return min_sample_size_frame(results)


def _grid(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("grid must be a comma-separated list of numbers")


def _ids(text):
    return [x.strip() for x in text.split(",") if x.strip()]


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", type=Path, default=None, help="covariate CSV (bundled CRP data if omitted)")
    common.add_argument("-c", "--config", type=Path, default=None, help="key = value configuration file")
    common.add_argument("-o", "--output", type=Path, default=None, help="output file (stdout if omitted)")
    common.add_argument("-f", "--format", choices=FORMATS, default="tsv")
    common.add_argument("--no-header", action="store_true", help="omit the version comment line")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    keys = common.add_argument_group("configuration overrides")
    for key, parse in CONFIG_KEYS.items():
        kind = "criterion" if key in CRITERION_KEYS else "run"
        keys.add_argument("--" + key, type=parse, default=None, help="{} parameter".format(kind))
    return common


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="covprior",
        description="Prioritize covariates for a planned study in a meta-analysis",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--version", action="version", version="covprior {}".format(__version__))
    sub = parser.add_subparsers(dest="command", required=True)

    rank = sub.add_parser("rank", parents=[common], help="criterion table")
    rank.add_argument("--orders", action="store_true", help="emit per-criterion rankings")

    sub.add_parser("classify", parents=[common], help="category per covariate and criterion")

    sweep_n = sub.add_parser("sweep-n", parents=[common], help="sweep the planned sample size")
    sweep_n.add_argument("--criterion", type=CriterionId.parse, default=CriterionId.DE)
    sweep_n.add_argument("--grid", type=_grid, default=None, help="explicit comma-separated sizes")
    sweep_n.add_argument("--n-min", type=float, default=1000)
    sweep_n.add_argument("--n-max", type=float, default=200000)
    sweep_n.add_argument("--n-points", type=int, default=200)
    sweep_n.add_argument("--progress", action="store_true")

    sweep_p = sub.add_parser("sweep-prior", parents=[common], help="sweep the prior inclusion probability")
    sweep_p.add_argument("--criterion", type=CriterionId.parse, default=CriterionId.DE)
    sweep_p.add_argument("--grid", type=_grid, default=None, help="explicit comma-separated probabilities")
    sweep_p.add_argument("--progress", action="store_true")

    min_n = sub.add_parser("min-n", parents=[common], help="smallest sample size reaching a target")
    min_n.add_argument("--criterion", type=CriterionId.parse, default=CriterionId.DE)
    min_n.add_argument("--target", type=float, required=True)
    min_n.add_argument("--ids", type=_ids, default=None, help="comma-separated covariate ids")
    min_n.add_argument("--n-min", type=float, default=1000)
    min_n.add_argument("--n-max", type=float, default=200000)
    min_n.add_argument("--n-points", type=int, default=200)
    return parser


def resolve_config(args) -> RunConfig:
    """Defaults, then the --config file, then flags of the same name."""
    config = RunConfig()
    if args.config is not None:
        config = load_config(args.config, base=config)
    overrides = {key: getattr(args, key) for key in CONFIG_KEYS}
    return config.updated(**overrides)


def run(args):
    config = resolve_config(args)
    records = load_records(args.input, config.evidence_source)
    if args.command == "rank":
        frame = cmd_rank(records, config, orders=args.orders)
    elif args.command == "classify":
        frame = cmd_classify(records, config)
    elif args.command == "sweep-n":
        grid = args.grid
        if grid is None:
            grid = default_sample_size_grid(args.n_min, args.n_max, args.n_points)
        spec = SweepSpec.sample_size(grid, args.criterion)
        frame = cmd_sweep(records, config, spec, use_tqdm=args.progress)
    elif args.command == "sweep-prior":
        spec = SweepSpec.prior(args.grid, args.criterion)
        frame = cmd_sweep(records, config, spec, use_tqdm=args.progress)
    else:
        frame = cmd_min_n(
            records,
            config,
            args.criterion,
            args.target,
            (args.n_min, args.n_max),
            args.n_points,
            ids=args.ids,
        )
    return render(frame, args.format, header=not args.no_header)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        text = run(args)
    except InputError as err:
        logger.error("%s", err)
        return EXIT_INPUT
    except DomainError as err:
        logger.error("%s", err)
        return EXIT_DOMAIN
    if args.output is None:
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return EXIT_OK
