"""
Run configuration: criterion parameters plus evidence source, heterogeneity
and planning settings, read from a flat ``key = value`` file.
"""
import configparser
import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .criteria.base import CriterionConfig
from .errors import CovpriorError, InputError
from .records import EvidenceSource
from .stats import check_finite, check_positive

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = Path(__file__).parent / "data" / "default.cfg"

_SECTION = "covprior"


def _optional_float(text):
    if str(text).strip().lower() in ("", "none"):
        return None
    return float(text)


CRITERION_KEYS = {
    "delta": float,
    "alpha": float,
    "sigma_init_sq": float,
    "omega": float,
    "pi0": float,
    "bf_limit": float,
    "bfdr_level": float,
    "cp_threshold": float,
    "p_limit": _optional_float,
}
RUN_KEYS = {
    "evidence_source": EvidenceSource.parse,
    "gamma_sq": float,
    "n_ref": float,
    "top_k": int,
    "n_jobs": int,
}
CONFIG_KEYS = {**CRITERION_KEYS, **RUN_KEYS}


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a run needs besides the records.

    Arguments:
        criteria {CriterionConfig} -- [criterion parameters]
        evidence_source {EvidenceSource} -- [panels forming the current evidence]
        gamma_sq {float} -- [between-study variance of the planned study]
        n_ref {float} -- [sample size the records' new-study SE refers to]
        top_k {int} -- [head size of the aggregate top set]
        n_jobs {int} -- [joblib workers for sweeps]
    """

    criteria: CriterionConfig = field(default_factory=CriterionConfig)
    evidence_source: EvidenceSource = EvidenceSource.REPLICATION_ONLY
    gamma_sq: float = 0.0
    n_ref: float = 16540.0
    top_k: int = 4
    n_jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "evidence_source", EvidenceSource.parse(self.evidence_source))
        check_finite("gamma_sq", self.gamma_sq)
        if self.gamma_sq < 0:
            raise InputError("gamma_sq must be >= 0, got {!r}".format(self.gamma_sq))
        check_positive("n_ref", self.n_ref)
        if self.top_k < 1:
            raise InputError("top_k must be >= 1, got {!r}".format(self.top_k))
        if self.n_jobs == 0:
            raise InputError("n_jobs must not be 0")

    def as_dict(self):
        values = {f.name: getattr(self.criteria, f.name) for f in fields(self.criteria)}
        values.update({key: getattr(self, key) for key in RUN_KEYS})
        values["evidence_source"] = self.evidence_source.value
        return values

    def updated(self, **overrides):
        """
        Copy with some keys replaced; ``None`` values leave the key as it is.
        """
        unknown = sorted(set(overrides) - set(CONFIG_KEYS))
        if unknown:
            raise InputError("unknown configuration keys: {}".format(", ".join(unknown)))
        criteria = {k: v for k, v in overrides.items() if k in CRITERION_KEYS and v is not None}
        run = {k: v for k, v in overrides.items() if k in RUN_KEYS and v is not None}
        try:
            return replace(self, criteria=replace(self.criteria, **criteria), **run)
        except InputError:
            raise
        except CovpriorError as err:
            raise InputError(str(err)) from None


def _key_lines(text):
    lines = {}
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped[0] in "#;":
            continue
        for sep in ("=", ":"):
            if sep in stripped:
                lines.setdefault(stripped.split(sep, 1)[0].strip().lower(), number)
                break
    return lines


def parse_config(text, path=None, base=None) -> RunConfig:
    """
    Parse flat ``key = value`` text on top of ``base`` (defaults when None).

    Raises:
        InputError -- [syntax errors, unknown keys and invalid values, with
            the offending line]
    """
    base = RunConfig() if base is None else base
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    try:
        # the file has no section header; line numbers shift by one
        parser.read_string("[{}]\n{}".format(_SECTION, text))
    except configparser.DuplicateOptionError as err:
        raise InputError("duplicate key {!r}".format(err.option), path, err.lineno - 1) from None
    except configparser.ParsingError as err:
        lineno, line = err.errors[0]
        raise InputError("cannot parse {}".format(line), path, lineno - 1) from None
    except configparser.Error as err:
        raise InputError(str(err), path) from None

    key_lines = _key_lines(text)
    values = {}
    for key, raw in parser.items(_SECTION):
        line = key_lines.get(key)
        if key not in CONFIG_KEYS:
            raise InputError("unknown configuration key {!r}".format(key), path, line)
        try:
            values[key] = CONFIG_KEYS[key](raw)
        except (ValueError, InputError):
            raise InputError("invalid value {!r} for {}".format(raw, key), path, line) from None
    try:
        return base.updated(**values)
    except InputError as err:
        raise InputError(err.message, path) from None


def load_config(path=None, base=None) -> RunConfig:
    """Read a configuration file; the bundled defaults when ``path`` is None."""
    path = DEFAULT_CONFIG if path is None else Path(path)
    if not path.is_file():
        raise InputError("no such file", path)
    config = parse_config(path.read_text(encoding="utf-8"), path=path, base=base)
    logger.info("configuration from %s: %s", path, config.as_dict())
    return config
