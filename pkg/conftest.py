import pytest

from covprior.config import RunConfig
from covprior.covprior import prioritize
from covprior.criteria.base import CriterionConfig
from covprior.records import load_records


@pytest.fixture(scope="session")
def records():
    return load_records()


@pytest.fixture(scope="session")
def by_id(records):
    return {r.id: r for r in records}


@pytest.fixture(scope="session")
def config():
    return RunConfig()


@pytest.fixture(scope="session")
def cfg():
    return CriterionConfig()


@pytest.fixture(scope="session")
def outcome(records, config):
    return prioritize(records, config)
