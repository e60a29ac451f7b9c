import logging
import os

import pytest
from click.testing import CliRunner

from borelwit.points import EpPoint, parse_point
from test.util.options import quick_suite_bounds

logger = logging.getLogger(__name__)


def get_test_jobs() -> int:
    return int(os.environ.get("BORELWIT_TEST_JOBS", "1"))


def point(text: str, alphabet=2) -> EpPoint:
    return parse_point(text, alphabet)


@pytest.fixture
def zero() -> EpPoint:
    return EpPoint((), (0,))


@pytest.fixture
def one() -> EpPoint:
    return EpPoint((), (1,))


@pytest.fixture
def suite_bounds():
    bounds = quick_suite_bounds()
    logger.debug(f"quick suite bounds: {bounds}")
    return bounds


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
