import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from eqproof.seed import seed_stack

FIXTURES = pathlib.Path(__file__).parent.parent / "fixtures"


@pytest.fixture
def stack():
    return seed_stack()


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def golden_transcript():
    return (FIXTURES / "intsct-comm.transcript").read_text(encoding="utf-8")
