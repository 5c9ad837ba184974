import sys
from pathlib import Path

import pytest

TESTS = Path(__file__).parent
sys.path.insert(0, str(TESTS))

DATA = TESTS / "data"


@pytest.fixture
def data_dir():
    return DATA


def bench(name):
    return (DATA / f"{name}.bench").read_text()
