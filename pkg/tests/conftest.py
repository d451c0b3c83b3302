import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from koecher.precision import PrecisionContext


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(30, 20, 10**6)


@pytest.fixture(scope="session")
def ctx20():
    return PrecisionContext(20, 20, 10**6)


@pytest.fixture(scope="session")
def ctx_fast():
    return PrecisionContext(12, 12, 10**5)
