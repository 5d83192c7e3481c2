import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import golden_example, sqrt2_example


@pytest.fixture
def sqrt2_iet():
    return sqrt2_example()


@pytest.fixture
def golden_iet():
    return golden_example()
