import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import pytest


@pytest.fixture(scope="session")
def suite_seed() -> int:
    return int(os.environ.get("KVERTEX_SUITE_SEED", "0"))
