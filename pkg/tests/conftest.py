import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def cutoff_cache():
    """Shared walk results so tests do not recompute the same chains."""
    return {}
