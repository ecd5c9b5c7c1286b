"""Session-wide guards."""

import pytest

from realset.automata import STATS


@pytest.fixture(scope="session", autouse=True)
def determinization_batteries_never_disagree():
    """Every determinization in the whole run must pass its UP-word battery."""
    yield
    assert STATS.disagreements == 0, STATS.failed_lassos
