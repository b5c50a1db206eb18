import pytest

from quasichord.graphs import enumerate_connected


@pytest.fixture(scope="session")
def corpus6():
    """All connected graphs on 1..6 vertices, one per isomorphism class."""
    return [g for n in range(1, 7) for g in enumerate_connected(n)]


@pytest.fixture(scope="session")
def corpus7():
    """All connected graphs on 1..7 vertices, one per isomorphism class."""
    return [g for n in range(1, 8) for g in enumerate_connected(n)]
