import pytest

from lerchsum import PrecisionPolicy


@pytest.fixture(scope="session")
def policy():
    return PrecisionPolicy()
