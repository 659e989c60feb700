import pytest

from taildist.coeffs import compute_chain
from taildist.config import Settings


@pytest.fixture(scope="module")
def coeffs4():
    return compute_chain(4)


@pytest.fixture(scope="module")
def coeffs8():
    return compute_chain(8)


@pytest.fixture(scope="session")
def small_settings():
    """Small segments and a low Chernoff floor so sieve tests stay quick."""
    return Settings(threads=2, segment_size=1 << 12, min_chernoff_n=10**4)
