from functools import lru_cache

import pytest

from rabi2q import ModelParams, ground_state


@lru_cache(maxsize=None)
def _ground_cached(g: float, omega_c: float = 1.0):
    return ground_state(ModelParams(1.0, omega_c, g))


@pytest.fixture(scope="session")
def exact_ground():
    """Memoized exact ground states, shared across the whole session."""
    return _ground_cached
