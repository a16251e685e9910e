import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "numeric",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numeric")


@pytest.fixture
def three_level():
    """H = diag(0, 1, 3) with the uniform state: every moment is known exactly."""
    h = np.diag([0.0, 1.0, 3.0]).astype(complex)
    psi = np.ones(3, dtype=complex) / math.sqrt(3.0)
    return h, psi


@pytest.fixture
def rng():
    return np.random.default_rng(987654321)
