import numpy as np
import pytest
from hypothesis import settings

from semilin.scalar import COMPLEX, REAL

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIELDS = [REAL, COMPLEX]


@pytest.fixture(params=FIELDS, ids=lambda K: K.name.lower(), scope="session")
def K(request):
    """Each test using this fixture runs once per scalar instance."""
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
