import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hypmetric import Domain

settings.register_profile(
    "ci", deadline=None, derandomize=True, max_examples=60,
    suppress_health_check=[HealthCheck.filter_too_much])
settings.load_profile("ci")


def suite_domains():
    return {
        "halfspace": Domain.halfspace(2),
        "ball": Domain.unit_ball(2),
        "punctured": Domain.punctured([0.0, 0.0]),
        "twice": Domain.twice_punctured([-1.0, 0.0], [1.0, 0.0]),
        "segment": Domain.segment_complement([-1.0, 0.0], [1.0, 0.0]),
        "box": Domain.box([0.0, 0.0], [1.0, 1.0]),
    }


@pytest.fixture(scope="session")
def domains():
    return suite_domains()


@pytest.fixture
def rng():
    return np.random.default_rng(0)
