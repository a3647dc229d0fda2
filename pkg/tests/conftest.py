import pytest
from hypothesis import HealthCheck, settings

from zerosum.exactmath import PrecisionContext

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def ctx():
    """Shared 256-bit precision context."""
    return PrecisionContext()
