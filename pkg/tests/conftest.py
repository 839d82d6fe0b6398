import pytest
from hypothesis import HealthCheck, settings

from f1closed.balls import PrecCtx

settings.register_profile(
    "fixed",
    max_examples=20,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fixed")


@pytest.fixture(scope="session")
def ctx50() -> PrecCtx:
    return PrecCtx.from_digits(50)


@pytest.fixture(scope="session")
def ctx30() -> PrecCtx:
    return PrecCtx.from_digits(30)
