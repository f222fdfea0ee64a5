import pytest
from hypothesis import HealthCheck, settings

from rbhopf.kernel import GF, QQ
from rbhopf.zoo import load_zoo

# derandomized so repeated runs give identical reports
settings.register_profile("repro", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repro")

FIELDS = [QQ, GF(2), GF(3), GF(5)]


@pytest.fixture(scope="session")
def zoo_q():
    return load_zoo(QQ)


@pytest.fixture(scope="session", params=FIELDS, ids=lambda f: f.name)
def zoo_any(request):
    return load_zoo(request.param)
