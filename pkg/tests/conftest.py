import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from phototopo import models

settings.register_profile(
    "default", deadline=None, max_examples=50, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# (constructor, reference energy inside the gap)
ZOO = {
    "ssh": (lambda: models.ssh(1.0, 1.5), 0.0),
    "theta": (lambda: models.theta_model(1.0, 1.5, np.pi / 8), 0.0),
    "qwz": (lambda: models.qwz(1.2, 1.0), 0.0),
    "hn": (lambda: models.hatano_nelson(1.0, 0.5, 1.0), -1j),
    "chiral_nh_2d": (lambda: models.chiral_nh_2d(1.0), -1j),
    "stacked_hn": (lambda: models.stacked_hn(1.0, 0.5), -1j),
}


@pytest.fixture(params=sorted(ZOO))
def zoo_model(request):
    ctor, w = ZOO[request.param]
    return request.param, ctor(), w


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
