"""Shared fixtures and hypothesis configuration."""

import pytest
from hypothesis import HealthCheck, settings

from regmeans import make_builtin

settings.register_profile(
    "numeric",
    deadline=None,  # quadrature/simulation calls have uneven latency
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numeric")

BUILTIN_SPECS = ("identity", "log", "reciprocal", "power:2.0", "exp")


@pytest.fixture(params=BUILTIN_SPECS)
def builtin_generator(request):
    from regmeans import parse_generator

    return parse_generator(request.param)


@pytest.fixture
def all_builtins():
    return [
        make_builtin("identity"),
        make_builtin("log"),
        make_builtin("reciprocal"),
        make_builtin("power", 2.0),
        make_builtin("exp"),
    ]
