import pytest
from hypothesis import HealthCheck, settings

import hafs

settings.register_profile(
    "deterministic",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")


@pytest.fixture
def example3():
    """One argument supporting itself through a single support."""
    return hafs.parse("arg(a). supp(t1,a,a).")


@pytest.fixture
def f3():
    """One argument attacking another."""
    return hafs.parse("arg(a). arg(b). att(r1,a,b).")


@pytest.fixture
def f6():
    """Attack on the head of a one-edge support chain."""
    return hafs.parse("arg(a). arg(b). arg(c). supp(t1,c,a). att(r1,b,c).")


@pytest.fixture
def self_attack():
    return hafs.parse("arg(a). att(r1,a,a).")


@pytest.fixture
def mutual_attack():
    return hafs.parse("arg(a). arg(b). att(r1,a,b). att(r2,b,a).")


@pytest.fixture
def single_arg():
    return hafs.parse("arg(a).")
