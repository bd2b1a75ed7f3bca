"""Shared fixtures: the standard rings and deterministic modules used across the suite."""

import pytest
from hypothesis import HealthCheck, settings

from hyperext.modules import cyclic_module, present_module
from hyperext.ring import make_quotient, make_ring

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("suite")

P = 32003


@pytest.fixture(scope="session")
def q2():
    return make_ring(P, ("x", "y"))


@pytest.fixture(scope="session")
def q3():
    return make_ring(P, ("x", "y", "z"))


@pytest.fixture(scope="session")
def q3_small():
    return make_ring(101, ("x", "y", "z"))


@pytest.fixture(scope="session")
def r2():
    # one-dimensional hypersurface with two axis components
    return make_quotient(make_ring(P, ("x", "y")), "x*y")


@pytest.fixture(scope="session")
def r3():
    return make_quotient(make_ring(P, ("x", "y", "z")), "x*y")


@pytest.fixture(scope="session")
def cyclic_xx_xy_xz(q3):
    # cyclic module with relations (x^2, xy, xz); pdim 3, grade 1
    return present_module(q3, [["x^2", "x*y", "x*z"]])


@pytest.fixture(scope="session")
def axis_pair(r2):
    return cyclic_module(r2, ["x"]), cyclic_module(r2, ["y"])
