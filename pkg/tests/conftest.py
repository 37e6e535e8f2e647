import os

import pytest
from hypothesis import HealthCheck, settings

from extricat.catalog import build_catalog
from extricat.derived import DerivedCategory
from extricat.modcat import ModuleCategory
from extricat.reps import Quiver

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def a3():
    """mod k(1 <- 2 <- 3)."""
    return ModuleCategory(build_catalog(Quiver.linear(3)))


@pytest.fixture(scope="session")
def a3r():
    """mod k(1 -> 2 -> 3)."""
    return ModuleCategory(build_catalog(Quiver.linear(3, leftward=False)))


@pytest.fixture(scope="session")
def d3():
    """D^b(k(1 -> 2 -> 3)) on shifts [-3, 2]."""
    return DerivedCategory(build_catalog(Quiver.linear(3, leftward=False)), window=(-3, 2))


@pytest.fixture(scope="session")
def small_derived():
    """D^b(k(1 <- 2)) on shifts [-2, 1]: small enough for exhaustive checks."""
    return DerivedCategory(build_catalog(Quiver.linear(2)), window=(-2, 1))


@pytest.fixture(scope="session")
def mods():
    return {n: ModuleCategory(build_catalog(Quiver.linear(n))) for n in (1, 2, 3)}
