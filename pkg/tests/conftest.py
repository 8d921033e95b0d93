"""Shared fixtures: small sampled graphs reused across test modules."""

import math

import pytest

import hrgboot
from hrgboot.geometry import ModelParams

# Reference constructive regime: with epsilon = 0.1 this nu makes the band
# recurrence's log-gain exactly 2 ln(t/2), and the chain terminates by C
# with two levels at N = 2e5 (C = 3.5) or one level at N = 2e4 (C = 4).
NU_CENSUS = 8.0 * math.pi / 0.9**4
CENSUS_C = 3.5


@pytest.fixture(scope="session")
def small_graph():
    return hrgboot.build_graph(ModelParams(N=300, alpha=0.7, nu=1.0, seed=2))


@pytest.fixture(scope="session")
def medium_graph():
    # dense enough for degree/clustering statistics, cheap enough to share
    return hrgboot.build_graph(ModelParams(N=3000, alpha=0.7, nu=1.0, seed=7))


@pytest.fixture(scope="session")
def census_graph():
    # smallest clean size where the chain ends by C (T = 1 at C = 4)
    return hrgboot.build_graph(ModelParams(N=20_000, alpha=0.7, nu=NU_CENSUS, seed=3))
