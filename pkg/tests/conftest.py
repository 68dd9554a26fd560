"""Shared fixtures: space forms and synthesized curves reused across modules."""
import numpy as np
import pytest

from sasaki3 import (
    build_space_form,
    synthesize_frenet_curve,
    synthesize_legendre_curve,
)

# default grid: s in [0, 2] at h = 1e-3
H = 1e-3
N = 2001


@pytest.fixture(scope="session")
def sf1():
    return build_space_form(1.0)


@pytest.fixture(scope="session")
def sf2():
    return build_space_form(2.0)


@pytest.fixture(scope="session")
def sf5():
    return build_space_form(5.0)


@pytest.fixture(scope="session")
def sfm3():
    return build_space_form(-3.0)


@pytest.fixture(scope="session")
def helix11(sf1):
    return synthesize_frenet_curve(sf1, 1.0, 1.0, np.eye(3), H, N)


@pytest.fixture(scope="session")
def helix21(sf1):
    return synthesize_frenet_curve(sf1, 2.0, 1.0, np.eye(3), H, N)


@pytest.fixture(scope="session")
def legendre_k1_c1(sf1):
    return synthesize_legendre_curve(sf1, 1.0, H, N)


@pytest.fixture(scope="session")
def legendre_k1_c2(sf2):
    return synthesize_legendre_curve(sf2, 1.0, H, N)


@pytest.fixture(scope="session")
def legendre_k2_c5(sf5):
    return synthesize_legendre_curve(sf5, 2.0, H, N)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260813)
