import functools

import numpy as np
import pytest

from weaver.angles import assemble_constraints, initial_structure
from weaver.triangulation import build
from weaver.volume import maximize


def pytest_addoption(parser):
    parser.addoption("--rng-seed", type=int, default=20240611,
                     help="seed for numpy-driven random samples")


@pytest.fixture
def rng(request):
    return np.random.default_rng(request.config.getoption("--rng-seed"))


@functools.lru_cache(maxsize=None)
def solved(p, q=1):
    """(triangulation, polytope, max result), cached across tests."""
    tri = build(p, q)
    poly = assemble_constraints(tri)
    return tri, poly, maximize(poly, initial_structure(tri))
