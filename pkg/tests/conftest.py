"""Shared random generators for the test suite."""
import numpy as np
import pytest

from chiralkit import galilean
from chiralkit.orthogonal import OrthogonalMap
from chiralkit.quadspace import QuadraticSpace, eval_q, reflection_matrix

# Supports drawn with |Q(u)| >= MIN_CONDITIONING * |u|^2 keep reflections well scaled.
MIN_CONDITIONING = 0.5


def random_support(space, rng):
    while True:
        u = rng.normal(size=space.n)
        if abs(eval_q(space, u)) >= MIN_CONDITIONING * (u @ u):
            return u


def random_member(space, rng, max_reflections=6, min_reflections=0):
    """Product of a random number (at most ``max_reflections``) of random reflections."""
    k = int(rng.integers(min_reflections, max_reflections + 1))
    m = np.eye(space.n)
    for _ in range(k):
        m = m @ reflection_matrix(space, random_support(space, rng))
    return OrthogonalMap(space, m)


def random_galilean(rng, scale=1.0):
    omega = galilean.rotation_matrix(rng.normal(size=3), rng.uniform(0, np.pi))
    if rng.random() < 0.5:
        omega = -omega
    return galilean.GalileanIsometry(
        int(rng.choice([1, -1])), omega, rng.normal(size=3) * scale,
        float(rng.normal() * scale), rng.normal(size=3) * scale)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def space13():
    return QuadraticSpace.of(1, 3)


# ---------------------------------------------------------------- acceptance report

ACCEPTANCE_LINES = []
SESSION_START = {}


def pytest_sessionstart(session):
    import time
    SESSION_START["t"] = time.perf_counter()


def pytest_collection_modifyitems(session, config, items):
    # the whole-suite runtime check must run after everything else
    last = [i for i in items if i.get_closest_marker("runs_last")]
    items[:] = [i for i in items if not i.get_closest_marker("runs_last")] + last


def pytest_configure(config):
    config.addinivalue_line("markers", "runs_last: run after all other tests")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
