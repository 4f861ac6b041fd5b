"""Shared builders for the test suite."""

from fractions import Fraction

import numpy as np
import pytest

import credalmc as cmc


@pytest.fixture
def p1():
    return cmc.StochasticMatrix([["1/5", "4/5"], ["7/10", "3/10"]], exact=True)


@pytest.fixture
def p2():
    return cmc.StochasticMatrix([["3/5", "2/5"], ["1/2", "1/2"]], exact=True)


@pytest.fixture
def pi1(p1):
    return cmc.stationary_distribution(p1)


@pytest.fixture
def pi2(p2):
    return cmc.stationary_distribution(p2)


def fracs(rows):
    """Nested lists of fraction strings -> object array of Fractions."""
    if isinstance(rows[0], (list, tuple)):
        return np.array([[Fraction(v) for v in r] for r in rows], dtype=object)
    return np.array([Fraction(v) for v in rows], dtype=object)


def exactly_equal(a, b) -> bool:
    a = a.entries if hasattr(a, "entries") else np.asarray(a)
    b = b.entries if hasattr(b, "entries") else np.asarray(b)
    return a.shape == b.shape and bool((a == b).all())


def random_simplex(rng, n, floor=0.02):
    v = rng.dirichlet(np.ones(n))
    return (1.0 - floor * n) * v + floor


def random_stochastic(rng, n, floor=0.02):
    return cmc.StochasticMatrix(
        np.vstack([random_simplex(rng, n, floor) for _ in range(n)])
    )


def random_exact_vector(rng, n):
    raw = [Fraction(int(k)) for k in rng.integers(1, 10, size=n)]
    total = sum(raw)
    return cmc.ProbVector([v / total for v in raw], exact=True)


def random_exact_matrix(rng, n):
    rows = []
    for _ in range(n):
        raw = [Fraction(int(k)) for k in rng.integers(1, 10, size=n)]
        total = sum(raw)
        rows.append([v / total for v in raw])
    return cmc.StochasticMatrix(rows, exact=True)


def random_box(rng, n, width):
    """Interval joint set of halfwidth ``width/2`` around a random point of
    the mass-one slice (always nonempty)."""
    center = random_simplex(rng, n * n, floor=0.0).reshape(n, n)
    lower = np.maximum(center - width / 2, 0.0)
    upper = center + width / 2
    return cmc.IntervalJointSet(lower, upper)
