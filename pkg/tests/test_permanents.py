"""Permanent evaluation, cross-checked against the raw permutation sum."""

import math
from itertools import permutations

import numpy as np

from idqsim.permanents import (
    determinant,
    permanent,
    permanent_naive,
    permanent_ryser,
    permutation_parity,
)


def permanent_by_definition(m):
    # independent reference: literal sum over permutations
    n = m.shape[0]
    total = 0.0 + 0.0j
    for perm in permutations(range(n)):
        prod = 1.0 + 0.0j
        for i, j in enumerate(perm):
            prod *= m[i, j]
        total += prod
    return total


def test_permutation_parity_small_cases():
    assert permutation_parity(()) == 1
    assert permutation_parity((0, 1, 2)) == 1
    assert permutation_parity((1, 0, 2)) == -1
    assert permutation_parity((1, 2, 0)) == 1
    assert permutation_parity((3, 2, 1, 0)) == 1
    assert permutation_parity((0, 1, 3, 2)) == -1


def test_permanent_of_empty_and_scalar():
    assert permanent(np.zeros((0, 0))) == 1.0
    assert permanent(np.array([[3.5]])) == 3.5


def test_permanent_known_values():
    assert permanent(np.eye(4)) == 1.0
    for n in range(1, 6):
        assert np.isclose(permanent(np.ones((n, n))), math.factorial(n))
    m = np.array([[1, 2], [3, 4]], dtype=float)
    assert permanent(m) == 1 * 4 + 2 * 3


def test_both_evaluators_match_the_definition():
    rng = np.random.default_rng(42)
    for n in range(1, 7):
        for _ in range(5):
            m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            ref = permanent_by_definition(m)
            assert np.isclose(permanent_naive(m), ref, rtol=1e-12, atol=1e-12)
            assert np.isclose(permanent_ryser(m), ref, rtol=1e-10, atol=1e-12)
            assert np.isclose(permanent(m), ref, rtol=1e-10, atol=1e-12)


def test_permanent_is_permutation_invariant():
    rng = np.random.default_rng(7)
    m = rng.normal(size=(4, 4))
    shuffled = m[rng.permutation(4)][:, rng.permutation(4)]
    assert np.isclose(permanent(shuffled), permanent(m))


def test_determinant_matches_numpy_and_handles_empty():
    rng = np.random.default_rng(3)
    m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert np.isclose(determinant(m), np.linalg.det(m))
    assert determinant(np.zeros((0, 0))) == 1.0
