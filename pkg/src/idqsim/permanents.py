"""Permanents, determinants and permutation parity for small complex matrices."""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

import numpy as np

# Above this size the permutation sum loses to Ryser's O(2^n n) formula.
_NAIVE_LIMIT = 4


def permutation_parity(perm: Sequence[int]) -> int:
    """Sign (+1/-1) of a permutation of 0..n-1."""
    seen = [False] * len(perm)
    parity = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        # each cycle of length L contributes (-1)^(L-1)
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            parity = -parity
    return parity


def permanent_naive(matrix: np.ndarray) -> complex:
    """Permanent by the explicit sum over all n! permutations."""
    a = np.asarray(matrix, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if n == 0:
        return complex(1.0)
    rows = np.arange(n)
    total = 0.0 + 0.0j
    for perm in permutations(range(n)):
        total += np.prod(a[rows, perm])
    return complex(total)


def permanent_ryser(matrix: np.ndarray) -> complex:
    """Permanent by Ryser's inclusion-exclusion formula with Gray-code updates."""
    a = np.asarray(matrix, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if n == 0:
        return complex(1.0)
    rowsums = np.zeros(n, dtype=complex)
    total = 0.0 + 0.0j
    prev = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        bit = gray ^ prev
        j = bit.bit_length() - 1
        if gray & bit:
            rowsums += a[:, j]
        else:
            rowsums -= a[:, j]
        sign = -1 if (gray.bit_count() % 2) else 1
        total += sign * np.prod(rowsums)
        prev = gray
    return complex((-1) ** n * total)


def permanent(matrix: np.ndarray) -> complex:
    """Permanent of a square complex matrix (naive for n <= 4, Ryser above)."""
    a = np.asarray(matrix, dtype=complex)
    if a.shape[0] <= _NAIVE_LIMIT:
        return permanent_naive(a)
    return permanent_ryser(a)


def determinant(matrix: np.ndarray) -> complex:
    """Determinant of a square complex matrix; the empty matrix gives 1."""
    a = np.asarray(matrix, dtype=complex)
    if a.shape[0] == 0:
        return complex(1.0)
    return complex(np.linalg.det(a))
