"""Centrosymmetric structure: fold/unfold, generators, perturbations."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centroqx.centro import (
    centro_defect,
    centro_from_free_entries,
    exchange_matrix,
    fold,
    fold_basis,
    free_entry_count,
    is_centrosymmetric,
    random_centro,
    random_centro_perturbation,
    random_sign_centro,
    toeplitz_centro,
    unfold,
)
from centroqx.errors import NotCentrosymmetric, OddColumnDimension
from centroqx.rng import uniform_open

SQRT2 = math.sqrt(2.0)


def _is_centro_ref(a: np.ndarray) -> bool:
    """Independent predicate: a[i, j] == a[m-1-i, n-1-j]."""
    return bool(np.array_equal(a, a[::-1, ::-1]))


def test_exchange_matrix():
    assert np.array_equal(exchange_matrix(3), np.eye(3)[::-1])


@pytest.mark.parametrize("shape", [(4, 2), (7, 4), (6, 6), (12, 6)])
def test_random_centro_structure(shape):
    m, n = shape
    a = random_centro(m, n, seed=9)
    assert a.shape == shape
    assert _is_centro_ref(a)
    assert centro_defect(a) == 0.0
    assert is_centrosymmetric(a)
    assert np.all(np.abs(a) < 1.0)
    assert np.array_equal(a, random_centro(m, n, seed=9))


def test_random_sign_centro():
    a = random_sign_centro(6, 4, seed=2)
    assert _is_centro_ref(a)
    assert set(np.unique(a)) <= {-1.0, 1.0}


def test_centro_defect_detects_violation():
    a = np.zeros((2, 2))
    a[0, 0] = 1.0
    assert centro_defect(a) == 1.0
    assert not is_centrosymmetric(a)


# ----------------------------------------------------------------- fold


def test_fold_exchange_fixture():
    # A = R_2 -> F = [1], G = [-1] (direct evaluation of the fold transform)
    pair = fold(exchange_matrix(2))
    assert np.array_equal(pair.f, [[1.0]])
    assert np.array_equal(pair.g, [[-1.0]])


def test_fold_odd_row_fixture():
    # A = [[1,2],[3,3],[2,1]] -> F = [[3],[3*sqrt(2)]], G = [[-1]]
    a = np.array([[1.0, 2.0], [3.0, 3.0], [2.0, 1.0]])
    pair = fold(a)
    assert np.allclose(pair.f, [[3.0], [3.0 * SQRT2]], rtol=0, atol=1e-15)
    assert np.array_equal(pair.g, [[-1.0]])


@pytest.mark.parametrize("shape", [(4, 2), (7, 4), (6, 6), (13, 8)])
def test_fold_unfold_round_trip(shape):
    m, n = shape
    a = random_centro(m, n, seed=31)
    pair = fold(a)
    back = unfold(pair.f, pair.g, m, n)
    assert np.max(np.abs(back - a)) <= 1e-12 * (1.0 + np.max(np.abs(a)))


@pytest.mark.parametrize("m", [4, 5, 9, 12])
def test_fold_basis_orthogonal(m):
    b = fold_basis(m)
    assert b.shape == (m, m)
    assert np.max(np.abs(b.T @ b - np.eye(m))) <= 1e-15 * m


def test_fold_block_diagonalizes():
    # B_m^T A B_n must be exactly block-diagonal [[F, 0], [0, G]].
    m, n = 7, 4
    a = random_centro(m, n, seed=5)
    pair = fold(a)
    blocked = fold_basis(m).T @ a @ fold_basis(n)
    hf, hg = pair.f.shape[0], pair.g.shape[0]
    l = n // 2
    assert np.max(np.abs(blocked[:hf, :l] - pair.f)) <= 1e-13
    assert np.max(np.abs(blocked[hf:, l:] - pair.g)) <= 1e-13
    assert np.max(np.abs(blocked[:hf, l:])) <= 1e-13
    assert np.max(np.abs(blocked[hf:, :l])) <= 1e-13


def test_fold_rejects_odd_columns():
    with pytest.raises(OddColumnDimension):
        fold(random_centro(4, 3, seed=1))


def test_fold_rejects_non_centro():
    a = uniform_open(3, 8).reshape(4, 2)
    with pytest.raises(NotCentrosymmetric):
        fold(a)


# --------------------------------------------------------- free entries


def _free_count_ref(m: int, n: int) -> int:
    """Count symmetry orbits by brute force."""
    seen = set()
    count = 0
    for i in range(m):
        for j in range(n):
            if (i, j) in seen:
                continue
            seen.add((i, j))
            seen.add((m - 1 - i, n - 1 - j))
            count += 1
    return count


@pytest.mark.parametrize("shape", [(2, 2), (5, 4), (6, 6), (7, 4), (3, 4)])
def test_free_entry_count_matches_orbits(shape):
    assert free_entry_count(*shape) == _free_count_ref(*shape)


def test_free_entry_fixtures():
    assert free_entry_count(5, 4) == 10
    assert free_entry_count(6, 6) == 18


def test_free_entries_reject_odd_by_odd():
    with pytest.raises(OddColumnDimension):
        free_entry_count(5, 5)
    with pytest.raises(OddColumnDimension):
        centro_from_free_entries(3, 3, np.ones(5))


def test_centro_from_free_entries_round_trip():
    m, n = 5, 4
    values = np.arange(1.0, 11.0)
    a = centro_from_free_entries(m, n, values)
    assert a.shape == (m, n)
    assert _is_centro_ref(a)
    # the scan must place each value once (plus its mirror)
    flat = set(np.unique(a))
    assert flat == set(values)


def test_centro_from_free_entries_wrong_length():
    with pytest.raises(ValueError):
        centro_from_free_entries(5, 4, np.ones(9))


# ------------------------------------------------------------- toeplitz


def test_toeplitz_fixture():
    assert np.array_equal(toeplitz_centro([2.0, 1.0]), [[2.0, 1.0], [1.0, 2.0]])


def test_toeplitz_structure():
    t = toeplitz_centro(uniform_open(4, 5))
    assert t.shape == (5, 5)
    assert _is_centro_ref(t)
    assert np.array_equal(t, t.T)
    for k in range(-4, 5):
        diag = np.diagonal(t, k)
        assert np.all(diag == diag[0])


# --------------------------------------------------------- perturbations


@pytest.mark.parametrize("k_mode", ["identity", "ones"])
def test_random_centro_perturbation_contract(k_mode):
    a = random_centro(8, 4, seed=3)
    eps = 1e-8
    da, k, eps_eff = random_centro_perturbation(a, eps, seed=7, k_mode=k_mode)
    assert _is_centro_ref(da)
    if k_mode == "identity":
        assert eps_eff == eps
    else:
        # ones mode reports the smallest factor making the model hold
        assert 0.0 < eps_eff <= eps * (1 + 1e-15)
    # entrywise model: |da| <= eps_eff * K|A| (constructed, so exact up to fp)
    cap = eps_eff * (k @ np.abs(a))
    assert np.all(np.abs(da) <= cap * (1 + 1e-12) + 1e-300)
    if k_mode == "identity":
        assert np.array_equal(k, np.eye(8))
    else:
        assert np.array_equal(k, np.ones((8, 8)))
    # determinism
    da2, _, _ = random_centro_perturbation(a, eps, seed=7, k_mode=k_mode)
    assert np.array_equal(da, da2)


def test_perturbation_nonzero_and_scaled():
    a = random_centro(6, 4, seed=1)
    da, _, _ = random_centro_perturbation(a, 1e-6, seed=2)
    norm = np.linalg.norm(da)
    assert 0.0 < norm < 1e-5


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_random_centro_property(seed):
    a = random_centro(6, 4, seed)
    assert _is_centro_ref(a)
