"""Dense kernels against numpy.linalg references and hand-derived fixtures."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centroqx.errors import NoConvergence, RankDeficient, SingularTriangular
from centroqx.linalg import (
    comp_distance,
    entrywise_div,
    frobenius_norm,
    householder_qr,
    inf_norm_vector,
    kron,
    max_abs,
    operator_norm,
    spectral_norm,
    triangular_solve,
    unvec,
    vec,
    vec_perm,
    vec_perm_indices,
)
from centroqx.rng import uniform_open


def _rand(m, n, seed):
    return uniform_open(seed, m * n).reshape(m, n)


# ---------------------------------------------------------------- vec / kron


def test_vec_is_column_major():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert np.array_equal(vec(a), [1.0, 3.0, 2.0, 4.0])
    assert np.array_equal(unvec(vec(a), 2, 2), a)


def test_kron_matches_numpy():
    a, b = _rand(2, 3, 1), _rand(3, 2, 2)
    assert np.array_equal(kron(a, b), np.kron(a, b))


def test_vec_perm_sends_vec_to_vec_transpose():
    a = _rand(2, 3, 3)
    perm = vec_perm_indices(2, 3)
    # scatter contract: entry at vec-position b lands at row perm[b]
    assert np.array_equal(vec(a.T)[perm], vec(a))
    p = vec_perm(2, 3)
    assert np.array_equal(p @ vec(a), vec(a.T))
    # frozen index fixture for (2, 3): b = i + 2j -> a = j + 3i
    assert list(perm) == [0, 3, 1, 4, 2, 5]


# ----------------------------------------------------------------- norms


def test_elementary_norms_match_numpy():
    a = _rand(5, 3, 4)
    assert frobenius_norm(a) == pytest.approx(np.linalg.norm(a), rel=1e-15)
    assert max_abs(a) == np.max(np.abs(a))
    v = uniform_open(5, 7)
    assert inf_norm_vector(v) == np.max(np.abs(v))


def test_entrywise_div_zero_convention():
    x = np.array([2.0, 3.0, 4.0])
    y = np.array([4.0, 0.0, 2.0])
    assert np.array_equal(entrywise_div(x, y), [0.5, 3.0, 2.0])
    with pytest.raises(ValueError):
        entrywise_div(np.ones(2), np.ones(3))


def test_comp_distance_fixture():
    # |x-y|/|y| entrywise, absolute gap where y == 0: max(0.1, 0.3) = 0.3
    assert comp_distance([1.1, 0.3], [1.0, 0.0]) == pytest.approx(0.3, rel=1e-15)


# ------------------------------------------------------------------- QR


@pytest.mark.parametrize("shape", [(3, 3), (5, 3), (8, 8), (12, 5), (1, 1)])
def test_householder_qr_properties(shape):
    p, l = shape
    a = _rand(p, l, 10 * p + l)
    q, r = householder_qr(a)
    assert np.max(np.abs(q @ r - a)) <= 1e-14 * max(1.0, np.max(np.abs(a)))
    assert np.max(np.abs(q.T @ q - np.eye(l))) <= 1e-14 * l
    assert np.array_equal(np.tril(r, -1), np.zeros((l, l)))  # exact zeros
    assert np.all(np.diag(r) > 0)
    # dual route: R agrees with numpy's R up to the sign convention
    r_ref = np.linalg.qr(a, mode="r")
    r_ref = np.sign(np.diag(r_ref))[:, None] * r_ref
    assert np.max(np.abs(r - r_ref)) <= 1e-12 * max(1.0, np.max(np.abs(r_ref)))


def test_householder_qr_rank_deficient():
    a = np.outer(np.arange(1.0, 5.0), np.ones(3))
    with pytest.raises(RankDeficient):
        householder_qr(a)


# ------------------------------------------------------------ triangular


def test_triangular_solve_fixture():
    # R = [[2,1],[0,4]], B = I -> [[0.5, -0.125], [0, 0.25]] (hand back-substitution)
    r = np.array([[2.0, 1.0], [0.0, 4.0]])
    got = triangular_solve(r, np.eye(2))
    assert np.array_equal(got, np.array([[0.5, -0.125], [0.0, 0.25]]))


def test_triangular_solve_matches_numpy():
    r = np.triu(_rand(6, 6, 5)) + 3.0 * np.eye(6)
    b = _rand(6, 4, 6)
    got = triangular_solve(r, b)
    want = np.linalg.solve(r, b)
    assert np.max(np.abs(got - want)) <= 1e-12


def test_triangular_solve_singular():
    r = np.array([[1.0, 2.0], [0.0, 0.0]])
    with pytest.raises(SingularTriangular):
        triangular_solve(r, np.eye(2))


# ---------------------------------------------------------- spectral norm


@pytest.mark.parametrize("seed", range(6))
def test_spectral_norm_matches_numpy(seed):
    rng = np.random.default_rng(seed)
    m, n = rng.integers(1, 25, size=2)
    a = rng.standard_normal((m, n))
    assert spectral_norm(a) == pytest.approx(np.linalg.norm(a, 2), rel=1e-10, abs=1e-14)


def test_spectral_norm_tied_top_singular_values():
    # Clustered leading singular values must not stall the iteration.
    rng = np.random.default_rng(11)
    u, _ = np.linalg.qr(rng.standard_normal((12, 12)))
    v, _ = np.linalg.qr(rng.standard_normal((12, 12)))
    sv = np.array([2.0, 2.0, 2.0 * (1 - 1e-12), 1.5] + [1.0] * 8)
    a = (u * sv) @ v.T
    assert spectral_norm(a) == pytest.approx(2.0, rel=1e-10)


def test_spectral_norm_edge_cases():
    assert spectral_norm(np.zeros((3, 2))) == 0.0
    assert spectral_norm(np.array([[-4.0]])) == 4.0
    r1 = np.outer(np.arange(1.0, 4.0), np.arange(1.0, 3.0))
    assert spectral_norm(r1) == pytest.approx(np.linalg.norm(r1, 2), rel=1e-12)


def test_operator_norm_block_callbacks():
    a = _rand(7, 5, 12)
    got = operator_norm(lambda v: a @ v, lambda u: a.T @ u, 5)
    assert got == pytest.approx(np.linalg.norm(a, 2), rel=1e-10)


def test_operator_norm_no_convergence_raised():
    a = np.diag([1.0, 1.0 - 1e-13, 0.5])
    with pytest.raises(NoConvergence):
        operator_norm(lambda v: a @ v, lambda u: a.T @ u, 3, max_iter=1)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_spectral_le_frobenius_property(seed):
    a = _rand(4, 3, seed)
    assert spectral_norm(a) <= frobenius_norm(a) + 1e-12


def test_submultiplicativity():
    a, b = _rand(4, 4, 21), _rand(4, 4, 22)
    assert spectral_norm(a @ b) <= spectral_norm(a) * spectral_norm(b) + 1e-12
