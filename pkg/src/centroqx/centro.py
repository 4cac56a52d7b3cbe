"""Centrosymmetric matrices: predicates, folding, and generators.

A real m x n matrix A is centrosymmetric when flipping it upside down and
left-right returns it: ``R_m A R_n = A`` with R_k the exchange matrix. The
fold transform block-diagonalizes any such matrix into two dense blocks of
half size, which is what the factorization module builds on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotCentrosymmetric, OddColumnDimension
from .linalg import as_matrix, max_abs
from .rng import derive_seed, sign_stream, uniform_open

CENTRO_TOL = 1e-12


def exchange_matrix(k: int) -> np.ndarray:
    """The k x k anti-diagonal permutation (ones on the anti-diagonal)."""
    if k < 0:
        raise ValueError("dimension must be non-negative")
    return np.eye(k)[::-1].copy()


def centro_defect(a) -> float:
    """Max-norm distance from double-flip symmetry (exact arithmetic: flips only)."""
    arr = as_matrix(a, "centrosymmetry check")
    return max_abs(arr[::-1, ::-1] - arr)


def is_centrosymmetric(a, tol: float = CENTRO_TOL) -> bool:
    arr = as_matrix(a, "centrosymmetry check")
    return centro_defect(arr) <= tol * (1.0 + max_abs(arr))


def fold_basis(k: int) -> np.ndarray:
    """Orthogonal basis B_k with ``B_k^T R_k B_k`` block-signature diagonal.

    Columns split the space into the flip-symmetric half followed by the
    flip-antisymmetric half; conjugating a centrosymmetric matrix by these
    bases block-diagonalizes it.
    """
    if k <= 0:
        raise ValueError("dimension must be positive")
    p = k // 2
    inv = 1.0 / np.sqrt(2.0)
    b = np.zeros((k, k))
    eye = np.eye(p)
    rev = eye[::-1]
    if k % 2 == 0:
        b[:p, :p] = inv * eye
        b[:p, p:] = inv * eye
        b[p:, :p] = inv * rev
        b[p:, p:] = -inv * rev
    else:
        b[:p, :p] = inv * eye
        b[:p, p + 1:] = inv * eye
        b[p, p] = 1.0
        b[p + 1:, :p] = inv * rev
        b[p + 1:, p + 1:] = -inv * rev
    return b


@dataclass
class FoldedPair:
    """Half-size images of a centrosymmetric matrix under the fold bases.

    ``f`` has shape ceil(m/2) x n/2 and ``g`` has shape floor(m/2) x n/2;
    conjugation by the fold bases maps the original matrix to
    blockdiag(f, g).
    """

    f: np.ndarray
    g: np.ndarray


def fold(a, tol: float = CENTRO_TOL) -> FoldedPair:
    """Fold a centrosymmetric matrix with an even column count.

    Computed directly from the blocks of A (adds/flips only), which keeps the
    fold exact in floating point.
    """
    arr = as_matrix(a, "fold input")
    m, n = arr.shape
    if n % 2 != 0:
        raise OddColumnDimension(f"column count must be even, got {n}")
    if not is_centrosymmetric(arr, tol):
        raise NotCentrosymmetric(
            f"defect {centro_defect(arr):.3e} exceeds tol*(1+max|A|)"
        )
    p, l = m // 2, n // 2
    a11 = arr[:p, :l]
    a12r = arr[:p, l:][:, ::-1]  # A12 @ R_l
    f = a11 + a12r
    g = a11 - a12r
    if m % 2 == 1:
        mid = np.sqrt(2.0) * arr[p, :l]
        f = np.vstack([f, mid])
    return FoldedPair(f=f, g=g)


def unfold(f, g, m: int, n: int) -> np.ndarray:
    """Inverse of :func:`fold` (used for reconstruction checks)."""
    bm = fold_basis(m)
    bn = fold_basis(n)
    l = n // 2
    block = np.zeros((m, n))
    fa = as_matrix(f, "folded block f")
    ga = as_matrix(g, "folded block g")
    block[: fa.shape[0], :l] = fa
    block[fa.shape[0]:, l:] = ga
    return bm @ block @ bn.T


def free_entry_count(m: int, n: int) -> int:
    """Number of independent entries of an m x n centrosymmetric matrix.

    Odd-by-odd shapes are rejected (their center entry is self-mirrored and
    the factorization domain requires even n anyway).
    """
    if m % 2 == 1 and n % 2 == 1:
        raise OddColumnDimension("odd-by-odd shapes are not supported (even n required)")
    count = (m // 2) * n
    if m % 2 == 1:
        count += n // 2
    return count


def centro_from_free_entries(m: int, n: int, values) -> np.ndarray:
    """Build a centrosymmetric matrix from its free entries.

    The free entries fill the top ``floor(m/2)`` rows in row-major order; for
    odd m the first half of the middle row follows. The bottom half is the
    double flip of the top half, so the result is exactly centrosymmetric.
    """
    vals = np.asarray(values, dtype=float).reshape(-1)
    need = free_entry_count(m, n)
    if vals.size != need:
        raise ValueError(f"need {need} free entries for {m}x{n}, got {vals.size}")
    if n % 2 != 0 and m % 2 == 1:
        raise OddColumnDimension("odd-by-odd fill is not supported (even n required)")
    a = np.zeros((m, n))
    p = m // 2
    a[:p, :] = vals[: p * n].reshape(p, n)
    if m % 2 == 1:
        half = vals[p * n:]
        a[p, : n // 2] = half
        a[p, n - n // 2:] = half[::-1]
    a[m - p:, :] = a[:p, :][::-1, ::-1]
    return a


def random_centro(m: int, n: int, seed: int) -> np.ndarray:
    """Centrosymmetric matrix with free entries uniform on (-1, 1)."""
    return centro_from_free_entries(m, n, uniform_open(seed, free_entry_count(m, n)))


def random_sign_centro(m: int, n: int, seed: int) -> np.ndarray:
    """Centrosymmetric +-1 sign pattern."""
    return centro_from_free_entries(m, n, sign_stream(seed, free_entry_count(m, n)))


def toeplitz_centro(first_column) -> np.ndarray:
    """Symmetric Toeplitz matrix ``T[i, j] = b[|i - j|]`` (exactly centrosymmetric)."""
    b = np.asarray(first_column, dtype=float).reshape(-1)
    n = b.size
    if n == 0:
        raise ValueError("first column must be non-empty")
    idx = np.abs(np.arange(n)[:, None] - np.arange(n)[None, :])
    return b[idx]


def random_centro_perturbation(
    a, eps: float, seed: int, k_mode: str = "identity"
) -> tuple[np.ndarray, np.ndarray, float]:
    """Entrywise-relative centrosymmetric perturbation of A.

    Returns ``(dA, K, eps_eff)`` where ``dA = eps * (E * A)`` for a random
    centrosymmetric mask E with entries in (-1, 1), and the pair ``(K,
    eps_eff)`` witnesses the entrywise model ``|dA| <= eps_eff * K|A|``:

    - ``k_mode="identity"``: K = I_m and eps_eff = eps (|dA| <= eps |A|
      entrywise holds by construction);
    - ``k_mode="ones"``: K = all-ones, eps_eff is the smallest factor making
      the model hold for this dA.
    """
    arr = as_matrix(a, "perturbation base")
    m, n = arr.shape
    mask = centro_from_free_entries(
        m, n, uniform_open(derive_seed(seed, 0xE), free_entry_count(m, n))
    )
    da = eps * (mask * arr)
    if k_mode == "identity":
        k = np.eye(m)
        eps_eff = float(eps)
    elif k_mode == "ones":
        k = np.ones((m, m))
        denom = k @ np.abs(arr)
        ratio = np.where(denom > 0.0, np.abs(da) / np.where(denom > 0.0, denom, 1.0), 0.0)
        if np.any((denom == 0.0) & (np.abs(da) > 0.0)):
            raise ValueError("perturbation falls outside the all-ones entrywise model")
        eps_eff = float(np.max(ratio)) if ratio.size else 0.0
    else:
        raise ValueError(f"unknown k_mode {k_mode!r}")
    return da, k, eps_eff
