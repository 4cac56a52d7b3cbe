"""Structure-preserving thin QX factorization.

A full-column-rank centrosymmetric A (m x n, n even, m >= n) factors as
``A = Q X`` where Q is m x n centrosymmetric with orthonormal columns
satisfying ``Q^T R_m Q = R_n`` (column perplecticity), and X is n x n
invertible and X-type (supported on the double-cone). The algorithm folds A
into two half-size blocks, takes their positive-diagonal thin QR
factorizations, and maps the pieces back through the fold bases; X is
assembled blockwise from the two triangular factors so its off-support
entries are exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .centro import FoldedPair, exchange_matrix, fold, fold_basis
from .errors import SingularTriangular
from .linalg import (
    as_matrix,
    frobenius_norm,
    householder_qr,
    max_abs,
    spectral_norm,
    triangular_solve,
)
from .xops import support_mask

VERIFY_TOL = 1e-12
X_INVERSE_TOL = 1e-11


@dataclass
class QxFactors:
    """Pair (Q, X) from the factorization."""

    q: np.ndarray
    x: np.ndarray


def assemble_x(rf, rg) -> np.ndarray:
    """Build the X factor from the two triangular halves.

    The blocks are sums/differences of the halves with flips; the strict
    lower triangles of the halves are exactly zero, so the assembled matrix
    has exactly zero entries off the double-cone support.
    """
    rfa = as_matrix(rf, "triangular half f")
    rga = as_matrix(rg, "triangular half g")
    l = rfa.shape[0]
    if rfa.shape != (l, l) or rga.shape != (l, l):
        raise ValueError("triangular halves must be square and equally sized")
    s = 0.5 * (rfa + rga)
    d = 0.5 * (rfa - rga)
    x = np.zeros((2 * l, 2 * l))
    x[:l, :l] = s
    x[:l, l:] = d[:, ::-1]
    x[l:, :l] = d[::-1, :]
    x[l:, l:] = s[::-1, ::-1]
    return x


def split_x(x) -> tuple[np.ndarray, np.ndarray]:
    """Recover the two (upper-triangular) halves of an X-type matrix."""
    arr = as_matrix(x, "x-type matrix")
    n = arr.shape[0]
    if arr.shape[1] != n or n % 2 != 0:
        raise ValueError(f"expected an even square matrix, got {arr.shape}")
    l = n // 2
    s = arr[:l, :l]
    d = arr[:l, l:][:, ::-1]
    return s + d, s - d


def qx_decompose(a) -> QxFactors:
    """Thin QX factorization of a full-column-rank centrosymmetric matrix.

    Raises ``NotCentrosymmetric``, ``OddColumnDimension``, or
    ``RankDeficient`` (propagated from the half QR factorizations) when the
    preconditions fail.
    """
    arr = as_matrix(a, "factorization input")
    m, n = arr.shape
    if m < n:
        raise ValueError(f"need at least as many rows as columns, got {m}x{n}")
    folded: FoldedPair = fold(arr)
    qf, rf = householder_qr(folded.f)
    qg, rg = householder_qr(folded.g)
    l = n // 2
    bm = fold_basis(m)
    bn = fold_basis(n)
    block = np.zeros((m, n))
    block[: qf.shape[0], :l] = qf
    block[qf.shape[0]:, l:] = qg
    q = bm @ block @ bn.T
    return QxFactors(q=q, x=assemble_x(rf, rg))


def x_inverse(x) -> np.ndarray:
    """Invert an X-type matrix through its triangular halves.

    The result is again X-type with exact zeros off the support. Raises
    ``SingularTriangular`` when a half is numerically singular.
    """
    f_half, g_half = split_x(x)
    l = f_half.shape[0]
    eye = np.eye(l)
    try:
        f_inv = triangular_solve(f_half, eye)
        g_inv = triangular_solve(g_half, eye)
    except SingularTriangular as exc:
        raise SingularTriangular(f"X factor is numerically singular: {exc}") from exc
    return assemble_x(f_inv, g_inv)


@dataclass
class VerificationReport:
    """Residuals of the factorization identities for a candidate (Q, X)."""

    reconstruction: float  # |A - Q X|_F / (1 + |A|_F)
    orthogonality: float  # |Q^T Q - I|_F
    perplecticity: float  # |Q^T R_m Q - R_n|_F
    q_centro_defect: float  # max|flip(Q) - Q|
    off_support: float  # Frobenius mass of X outside the double-cone

    def max_residual(self) -> float:
        return max(
            self.reconstruction,
            self.orthogonality,
            self.perplecticity,
            self.q_centro_defect,
            self.off_support,
        )


def verify_qx(a, factors: QxFactors) -> VerificationReport:
    """Measure how well (Q, X) satisfies the factorization contract."""
    arr = as_matrix(a, "factorization input")
    q = as_matrix(factors.q, "Q factor")
    x = as_matrix(factors.x, "X factor")
    m, n = arr.shape
    recon = frobenius_norm(arr - q @ x) / (1.0 + frobenius_norm(arr))
    orth = frobenius_norm(q.T @ q - np.eye(n))
    perp = frobenius_norm(q.T @ exchange_matrix(m) @ q - exchange_matrix(n))
    centro_defect = max_abs(q[::-1, ::-1] - q)
    off = frobenius_norm(x * (~support_mask(n).inside))
    return VerificationReport(
        reconstruction=recon,
        orthogonality=orth,
        perplecticity=perp,
        q_centro_defect=centro_defect,
        off_support=off,
    )


def conditioning(x) -> dict[str, float]:
    """Spectral condition number of X and its entrywise-absolute variant.

    Returns ``kappa2 = |X|_2 |X^{-1}|_2`` and ``cond_x = | |X| |X^{-1}| |_2``
    (the latter drives the entrywise perturbation gates).
    """
    arr = as_matrix(x, "X factor")
    xinv = x_inverse(arr)
    return {
        "kappa2": spectral_norm(arr) * spectral_norm(xinv),
        "cond_x": spectral_norm(np.abs(arr) @ np.abs(xinv)),
    }
