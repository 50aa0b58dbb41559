"""Dense matrix kernels behind the reshape-based tensor operations.

SVD and eigenvalue computations delegate to LAPACK through numpy; rank
decisions, pseudoinverses and null spaces are built on top of the SVD with a
single tolerance rule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, ShapeMismatch

EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class SvdResult:
    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray

    def reconstruct(self) -> np.ndarray:
        m, n = self.U.shape[0], self.V.shape[0]
        s = np.zeros((m, n), dtype=np.complex128)
        k = len(self.sigma)
        s[:k, :k] = np.diag(self.sigma)
        return self.U @ s @ self.V.conj().T


def _as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeMismatch(f"expected a matrix, got array of shape {m.shape}")
    return m


def svd(m) -> SvdResult:
    m = _as_matrix(m)
    rows, cols = m.shape
    if m.size == 0:
        return SvdResult(np.eye(rows, dtype=complex), np.zeros(0), np.eye(cols, dtype=complex))
    try:
        u, s, vh = np.linalg.svd(m, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from None
    return SvdResult(u, s, vh.conj().T)


def rank_tolerance(sigma: np.ndarray, shape: tuple[int, int]) -> float:
    if len(sigma) == 0:
        return 0.0
    return float(sigma[0]) * max(shape) * EPS


def rank_with_tol(m, scale: float = 0.0) -> int:
    """Count of singular values above ``max(sigma_max, scale) * max(m, n) * eps``.

    ``scale`` lets a caller raise the cutoff to a known bound on the
    rounding noise in ``m`` (for a computed power ``A^i`` that bound is
    ``||A||_2^i``); the default is the plain relative rule.
    """
    m = _as_matrix(m)
    if m.size == 0 or not np.any(m):
        return 0
    try:
        s = np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from None
    tol = max(rank_tolerance(s, m.shape), scale * max(m.shape) * EPS)
    return int(np.count_nonzero(s > tol))


def pinv(m, rank: int | None = None) -> np.ndarray:
    """Moore-Penrose inverse from a truncated SVD.

    ``rank`` forces the truncation when the caller already knows the rank
    (for instance from a better-conditioned computation).
    """
    m = _as_matrix(m)
    rows, cols = m.shape
    if m.size == 0 or not np.any(m) or rank == 0:
        return np.zeros((cols, rows), dtype=np.complex128)
    res = svd(m)
    if rank is None:
        r = int(np.count_nonzero(res.sigma > rank_tolerance(res.sigma, m.shape)))
    else:
        r = min(int(rank), int(np.count_nonzero(res.sigma > 0)))
    u = res.U[:, :r]
    v = res.V[:, :r]
    return (v / res.sigma[:r]) @ u.conj().T


def null_space(m) -> np.ndarray:
    """Orthonormal basis (as columns) of the null space of ``m``."""
    m = _as_matrix(m)
    res = svd(m)
    r = int(np.count_nonzero(res.sigma > rank_tolerance(res.sigma, m.shape)))
    return res.V[:, r:]


def range_basis(m) -> np.ndarray:
    m = _as_matrix(m)
    res = svd(m)
    r = int(np.count_nonzero(res.sigma > rank_tolerance(res.sigma, m.shape)))
    return res.U[:, :r]


def inv(m) -> np.ndarray:
    m = _as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ShapeMismatch("inverse of a non-square matrix")
    try:
        return np.linalg.inv(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"matrix is singular: {exc}") from None


def eigenvalues(m) -> np.ndarray:
    m = _as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ShapeMismatch("eigenvalues of a non-square matrix")
    if m.size == 0:
        return np.zeros(0, dtype=np.complex128)
    try:
        return np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigenvalue iteration failed: {exc}") from None
