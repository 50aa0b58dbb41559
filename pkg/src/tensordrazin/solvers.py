"""Multilinear systems ``A * X = B``: Drazin solutions and stationary iterations.

Right-hand sides live in ``C^{I(N)}`` (empty column modes).  Extra column
modes on ``B`` are treated as a batch of right-hand sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import dense_linalg as dl
from .errors import (
    ConvergenceFailure,
    Diverged,
    Inconsistent,
    NotConvergent,
    ShapeMismatch,
    ZeroDiagonal,
)
from .gen_inverse import INDEX_TOL_FACTOR, _core_bases, drazin, index
from .tensor_core import (
    DenseTensor,
    SplitOperator,
    einstein_product,
    identity,
    is_diagonally_dominant,
    norm,
    power,
    require_square,
    rsh_inv,
    split_dlu,
    zeros,
)

DIVERGENCE_FACTOR = 1e6
SPECTRAL_MARGIN = 1e-10

__all__ = [
    "SplitOperator",
    "IterationReport",
    "DrazinSolution",
    "ConvergenceDiagnosis",
    "is_drazin_consistent",
    "drazin_solve",
    "general_solution",
    "normal_solve",
    "spectral_radius",
    "neumann_inverse",
    "iteration_tensor",
    "jacobi",
    "gauss_seidel",
    "convergence_check",
]


@dataclass
class IterationReport:
    iterations: int = 0
    residual_history: list[float] = field(default_factory=list)
    converged: bool = False
    stop_reason: str = "max_iter"
    spectral_radius_estimate: float | None = None


@dataclass(frozen=True)
class DrazinSolution:
    particular: DenseTensor
    consistent: bool
    index_used: int


@dataclass(frozen=True)
class ConvergenceDiagnosis:
    method: str
    spectral_radius: float
    h_norm: float
    strictly_diagonally_dominant: bool
    converges: bool


def _check_rhs(a: DenseTensor, b: DenseTensor) -> None:
    require_square(a)
    if b.row_dims != a.col_dims:
        raise ShapeMismatch(f"right-hand side {b.shape} does not conform to {a.shape}")


def is_drazin_consistent(a: DenseTensor, b: DenseTensor, k: int | None = None) -> bool:
    """True iff ``B`` lies in the range of ``A^k`` (numerical rank test)."""
    _check_rhs(a, b)
    info, u, _ = _core_bases(a)
    if k is None:
        k = info.k
    m = b.matrix
    norm2 = float(np.linalg.norm(a.matrix, 2))
    noise = INDEX_TOL_FACTOR * m.shape[0] * dl.EPS * max(norm2**k, float(np.linalg.norm(m, 2)))
    if k >= info.k:
        # R(A^k) is the same subspace for every k >= ind(A)
        return float(np.linalg.norm(m - u @ (u.conj().T @ m), 2)) <= noise
    ak = power(a, k).matrix
    return dl.rank_with_tol(np.hstack([ak, m]), noise) == dl.rank_with_tol(ak, noise)


def drazin_solve(a: DenseTensor, b: DenseTensor) -> DrazinSolution:
    _check_rhs(a, b)
    k = index(a).k
    x = einstein_product(drazin(a, k), b)
    return DrazinSolution(x, is_drazin_consistent(a, b, k), k)


def general_solution(a: DenseTensor, b: DenseTensor, z: DenseTensor) -> DenseTensor:
    """``A^D B + (I - A^D A) Z``."""
    _check_rhs(a, b)
    if z.shape != b.shape:
        raise ShapeMismatch(f"Z {z.shape} must match B {b.shape}")
    k = index(a).k
    if not is_drazin_consistent(a, b, k):
        raise Inconsistent("B is not in the range of A^k")
    ad = drazin(a, k)
    proj = identity(a.row_dims) - einstein_product(ad, a)
    return einstein_product(ad, b) + einstein_product(proj, z)


def normal_solve(a: DenseTensor, b: DenseTensor, variant: str = "drazin_normal") -> DenseTensor:
    """Solution in ``R(A^k)`` of a Drazin normal equation.

    ``drazin_normal``: ``A^(k+1) X = A^k B`` solved by ``A^D B``.
    ``modified``: ``A^(2k) X = A^k B`` solved by ``(A^k)^D B``.
    """
    _check_rhs(a, b)
    k = index(a).k
    if not is_drazin_consistent(a, b, k):
        raise Inconsistent("B is not in the range of A^k")
    if variant == "drazin_normal":
        return einstein_product(drazin(a, k), b)
    if variant == "modified":
        return einstein_product(drazin(power(a, k)), b)
    raise ValueError(f"unknown variant {variant!r}")


def spectral_radius(a: DenseTensor) -> float:
    require_square(a)
    ev = dl.eigenvalues(a.matrix)
    return float(np.max(np.abs(ev))) if len(ev) else 0.0


def neumann_inverse(a: DenseTensor, tol: float = 1e-14, max_terms: int = 100_000) -> DenseTensor:
    """``(I - A)^-1`` as the partial sum ``I + A + ... + A^m``.

    Summation stops at the first ``m`` with ``||A^m||_F <= tol``.
    """
    rho = spectral_radius(a)
    if rho >= 1.0 - SPECTRAL_MARGIN:
        raise NotConvergent(f"spectral radius {rho:.6g} is not below one")
    total = identity(a.row_dims)
    term = total
    for _ in range(max_terms):
        term = einstein_product(term, a)
        total = total + term
        if norm(term) <= tol:
            return total
    raise ConvergenceFailure(f"Neumann series not within {tol} after {max_terms} terms")


def _diagonal(split: SplitOperator) -> np.ndarray:
    d = np.diag(split.D.matrix)
    if np.any(d == 0):
        raise ZeroDiagonal("every diagonal entry must be nonzero")
    return d


def iteration_tensor(a: DenseTensor, method: str) -> DenseTensor:
    """Iteration tensor ``H`` of the Jacobi or Gauss-Seidel splitting."""
    require_square(a)
    split = split_dlu(a)
    d = _diagonal(split)
    if method == "jacobi":
        h = -(split.L.matrix + split.U.matrix) / d[:, None]
    elif method in ("gauss_seidel", "gs"):
        lower = split.D.matrix + split.L.matrix
        h = -np.linalg.solve(lower, split.U.matrix)
    else:
        raise ValueError(f"unknown method {method!r}")
    return rsh_inv(h, a.shape)


def convergence_check(a: DenseTensor, method: str) -> ConvergenceDiagnosis:
    h = iteration_tensor(a, method)
    rho = spectral_radius(h)
    return ConvergenceDiagnosis(
        method=method,
        spectral_radius=rho,
        h_norm=norm(h),
        strictly_diagonally_dominant=is_diagonally_dominant(a, strict=True),
        converges=rho < 1.0 - SPECTRAL_MARGIN,
    )


def _start(a, b, x0):
    _check_rhs(a, b)
    if x0 is None:
        return zeros(b.row_dims, b.col_dims)
    if x0.shape != b.shape:
        raise ShapeMismatch(f"initial guess {x0.shape} must match B {b.shape}")
    return x0


class _Monitor:
    """Residual bookkeeping and the divergence guard shared by both solvers."""

    def __init__(self, a, b, x0):
        self.a, self.b = a, b
        self.report = IterationReport()
        r0 = self.residual(x0)
        self.report.residual_history.append(r0)
        self.base = r0 if r0 > 0 else norm(b)
        self.diffs: list[float] = []

    def residual(self, x) -> float:
        return norm(einstein_product(self.a, x) - self.b)

    def step(self, x, diff: float, tol: float) -> bool:
        rep = self.report
        rep.iterations += 1
        r = self.residual(x)
        rep.residual_history.append(r)
        self.diffs.append(diff)
        if len(self.diffs) >= 2 and self.diffs[-2] > 0:
            rep.spectral_radius_estimate = self.diffs[-1] / self.diffs[-2]
        if not math.isfinite(r) or (self.base > 0 and r > DIVERGENCE_FACTOR * self.base):
            rep.stop_reason = "divergence"
            rep.converged = False
            raise Diverged(
                f"residual {r:.3e} exceeds {DIVERGENCE_FACTOR:g} x initial "
                f"after {rep.iterations} iterations",
                rep,
            )
        if diff < tol:
            rep.converged = True
            rep.stop_reason = "tolerance"
            return True
        return False


def jacobi(a: DenseTensor, b: DenseTensor, x0: DenseTensor | None = None,
           tol: float = 1e-10, max_iter: int = 10_000):
    """Jacobi iteration ``X <- H X + C`` with ``H = -D^-1 (L + U)``.

    Stops when ``||X^(k) - X^(k-1)||_F < tol``.  Returns ``(X, report)``.
    """
    x = _start(a, b, x0)
    split = split_dlu(a)
    d = _diagonal(split)
    h = rsh_inv(-(split.L.matrix + split.U.matrix) / d[:, None], a.shape)
    c = rsh_inv(b.matrix / d[:, None], b.shape)
    mon = _Monitor(a, b, x)
    for _ in range(max_iter):
        x_new = einstein_product(h, x) + c
        diff = norm(x_new - x)
        x = x_new
        if mon.step(x, diff, tol):
            break
    return x, mon.report


def gauss_seidel(a: DenseTensor, b: DenseTensor, x0: DenseTensor | None = None,
                 tol: float = 1e-10, max_iter: int = 10_000):
    """Higher-order Gauss-Seidel sweep in linearized multi-index order.

    Entry ``i`` is refreshed from already-updated entries ``j < i`` and the
    previous sweep's entries ``j > i``.  Returns ``(X, report)``.
    """
    x_t = _start(a, b, x0)
    split = split_dlu(a)
    d = _diagonal(split)
    am = a.matrix
    bm = b.matrix
    x = np.array(x_t.matrix, dtype=np.complex128)
    n = am.shape[0]
    mon = _Monitor(a, b, x_t)
    for _ in range(max_iter):
        prev = x.copy()
        for i in range(n):
            s = bm[i] - am[i, :i] @ x[:i] - am[i, i + 1:] @ x[i + 1:]
            x[i] = s / d[i]
        diff = float(np.linalg.norm(x - prev))
        x_t = rsh_inv(x, b.shape)
        if mon.step(x_t, diff, tol):
            break
    return x_t, mon.report
