"""Kronecker-sum Poisson tensors on uniform grids.

Grid nodes are linearized row-major, the same order as ``rsh``, so a node's
stencil neighbours sit at offsets ``±1, ±n, ±n², ...`` of the flattening.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Unsupported
from .gen_inverse import index
from .tensor_core import (
    DenseTensor,
    Shape,
    einstein_product,
    identity,
    kron_lift,
    power,
    require_square,
    rsh_inv,
)

BOUNDARY_KINDS = ("dirichlet", "neumann")


@dataclass(frozen=True)
class PoissonSpec:
    dim: int
    n: int
    bc: str = "dirichlet"

    def __post_init__(self):
        if self.dim not in (2, 3, 4):
            raise ValueError(f"dim must be 2, 3 or 4, got {self.dim}")
        if self.n < 2:
            raise ValueError(f"need at least 2 grid points per axis, got {self.n}")
        if self.bc not in BOUNDARY_KINDS:
            raise ValueError(f"unknown boundary condition {self.bc!r}")
        if self.bc == "neumann" and self.dim != 2:
            raise Unsupported("Neumann tensors are only provided in two dimensions")


def tridiag(n: int, diag: float, off: float) -> DenseTensor:
    m = np.diag(np.full(n, diag)) + np.diag(np.full(n - 1, off), 1) + np.diag(np.full(n - 1, off), -1)
    return rsh_inv(m, Shape((n,), (n,)))


def kron_sum(p: DenseTensor, d: int) -> DenseTensor:
    """``sum_i I ⊗ .. ⊗ P ⊗ .. ⊗ I`` with ``P`` in slot ``i`` of ``d``."""
    eye = identity(p.row_dims)
    total = None
    for slot in range(d):
        term = None
        for j in range(d):
            f = p if j == slot else eye
            term = f if term is None else kron_lift(term, f)
        total = term if total is None else total + term
    return total


def neighbour_counts(n: int, dim: int = 2) -> np.ndarray:
    """Number of in-grid stencil neighbours of every node (row-major)."""
    grid = np.zeros((n,) * dim, dtype=int)
    for axis in range(dim):
        cnt = np.full(n, 2)
        cnt[0] = cnt[-1] = 1
        shape = [1] * dim
        shape[axis] = n
        grid = grid + cnt.reshape(shape)
    return grid.reshape(-1)


def generate(spec: PoissonSpec) -> DenseTensor:
    if spec.bc == "dirichlet":
        return kron_sum(tridiag(spec.n, 2.0, -1.0), spec.dim)
    if spec.dim != 2:
        raise Unsupported("Neumann tensors are only provided in two dimensions")
    adj = kron_sum(tridiag(spec.n, 0.0, -1.0), 2)
    deg = rsh_inv(np.diag(neighbour_counts(spec.n, 2).astype(float)), adj.shape)
    return adj + deg


def consistent_rhs(a: DenseTensor, seed: int = 0) -> DenseTensor:
    """``A^p * Y`` for a seeded random ``Y``.

    ``p = max(ind(A), 1)``, so the result lies in ``R(A^k)`` and, for an
    invertible ``A``, is the image ``A * Y``.
    """
    require_square(a)
    rng = np.random.default_rng(seed)
    y = DenseTensor(rng.standard_normal(a.shape.row_count), a.row_dims)
    return einstein_product(power(a, max(index(a).k, 1)), y)
