"""Index, Moore-Penrose, {1}-, Drazin and group inverses of tensors.

Everything here works through the reshape isomorphism: a square tensor
``A`` with row modes ``I(N)`` behaves exactly like the matrix ``rsh(A)``
under the Einstein product, so ranks, pseudoinverses and factorizations are
taken on the flattening and mapped back.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import dense_linalg as dl
from .errors import CandidateInvalid, IndexNotOne, ZeroTensor
from .tensor_core import (
    DenseTensor,
    Shape,
    conj_transpose,
    einstein_product,
    identity,
    norm,
    power,
    relative_residual,
    require_square,
    rsh_inv,
    zeros,
)

DRAZIN_TOL = 1e-8
PENROSE_TOL = 1e-10


@dataclass(frozen=True)
class IndexResult:
    """Index ``k`` together with ``rshrank(A^i)`` for ``i = 0 .. k+1``."""

    k: int
    rank_sequence: tuple[int, ...]


@dataclass(frozen=True)
class FullRankFactors:
    F: DenseTensor
    G: DenseTensor
    r: int


@dataclass(frozen=True)
class CoreNilpotent:
    """``A = B + N`` with ``B`` of index at most one and ``N`` nilpotent."""

    B: DenseTensor
    N: DenseTensor


def rshrank(a: DenseTensor) -> int:
    return dl.rank_with_tol(a.matrix)


def moore_penrose(a: DenseTensor) -> DenseTensor:
    return rsh_inv(dl.pinv(a.matrix), a.shape.transposed())


def one_inverse(a: DenseTensor) -> DenseTensor:
    """A {1}-inverse of ``a``; the Moore-Penrose inverse is returned."""
    return moore_penrose(a)


# Multiple of n * eps * ||A||_2 below which a singular value counts as zero
# in the index recursion.
INDEX_TOL_FACTOR = 10.0


def _compress(m: np.ndarray, tol: float, ranks=None):
    """Rank sequence and range basis of the powers of ``m`` by deflation.

    With ``M = U S V*`` truncated at rank ``r``, ``M^(i+1) = U (S V* U)^i S V*``
    so ``rank(M^(i+1)) = rank((S V* U)^i)`` and ``R(M^(i+1)) = U R((S V* U)^i)``.
    Repeating on the ``r x r`` core keeps every step at the scale of ``M``
    itself instead of forming powers.  ``ranks`` replays a known sequence.
    """
    n = m.shape[0]
    seq = [n]
    basis = np.eye(n, dtype=np.complex128)
    cur = m.astype(np.complex128)
    step = 0
    while True:
        step += 1
        if ranks is not None:
            if step >= len(ranks) - 1:
                return seq, basis
            r = ranks[step]
            u, s, vh = np.linalg.svd(cur)
        elif cur.shape[0] == 0:
            r = 0
        else:
            u, s, vh = np.linalg.svd(cur)
            r = int(np.count_nonzero(s > tol))
        seq.append(r)
        if ranks is None and (r == seq[-2] or r == 0):
            if r == 0:
                seq.append(0)
                basis = basis[:, :0]
            return seq, basis
        basis = basis @ u[:, :r]
        cur = (s[:r, None] * vh[:r]) @ u[:, :r]


def _core_bases(a: DenseTensor):
    """Index of ``a`` plus orthonormal bases of ``R(A^k)`` and ``R((A^k)*)``."""
    require_square(a)
    m = a.matrix
    norm2 = float(np.linalg.norm(m, 2)) if m.size and np.any(m) else 0.0
    tol = INDEX_TOL_FACTOR * m.shape[0] * dl.EPS * norm2
    seq, u = _compress(m, tol)
    _, v = _compress(m.conj().T, tol, ranks=seq)
    return IndexResult(len(seq) - 2, tuple(seq)), u, v


def index(a: DenseTensor) -> IndexResult:
    """Smallest ``k >= 0`` with ``rshrank(A^k) == rshrank(A^(k+1))``.

    The ranks come from a deflation recursion on ``rsh(A)`` that never forms
    a power, with singular values below ``10 n eps ||A||_2`` treated as zero.
    Powers of a matrix far from normal span many orders of magnitude and
    would hide small nonzero singular values under their own rounding.
    """
    return _core_bases(a)[0]


def drazin(a: DenseTensor, k: int | None = None) -> DenseTensor:
    """Drazin inverse ``A^k * (A^(2k+1))^+ * A^k``.

    ``k`` defaults to the index of ``a``; any ``k`` at or above the index
    gives the same tensor.
    """
    info, u, v = _core_bases(a)
    if k is not None and k < info.k:
        raise ValueError(f"k = {k} is below the index {info.k}")
    # With orthonormal U, V spanning R(A^k) and R((A^k)*), the formula
    # collapses to U (V* A U)^-1 V*, the same tensor for every k >= ind(A).
    # This never forms A^(2k+1), whose conditioning grows like its power.
    if u.shape[1] == 0:
        return zeros(a.row_dims, a.col_dims)
    core = v.conj().T @ a.matrix @ u
    return rsh_inv(u @ dl.inv(core) @ v.conj().T, a.shape)


def drazin_via_dual(a: DenseTensor, l: int | None = None) -> DenseTensor:
    """Drazin inverse as ``X^+`` with ``X = (A^l)^+ * A^(2l+1) * (A^l)^+``."""
    require_square(a)
    info = index(a)
    if l is None:
        l = info.k
    elif l < info.k:
        raise ValueError(f"l = {l} is below the index {info.k}")
    r = info.rank_sequence[-1]
    al = power(a, l)
    al_pinv = rsh_inv(dl.pinv(al.matrix, rank=r), al.shape)
    x = al_pinv @ al @ al @ a @ al_pinv
    return rsh_inv(dl.pinv(x.matrix, rank=r), a.shape)


def drazin_residuals(a: DenseTensor, x: DenseTensor, k: int | None = None):
    """Relative residuals of ``A^(k+1) X = A^k``, ``XAX = X`` and ``AX = XA``."""
    require_square(a)
    if k is None:
        k = index(a).k
    ak = power(a, k)
    ak1 = einstein_product(ak, a)
    na, nx = norm(a), norm(x)
    ax = einstein_product(a, x)
    xa = einstein_product(x, a)
    return (
        relative_residual(einstein_product(ak1, x), ak, max(norm(ak1) * nx, na**k)),
        relative_residual(einstein_product(xa, x), x, nx * nx * na),
        relative_residual(ax, xa, na * nx),
    )


def penrose_residuals(a: DenseTensor, x: DenseTensor):
    """Relative residuals of the four Penrose equations."""
    na, nx = norm(a), norm(x)
    ax = einstein_product(a, x)
    xa = einstein_product(x, a)
    return (
        relative_residual(einstein_product(ax, a), a, na * na * nx),
        relative_residual(einstein_product(xa, x), x, nx * nx * na),
        relative_residual(conj_transpose(ax), ax, na * nx),
        relative_residual(conj_transpose(xa), xa, na * nx),
    )


def full_rank_decomposition(a: DenseTensor) -> FullRankFactors:
    """``A = F * G`` with a single inner mode of size ``r = rshrank(A)``.

    ``F`` holds the leading left singular vectors scaled by the singular
    values, ``G`` the conjugated leading right singular vectors.
    """
    m = a.matrix
    res = dl.svd(m)
    r = int(np.count_nonzero(res.sigma > dl.rank_tolerance(res.sigma, m.shape)))
    if r == 0:
        raise ZeroTensor("full-rank decomposition of a zero tensor")
    f = res.U[:, :r] * res.sigma[:r]
    g = res.V[:, :r].conj().T
    return FullRankFactors(
        rsh_inv(f, Shape(a.row_dims, (r,))),
        rsh_inv(g, Shape((r,), a.col_dims)),
        r,
    )


def _check_index_at_most_one(a: DenseTensor) -> None:
    r1 = rshrank(a)
    if r1 == 0:
        return
    if rshrank(einstein_product(a, a)) < r1:
        raise IndexNotOne("rank(A^2) < rank(A): no group inverse")


def group_inverse(a: DenseTensor) -> DenseTensor:
    """Group inverse ``F * (G*F)^-2 * G`` from a full-rank factorization."""
    require_square(a)
    if not np.any(a.matrix) or rshrank(a) == 0:
        return zeros(a.row_dims, a.col_dims)
    fac = full_rank_decomposition(a)
    gf = einstein_product(fac.G, fac.F).matrix
    if dl.rank_with_tol(gf) < fac.r:
        raise IndexNotOne("G*F is singular: index exceeds one")
    gfi = dl.inv(gf)
    core = rsh_inv(gfi @ gfi, Shape((fac.r,), (fac.r,)))
    return einstein_product(einstein_product(fac.F, core), fac.G)


def group_via_one_inverse(a: DenseTensor, cube_one_inverse: DenseTensor | None = None) -> DenseTensor:
    """Group inverse ``A * (A^3)^(1) * A`` for any {1}-inverse of ``A^3``."""
    require_square(a)
    _check_index_at_most_one(a)
    if cube_one_inverse is None:
        cube_one_inverse = one_inverse(power(a, 3))
    return einstein_product(einstein_product(a, cube_one_inverse), a)


def core_nilpotent(a: DenseTensor) -> CoreNilpotent:
    require_square(a)
    ad = drazin(a)
    core = einstein_product(power(a, 2), ad)
    return CoreNilpotent(core, a - core)


def drazin_from_candidate(a: DenseTensor, x: DenseTensor, k: int | None = None,
                          tol: float = DRAZIN_TOL) -> DenseTensor:
    """``X^(k+1) * A^k`` for a candidate ``X`` meeting the two power equations."""
    require_square(a)
    require_square(x)
    if k is None:
        k = index(a).k
    xk = power(x, k)
    xk1 = einstein_product(xk, x)
    ak = power(a, k)
    ak1 = einstein_product(ak, a)
    na, nx = norm(a), norm(x)
    # ||A||^k and ||X||^k bound the rounding noise in the computed powers.
    left = relative_residual(einstein_product(a, xk1), xk, max(na * norm(xk1), nx**k))
    right = relative_residual(einstein_product(x, ak1), ak, max(nx * norm(ak1), na**k))
    if left > tol or right > tol:
        raise CandidateInvalid(
            f"candidate fails A X^(k+1) = X^k ({left:.2e}) or X A^(k+1) = A^k ({right:.2e})"
        )
    return einstein_product(xk1, ak)


def is_drazin_inverse(a: DenseTensor, x: DenseTensor, tol: float = DRAZIN_TOL) -> bool:
    return max(drazin_residuals(a, x)) <= tol


def projector(a: DenseTensor) -> DenseTensor:
    """Spectral projector ``I - A * A^D`` onto ``N(A^k)`` along ``R(A^k)``."""
    return identity(a.row_dims) - einstein_product(a, drazin(a))
