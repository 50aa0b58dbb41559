"""W-weighted Drazin inverse of (possibly non-square) tensors.

For ``B`` with shape ``I(M) x J(N)`` and weight ``W`` with shape
``J(N) x I(M)`` the weighted inverse is ``X = B * [(W*B)^2]^D``.  All heavy
lifting happens on the square products ``W*B`` and ``B*W``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ShapeMismatch
from .gen_inverse import DRAZIN_TOL, drazin, index
from .tensor_core import DenseTensor, einstein_product, norm, power, relative_residual


@dataclass(frozen=True)
class WeightedPair:
    B: DenseTensor
    W: DenseTensor

    def __post_init__(self):
        if self.B.col_dims != self.W.row_dims or self.W.col_dims != self.B.row_dims:
            raise ShapeMismatch(
                f"weight {self.W.shape} does not pair with {self.B.shape}"
            )

    @property
    def BW(self) -> DenseTensor:
        return einstein_product(self.B, self.W)

    @property
    def WB(self) -> DenseTensor:
        return einstein_product(self.W, self.B)


@dataclass(frozen=True)
class WDrazinCheck:
    residuals: tuple[float, float, float]
    k: int
    accepted: bool


def _pair(b, w=None) -> WeightedPair:
    if isinstance(b, WeightedPair):
        return b
    return WeightedPair(b, w)


def w_drazin(b, w=None) -> DenseTensor:
    """``B * [(W*B)^2]^D``; accepts a :class:`WeightedPair` or ``(B, W)``."""
    p = _pair(b, w)
    wb = p.WB
    return einstein_product(p.B, drazin(einstein_product(wb, wb)))


def weighted_k(p: WeightedPair) -> int:
    # k must be positive, so an invertible B*W still uses k = 1.
    return max(index(p.BW).k, 1)


def verify_w_drazin(p: WeightedPair, x: DenseTensor, tol: float = DRAZIN_TOL) -> WDrazinCheck:
    """Residuals of the three defining equations of the weighted inverse.

    (a) ``(BW)^(k+1) X W = (BW)^k`` with ``k = max(ind(BW), 1)``;
    (b) ``X W B W X = X``; (c) ``B W X = X W B``.
    """
    if x.shape != p.B.shape:
        raise ShapeMismatch(f"candidate {x.shape} does not match {p.B.shape}")
    k = weighted_k(p)
    bw = p.BW
    bwk = power(bw, k)
    bwk1 = einstein_product(bwk, bw)
    nb, nw, nx = norm(p.B), norm(p.W), norm(x)
    xw = einstein_product(x, p.W)
    res_a = relative_residual(einstein_product(bwk1, xw), bwk, norm(bwk1) * nx * nw)
    xwbw = einstein_product(xw, bw)
    res_b = relative_residual(einstein_product(xwbw, x), x, nx * nx * nw * nw * nb)
    res_c = relative_residual(
        einstein_product(bw, x), einstein_product(xw, p.B), nb * nw * nx
    )
    residuals = (res_a, res_b, res_c)
    return WDrazinCheck(residuals, k, max(residuals) <= tol)
