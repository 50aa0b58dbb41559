"""Dense even-order tensors and the Einstein product.

A tensor carries an explicit split of its modes into row modes
``(I_1, ..., I_M)`` and column modes ``(J_1, ..., J_N)``.  Entries are stored
row-major over the concatenated multi-index, so flattening the row modes and
the column modes (``rsh``) is a pure reinterpretation of the buffer and the
Einstein product becomes ordinary matrix multiplication of the flattenings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ShapeMismatch

__all__ = [
    "Shape",
    "DenseTensor",
    "SplitOperator",
    "einstein_product",
    "rsh",
    "rsh_inv",
    "conj_transpose",
    "identity",
    "zeros",
    "norm",
    "kron_lift",
    "split_dlu",
    "is_diagonally_dominant",
    "dominance_margins",
    "power",
    "require_square",
    "relative_residual",
]


def _dims(values: Iterable[int]) -> tuple[int, ...]:
    dims = tuple(int(v) for v in values)
    if any(d < 1 for d in dims):
        raise ShapeMismatch(f"dimensions must be positive, got {dims}")
    return dims


@dataclass(frozen=True)
class Shape:
    """Row-mode and column-mode dimensions of a tensor.

    Either list may be empty; an empty ``col_dims`` describes a plain
    right-hand-side tensor in ``C^{I(N)}``.
    """

    row_dims: tuple[int, ...]
    col_dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "row_dims", _dims(self.row_dims))
        object.__setattr__(self, "col_dims", _dims(self.col_dims))

    @property
    def row_count(self) -> int:
        return math.prod(self.row_dims)

    @property
    def col_count(self) -> int:
        return math.prod(self.col_dims)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.row_dims + self.col_dims

    @property
    def is_square(self) -> bool:
        return self.row_dims == self.col_dims

    def transposed(self) -> "Shape":
        return Shape(self.col_dims, self.row_dims)

    def __str__(self):
        rows = "x".join(map(str, self.row_dims)) or "()"
        cols = "x".join(map(str, self.col_dims)) or "()"
        return f"[{rows}]x[{cols}]"


class DenseTensor:
    """Immutable dense complex tensor with a row/column mode split.

    Parameters
    ----------
    data : array_like
        Either an array whose shape is ``row_dims + col_dims`` or any array
        holding ``prod(row_dims) * prod(col_dims)`` entries in row-major
        order.
    row_dims, col_dims : sequence of int
        The mode split.
    """

    __slots__ = ("shape", "_array")

    def __init__(self, data, row_dims: Sequence[int], col_dims: Sequence[int] = ()):
        shape = Shape(tuple(row_dims), tuple(col_dims))
        arr = np.array(data, dtype=np.complex128, copy=True)
        if arr.size != shape.row_count * shape.col_count:
            raise ShapeMismatch(
                f"{arr.size} entries cannot fill a tensor of shape {shape}"
            )
        arr = arr.reshape(shape.dims)
        arr.flags.writeable = False
        self.shape = shape
        self._array = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray, shape: Shape) -> "DenseTensor":
        # Takes ownership of ``arr``; callers pass freshly allocated buffers.
        out = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.complex128).reshape(shape.dims)
        arr.flags.writeable = False
        out.shape = shape
        out._array = arr
        return out

    @classmethod
    def from_matrix(cls, m, row_dims, col_dims=()) -> "DenseTensor":
        return rsh_inv(m, Shape(tuple(row_dims), tuple(col_dims)))

    # -- views -----------------------------------------------------------
    @property
    def array(self) -> np.ndarray:
        """Read-only view with one axis per mode."""
        return self._array

    @property
    def data(self) -> np.ndarray:
        """Read-only flat view in the mandated row-major order."""
        return self._array.reshape(-1)

    @property
    def matrix(self) -> np.ndarray:
        """Read-only ``rsh`` view of shape ``(row_count, col_count)``."""
        return self._array.reshape(self.shape.row_count, self.shape.col_count)

    @property
    def row_dims(self) -> tuple[int, ...]:
        return self.shape.row_dims

    @property
    def col_dims(self) -> tuple[int, ...]:
        return self.shape.col_dims

    @property
    def is_square(self) -> bool:
        return self.shape.is_square

    @property
    def is_real(self) -> bool:
        return not np.any(self._array.imag)

    def __getitem__(self, index):
        return self._array[index]

    # -- elementwise companions -----------------------------------------
    def _check_same(self, other: "DenseTensor"):
        if not isinstance(other, DenseTensor):
            return NotImplemented
        if other.shape != self.shape:
            raise ShapeMismatch(f"shapes differ: {self.shape} vs {other.shape}")
        return None

    def __add__(self, other):
        bad = self._check_same(other)
        if bad is NotImplemented:
            return bad
        return DenseTensor._wrap(self._array + other._array, self.shape)

    def __sub__(self, other):
        bad = self._check_same(other)
        if bad is NotImplemented:
            return bad
        return DenseTensor._wrap(self._array - other._array, self.shape)

    def __neg__(self):
        return DenseTensor._wrap(-self._array, self.shape)

    def __mul__(self, scalar):
        if isinstance(scalar, DenseTensor):
            return NotImplemented
        return DenseTensor._wrap(self._array * complex(scalar), self.shape)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, DenseTensor):
            return NotImplemented
        return DenseTensor._wrap(self._array / complex(scalar), self.shape)

    def __matmul__(self, other):
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return einstein_product(self, other)

    def __eq__(self, other):
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._array, other._array)

    __hash__ = None

    @property
    def H(self) -> "DenseTensor":
        """Conjugate transpose."""
        return conj_transpose(self)

    def __repr__(self):
        return f"DenseTensor(shape={self.shape})"


@dataclass(frozen=True)
class SplitOperator:
    """Additive splitting ``A = D + L + U`` in linearized multi-index order."""

    D: DenseTensor
    L: DenseTensor
    U: DenseTensor


def require_square(a: DenseTensor, what: str = "tensor") -> DenseTensor:
    if not a.is_square:
        raise ShapeMismatch(f"{what} must have equal row and column modes, got {a.shape}")
    return a


def zeros(row_dims: Sequence[int], col_dims: Sequence[int] = ()) -> DenseTensor:
    shape = Shape(tuple(row_dims), tuple(col_dims))
    return DenseTensor._wrap(np.zeros(shape.dims, dtype=np.complex128), shape)


def identity(dims: Sequence[int]) -> DenseTensor:
    dims = tuple(dims)
    if not dims:
        raise ShapeMismatch("identity needs at least one mode")
    shape = Shape(dims, dims)
    return DenseTensor._wrap(np.eye(shape.row_count, dtype=np.complex128), shape)


def rsh(a: DenseTensor) -> np.ndarray:
    """Flatten row modes and column modes into a (read-only) matrix view."""
    return a.matrix


def rsh_inv(m, shape: Shape) -> DenseTensor:
    m = np.asarray(m)
    if m.ndim == 1 and shape.col_count == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or m.shape != (shape.row_count, shape.col_count):
        raise ShapeMismatch(
            f"matrix of shape {m.shape} does not match tensor shape {shape}"
        )
    return DenseTensor._wrap(np.array(m, dtype=np.complex128, order="C"), shape)


def einstein_product(a: DenseTensor, b: DenseTensor) -> DenseTensor:
    """Contract the column modes of ``a`` against the row modes of ``b``.

    Each output entry is summed over the contracted multi-index in ascending
    linear order, so repeated calls are bit-reproducible.
    """
    if a.col_dims != b.row_dims:
        raise ShapeMismatch(
            f"cannot contract {a.shape} with {b.shape}: "
            f"{a.col_dims} != {b.row_dims}"
        )
    am, bm = a.matrix, b.matrix
    out = np.zeros((am.shape[0], bm.shape[1]), dtype=np.complex128)
    for k in range(am.shape[1]):
        ak = am[:, k]
        if not ak.any():
            continue
        out += ak[:, None] * bm[k][None, :]
    return DenseTensor._wrap(out, Shape(a.row_dims, b.col_dims))


def conj_transpose(a: DenseTensor) -> DenseTensor:
    return DenseTensor._wrap(a.matrix.conj().T.copy(), a.shape.transposed())


def norm(a: DenseTensor, kind: str = "frobenius") -> float:
    """Frobenius norm, or the max norm (largest column-index sum of moduli).

    The max norm takes, for every column multi-index ``j``, the sum of
    ``|a(i, j)|`` over all row multi-indices ``i`` and returns the largest,
    which is the matrix 1-norm of ``rsh(a)``.
    """
    m = a.matrix
    if kind in ("frobenius", "fro", "f"):
        return float(np.sqrt(np.sum(m.real**2 + m.imag**2)))
    if kind in ("max", "inf"):
        if m.size == 0:
            return 0.0
        return float(np.max(np.sum(np.abs(m), axis=0)))
    raise ValueError(f"unknown norm kind {kind!r}")


def kron_lift(a: DenseTensor, b: DenseTensor) -> DenseTensor:
    """Tensor whose flattening is the Kronecker product of the flattenings."""
    shape = Shape(a.row_dims + b.row_dims, a.col_dims + b.col_dims)
    return DenseTensor._wrap(np.kron(a.matrix, b.matrix), shape)


def split_dlu(a: DenseTensor) -> SplitOperator:
    require_square(a)
    m = a.matrix
    d = np.diag(np.diag(m))
    lower = np.tril(m, -1)
    upper = np.triu(m, 1)
    return SplitOperator(
        DenseTensor._wrap(d, a.shape),
        DenseTensor._wrap(lower, a.shape),
        DenseTensor._wrap(upper, a.shape),
    )


def dominance_margins(a: DenseTensor) -> np.ndarray:
    """Per-row ``|a(i,i)| - sum_{j != i} |a(i,j)|`` over linearized rows."""
    require_square(a)
    absm = np.abs(a.matrix)
    diag = np.diag(absm)
    return diag - (absm.sum(axis=1) - diag)


def is_diagonally_dominant(a: DenseTensor, strict: bool = False) -> bool:
    margins = dominance_margins(a)
    return bool(np.all(margins > 0)) if strict else bool(np.all(margins >= 0))


def power(a: DenseTensor, p: int) -> DenseTensor:
    """``a`` raised to ``p`` under the Einstein product (``p = 0`` gives I)."""
    require_square(a)
    if p < 0:
        raise ValueError("negative powers are not defined here")
    result = None
    base = a
    while p:
        if p & 1:
            result = base if result is None else einstein_product(result, base)
        p >>= 1
        if p:
            base = einstein_product(base, base)
    return identity(a.row_dims) if result is None else result


def relative_residual(lhs: DenseTensor, rhs: DenseTensor, scale: float = 0.0) -> float:
    """``||lhs - rhs||_F`` relative to the larger of both sides and ``scale``.

    ``scale`` should bound the magnitude of the operands that produced the
    two sides (e.g. ``||A|| * ||X||`` for a product), so cancellation down to
    nearly zero is not reported as a large relative error.
    """
    diff = norm(lhs - rhs)
    if diff == 0.0:
        return 0.0
    return diff / max(norm(lhs), norm(rhs), scale)
