"""Kronecker-sum Poisson tensors and consistent right-hand sides."""

import numpy as np
import pytest

from tensordrazin import (
    DenseTensor,
    PoissonSpec,
    Unsupported,
    conj_transpose,
    consistent_rhs,
    generate,
    index,
    is_diagonally_dominant,
    norm,
    rsh,
    rshrank,
    spectral_radius,
)
from tensordrazin.poisson import neighbour_counts
from tensordrazin.solvers import iteration_tensor


def matrix_kron_sum(n: int, d: int) -> np.ndarray:
    p = 2 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)
    total = np.zeros((n**d, n**d))
    for slot in range(d):
        term = np.ones((1, 1))
        for j in range(d):
            term = np.kron(term, p if j == slot else np.eye(n))
        total += term
    return total


def test_dirichlet_2d_n2():
    a = generate(PoissonSpec(2, 2))
    expect = [[4, -1, -1, 0], [-1, 4, 0, -1], [-1, 0, 4, -1], [0, -1, -1, 4]]
    assert np.array_equal(rsh(a), np.array(expect, dtype=float))
    assert a.row_dims == a.col_dims == (2, 2)


def test_dirichlet_3d_n2():
    m = rsh(generate(PoissonSpec(3, 2)))
    assert np.all(np.diag(m) == 6)
    off = m - np.diag(np.diag(m))
    assert np.all(off.sum(axis=1) == -3)


@pytest.mark.parametrize("d,n", [(2, 3), (2, 5), (3, 3), (4, 2), (4, 3)])
def test_dirichlet_matches_matrix_construction(d, n):
    a = generate(PoissonSpec(d, n))
    assert a.row_dims == (n,) * d
    assert np.array_equal(rsh(a), matrix_kron_sum(n, d))


@pytest.mark.parametrize("d,n", [(2, 4), (3, 3), (4, 2)])
def test_dirichlet_properties(d, n):
    a = generate(PoissonSpec(d, n))
    assert is_diagonally_dominant(a)
    if n > 2:
        # interior nodes have a full stencil, so their rows are only weakly dominant
        assert not is_diagonally_dominant(a, strict=True)
    m = rsh(a)
    strict_rows = np.abs(np.diag(m)) > np.abs(m).sum(axis=1) - np.abs(np.diag(m))
    assert strict_rows.any()
    assert conj_transpose(a) == a
    assert spectral_radius(iteration_tensor(a, "jacobi")) < 1


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_neumann_null_vector_and_index(n):
    a = generate(PoissonSpec(2, n, "neumann"))
    ones = DenseTensor(np.ones(n * n), (n, n))
    assert norm(a @ ones) == 0
    assert index(a).k == 1
    assert rshrank(a) == n * n - 1


def test_neighbour_counts():
    c = neighbour_counts(4).reshape(4, 4)
    assert c[0, 0] == 2 and c[0, 1] == 3 and c[1, 1] == 4


def test_neumann_other_dims_unsupported():
    with pytest.raises(Unsupported):
        PoissonSpec(3, 4, "neumann")


@pytest.mark.parametrize("args", [(1, 4, "dirichlet"), (2, 1, "dirichlet"), (2, 4, "robin")])
def test_invalid_spec(args):
    with pytest.raises(ValueError):
        PoissonSpec(*args)


def test_rhs_invertible():
    a = generate(PoissonSpec(2, 3))
    b = consistent_rhs(a, seed=5)
    y = DenseTensor(np.random.default_rng(5).standard_normal(9), (3, 3))
    assert norm(b - a @ y) <= 1e-14 * norm(b)


def test_rhs_neumann_zero_sum():
    a = generate(PoissonSpec(2, 6, "neumann"))
    b = consistent_rhs(a, seed=1)
    assert abs(b.data.sum()) <= 1e-12 * norm(b)


def test_rhs_deterministic():
    a = generate(PoissonSpec(2, 4, "neumann"))
    b1 = consistent_rhs(a, seed=11)
    b2 = consistent_rhs(a, seed=11)
    assert np.array_equal(b1.data, b2.data)
    assert not np.array_equal(b1.data, consistent_rhs(a, seed=12).data)
