import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tensordrazin import (
    DenseTensor,
    ShapeMismatch,
    conj_transpose,
    einstein_product,
    identity,
    is_diagonally_dominant,
    kron_lift,
    norm,
    power,
    rsh,
    rsh_inv,
    split_dlu,
    zeros,
)
from tensordrazin.poisson import PoissonSpec, generate
from tensordrazin.tensor_core import Shape, dominance_margins, relative_residual

from samples import EX_A, EX_AC, EX_C, complex_tensor


def triple_loop(a, b):
    n, k = a.shape
    _, m = b.shape
    out = np.zeros((n, m), dtype=complex)
    for i in range(n):
        for j in range(m):
            s = 0j
            for p in range(k):
                s += a[i, p] * b[p, j]
            out[i, j] = s
    return out


dims_st = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(tuple)


@st.composite
def conforming(draw):
    rows, mid, cols = draw(dims_st), draw(dims_st), draw(dims_st)
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return complex_tensor(rng, rows, mid), complex_tensor(rng, mid, cols)


class TestLayout:
    def test_linearization_is_row_major(self):
        t = DenseTensor(np.arange(36), (2, 3), (2, 3))
        i1, i2, j1, j2 = 1, 2, 0, 1
        assert t.array[i1, i2, j1, j2] == t.data[(i1 * 3 + i2) * 6 + j1 * 3 + j2]
        assert rsh(t)[i1 * 3 + i2, j1 * 3 + j2] == t.array[i1, i2, j1, j2]

    def test_rsh_shape(self):
        assert rsh(EX_A).shape == (6, 6)

    def test_rsh_is_a_view(self):
        assert np.shares_memory(rsh(EX_A), EX_A.data)

    def test_round_trip_bit_exact(self, rng):
        a = complex_tensor(rng, (2, 3), (3, 2))
        assert rsh_inv(rsh(a), a.shape) == a

    def test_rsh_inv_rejects_wrong_size(self):
        with pytest.raises(ShapeMismatch):
            rsh_inv(np.zeros((5, 6)), Shape((2, 3), (2, 3)))

    def test_constructor_rejects_wrong_length(self):
        with pytest.raises(ShapeMismatch):
            DenseTensor(np.zeros(7), (2, 2), (2,))

    def test_nonpositive_dims_rejected(self):
        with pytest.raises(ShapeMismatch):
            Shape((2, 0), (1,))

    def test_immutable(self):
        with pytest.raises(ValueError):
            EX_A.array[0, 0, 0, 0] = 5


class TestEinsteinProduct:
    def test_golden_product(self):
        assert einstein_product(EX_A, EX_C) == EX_AC

    def test_products_do_not_commute(self):
        assert einstein_product(EX_C, EX_A) != EX_AC

    def test_identity_is_neutral(self, rng):
        a = complex_tensor(rng, (2, 3), (2,))
        assert einstein_product(identity((2, 3)), a) == a

    def test_matches_triple_loop(self, rng):
        a = complex_tensor(rng, (2, 2), (2, 2))
        b = complex_tensor(rng, (2, 2), (2, 2))
        ref = triple_loop(rsh(a), rsh(b))
        np.testing.assert_allclose(rsh(a @ b), ref, rtol=1e-13, atol=1e-13)

    def test_mixed_order(self, rng):
        a = complex_tensor(rng, (2, 2, 3), (2, 3))
        b = complex_tensor(rng, (2, 3), (3,))
        c = einstein_product(a, b)
        assert c.row_dims == (2, 2, 3) and c.col_dims == (3,)
        np.testing.assert_allclose(rsh(c), triple_loop(rsh(a), rsh(b)), rtol=1e-13, atol=1e-13)

    def test_shape_mismatch(self, rng):
        with pytest.raises(ShapeMismatch):
            einstein_product(complex_tensor(rng, (2,), (3,)), complex_tensor(rng, (2,), (2,)))

    def test_deterministic(self, rng):
        a = complex_tensor(rng, (3, 3), (3, 3))
        b = complex_tensor(rng, (3, 3), (2,))
        x, y = a @ b, a @ b
        assert x.data.tobytes() == y.data.tobytes()

    @settings(max_examples=100, deadline=None)
    @given(conforming())
    def test_reshape_homomorphism(self, pair):
        a, b = pair
        ref = rsh(a) @ rsh(b)
        got = rsh(einstein_product(a, b))
        scale = np.abs(rsh(a)).max() * np.abs(rsh(b)).max() * rsh(a).shape[1]
        assert np.abs(got - ref).max() <= 1e-13 * scale

    @settings(max_examples=100, deadline=None)
    @given(conforming())
    def test_submultiplicative(self, pair):
        a, b = pair
        assert norm(a @ b) <= norm(a) * norm(b) * (1 + 1e-12)


class TestConjTranspose:
    def test_matches_matrix(self, rng):
        a = complex_tensor(rng, (2, 3), (4,))
        t = conj_transpose(a)
        assert t.row_dims == (4,) and t.col_dims == (2, 3)
        np.testing.assert_array_equal(rsh(t), rsh(a).conj().T)

    def test_involution(self, rng):
        a = complex_tensor(rng, (2, 2), (3,))
        assert conj_transpose(conj_transpose(a)) == a

    def test_symmetric_real_fixed(self):
        a = generate(PoissonSpec(2, 3))
        assert conj_transpose(a) == a


class TestIdentityAndNorms:
    def test_identity_rank(self):
        assert np.linalg.matrix_rank(rsh(identity((2, 2)))) == 4

    def test_identity_needs_dims(self):
        with pytest.raises(ShapeMismatch):
            identity(())

    def test_zero_norms(self):
        z = zeros((2, 2), (2, 2))
        assert norm(z) == 0 and norm(z, "max") == 0

    def test_identity_norms(self):
        i = identity((2, 2))
        assert norm(i) == 2.0 and norm(i, "max") == 1.0

    def test_max_norm_is_matrix_one_norm(self, rng):
        a = complex_tensor(rng, (2, 3), (3, 2))
        assert math.isclose(norm(a, "max"), np.linalg.norm(rsh(a), 1), rel_tol=1e-14)

    def test_frobenius(self, rng):
        a = complex_tensor(rng, (2, 3), (3,))
        assert math.isclose(norm(a), np.linalg.norm(rsh(a)), rel_tol=1e-14)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            norm(EX_A, "nuclear")

    def test_relative_residual(self):
        a = identity((2,))
        assert relative_residual(a, a) == 0.0
        assert relative_residual(a, a * 2) == pytest.approx(math.sqrt(2) / (2 * math.sqrt(2)))


class TestKron:
    def test_identities(self):
        assert kron_lift(identity((2,)), identity((3,))) == identity((2, 3))

    def test_matches_kron(self, rng):
        p = complex_tensor(rng, (2,), (3,))
        q = complex_tensor(rng, (3,), (2,))
        k = kron_lift(p, q)
        assert k.row_dims == (2, 3) and k.col_dims == (3, 2)
        ref = np.zeros((6, 6), dtype=complex)
        for i in range(2):
            for j in range(3):
                ref[i * 3:(i + 1) * 3, j * 2:(j + 1) * 2] = rsh(p)[i, j] * rsh(q)
        np.testing.assert_array_equal(rsh(k), ref)

    def test_tridiagonal_nonzeros(self):
        from tensordrazin.poisson import tridiag
        k = kron_lift(tridiag(3, 2.0, -1.0), identity((3,)))
        count = 0
        for i in range(9):
            for j in range(9):
                count += rsh(k)[i, j] != 0
        # 3 diagonal + 2 * 2 off-diagonal nonzeros per identity block row
        assert count == (3 + 2 * 2) * 3


class TestSplitting:
    def test_diagonal_has_empty_triangles(self):
        d = DenseTensor(np.diag([1.0, 2.0, 3.0, 4.0]), (2, 2), (2, 2))
        s = split_dlu(d)
        assert norm(s.L) == 0 and norm(s.U) == 0 and s.D == d

    def test_reassembles_bit_exact(self, rng):
        a = complex_tensor(rng, (2, 3), (2, 3))
        s = split_dlu(a)
        assert s.D + s.L + s.U == a

    def test_triangular_and_disjoint(self, rng):
        a = complex_tensor(rng, (2, 2), (2, 2))
        s = split_dlu(a)
        assert np.array_equal(rsh(s.L), np.tril(rsh(s.L), -1))
        assert np.array_equal(rsh(s.U), np.triu(rsh(s.U), 1))
        masks = [rsh(t) != 0 for t in (s.D, s.L, s.U)]
        assert not np.any(masks[0] & masks[1]) and not np.any(masks[1] & masks[2])


class TestDominance:
    def test_identity_strict(self):
        assert is_diagonally_dominant(identity((2, 2)), strict=True)

    def test_zero(self):
        z = zeros((2,), (2,))
        assert is_diagonally_dominant(z) and not is_diagonally_dominant(z, strict=True)

    def test_poisson_rows(self):
        a = generate(PoissonSpec(2, 4))
        m = dominance_margins(a)
        assert is_diagonally_dominant(a) and not is_diagonally_dominant(a, strict=True)
        interior = [(i, j) for i in range(1, 3) for j in range(1, 3)]
        for i in range(4):
            for j in range(4):
                lin = i * 4 + j
                if (i, j) in interior:
                    assert m[lin] == 0
                else:
                    assert m[lin] > 0


class TestPower:
    def test_zero_power(self, rng):
        a = complex_tensor(rng, (2, 2), (2, 2))
        assert power(a, 0) == identity((2, 2))

    def test_first_power_bit_exact(self, rng):
        a = complex_tensor(rng, (2, 2), (2, 2))
        assert power(a, 1) == a

    def test_fifth_power(self, rng):
        a = complex_tensor(rng, (2, 3), (2, 3)) * 0.3
        ref = rsh(a)
        for _ in range(4):
            ref = ref @ rsh(a)
        np.testing.assert_allclose(rsh(power(a, 5)), ref, rtol=1e-12, atol=1e-14)

    def test_negative(self):
        with pytest.raises(ValueError):
            power(EX_A, -1)

    def test_needs_square(self, rng):
        with pytest.raises(ShapeMismatch):
            power(complex_tensor(rng, (2,), (3,)), 2)
