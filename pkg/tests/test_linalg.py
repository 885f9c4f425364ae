import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cn
from mimorate.linalg import (NotPositiveDefiniteError, cholesky, column_norm_sq, frobenius_norm_sq,
                             hermitian, invert_hpd, matmul)


def test_hermitian_scalar():
    assert hermitian([[2 + 3j]])[0, 0] == 2 - 3j


def test_hermitian_identity_and_involution(rng):
    assert np.array_equal(hermitian(np.eye(2)), np.eye(2))
    a = cn(rng, 3, 5)
    assert hermitian(a).shape == (5, 3)
    assert np.array_equal(hermitian(hermitian(a)), a)


def test_matmul_basics(rng):
    a = cn(rng, 4, 4)
    assert np.allclose(matmul(a, np.eye(4)), a)
    assert matmul([[1j]], [[1j]])[0, 0] == -1


def test_matmul_known_product():
    a = np.array([[1 + 1j, 2, 0], [0, 1j, 3 - 1j]])
    b = np.array([[1, 1j], [2 - 1j, 0], [1, 1]])
    # Hand expansion of the six inner products
    expected = np.array([
        [(1 + 1j) * 1 + 2 * (2 - 1j) + 0, (1 + 1j) * 1j + 0 + 0],
        [0 + 1j * (2 - 1j) + (3 - 1j), 0 + 0 + (3 - 1j)],
    ])
    assert np.allclose(matmul(a, b), expected)
    assert np.allclose(expected, [[5 - 1j, -1 + 1j], [4 + 1j, 3 - 1j]])


def test_matmul_dimension_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        matmul(np.ones((2, 3)), np.ones((2, 3)))


def test_matmul_associative(rng):
    a, b, c = cn(rng, 3, 4), cn(rng, 4, 5), cn(rng, 5, 2)
    left, right = matmul(matmul(a, b), c), matmul(a, matmul(b, c))
    assert np.linalg.norm(left - right) <= 1e-10 * np.linalg.norm(left)


def test_invert_identity_and_diagonal():
    assert np.allclose(invert_hpd(np.eye(3)), np.eye(3))
    assert np.allclose(invert_hpd(np.diag([2.0, 5.0])), np.diag([0.5, 0.2]))


def test_invert_random_hpd_residual(rng):
    a = cn(rng, 4, 4)
    g = a @ hermitian(a) + np.eye(4)
    assert np.linalg.norm(g @ invert_hpd(g) - np.eye(4)) <= 1e-8 * 4


def test_cholesky_factor(rng):
    a = cn(rng, 5, 5)
    g = a @ hermitian(a) + np.eye(5)
    L = cholesky(g)
    assert np.allclose(np.triu(L, 1), 0)
    assert np.allclose(L @ hermitian(L), g)


def test_not_positive_definite():
    with pytest.raises(NotPositiveDefiniteError):
        invert_hpd(np.array([[1.0, 2.0], [2.0, 1.0]]))
    with pytest.raises(NotPositiveDefiniteError):
        invert_hpd(np.zeros((2, 2)) + np.diag([1.0, 0.0]))


def test_batch_failure_reports_index():
    g = np.stack([np.eye(2), np.eye(2), np.diag([1.0, -1.0])])
    with pytest.raises(NotPositiveDefiniteError) as exc:
        invert_hpd(g)
    assert exc.value.index == 2


def test_non_hermitian_rejected():
    with pytest.raises(ValueError, match="Hermitian"):
        invert_hpd(np.array([[2.0, 1.0], [0.0, 2.0]]))


def test_gram_of_random_channels_always_inverts(rng):
    k, m, n = 6, 10, 10_000
    h = cn(rng, n, k, m)
    g = h @ hermitian(h)
    assert np.max(np.abs(g - hermitian(g))) <= 1e-12 * np.max(np.abs(g))
    g = 0.5 * (g + hermitian(g))
    inv = invert_hpd(g)
    resid = np.linalg.norm(g @ inv - np.eye(k), axis=(-2, -1))
    assert np.max(resid) <= 1e-8 * k


def test_norms():
    assert frobenius_norm_sq(np.eye(3)) == 3
    assert frobenius_norm_sq([[3 + 4j]]) == 25
    assert column_norm_sq(np.eye(3), 1) == 1
    assert column_norm_sq(np.array([[1 + 1j], [1 - 1j]]), 0) == 4
    with pytest.raises(IndexError):
        column_norm_sq(np.eye(2), 2)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_frobenius_is_sum_of_columns(r, c, seed):
    a = cn(np.random.default_rng(seed), r, c)
    assert frobenius_norm_sq(a) == pytest.approx(sum(column_norm_sq(a, j) for j in range(c)))
    assert column_norm_sq(a, 0) == pytest.approx(frobenius_norm_sq(a[:, :1]))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_inverse_residual_property(n, seed):
    a = cn(np.random.default_rng(seed), n, n + 3)
    g = a @ hermitian(a)
    g = 0.5 * (g + hermitian(g))
    assert np.linalg.norm(g @ invert_hpd(g) - np.eye(n)) <= 1e-8 * n
