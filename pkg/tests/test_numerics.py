import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wovenframes import numerics
from wovenframes.errors import NoConvergence, NonFiniteValue, NonSymmetric, NotPositiveDefinite, ShapeError
from wovenframes.numerics import operator_norm, rank_nullspace, spd_power, sym_eig

# roots of x^2 - 7x + 1
LO, HI = (7 - math.sqrt(45)) / 2, (7 + math.sqrt(45)) / 2


def random_symmetric(seed, d):
    a = np.random.default_rng(seed).normal(size=(d, d))
    return a + a.T


def random_spd(seed, d):
    a = np.random.default_rng(seed).normal(size=(d, d))
    return a @ a.T + 0.5 * np.eye(d)


def test_sym_eig_diagonal():
    w, v = sym_eig(np.diag([2.0, 1.0]))
    assert w.tolist() == [1.0, 2.0]
    np.testing.assert_allclose(v, [[0, 1], [1, 0]], atol=1e-15)


def test_sym_eig_hand_roots():
    w, _ = sym_eig([[5, 3], [3, 2]])
    np.testing.assert_allclose(w, [LO, HI], rtol=1e-14)
    assert abs(LO - 0.1458980) < 1e-7 and abs(HI - 6.8541020) < 1e-7


def test_sym_eig_identity():
    w, v = sym_eig(np.eye(3))
    assert w.tolist() == [1.0, 1.0, 1.0]
    np.testing.assert_array_equal(v, np.eye(3))


def test_sym_eig_rejects_asymmetric():
    with pytest.raises(NonSymmetric):
        sym_eig([[1.0, 2.0], [0.0, 1.0]])


def test_sym_eig_absorbs_tiny_asymmetry():
    m = np.array([[2.0, 1.0], [1.0 + 1e-15, 2.0]])
    w, _ = sym_eig(m)
    np.testing.assert_allclose(w, [1, 3], rtol=1e-14)


@pytest.mark.parametrize("bad", [[[1.0, np.nan], [np.nan, 1.0]], [[np.inf]]])
def test_sym_eig_rejects_non_finite(bad):
    with pytest.raises(NonFiniteValue):
        sym_eig(bad)


def test_sym_eig_rejects_non_square():
    with pytest.raises(ShapeError):
        sym_eig(np.ones((2, 3)))


def test_sym_eig_sweep_cap(monkeypatch):
    monkeypatch.setattr(numerics, "MAX_SWEEPS", 0)
    with pytest.raises(NoConvergence):
        sym_eig([[2.0, 1.0], [1.0, 2.0]])


def test_sym_eig_sign_convention():
    _, v = sym_eig(random_symmetric(3, 5))
    for j in range(5):
        col = v[:, j]
        first = col[np.abs(col) > 1e-12][0]
        assert first > 0


def test_sym_eig_deterministic():
    m = random_symmetric(11, 6)
    a, b = sym_eig(m), sym_eig(m.copy())
    np.testing.assert_array_equal(a.eigenvalues, b.eigenvalues)
    np.testing.assert_array_equal(a.eigenvectors, b.eigenvectors)


@pytest.mark.parametrize("seed", range(100))
def test_sym_eig_residuals(seed):
    d = 2 + seed % 7
    m = random_symmetric(seed, d)
    w, v = sym_eig(m)
    scale = np.linalg.norm(m)
    assert np.all(np.diff(w) >= 0)
    assert np.linalg.norm(v @ np.diag(w) @ v.T - m) < 1e-10 * scale
    assert np.max(np.abs(v.T @ v - np.eye(d))) < 1e-10
    # independent oracle: LAPACK
    np.testing.assert_allclose(w, np.linalg.eigvalsh(m), atol=1e-12 * scale)


def test_sym_eig_clustered_spectrum():
    q, _ = np.linalg.qr(np.random.default_rng(5).normal(size=(6, 6)))
    m = q @ np.diag([1, 1, 1 + 1e-9, 2, 2, 5]) @ q.T
    w, v = sym_eig(0.5 * (m + m.T))
    np.testing.assert_allclose(w, [1, 1, 1 + 1e-9, 2, 2, 5], atol=1e-13)
    assert np.max(np.abs(v.T @ v - np.eye(6))) < 1e-12


@pytest.mark.parametrize(
    "m, expected",
    [(np.eye(2), 1.0), ([[0, 2], [0, 0]], 2.0), ([[1, -1], [-1, 1]], 2.0), (np.ones((2, 3)), math.sqrt(6))],
)
def test_operator_norm_examples(m, expected):
    assert operator_norm(m) == pytest.approx(expected, rel=1e-14)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 6), st.integers(1, 6))
def test_operator_norm_submultiplicative(seed, p, q, r):
    rng = np.random.default_rng(seed)
    a, b = rng.normal(size=(p, q)), rng.normal(size=(q, r))
    assert operator_norm(a @ b) <= operator_norm(a) * operator_norm(b) * (1 + 1e-12)
    assert operator_norm(a) == pytest.approx(np.linalg.norm(a, 2), rel=1e-12)


def test_spd_power_examples():
    np.testing.assert_allclose(spd_power(np.diag([2.0, 1.0]), -1), np.diag([0.5, 1.0]), atol=1e-15)
    np.testing.assert_allclose(spd_power([[5, 3], [3, 2]], 0.5), [[2, 1], [1, 1]], atol=1e-10)
    for p in (-1, 0.5, -0.5):
        np.testing.assert_allclose(spd_power(np.eye(4), p), np.eye(4), atol=1e-15)


def test_spd_power_rejects_singular():
    with pytest.raises(NotPositiveDefinite):
        spd_power([[1.0, 1.0], [1.0, 1.0]], -1)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8))
def test_spd_power_identities(seed, d):
    m = random_spd(seed, d)
    inv, half, mhalf = spd_power(m, -1), spd_power(m, 0.5), spd_power(m, -0.5)
    eye = np.eye(d)
    assert np.max(np.abs(inv @ m - eye)) < 1e-9
    assert np.max(np.abs(half @ mhalf - eye)) < 1e-9
    quarter = spd_power(half, 0.5)
    np.testing.assert_allclose(np.linalg.matrix_power(quarter, 4), m, rtol=0, atol=1e-9 * np.abs(m).max())
    np.testing.assert_array_equal(half, half.T)


def test_rank_nullspace_examples():
    r, w = rank_nullspace([[1, 1, 0], [0, 0, 1]])
    assert r == 2
    np.testing.assert_allclose(w[:, 0], np.array([1, -1, 0]) / math.sqrt(2), atol=1e-15)
    r, w = rank_nullspace(np.eye(3))
    assert r == 3 and w.shape == (3, 0)
    r, w = rank_nullspace(np.zeros((2, 2)))
    assert r == 0
    np.testing.assert_array_equal(w, np.eye(2))


@pytest.mark.parametrize("tol", [0.0, 1.0, -1e-3])
def test_rank_nullspace_tolerance_range(tol):
    with pytest.raises(ValueError):
        rank_nullspace(np.eye(2), tol)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.integers(1, 8), st.integers(0, 5))
def test_rank_nullspace_low_rank(seed, rows, cols, k):
    rng = np.random.default_rng(seed)
    k = min(k, rows, cols)
    m = rng.normal(size=(rows, k)) @ rng.normal(size=(k, cols))
    r, w = rank_nullspace(m)
    assert r == k
    assert r + w.shape[1] == cols
    if w.size:
        assert np.max(np.abs(m @ w)) < 1e-10 * max(1.0, np.abs(m).max())
        assert np.max(np.abs(w.T @ w - np.eye(w.shape[1]))) < 1e-10


def test_singular_values_graded():
    # small singular values come out to relative accuracy
    m = np.diag([1.0, 1e-6, 1e-12]) @ np.linalg.qr(np.random.default_rng(2).normal(size=(3, 3)))[0]
    s, _ = numerics.singular_values_jacobi(m)
    np.testing.assert_allclose(np.sort(s)[::-1], [1.0, 1e-6, 1e-12], rtol=1e-6)
