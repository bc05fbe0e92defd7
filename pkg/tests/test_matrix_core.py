import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sectoria.errors import DimensionError, NotPSDError, SingularMatrixError
from sectoria.matrix_core import (
    all_ky_fan,
    cartesian_decompose,
    hermitian_eig,
    ky_fan,
    log_abs_det,
    loewner_leq,
    parse_norm_kind,
    psd_power,
    schatten,
    singular_values,
    unitarily_invariant_norm,
)
from sectoria.ensembles import random_unitary

from conftest import random_complex, random_pd

seeds = st.integers(0, 2**32 - 1)


def test_cartesian_identity():
    re, im = cartesian_decompose(np.eye(2))
    np.testing.assert_array_equal(re, np.eye(2))
    np.testing.assert_array_equal(im, np.zeros((2, 2)))


def test_cartesian_scalar():
    re, im = cartesian_decompose([[1 + 1j]])
    assert re[0, 0] == 1 and im[0, 0] == 1


@given(seeds)
def test_cartesian_reconstruction(seed):
    A = random_complex(4, np.random.default_rng(seed))
    re, im = cartesian_decompose(A)
    np.testing.assert_allclose(re, re.conj().T, atol=1e-14)
    np.testing.assert_allclose(im, im.conj().T, atol=1e-14)
    assert np.linalg.norm(re + 1j * im - A) <= 1e-14 * np.linalg.norm(A)


def test_cartesian_rejects_non_square():
    with pytest.raises(DimensionError):
        cartesian_decompose(np.ones((2, 3)))


def test_hermitian_eig_diagonal_and_pauli():
    np.testing.assert_allclose(hermitian_eig(np.diag([3.0, 1.0, 2.0])).eigenvalues, [1, 2, 3])
    np.testing.assert_allclose(hermitian_eig([[0, 1], [1, 0]]).eigenvalues, [-1, 1])


@given(seeds)
def test_hermitian_eig_trace_and_reconstruction(seed):
    X = random_complex(6, np.random.default_rng(seed))
    H = X + X.conj().T
    w, U = hermitian_eig(H)
    assert np.all(np.diff(w) >= 0)
    assert abs(np.trace(H).real - w.sum()) <= 1e-10 * (1 + np.abs(w).sum())
    assert np.linalg.norm(U @ np.diag(w) @ U.conj().T - H) <= 1e-12 * np.linalg.norm(H)
    assert np.linalg.norm(U.conj().T @ U - np.eye(6)) <= 1e-12


def test_psd_power_examples():
    np.testing.assert_allclose(psd_power(np.eye(3), 0.37), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(psd_power(np.diag([4.0, 9.0]), 0.5), np.diag([2.0, 3.0]), atol=1e-14)


@given(seeds)
def test_psd_power_additive(seed):
    P = random_pd(5, np.random.default_rng(seed), lo=0.0)
    np.testing.assert_allclose(psd_power(P, 0.3) @ psd_power(P, 0.7), P, atol=1e-10 * np.linalg.norm(P))
    np.testing.assert_allclose(psd_power(P, 1.0), P, atol=1e-12 * np.linalg.norm(P))


def test_psd_power_errors():
    with pytest.raises(NotPSDError):
        psd_power(np.diag([1.0, -1.0]), 0.5)
    with pytest.raises(SingularMatrixError):
        psd_power(np.diag([1.0, 0.0]), -0.5)
    # roundoff-size negative eigenvalue is clamped
    np.testing.assert_allclose(psd_power(np.diag([1.0, -1e-14]), 0.5), np.diag([1.0, 0.0]))


def test_singular_values_examples():
    np.testing.assert_allclose(singular_values(np.eye(3)), [1, 1, 1])
    np.testing.assert_allclose(singular_values(np.diag([1 + 1j, 0])), [np.sqrt(2), 0], atol=1e-15)


@given(seeds)
def test_singular_values_vs_gram_and_det(seed):
    A = random_complex(5, np.random.default_rng(seed))
    s = singular_values(A)
    assert np.all(np.diff(s) <= 0) and np.all(s >= 0)
    gram = np.sqrt(np.clip(np.linalg.eigvalsh(A.conj().T @ A), 0, None))[::-1]
    np.testing.assert_allclose(s, gram, atol=1e-10 * s[0])
    assert abs(np.prod(s) - abs(np.linalg.det(A))) <= 1e-8 * abs(np.linalg.det(A))
    np.testing.assert_allclose(singular_values(A.conj().T), s, atol=1e-10 * s[0])


def test_log_abs_det_examples():
    assert log_abs_det(np.eye(4)) == 0.0
    assert log_abs_det(np.diag([2, 1 + 1j])) == pytest.approx(np.log(2 * np.sqrt(2)), abs=1e-15)
    assert log_abs_det(np.diag([1.0, 0.0])) == -np.inf


@given(seeds)
def test_log_abs_det_vs_svd_and_product(seed):
    r = np.random.default_rng(seed)
    A, B = random_complex(6, r), random_complex(6, r)
    assert log_abs_det(A) == pytest.approx(np.sum(np.log(singular_values(A))), abs=1e-8)
    A5, B5 = A[:5, :5], B[:5, :5]
    assert log_abs_det(A5 @ B5) == pytest.approx(log_abs_det(A5) + log_abs_det(B5), abs=1e-8)


def test_loewner_examples(rng):
    assert loewner_leq(np.zeros((2, 2)), np.eye(2), 1e-9) == (True, 1.0)
    assert loewner_leq(np.eye(2), np.zeros((2, 2)), 1e-9) == (False, -1.0)
    P = random_pd(4, rng)
    holds, margin = loewner_leq(P, P + 1e-3 * np.eye(4), 1e-9)
    assert holds and margin == pytest.approx(1e-3, rel=1e-6)
    holds, margin = loewner_leq(P, P)
    assert holds and margin == 0.0


def test_loewner_antisymmetric(rng):
    P, Q = random_pd(4, rng), random_pd(4, rng)
    a, _ = loewner_leq(P, Q)
    b, _ = loewner_leq(Q, P)
    assert not (a and b)


def test_loewner_dimension_mismatch():
    with pytest.raises(DimensionError):
        loewner_leq(np.eye(2), np.eye(3))


def test_norm_examples():
    assert unitarily_invariant_norm(np.diag([3.0, 1.0]), ky_fan(1)) == 3
    assert unitarily_invariant_norm(np.eye(4), schatten(2)) == pytest.approx(2.0)
    assert unitarily_invariant_norm(np.eye(4), "schatten:inf") == 1.0
    assert parse_norm_kind("ky_fan:2") == ky_fan(2)


@pytest.mark.parametrize("bad", [ky_fan(0), ky_fan(5), schatten(0.5)])
def test_norm_rejects_bad_kind(bad):
    with pytest.raises(ValueError):
        unitarily_invariant_norm(np.eye(4), bad)


@settings(max_examples=30)
@given(seeds)
def test_norm_unitary_invariance(seed):
    r = np.random.default_rng(seed)
    A = random_complex(4, r)
    U, V = random_unitary(4, r), random_unitary(4, r)
    for kind in all_ky_fan(4) + [schatten(p) for p in (1, 2, 3, np.inf)]:
        a = unitarily_invariant_norm(A, kind)
        assert unitarily_invariant_norm(U @ A @ V, kind) == pytest.approx(a, rel=1e-10)
