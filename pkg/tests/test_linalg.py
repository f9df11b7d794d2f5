import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import random_hermitian
from mdient import linalg as la
from mdient.errors import InvalidArgumentError
from mdient.model import DipoleAxis, build_hamiltonian

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
real4 = arrays(np.float64, (4, 4), elements=finite)
real2 = arrays(np.float64, (2, 2), elements=finite)


def test_kron_identity():
    np.testing.assert_array_equal(la.kron(la.SIGMA_0, la.SIGMA_0), np.eye(4))


def test_kron_zz_is_diagonal():
    np.testing.assert_array_equal(la.kron(la.SIGMA_3, la.SIGMA_3), np.diag([1, -1, -1, 1]))


def test_kron_xx_is_antidiagonal():
    np.testing.assert_array_equal(la.kron(la.SIGMA_1, la.SIGMA_1), np.fliplr(np.eye(4)))


def test_kron_rejects_wrong_dims():
    with pytest.raises(InvalidArgumentError):
        la.kron(np.eye(4), la.SIGMA_0)


def test_kron_matches_numpy(rng):
    a, b = rng.normal(size=(2, 2, 2)) + 1j * rng.normal(size=(2, 2, 2))
    np.testing.assert_allclose(la.kron(a, b), np.kron(a, b), atol=1e-15)


def test_eig_diagonal():
    es = la.hermitian_eig(np.diag([3.0, 1.0]))
    np.testing.assert_allclose(es.eigenvalues, [1, 3])


def test_eig_hamiltonian_spectrum():
    es = la.hermitian_eig(build_hamiltonian(DipoleAxis()))
    np.testing.assert_allclose(es.eigenvalues, [-1, -1, 0, 2], atol=1e-12)


def test_eig_rejects_non_hermitian():
    with pytest.raises(InvalidArgumentError):
        la.hermitian_eig(np.array([[0, 1], [0, 0]]))


def test_eig_deterministic(rng):
    m = random_hermitian(rng)
    a, b = la.hermitian_eig(m), la.hermitian_eig(m)
    np.testing.assert_array_equal(a.eigenvalues, b.eigenvalues)
    np.testing.assert_array_equal(a.eigenvectors, b.eigenvectors)


def test_eig_batched_matches_single(rng):
    ms = np.stack([random_hermitian(rng) for _ in range(5)])
    batch = la.hermitian_eig(ms)
    for k in range(5):
        single = la.hermitian_eig(ms[k])
        np.testing.assert_allclose(batch.eigenvalues[k], single.eigenvalues, atol=1e-13)


@settings(max_examples=200, deadline=None)
@given(re=real4, im=real4)
def test_eig_reconstruction_and_eigenpairs(re, im):
    m = re + 1j * im
    m = m + m.conj().T
    es = la.hermitian_eig(m)
    v = es.eigenvectors
    scale = max(1.0, np.abs(m).max())
    assert np.linalg.norm(es.reconstruct() - m) < 1e-10 * scale
    np.testing.assert_allclose(v.conj().T @ v, np.eye(4), atol=1e-10)
    np.testing.assert_allclose(m @ v, v * es.eigenvalues, atol=1e-10 * scale)
    assert np.all(np.diff(es.eigenvalues) >= 0)
    # independent LAPACK spectrum as oracle
    np.testing.assert_allclose(es.eigenvalues, np.linalg.eigvalsh(m), atol=1e-10 * scale)


def test_eig_degenerate_cluster_spans_eigenspace():
    h = build_hamiltonian(DipoleAxis())
    es = la.hermitian_eig(h)
    cluster = es.eigenvectors[:, :2]
    proj = cluster @ cluster.conj().T
    expected = np.diag([1.0, 0, 0, 1.0])  # span{|00>, |11>} = span{Phi+, Phi-}
    np.testing.assert_allclose(proj, expected, atol=1e-12)


def test_expm_zero_scale_is_identity(rng):
    np.testing.assert_allclose(la.expm_i(random_hermitian(rng), 0.0), np.eye(4), atol=1e-12)


def test_expm_sigma3_pi():
    u = la.expm_i(la.SIGMA_3, math.pi)
    np.testing.assert_allclose(u, np.diag([np.exp(-1j * math.pi), np.exp(1j * math.pi)]), atol=1e-15)


def test_expm_inverse_pair():
    h = build_hamiltonian(DipoleAxis())
    t = 0.731
    np.testing.assert_allclose(la.expm_i(h, t) @ la.expm_i(h, -t), np.eye(4), atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(re=real4, im=real4, t=st.floats(-20, 20))
def test_expm_unitary(re, im, t):
    m = re + 1j * im
    m = m + m.conj().T
    u = la.expm_i(m, t)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(4), atol=1e-10)


def test_expm_matches_taylor_series(rng):
    # independent route: scaling-and-squaring of a truncated Taylor series
    m = random_hermitian(rng) * 0.3
    t = 1.7
    a = -1j * t * m / 2**10
    term, acc = np.eye(4, dtype=complex), np.eye(4, dtype=complex)
    for k in range(1, 20):
        term = term @ a / k
        acc = acc + term
    for _ in range(10):
        acc = acc @ acc
    np.testing.assert_allclose(la.expm_i(m, t), acc, atol=1e-10)


def test_partial_trace_bell_is_maximally_mixed():
    phi = la.projector(np.array([1, 0, 0, 1]) / math.sqrt(2))
    np.testing.assert_allclose(la.partial_trace(phi, "first"), np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(la.partial_trace(phi, "second"), np.eye(2) / 2, atol=1e-15)


def test_partial_trace_product_factorizes(rng):
    from conftest import random_density

    ra, rb = random_density(rng, 2), random_density(rng, 2)
    rho = la.kron(ra, rb)
    np.testing.assert_allclose(la.partial_trace(rho, "first"), ra, atol=1e-14)
    np.testing.assert_allclose(la.partial_trace(rho, "second"), rb, atol=1e-14)


def test_partial_trace_matches_loops(rng):
    m = random_hermitian(rng)
    keep_a = np.zeros((2, 2), complex)
    keep_b = np.zeros((2, 2), complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                keep_a[i, j] += m[2 * i + k, 2 * j + k]
                keep_b[i, j] += m[2 * k + i, 2 * k + j]
    np.testing.assert_allclose(la.partial_trace(m, "first"), keep_a, atol=1e-14)
    np.testing.assert_allclose(la.partial_trace(m, "second"), keep_b, atol=1e-14)


def test_partial_trace_bad_label():
    with pytest.raises(InvalidArgumentError):
        la.partial_trace(np.eye(4), "both")


@settings(max_examples=100, deadline=None)
@given(re1=real4, im1=real4, re2=real4, c=st.floats(-5, 5))
def test_partial_trace_linear_and_trace_preserving(re1, im1, re2, c):
    a = re1 + 1j * im1
    a = a + a.conj().T
    b = re2 + re2.T
    for keep in ("first", "second"):
        lhs = la.partial_trace(a + c * b, keep)
        rhs = la.partial_trace(a, keep) + c * la.partial_trace(b, keep)
        np.testing.assert_allclose(lhs, rhs, atol=1e-10)
        assert abs(np.trace(la.partial_trace(a, keep)) - np.trace(a)) < 1e-12 * max(1, np.abs(a).max())


@settings(max_examples=100, deadline=None)
@given(a=real2, b=real2, c=real2, d=real2, ai=real2, ci=real2)
def test_kron_mixed_product(a, b, c, d, ai, ci):
    a = a + 1j * ai
    c = c + 1j * ci
    lhs = la.kron(a, b) @ la.kron(c, d)
    rhs = la.kron(a @ c, b @ d)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12 * max(1.0, np.abs(lhs).max()))


@settings(max_examples=50, deadline=None)
@given(a=real2, b=real2, c=real2, s=st.floats(-3, 3))
def test_kron_bilinear(a, b, c, s):
    np.testing.assert_allclose(la.kron(a + s * c, b), la.kron(a, b) + s * la.kron(c, b), atol=1e-10)


def test_small_ops(rng):
    a, b = random_hermitian(rng, 2), random_hermitian(rng, 2)
    np.testing.assert_array_equal(la.adjoint(la.adjoint(a)), a)
    assert abs(la.trace(la.kron(a, b)) - la.trace(a) * la.trace(b)) < 1e-12
    assert la.frobenius_distance(a, a) == 0
    np.testing.assert_allclose(la.matmul(a, b), a @ b)
    np.testing.assert_allclose(la.add(a, b), a + b)
    np.testing.assert_allclose(la.scale(a, 2j), 2j * a)
    assert math.isclose(la.frobenius_distance(np.eye(2), np.zeros((2, 2))), math.sqrt(2))


def test_dimension_mismatch():
    with pytest.raises(InvalidArgumentError):
        la.matmul(np.eye(2), np.eye(4))
    with pytest.raises(InvalidArgumentError):
        la.frobenius_distance(np.eye(2), np.eye(4))


def test_hermitian_helper_tolerance():
    m = np.array([[1, 1e-13j], [0, 1]])
    la.hermitian(m)
    with pytest.raises(InvalidArgumentError):
        la.hermitian(np.array([[1, 1e-9], [0, 1]]))


def test_phase_distance_ignores_global_phase(rng):
    from conftest import random_state

    v = random_state(rng)
    assert la.phase_distance(np.exp(0.7j) * v, v) < 1e-15
    w = random_state(rng)
    assert la.phase_distance(v, w) > 1e-3
