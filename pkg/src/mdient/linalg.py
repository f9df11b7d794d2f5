"""Dense complex linear algebra for 2x2 and 4x4 operators.

Matrices are plain ``numpy`` complex arrays. Every routine here also accepts a
leading stack of matrices (shape ``(..., n, n)``), which the sweep engine uses
to evaluate whole parameter grids at once.

Basis order for two qubits is |00>, |01>, |10>, |11>; the first tensor factor
is dipole a.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

ALGEBRA_TOL = 1e-12
EIG_TOL = 1e-10

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_0, SIGMA_1, SIGMA_2, SIGMA_3)

_EPS = np.finfo(float).eps


def as_matrix(m, dims=(2, 4)) -> np.ndarray:
    """Coerce to a complex square array, checking the trailing dimension."""
    a = np.asarray(m, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise InvalidArgumentError(f"expected square matrix, got shape {a.shape}")
    if dims is not None and a.shape[-1] not in dims:
        raise InvalidArgumentError(f"matrix dimension {a.shape[-1]} not in {dims}")
    return a


def as_state(psi, dims=(2, 4), tol=ALGEBRA_TOL) -> np.ndarray:
    """Coerce to a normalized complex amplitude vector (or stack of them)."""
    v = np.asarray(psi, dtype=complex)
    if v.ndim < 1 or (dims is not None and v.shape[-1] not in dims):
        raise InvalidArgumentError(f"state dimension {v.shape} not in {dims}")
    norms = np.sum(np.abs(v) ** 2, axis=-1)
    if np.any(np.abs(norms - 1.0) > tol):
        raise InvalidArgumentError("state vector is not normalized")
    return v


def adjoint(m) -> np.ndarray:
    return np.conj(np.swapaxes(np.asarray(m, dtype=complex), -1, -2))


def _check_same_dim(a, b):
    if a.shape[-1] != b.shape[-1] or a.shape[-2] != b.shape[-2]:
        raise InvalidArgumentError(
            f"dimension mismatch: {a.shape[-2:]} vs {b.shape[-2:]}"
        )


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a, None), as_matrix(b, None)
    _check_same_dim(a, b)
    return a @ b


def add(a, b) -> np.ndarray:
    a, b = as_matrix(a, None), as_matrix(b, None)
    _check_same_dim(a, b)
    return a + b


def scale(m, c) -> np.ndarray:
    return complex(c) * as_matrix(m, None)


def trace(m):
    return np.trace(as_matrix(m, None), axis1=-2, axis2=-1)


def frobenius_distance(a, b):
    a, b = as_matrix(a, None), as_matrix(b, None)
    _check_same_dim(a, b)
    return np.sqrt(np.sum(np.abs(a - b) ** 2, axis=(-2, -1)))


def kron(a, b) -> np.ndarray:
    """Tensor product of two single-qubit operators, |j>|k> -> index 2j+k."""
    a, b = as_matrix(a, None), as_matrix(b, None)
    if a.shape[-1] != 2 or b.shape[-1] != 2:
        raise InvalidArgumentError("kron expects two 2x2 matrices")
    out = a[..., :, None, :, None] * b[..., None, :, None, :]
    return out.reshape(out.shape[:-4] + (4, 4))


def is_hermitian(m, tol=EIG_TOL) -> bool:
    a = np.asarray(m, dtype=complex)
    return bool(np.all(np.abs(a - adjoint(a)) <= tol))


def hermitian(m) -> np.ndarray:
    """Validated Hermitian matrix with the residual anti-Hermitian part removed.

    The input must satisfy ``M = M^dagger`` entrywise within 1e-12.
    """
    a = as_matrix(m)
    if not is_hermitian(a, ALGEBRA_TOL):
        raise InvalidArgumentError("matrix is not Hermitian within 1e-12")
    return 0.5 * (a + adjoint(a))


@dataclass(frozen=True)
class EigenSystem:
    """Ascending real spectrum and the matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues[..., None, :]) @ adjoint(v)


def _jacobi(a: np.ndarray, max_sweeps: int = 60):
    """Cyclic complex Jacobi diagonalization of a stack of Hermitian matrices.

    Each plane rotation first strips the phase of the pivot a[p, q] and then
    applies the real symmetric Jacobi rotation to the resulting block.
    """
    a = np.array(a, dtype=complex, copy=True)
    n = a.shape[-1]
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy()
    fro = np.sqrt(np.sum(np.abs(a) ** 2, axis=(-2, -1)))
    off_mask = ~np.eye(n, dtype=bool)
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]

    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(a[..., off_mask]) ** 2, axis=-1))
        if np.all(off <= 1e-18 * fro):
            break
        for p, q in pairs:
            apq = a[..., p, q]
            mag = np.abs(apq)
            active = mag > 1e-300
            if not np.any(active):
                continue
            safe = np.where(active, mag, 1.0)
            phase = np.where(active, apq / safe, 1.0)
            theta = (a[..., q, q].real - a[..., p, p].real) / (2.0 * safe)
            sgn = np.where(theta >= 0, 1.0, -1.0)
            with np.errstate(over="ignore"):
                t = sgn / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            c_ = c[..., None]
            s_ = s[..., None]
            ph = phase[..., None]
            # columns: A <- A W with W = [[ph c, ph s], [-s, c]]
            cp, cq = a[..., :, p].copy(), a[..., :, q].copy()
            a[..., :, p] = ph * c_ * cp - s_ * cq
            a[..., :, q] = ph * s_ * cp + c_ * cq
            # rows: A <- W^H A
            rp, rq = a[..., p, :].copy(), a[..., q, :].copy()
            a[..., p, :] = np.conj(ph) * c_ * rp - s_ * rq
            a[..., q, :] = np.conj(ph) * s_ * rp + c_ * rq
            a[..., p, q] = 0.0
            a[..., q, p] = 0.0
            a[..., p, p] = a[..., p, p].real
            a[..., q, q] = a[..., q, q].real
            vp, vq = v[..., :, p].copy(), v[..., :, q].copy()
            v[..., :, p] = ph * c_ * vp - s_ * vq
            v[..., :, q] = ph * s_ * vp + c_ * vq

    w = np.diagonal(a, axis1=-2, axis2=-1).real
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    v = np.take_along_axis(v, order[..., None, :], axis=-1)
    return w, v


def hermitian_eig(m, dims=(2, 4)) -> EigenSystem:
    """Full eigendecomposition of a Hermitian matrix (or stack).

    Raises InvalidArgumentError when ``m`` is not Hermitian within 1e-10.
    Inside a degenerate cluster the eigenvectors only span the eigenspace.
    """
    a = as_matrix(m, dims)
    if not is_hermitian(a, EIG_TOL):
        raise InvalidArgumentError("hermitian_eig requires a Hermitian matrix")
    w, v = _jacobi(0.5 * (a + adjoint(a)))
    return EigenSystem(w, v)


def spectral_function(m, fn, dims=(2, 4)) -> np.ndarray:
    """V diag(fn(lambda)) V^dagger for Hermitian ``m``."""
    es = hermitian_eig(m, dims)
    v = es.eigenvectors
    return (v * fn(es.eigenvalues)[..., None, :]) @ adjoint(v)


def expm_i(m, s) -> np.ndarray:
    """exp(-i s M) for Hermitian M, through its spectral decomposition."""
    s = float(s)
    return spectral_function(m, lambda lam: np.exp(-1j * s * lam))


def partial_trace(rho, keep: str) -> np.ndarray:
    """Reduced operator of one qubit; ``keep`` is ``"first"`` or ``"second"``."""
    r = as_matrix(rho, (4,))
    t = r.reshape(r.shape[:-2] + (2, 2, 2, 2))
    if keep == "first":
        return np.einsum("...ikjk->...ij", t)
    if keep == "second":
        return np.einsum("...kikj->...ij", t)
    raise InvalidArgumentError(f"keep must be 'first' or 'second', got {keep!r}")


def projector(psi) -> np.ndarray:
    """|psi><psi| for a vector or a stack of vectors."""
    v = np.asarray(psi, dtype=complex)
    return v[..., :, None] * np.conj(v[..., None, :])


def phase_distance(u, v):
    """min over phi of ||exp(i phi) u - v||, the global-phase-blind distance."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    z = np.sum(np.conj(u) * v, axis=-1)
    mag = np.abs(z)
    phase = np.where(mag > 0, z / np.where(mag > 0, mag, 1.0), 1.0)
    return np.sqrt(np.sum(np.abs(phase[..., None] * u - v) ** 2, axis=-1))
