"""Magnetic dipolar interaction Hamiltonian, local rotations and Gibbs states."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .errors import InvalidArgumentError

Z_AXIS = (0.0, 0.0, 1.0)


def _unit(v, name) -> tuple[float, float, float]:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,) or not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} must be a finite 3-vector")
    if abs(float(np.linalg.norm(arr)) - 1.0) > la.ALGEBRA_TOL:
        raise InvalidArgumentError(f"{name} must be a unit vector, got {tuple(arr)}")
    return tuple(float(x) for x in arr)


def pauli_dot(n) -> np.ndarray:
    """n . sigma for a real 3-vector n."""
    return n[0] * la.SIGMA_1 + n[1] * la.SIGMA_2 + n[2] * la.SIGMA_3


@dataclass(frozen=True)
class DipoleAxis:
    """Unit vector joining the two dipoles and the coupling strength D (hbar = 1)."""

    n_hat: tuple[float, float, float] = Z_AXIS
    coupling_d: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "n_hat", _unit(self.n_hat, "n_hat"))
        d = float(self.coupling_d)
        if not (math.isfinite(d) and d > 0):
            raise InvalidArgumentError(f"coupling_D must be positive, got {d}")
        object.__setattr__(self, "coupling_d", d)

    @classmethod
    def from_direction(cls, v, coupling_d: float = 1.0) -> "DipoleAxis":
        """Build from any nonzero direction, normalizing it."""
        arr = np.asarray(v, dtype=float)
        norm = float(np.linalg.norm(arr))
        if arr.shape != (3,) or not norm > 0 or not math.isfinite(norm):
            raise InvalidArgumentError(f"bad axis direction {v!r}")
        return cls(tuple(arr / norm), coupling_d)

    @property
    def is_z(self) -> bool:
        return self.n_hat == Z_AXIS


@dataclass(frozen=True)
class LocalRotation:
    """SU(2) rotation exp(-i angle/2 axis.sigma) applied identically to both qubits."""

    axis: tuple[float, float, float]
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "axis", _unit(self.axis, "rotation axis"))
        object.__setattr__(self, "angle", float(self.angle))

    def rotate_vector(self, v) -> np.ndarray:
        """The SO(3) image O v induced by this SU(2) element (Rodrigues formula)."""
        k = np.asarray(self.axis)
        v = np.asarray(v, dtype=float)
        c, s = math.cos(self.angle), math.sin(self.angle)
        return v * c + np.cross(k, v) * s + k * np.dot(k, v) * (1 - c)


def su2_matrix(v: LocalRotation) -> np.ndarray:
    # closed form of exp(-i a/2 n.sigma); unit determinant by construction
    half = 0.5 * v.angle
    return math.cos(half) * la.SIGMA_0 - 1j * math.sin(half) * pauli_dot(v.axis)


def rz(delta: float) -> np.ndarray:
    """R_z(delta) = exp(-i delta sigma_3 / 2)."""
    return su2_matrix(LocalRotation(Z_AXIS, delta))


def build_hamiltonian(axis: DipoleAxis) -> np.ndarray:
    """D/2 [ sigma.sigma - 3 (n.sigma) x (n.sigma) ].

    The 1/2 makes n = z, D = 1 coincide with 1/2 (XX + YY - 2 ZZ), whose
    Bell-basis spectrum is {2, 0, -1, -1} for (Psi+, Psi-, Phi+, Phi-).
    """
    if not isinstance(axis, DipoleAxis):
        raise InvalidArgumentError("build_hamiltonian expects a DipoleAxis")
    exchange = sum(la.kron(s, s) for s in la.PAULI[1:])
    ns = pauli_dot(axis.n_hat)
    h = 0.5 * axis.coupling_d * (exchange - 3.0 * la.kron(ns, ns))
    return 0.5 * (h + la.adjoint(h))


def conjugate_hamiltonian(h, v: LocalRotation) -> np.ndarray:
    """(V x V) h (V x V)^dagger."""
    h = la.hermitian(h)
    if h.shape != (4, 4):
        raise InvalidArgumentError("conjugate_hamiltonian expects a 4x4 operator")
    u = su2_matrix(v)
    vv = la.kron(u, u)
    return vv @ h @ la.adjoint(vv)


def rotated_axis(axis: DipoleAxis, v: LocalRotation) -> DipoleAxis:
    n = v.rotate_vector(axis.n_hat)
    return DipoleAxis(tuple(n / np.linalg.norm(n)), axis.coupling_d)


def gibbs_state(h, beta: float) -> np.ndarray:
    """exp(-beta H) / Z, shifting the exponent by its maximum before exponentiating."""
    beta = float(beta)
    if not math.isfinite(beta) or beta < 0:
        raise InvalidArgumentError(f"beta must be finite and >= 0, got {beta}")
    es = la.hermitian_eig(h)
    x = -beta * es.eigenvalues
    weights = np.exp(x - x.max(axis=-1, keepdims=True))
    weights = weights / weights.sum(axis=-1, keepdims=True)
    v = es.eigenvectors
    rho = (v * weights[..., None, :]) @ la.adjoint(v)
    return 0.5 * (rho + la.adjoint(rho))


def excitation_number() -> np.ndarray:
    """sigma_3 x sigma_0 + sigma_0 x sigma_3."""
    return la.kron(la.SIGMA_3, la.SIGMA_0) + la.kron(la.SIGMA_0, la.SIGMA_3)
