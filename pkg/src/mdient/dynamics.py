"""Time evolution under the dipolar coupling.

Two independent routes are kept apart on purpose:

* numeric: ``exp(-iHt)`` from the Jacobi spectral decomposition of any H;
* analytic: closed forms for n = z, D = 1, written term by term.

The ``*_amplitudes`` / ``*_matrix`` helpers broadcast over array arguments and
are what the sweep engine calls; the ``analytic_*`` functions wrap a single
point in an :class:`EvolvedResult`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import linalg as la
from .states import BELL, TWO_PI, _check_range


@dataclass(frozen=True)
class EvolvedResult:
    time: float
    state: np.ndarray
    path: Literal["analytic", "numeric"]

    @property
    def is_pure(self) -> bool:
        return self.state.ndim == 1

    def density(self) -> np.ndarray:
        return la.projector(self.state) if self.is_pure else self.state


def propagator(h, t: float) -> np.ndarray:
    """U_t = exp(-i H t)."""
    return la.expm_i(h, t)


def evolve_pure_numeric(psi0, h, t: float) -> EvolvedResult:
    psi0 = la.as_state(psi0, (4,))
    psi = propagator(h, t) @ psi0
    return EvolvedResult(float(t), psi / np.linalg.norm(psi), "numeric")


def evolve_density_numeric(rho0, h, t: float) -> EvolvedResult:
    rho0 = la.as_matrix(rho0, (4,))
    u = propagator(h, t)
    rho = u @ rho0 @ la.adjoint(u)
    return EvolvedResult(float(t), 0.5 * (rho + la.adjoint(rho)), "numeric")


# --- closed forms (n = z, D = 1) --------------------------------------------


def pure_amplitudes(theta_a, theta_b, t) -> np.ndarray:
    """Amplitudes (|00>, |01>, |10>, |11>) of the evolved product state."""
    theta_a, theta_b, t = np.broadcast_arrays(
        np.asarray(theta_a, float), np.asarray(theta_b, float), np.asarray(t, float)
    )
    aa, ba = np.cos(theta_a / 2), np.sin(theta_a / 2)
    ab, bb = np.cos(theta_b / 2), np.sin(theta_b / 2)
    c, s = np.cos(t), np.sin(t)
    ph = np.exp(2j * t)
    out = np.empty(t.shape + (4,), dtype=complex)
    out[..., 0] = ph * (aa * ab)
    out[..., 1] = aa * bb * c - 1j * ba * ab * s
    out[..., 2] = ba * ab * c - 1j * aa * bb * s
    out[..., 3] = ph * (ba * bb)
    return out


def rho3_matrix(ra, rb, t) -> np.ndarray:
    """Evolved z-polarized product state, built entry by entry."""
    ra, rb, t = np.broadcast_arrays(
        np.asarray(ra, float), np.asarray(rb, float), np.asarray(t, float)
    )
    c2, s2 = np.cos(2 * t), np.sin(2 * t)
    m = np.zeros(t.shape + (4, 4), dtype=complex)
    m[..., 0, 0] = (1 + ra) * (1 + rb)
    m[..., 1, 1] = 1 - ra * rb + (ra - rb) * c2
    m[..., 1, 2] = 1j * (ra - rb) * s2
    m[..., 2, 1] = -1j * (ra - rb) * s2
    m[..., 2, 2] = 1 - ra * rb - (ra - rb) * c2
    m[..., 3, 3] = (1 - ra) * (1 - rb)
    return m / 4


def _outer(u, v):
    return np.outer(u, np.conj(v))


_P_PSI_M = _outer(BELL["psi-"], BELL["psi-"])
_P_PSI_P = _outer(BELL["psi+"], BELL["psi+"])
_P_PHI_M = _outer(BELL["phi-"], BELL["phi-"])
_P_PHI_P = _outer(BELL["phi+"], BELL["phi+"])
_PHI_M_PSI_M = _outer(BELL["phi-"], BELL["psi-"])
_PHI_P_PSI_P = _outer(BELL["phi+"], BELL["psi+"])


def rho1_matrix(ra, rb, t) -> np.ndarray:
    """Evolved x-polarized product state, assembled from Bell-basis dyads."""
    ra, rb, t = np.broadcast_arrays(
        np.asarray(ra, float), np.asarray(rb, float), np.asarray(t, float)
    )
    ra, rb, t = ra[..., None, None], rb[..., None, None], t[..., None, None]
    m = (
        (1 - ra * rb) * (_P_PSI_M + _P_PHI_M)
        + (1 + ra * rb) * (_P_PSI_P + _P_PHI_P)
        + (rb - ra) * (np.exp(1j * t) * _PHI_M_PSI_M + np.exp(-1j * t) * _PHI_M_PSI_M.conj().T)
        + (rb + ra)
        * (np.exp(3j * t) * _PHI_P_PSI_P + np.exp(-3j * t) * _PHI_P_PSI_P.conj().T)
    )
    return m / 4


def entangled_amplitudes(w, t) -> np.ndarray:
    w, t = np.broadcast_arrays(np.asarray(w, float), np.asarray(t, float))
    sw, sv = np.sqrt(w), np.sqrt(1 - w)
    c, s = np.cos(t), np.sin(t)
    out = np.zeros(t.shape + (4,), dtype=complex)
    out[..., 1] = sw * c - 1j * sv * s
    out[..., 2] = sv * c - 1j * sw * s
    return out


def depolarized_matrix(w, p, t) -> np.ndarray:
    """(1 - p) I/4 + p |Psi_t><Psi_t| for the evolved partially entangled state."""
    p = np.asarray(p, float)
    psi = entangled_amplitudes(w, t)
    p = np.broadcast_to(p, psi.shape[:-1])[..., None, None]
    return (1 - p) * np.eye(4) / 4 + p * la.projector(psi)


def _angles(theta_a, theta_b):
    _check_range("theta_a", theta_a, 0.0, TWO_PI)
    _check_range("theta_b", theta_b, 0.0, TWO_PI)


def analytic_pure(theta_a: float, theta_b: float, t: float) -> EvolvedResult:
    _angles(theta_a, theta_b)
    return EvolvedResult(float(t), pure_amplitudes(theta_a, theta_b, t), "analytic")


def analytic_rho3(r3a: float, r3b: float, t: float) -> EvolvedResult:
    _check_range("r3a", r3a, -1.0, 1.0)
    _check_range("r3b", r3b, -1.0, 1.0)
    return EvolvedResult(float(t), rho3_matrix(r3a, r3b, t), "analytic")


def analytic_rho1(r1a: float, r1b: float, t: float) -> EvolvedResult:
    _check_range("r1a", r1a, -1.0, 1.0)
    _check_range("r1b", r1b, -1.0, 1.0)
    return EvolvedResult(float(t), rho1_matrix(r1a, r1b, t), "analytic")


def analytic_entangled(w: float, t: float) -> EvolvedResult:
    _check_range("w", w, 0.0, 1.0)
    return EvolvedResult(float(t), entangled_amplitudes(w, t), "analytic")


def analytic_depolarized(w: float, p: float, t: float) -> EvolvedResult:
    _check_range("w", w, 0.0, 1.0)
    _check_range("p", p, 0.0, 1.0)
    return EvolvedResult(float(t), depolarized_matrix(w, p, t), "analytic")
