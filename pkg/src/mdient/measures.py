"""Concurrence, l1-norm coherence and purity, in closed and generic forms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg as la
from .errors import InvalidArgumentError, NumericalInstabilityError

YY = la.kron(la.SIGMA_2, la.SIGMA_2)

DENSITY_TOL = 1e-10
NEGATIVE_TOL = 1e-9
# eigenvalues of rho at rounding level are treated as exact zeros
_ZERO_EIG = 8 * np.finfo(float).eps


def concurrence_pure(psi):
    """|<psi| sigma_2 x sigma_2 |psi*>| (equivalently 2|a00 a11 - a01 a10|)."""
    psi = la.as_state(psi, (4,), tol=1e-10)
    return np.abs(np.einsum("...i,ij,...j->...", psi, YY, psi))


def concurrence_fg(theta_a, theta_b, t):
    """sqrt(f^2 + g^2) with the f, g of the evolved product state."""
    theta_a, theta_b, t = (np.asarray(x, float) for x in (theta_a, theta_b, t))
    aa, ba = np.cos(theta_a / 2), np.sin(theta_a / 2)
    ab, bb = np.cos(theta_b / 2), np.sin(theta_b / 2)
    f = 2 * aa * ba * ab * bb * (np.cos(2 * t) - np.cos(4 * t))
    g = (aa**2 * bb**2 + ba**2 * ab**2) * np.sin(2 * t) + 2 * aa * ba * ab * bb * np.sin(4 * t)
    return np.sqrt(f * f + g * g)


def validate_density(rho, tol=DENSITY_TOL) -> np.ndarray:
    """Check Hermiticity and unit trace; positivity is checked where eigenvalues exist."""
    r = la.as_matrix(rho)
    if not la.is_hermitian(r, tol):
        raise InvalidArgumentError("density matrix is not Hermitian")
    tr = np.trace(r, axis1=-2, axis2=-1)
    if np.any(np.abs(tr - 1.0) > tol):
        raise InvalidArgumentError("density matrix does not have unit trace")
    return 0.5 * (r + la.adjoint(r))


def _psd_factor(rho):
    """W with rho = W W^dagger, after validating that rho is positive semidefinite."""
    es = la.hermitian_eig(rho)
    lam = es.eigenvalues
    if np.any(lam < -NEGATIVE_TOL):
        raise InvalidArgumentError("density matrix has a negative eigenvalue")
    lam = np.where(lam < _ZERO_EIG, 0.0, lam)
    return es.eigenvectors * np.sqrt(lam)[..., None, :]


def wootters_sqrt_lambdas(rho) -> np.ndarray:
    """sqrt of the eigenvalues of rho (YY) rho* (YY), descending.

    With rho = W W^dagger these are the singular values of the symmetric
    matrix tau = W^T (YY) W.  They are read off the Hermitian dilation
    [[0, tau], [tau^dagger, 0]], whose spectrum is {+sigma_i, -sigma_i}; this
    avoids taking square roots of eigenvalues that sit at rounding level.
    """
    rho = validate_density(rho)
    if rho.shape[-1] != 4:
        raise InvalidArgumentError("concurrence needs a two-qubit state")
    w = _psd_factor(rho)
    tau = np.swapaxes(w, -1, -2) @ YY @ w
    dil = np.zeros(tau.shape[:-2] + (8, 8), dtype=complex)
    dil[..., :4, 4:] = tau
    dil[..., 4:, :4] = la.adjoint(tau)
    sig = la.hermitian_eig(dil, dims=None).eigenvalues[..., :3:-1]
    if np.any(sig < -NEGATIVE_TOL):
        raise NumericalInstabilityError("negative singular value in spin-flip spectrum")
    return np.maximum(sig, 0.0)


def wootters_lambdas(rho) -> np.ndarray:
    return wootters_sqrt_lambdas(rho) ** 2


def concurrence_mixed(rho):
    """max(0, s1 - s2 - s3 - s4) over the descending spin-flip square roots."""
    s = wootters_sqrt_lambdas(rho)
    return np.maximum(0.0, s[..., 0] - s[..., 1] - s[..., 2] - s[..., 3])


def l1_coherence(rho):
    """Sum of absolute off-diagonal entries in the computational basis."""
    r = la.as_matrix(rho)
    n = r.shape[-1]
    return np.sum(np.abs(r[..., ~np.eye(n, dtype=bool)]), axis=-1)


def purity(rho):
    """Tr(rho^2); a state vector is accepted and gives 1."""
    r = np.asarray(rho, dtype=complex)
    if r.ndim == 1:
        r = la.projector(la.as_state(r))
    r = la.as_matrix(r)
    return np.real(np.einsum("...ij,...ji->...", r, r))


def concurrence_entangled_analytic(w, t):
    """sqrt(sin^2 2t + 4 w (1 - w) cos^2 2t)."""
    w, t = np.asarray(w, float), np.asarray(t, float)
    if np.any((w < 0) | (w > 1)):
        raise InvalidArgumentError("w outside [0, 1]")
    return np.sqrt(np.sin(2 * t) ** 2 + 4 * w * (1 - w) * np.cos(2 * t) ** 2)


def reduced_coherence_analytic(theta_a, theta_b, t):
    """l1 coherence of dipole a after tracing out dipole b, from its closed form.

    The polynomial gives C^2 / 4; tiny negative values from rounding are
    clamped to zero before the square root.
    """
    theta_a, theta_b, t = (np.asarray(x, float) for x in (theta_a, theta_b, t))
    aa, ba = np.cos(theta_a / 2), np.sin(theta_a / 2)
    ab, bb = np.cos(theta_b / 2), np.sin(theta_b / 2)
    quarter_c2 = (
        aa**2 * ba**2 * (ab**4 + bb**4) * np.cos(t) ** 2
        + ab**2 * bb**2 * (aa**4 + ba**4) * np.sin(t) ** 2
        + 2 * aa**2 * ba**2 * ab**2 * bb**2 * np.cos(2 * t) * np.cos(4 * t)
        - aa * ba * ab * bb * (aa**2 * bb**2 + ba**2 * ab**2) * np.sin(2 * t) * np.sin(4 * t)
    )
    return 2.0 * np.sqrt(np.maximum(quarter_c2, 0.0))


@dataclass(frozen=True)
class MeasureReport:
    concurrence: float
    coherence_a: float
    coherence_b: float
    purity: float
    wootters_lambdas: Optional[tuple[float, float, float, float]] = None

    def as_dict(self) -> dict:
        out = {
            "concurrence": self.concurrence,
            "coherence_a": self.coherence_a,
            "coherence_b": self.coherence_b,
            "purity": self.purity,
        }
        if self.wootters_lambdas is not None:
            out["wootters_lambdas"] = list(self.wootters_lambdas)
        return out


def measure_report(state) -> MeasureReport:
    """All measures for one two-qubit state (vector or density matrix)."""
    s = np.asarray(state, dtype=complex)
    if s.ndim == 1:
        psi = la.as_state(s, (4,), tol=1e-10)
        rho = la.projector(psi)
        conc = float(concurrence_pure(psi))
        lams = None
    else:
        rho = validate_density(s)
        if rho.shape != (4, 4):
            raise InvalidArgumentError("measure_report needs a two-qubit state")
        sq = wootters_sqrt_lambdas(rho)
        conc = float(max(0.0, sq[0] - sq[1] - sq[2] - sq[3]))
        lams = tuple(float(x) for x in sq**2)
    return MeasureReport(
        concurrence=conc,
        coherence_a=float(l1_coherence(la.partial_trace(rho, "first"))),
        coherence_b=float(l1_coherence(la.partial_trace(rho, "second"))),
        purity=float(purity(rho)),
        wootters_lambdas=lams,
    )
