"""Property suites run by ``mdient verify``: oracles, symmetries, thermal invariance."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dynamics as dy
from . import linalg as la
from . import measures as me
from . import model
from . import states as st
from . import sweep as sw

PI = math.pi


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.value < self.tolerance)

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.value:.3e} (< {self.tolerance:g})"


def random_axis(rng) -> model.DipoleAxis:
    return model.DipoleAxis.from_direction(rng.normal(size=3))


def random_rotation(rng) -> model.LocalRotation:
    v = rng.normal(size=3)
    return model.LocalRotation(tuple(v / np.linalg.norm(v)), rng.uniform(0, 2 * PI))


# --- oracle suite --------------------------------------------------------------


def oracle_checks(draws: int = 1000, seed: int = 7, tol: float = 1e-10) -> list[Check]:
    """Each closed form against its generic numeric counterpart on random draws."""
    rng = np.random.default_rng(seed)
    h = model.build_hamiltonian(model.DipoleAxis())
    worst = dict.fromkeys(
        ["pure state", "f, g concurrence", "rho3", "rho1", "partially entangled",
         "entangled concurrence", "reduced coherence"], 0.0,
    )

    def bump(key, value):
        worst[key] = max(worst[key], float(value))

    for _ in range(draws):
        ta, tb = rng.uniform(0, 2 * PI, size=2)
        ra, rb = rng.uniform(-1, 1, size=2)
        w = rng.uniform(0, 1)
        t = rng.uniform(-2 * PI, 2 * PI)

        psi0 = st.product_state(st.pure_qubit(ta), st.pure_qubit(tb))
        num = dy.evolve_pure_numeric(psi0, h, t).state
        ana = dy.analytic_pure(ta, tb, t).state
        bump("pure state", la.phase_distance(ana, num))
        bump("f, g concurrence", abs(me.concurrence_fg(ta, tb, t) - me.concurrence_pure(ana)))
        rho_a = la.partial_trace(la.projector(num), "first")
        bump("reduced coherence", abs(me.reduced_coherence_analytic(ta, tb, t) - me.l1_coherence(rho_a)))

        for axis, key, fn in (("z", "rho3", dy.analytic_rho3), ("x", "rho1", dy.analytic_rho1)):
            rho0 = st.BlochMixed(axis, ra, rb).density()
            num_rho = dy.evolve_density_numeric(rho0, h, t).state
            bump(key, la.frobenius_distance(fn(ra, rb, t).state, num_rho))

        ent = dy.analytic_entangled(w, t).state
        num_ent = dy.evolve_pure_numeric(st.partial_entangled(w), h, t).state
        bump("partially entangled", la.phase_distance(ent, num_ent))
        bump("entangled concurrence",
             abs(me.concurrence_entangled_analytic(w, t) - me.concurrence_pure(ent)))

    return [Check(f"oracle {k}", v, tol) for k, v in worst.items()]


# --- symmetry suite --------------------------------------------------------------


def period_config(n_theta: int = 101, n_t: int = 50) -> sw.SweepConfig:
    return sw.SweepConfig(
        family="pure",
        axes=(
            sw.GridAxis("theta_a", 0, 2 * PI, n_theta),
            sw.GridAxis("theta_b", 0, 2 * PI, n_theta),
            sw.GridAxis("t", 0, PI, n_t),
        ),
    )


def symmetry_checks(count: int = 101) -> list[Check]:
    thr = sw.SYMMETRY_THRESHOLD
    checks = []

    def add(name, report):
        checks.append(Check(name, report.max_mismatch, thr))

    add("period pi (pure)", sw.verify_symmetry(period_config(count), "period"))
    add("period pi (rho3)", sw.verify_symmetry(
        sw.SweepConfig("mixed", (sw.GridAxis("ra", -1, 1, 41), sw.GridAxis("t", 0, PI, 41)),
                       fixed={"rb": 0.3}, mixed_axis="z"), "period"))
    for phi in (PI / 4, PI / 2, 3 * PI / 4):
        add(f"theta_b reflection (phi={phi:.4f})", sw.verify_symmetry(
            sw.preset("fig1", count, theta_b=PI + phi), "theta_reflection"))
    add("quarter turn t=pi/8 vs 3pi/8", sw.verify_symmetry(
        sw.preset("fig1-angles", count, t=PI / 8), "quarter_turn"))
    for t in (PI / 8, PI / 4, 0.9):
        add(f"rho1 reflection (t={t:.4f})", sw.verify_symmetry(
            sw.preset("fig2-rho1", 41, t=t), "r_reflection"))
        add(f"rho3 reflection (t={t:.4f})", sw.verify_symmetry(
            sw.preset("fig2-rho3", 41, t=t), "r_reflection"))
    add("Rz x Rz covariance", sw.verify_symmetry(
        sw.SweepConfig("pure", (sw.GridAxis("theta_a", 0, 2 * PI, 21),
                                sw.GridAxis("theta_b", 0, 2 * PI, 21),
                                sw.GridAxis("t", 0, PI, 21))), "rz_covariance"))
    return checks


def conservation_checks(trajectories: int = 100, steps: int = 25, seed: int = 11) -> list[Check]:
    """[H(z), N] = 0 and <N> constant along random trajectories."""
    h = model.build_hamiltonian(model.DipoleAxis())
    n_op = model.excitation_number()
    comm = float(np.linalg.norm(h @ n_op - n_op @ h))
    rng = np.random.default_rng(seed)
    drift = 0.0
    times = np.linspace(0, 2 * PI, steps)
    for _ in range(trajectories):
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi /= np.linalg.norm(psi)
        n0 = np.real(np.conj(psi) @ n_op @ psi)
        for t in times:
            phi = dy.evolve_pure_numeric(psi, h, t).state
            drift = max(drift, abs(np.real(np.conj(phi) @ n_op @ phi) - n0))
    return [
        Check("commutator [H, N] (Frobenius)", comm, 1e-12),
        Check("excitation-number drift", drift, 1e-10),
    ]


# --- thermal suite -------------------------------------------------------------------


def thermal_checks(n_axes: int = 20, betas=(0.1, 1.0, 10.0), seed: int = 3,
                   tol: float = 1e-10) -> list[Check]:
    """Gibbs-state entanglement does not depend on the dipole axis.

    Besides the concurrence, the whole spin-flip spectrum is compared: the
    Gibbs states of this Hamiltonian are separable for every beta >= 0, so the
    concurrence alone is zero on every axis.
    """
    rng = np.random.default_rng(seed)
    axes = [random_axis(rng) for _ in range(n_axes)]
    checks = []
    for beta in betas:
        gibbs = [model.gibbs_state(model.build_hamiltonian(a), beta) for a in axes]
        conc = [float(me.concurrence_mixed(g)) for g in gibbs]
        lams = np.array([me.wootters_sqrt_lambdas(g) for g in gibbs])
        checks.append(Check(f"Gibbs concurrence spread (beta={beta:g})",
                            max(conc) - min(conc), tol))
        checks.append(Check(f"Gibbs spin-flip spectrum spread (beta={beta:g})",
                            float(np.max(lams.max(axis=0) - lams.min(axis=0))), tol))
    return checks


SUITES = {
    "oracles": oracle_checks,
    "symmetries": lambda: symmetry_checks() + conservation_checks(),
    "thermal": thermal_checks,
}
