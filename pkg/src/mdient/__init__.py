"""Entanglement, coherence and purity under two-qubit magnetic dipolar dynamics."""

from .dynamics import (
    EvolvedResult,
    analytic_entangled,
    analytic_pure,
    analytic_rho1,
    analytic_rho3,
    evolve_density_numeric,
    evolve_pure_numeric,
    propagator,
)
from .errors import ConfigError, InvalidArgumentError, NumericalInstabilityError
from .measures import (
    MeasureReport,
    concurrence_entangled_analytic,
    concurrence_fg,
    concurrence_mixed,
    concurrence_pure,
    l1_coherence,
    measure_report,
    purity,
    reduced_coherence_analytic,
)
from .model import (
    DipoleAxis,
    LocalRotation,
    build_hamiltonian,
    conjugate_hamiltonian,
    gibbs_state,
    su2_matrix,
)
from .states import (
    bell_state,
    bloch_mixed,
    depolarize,
    parse_state_spec,
    partial_entangled,
    product_state,
    pure_qubit,
)
from .sweep import GridAxis, SweepConfig, preset, run_sweep, verify_symmetry

__version__ = "0.1.0"
