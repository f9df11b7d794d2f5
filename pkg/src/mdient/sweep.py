"""Deterministic grid sweeps over initial-state parameters and time."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from typing import Iterator

import numpy as np

from . import dynamics as dy
from . import linalg as la
from . import measures as me
from .errors import ConfigError, InvalidArgumentError
from .model import DipoleAxis, build_hamiltonian, rz
from .states import TWO_PI, family_params

QUANTITIES = ("concurrence", "coherence_a", "coherence_b", "purity")
SYMMETRY_THRESHOLD = 1e-8

_RANGES = {
    "theta_a": (0.0, TWO_PI),
    "theta_b": (0.0, TWO_PI),
    "ra": (-1.0, 1.0),
    "rb": (-1.0, 1.0),
    "w": (0.0, 1.0),
    "p": (0.0, 1.0),
}
# reflection centre of each parameter's interval
_CENTRES = {"theta_a": math.pi, "theta_b": math.pi, "ra": 0.0, "rb": 0.0}


@dataclass(frozen=True)
class GridAxis:
    name: str
    start: float
    stop: float
    count: int

    def points(self) -> np.ndarray:
        k = np.arange(self.count, dtype=float)
        pts = self.start + k * (self.stop - self.start) / (self.count - 1)
        pts[-1] = self.stop
        return pts


@dataclass(frozen=True)
class SweepConfig:
    family: str
    axes: tuple[GridAxis, ...]
    fixed: dict = field(default_factory=dict)
    quantities: tuple[str, ...] = ("concurrence",)
    hamiltonian: DipoleAxis = DipoleAxis()
    mixed_axis: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(self.axes))
        object.__setattr__(self, "quantities", tuple(self.quantities))
        object.__setattr__(self, "fixed", {k: float(v) for k, v in self.fixed.items()})
        self.validate()

    @property
    def columns(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.axes) + self.quantities

    def validate(self):
        try:
            names = family_params(self.family) + ("t",)
        except InvalidArgumentError as exc:
            raise ConfigError(str(exc)) from None
        if (self.family == "mixed") != (self.mixed_axis is not None):
            raise ConfigError("mixed_axis is required for, and only for, the mixed family")
        if self.mixed_axis not in (None, "x", "z"):
            raise ConfigError(f"mixed_axis must be 'x' or 'z', got {self.mixed_axis!r}")
        if not self.axes:
            raise ConfigError("at least one grid axis is required")
        swept = [a.name for a in self.axes]
        if len(set(swept)) != len(swept):
            raise ConfigError("grid axis repeated")
        for a in self.axes:
            if a.name not in names:
                raise ConfigError(f"axis {a.name!r} does not belong to family {self.family!r}")
            if int(a.count) != a.count or a.count < 2:
                raise ConfigError(f"axis {a.name!r}: count must be an integer >= 2")
            if not (math.isfinite(a.start) and math.isfinite(a.stop) and a.start < a.stop):
                raise ConfigError(f"axis {a.name!r}: need finite start < stop")
            self._check_value(a.name, a.start)
            self._check_value(a.name, a.stop)
        for k, v in self.fixed.items():
            if k not in names:
                raise ConfigError(f"fixed parameter {k!r} does not belong to family {self.family!r}")
            if k in swept:
                raise ConfigError(f"parameter {k!r} is both fixed and swept")
            self._check_value(k, v)
        missing = [n for n in names if n not in swept and n not in self.fixed]
        if missing:
            raise ConfigError(f"parameter {missing[0]!r} is neither fixed nor swept")
        bad = [q for q in self.quantities if q not in QUANTITIES]
        if bad or not self.quantities:
            raise ConfigError(f"unknown quantity {bad[0] if bad else None!r}")

    @staticmethod
    def _check_value(name, v):
        if not math.isfinite(v):
            raise ConfigError(f"{name} must be finite")
        lo, hi = _RANGES.get(name, (-math.inf, math.inf))
        if not lo <= v <= hi:
            raise ConfigError(f"{name}={v} outside [{lo}, {hi}]")


# --- evaluation --------------------------------------------------------------


def grid_points(config: SweepConfig) -> dict[str, np.ndarray]:
    """Flattened parameter arrays in lexicographic order (first axis outermost)."""
    mesh = np.meshgrid(*(a.points() for a in config.axes), indexing="ij")
    n = mesh[0].size
    out = {a.name: m.ravel() for a, m in zip(config.axes, mesh)}
    for k, v in config.fixed.items():
        out[k] = np.full(n, v)
    return out


def initial_states(family: str, params: dict, mixed_axis: str | None = None) -> np.ndarray:
    """Batched initial vectors (pure, ent) or density matrices (mixed, depol)."""
    if family == "pure":
        a = np.stack([np.cos(params["theta_a"] / 2), np.sin(params["theta_a"] / 2)], -1)
        b = np.stack([np.cos(params["theta_b"] / 2), np.sin(params["theta_b"] / 2)], -1)
        return (a[..., :, None] * b[..., None, :]).reshape(a.shape[:-1] + (4,)).astype(complex)
    if family == "ent":
        w = params["w"]
        z = np.zeros_like(w)
        return np.stack([z, np.sqrt(w), np.sqrt(1 - w), z], -1).astype(complex)
    if family == "mixed":
        s = la.SIGMA_1 if mixed_axis == "x" else la.SIGMA_3
        ra = params["ra"][..., None, None]
        rb = params["rb"][..., None, None]
        return la.kron(0.5 * (la.SIGMA_0 + ra * s), 0.5 * (la.SIGMA_0 + rb * s))
    if family == "depol":
        psi = initial_states("ent", params)
        p = params["p"][..., None, None]
        return (1 - p) * np.eye(4) / 4 + p * la.projector(psi)
    raise ConfigError(f"unknown family {family!r}")


def _analytic_states(family, params, mixed_axis, time):
    if family == "pure":
        return dy.pure_amplitudes(params["theta_a"], params["theta_b"], time)
    if family == "ent":
        return dy.entangled_amplitudes(params["w"], time)
    if family == "mixed":
        fn = dy.rho3_matrix if mixed_axis == "z" else dy.rho1_matrix
        return fn(params["ra"], params["rb"], time)
    return dy.depolarized_matrix(params["w"], params["p"], time)


def propagate(psi0, h, t) -> np.ndarray:
    """Apply exp(-iHt) to batched vectors or density matrices, one propagator per distinct t."""
    es = la.hermitian_eig(h)
    v, lam = es.eigenvectors, es.eigenvalues
    out = np.empty_like(psi0)
    times, inverse = np.unique(np.asarray(t, float), return_inverse=True)
    for k, tk in enumerate(times):
        u = (v * np.exp(-1j * tk * lam)) @ la.adjoint(v)
        sel = inverse == k
        if psi0.ndim == 2:
            out[sel] = psi0[sel] @ u.T
        else:
            out[sel] = u @ psi0[sel] @ la.adjoint(u)
    return out


def numeric_states(family, params, mixed_axis, h, t) -> np.ndarray:
    return propagate(initial_states(family, params, mixed_axis), h, t)


def evolve_params(config: SweepConfig, params: dict) -> np.ndarray:
    """Evolved states at every grid point.

    n = z uses the closed forms with time rescaled by D; other axes fall back
    to the numeric propagator of the rotated Hamiltonian.
    """
    axis = config.hamiltonian
    if axis.is_z:
        return _analytic_states(
            config.family, params, config.mixed_axis, axis.coupling_d * params["t"]
        )
    h = build_hamiltonian(axis)
    return numeric_states(config.family, params, config.mixed_axis, h, params["t"])


def evolve_point(spec, t: float, axis: DipoleAxis = DipoleAxis()) -> np.ndarray:
    """Evolved state (vector or density matrix) for a single StateSpec."""
    params = {f.name: np.array([float(getattr(spec, f.name))])
              for f in fields(spec) if f.name != "axis"}
    params["t"] = np.array([float(t)])
    mixed_axis = getattr(spec, "axis", None)
    if axis.is_z:
        out = _analytic_states(spec.tag, params, mixed_axis, axis.coupling_d * params["t"])
    else:
        out = numeric_states(spec.tag, params, mixed_axis, build_hamiltonian(axis), params["t"])
    return out[0]


def compute_quantities(states: np.ndarray, quantities) -> dict[str, np.ndarray]:
    pure = states.ndim == 2
    rho = la.projector(states) if pure else states
    out = {}
    for q in quantities:
        if q == "concurrence":
            out[q] = me.concurrence_pure(states) if pure else me.concurrence_mixed(rho)
        elif q == "coherence_a":
            out[q] = me.l1_coherence(la.partial_trace(rho, "first"))
        elif q == "coherence_b":
            out[q] = me.l1_coherence(la.partial_trace(rho, "second"))
        elif q == "purity":
            out[q] = me.purity(rho)
    return out


def evaluate(config: SweepConfig) -> dict[str, np.ndarray]:
    """Column arrays for every grid axis and requested quantity."""
    params = grid_points(config)
    values = compute_quantities(evolve_params(config, params), config.quantities)
    cols = {a.name: params[a.name] for a in config.axes}
    cols.update(values)
    for name, arr in cols.items():
        if not np.all(np.isfinite(arr)):
            raise ArithmeticError(f"non-finite values in column {name!r}")
    return cols


def run_sweep(config: SweepConfig) -> Iterator[dict[str, float]]:
    """Records in grid order, each mapping column name to value."""
    cols = evaluate(config)
    names = config.columns
    data = [cols[n].tolist() for n in names]
    for row in zip(*data):
        yield dict(zip(names, row))


def surface(config: SweepConfig, quantity: str | None = None) -> np.ndarray:
    q = quantity or config.quantities[0]
    cfg = replace(config, quantities=(q,))
    return evaluate(cfg)[q].reshape(tuple(a.count for a in config.axes))


# --- symmetry checks -----------------------------------------------------------


@dataclass(frozen=True)
class SymmetryReport:
    symmetry: str
    max_mismatch: float
    threshold: float = SYMMETRY_THRESHOLD

    @property
    def passed(self) -> bool:
        return self.max_mismatch < self.threshold

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.symmetry}: max mismatch {self.max_mismatch:.3e} (< {self.threshold:g})"


def _axis_index(config, name):
    for i, a in enumerate(config.axes):
        if a.name == name:
            return i
    return None


def _require_symmetric(axis: GridAxis, centre: float):
    if abs(axis.start + axis.stop - 2 * centre) > 1e-12:
        raise ConfigError(f"axis {axis.name!r} is not symmetric about {centre}")


def _mirror(config: SweepConfig, first: str, second: str) -> float:
    """Compare E(x, y) with E(2c - x, 2c - y) over a pair of parameters."""
    flips = []
    fixed = dict(config.fixed)
    for name in (first, second):
        idx = _axis_index(config, name)
        if idx is not None:
            _require_symmetric(config.axes[idx], _CENTRES[name])
            flips.append(idx)
        else:
            fixed[name] = 2 * _CENTRES[name] - fixed[name]
    if not flips:
        raise ConfigError(f"reflection needs {first!r} or {second!r} on a grid axis")
    mirrored = replace(config, fixed=fixed)
    a = surface(config)
    b = np.flip(surface(mirrored), axis=tuple(flips))
    return float(np.max(np.abs(a - b)))


def _quarter_turn(config: SweepConfig) -> float:
    """Surface at t against the surface at pi/2 - t turned by a quarter about (pi, pi)."""
    if config.family != "pure" or [a.name for a in config.axes] != ["theta_a", "theta_b"]:
        raise ConfigError("quarter_turn needs a pure sweep over exactly (theta_a, theta_b)")
    ax, bx = config.axes
    _require_symmetric(ax, math.pi)
    if (ax.start, ax.stop, ax.count) != (bx.start, bx.stop, bx.count):
        raise ConfigError("quarter_turn needs identical theta_a and theta_b grids")
    t = config.fixed["t"]
    s1 = surface(config)
    s2 = surface(replace(config, fixed={**config.fixed, "t": math.pi / 2 - t}))
    # s2[i, j] = s1[j, N-1-i]
    return float(np.max(np.abs(s2 - np.rot90(s1, k=1))))


def _period(config: SweepConfig) -> float:
    shift = math.pi
    idx = _axis_index(config, "t")
    if idx is not None:
        ax = config.axes[idx]
        axes = list(config.axes)
        axes[idx] = GridAxis("t", ax.start + shift, ax.stop + shift, ax.count)
        shifted = replace(config, axes=tuple(axes))
    else:
        shifted = replace(config, fixed={**config.fixed, "t": config.fixed["t"] + shift})
    return float(np.max(np.abs(surface(config) - surface(shifted))))


RZ_ANGLES = (0.37, 1.3, 2.9, -0.8)


def _rz_covariance(config: SweepConfig) -> float:
    """Concurrence with both qubits pre-rotated by R_z(delta), numeric route."""
    if config.family != "pure":
        raise ConfigError("rz_covariance applies to the pure family")
    params = grid_points(config)
    h = build_hamiltonian(config.hamiltonian)
    psi0 = initial_states("pure", params)
    base = me.concurrence_pure(propagate(psi0, h, params["t"]))
    worst = 0.0
    for delta in RZ_ANGLES:
        r = la.kron(rz(delta), rz(delta))
        rotated = propagate(psi0 @ r.T, h, params["t"])
        worst = max(worst, float(np.max(np.abs(me.concurrence_pure(rotated) - base))))
    return worst


SYMMETRIES = {
    "period": _period,
    "theta_reflection": lambda c: _mirror(c, "theta_a", "theta_b"),
    "r_reflection": lambda c: _mirror(c, "ra", "rb"),
    "quarter_turn": _quarter_turn,
    "rz_covariance": _rz_covariance,
}
_FAMILY_OF = {"theta_reflection": "pure", "r_reflection": "mixed", "quarter_turn": "pure"}


def verify_symmetry(config: SweepConfig, symmetry: str) -> SymmetryReport:
    """Max absolute mismatch between the sweep surface and its transformed image.

    Symmetries: ``period`` (t -> t + pi), ``theta_reflection`` (both angles
    reflected about pi), ``r_reflection`` (both Bloch lengths negated),
    ``quarter_turn`` (t -> pi/2 - t with a quarter turn of the angle plane),
    ``rz_covariance`` (common R_z pre-rotation of both qubits).
    """
    if symmetry not in SYMMETRIES:
        raise ConfigError(f"unknown symmetry {symmetry!r}")
    fam = _FAMILY_OF.get(symmetry)
    if fam is not None and config.family != fam:
        raise ConfigError(f"{symmetry} applies to the {fam} family")
    return SymmetryReport(symmetry, SYMMETRIES[symmetry](config))


# --- presets -------------------------------------------------------------------

PI = math.pi


def _ax(name, start, stop, count=101):
    return GridAxis(name, start, stop, count)


def preset(name: str, count: int = 101, **fixed) -> SweepConfig:
    """Figure-reproduction configurations; keyword arguments override fixed values."""
    table = {
        "fig1": dict(
            family="pure",
            axes=(_ax("theta_a", 0, 2 * PI, count), _ax("t", 0, PI, count)),
            fixed={"theta_b": PI / 2},
        ),
        "fig1-angles": dict(
            family="pure",
            axes=(_ax("theta_a", 0, 2 * PI, count), _ax("theta_b", 0, 2 * PI, count)),
            fixed={"t": PI / 8},
        ),
        "fig2-rho3": dict(
            family="mixed",
            mixed_axis="z",
            axes=(_ax("ra", -1, 1, count), _ax("rb", -1, 1, count)),
            fixed={"t": PI / 4},
        ),
        "fig2-rho1": dict(
            family="mixed",
            mixed_axis="x",
            axes=(_ax("ra", -1, 1, count), _ax("rb", -1, 1, count)),
            fixed={"t": PI / 4},
        ),
        "fig3": dict(
            family="ent",
            axes=(_ax("t", 0, PI, count), _ax("w", 0, 1, count)),
        ),
        "fig3-depol": dict(
            family="depol",
            axes=(_ax("w", 0, 1, count), _ax("p", 0, 1, count)),
            fixed={"t": PI / 4},
        ),
        "fig4-coherence": dict(
            family="pure",
            axes=(_ax("theta_a", 0, 2 * PI, count), _ax("t", 0, PI, count)),
            fixed={"theta_b": PI / 2},
            quantities=("coherence_a",),
        ),
    }
    if name not in table:
        raise ConfigError(f"unknown preset {name!r} (choose from {sorted(table)})")
    spec = table[name]
    merged = dict(spec.get("fixed", {}))
    for k, v in fixed.items():
        if k not in merged:
            raise ConfigError(f"preset {name!r} has no fixed parameter {k!r}")
        merged[k] = v
    spec = {**spec, "fixed": merged}
    return SweepConfig(**spec)


PRESETS = ("fig1", "fig1-angles", "fig2-rho3", "fig2-rho1", "fig3", "fig3-depol", "fig4-coherence")


# --- config files ------------------------------------------------------------------


def parse_config(text: str) -> SweepConfig:
    """Read a ``key = value`` config.

    Keys: ``family``, ``mixed_axis``, ``quantities`` (comma list),
    ``axis.<name> = start, stop, count`` (in grid order), ``fixed.<name>``,
    ``n_hat = x, y, z`` and ``coupling_d``.  ``#`` starts a comment.
    """
    family = None
    mixed_axis = None
    quantities = ("concurrence",)
    axes, fixed = [], {}
    n_hat, coupling = (0.0, 0.0, 1.0), 1.0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not eq:
            raise ConfigError(f"line {lineno}: expected key = value")
        try:
            if key == "family":
                family = value
            elif key == "mixed_axis":
                mixed_axis = value
            elif key == "quantities":
                quantities = tuple(q.strip() for q in value.split(",") if q.strip())
            elif key.startswith("axis."):
                start, stop, count = (x.strip() for x in value.split(","))
                axes.append(GridAxis(key[5:], float(start), float(stop), int(count)))
            elif key.startswith("fixed."):
                fixed[key[6:]] = float(value)
            elif key == "n_hat":
                n_hat = tuple(float(x) for x in value.split(","))
            elif key == "coupling_d":
                coupling = float(value)
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {value!r}") from None
    if family is None:
        raise ConfigError("config: 'family' is required")
    try:
        hamiltonian = DipoleAxis.from_direction(n_hat, coupling)
    except InvalidArgumentError as exc:
        raise ConfigError(str(exc)) from None
    return SweepConfig(
        family=family,
        axes=tuple(axes),
        fixed=fixed,
        quantities=quantities,
        hamiltonian=hamiltonian,
        mixed_axis=mixed_axis,
    )
