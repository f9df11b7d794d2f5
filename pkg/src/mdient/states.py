"""Initial-state families and their canonical text form.

Text forms (angles in radians)::

    pure:theta_a=1.5708,theta_b=1.5708
    mixed:axis=z,ra=0.5,rb=-0.5
    ent:w=0.25
    depol:w=0.25,p=0.8
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import ClassVar, Optional, Union

import numpy as np

from . import linalg as la
from .errors import InvalidArgumentError
from .model import LocalRotation, su2_matrix

TWO_PI = 2.0 * math.pi
_S = 1.0 / math.sqrt(2.0)

BELL = {
    "psi+": np.array([0, _S, _S, 0], dtype=complex),
    "psi-": np.array([0, _S, -_S, 0], dtype=complex),
    "phi+": np.array([_S, 0, 0, _S], dtype=complex),
    "phi-": np.array([_S, 0, 0, -_S], dtype=complex),
}
_BELL_ALIASES = {"Ψ+": "psi+", "Ψ-": "psi-", "Ψ−": "psi-", "Φ+": "phi+", "Φ-": "phi-", "Φ−": "phi-"}


def _check_range(name, value, lo, hi):
    value = float(value)
    if not (lo <= value <= hi):
        raise InvalidArgumentError(f"{name}={value} outside [{lo}, {hi}]")
    return value


def pure_qubit(theta: float) -> np.ndarray:
    theta = _check_range("theta", theta, 0.0, TWO_PI)
    return np.array([math.cos(theta / 2), math.sin(theta / 2)], dtype=complex)


def product_state(a, b, rotation: Optional[LocalRotation] = None) -> np.ndarray:
    """|a> x |b>, optionally rotating both factors by the same SU(2) element first."""
    a = la.as_state(a, (2,))
    b = la.as_state(b, (2,))
    if rotation is not None:
        u = su2_matrix(rotation)
        a, b = u @ a, u @ b
    return np.kron(a, b)


def bloch_mixed(axis: str, r: float) -> np.ndarray:
    """(sigma_0 + r sigma_j) / 2 with j = 1 for axis 'x' and j = 3 for 'z'."""
    r = _check_range("r", r, -1.0, 1.0)
    if axis == "x":
        s = la.SIGMA_1
    elif axis == "z":
        s = la.SIGMA_3
    else:
        raise InvalidArgumentError(f"axis must be 'x' or 'z', got {axis!r}")
    return 0.5 * (la.SIGMA_0 + r * s)


def partial_entangled(w: float) -> np.ndarray:
    w = _check_range("w", w, 0.0, 1.0)
    return np.array([0, math.sqrt(w), math.sqrt(1 - w), 0], dtype=complex)


def depolarize(rho, p: float) -> np.ndarray:
    """(1 - p) I/4 + p rho."""
    p = _check_range("p", p, 0.0, 1.0)
    rho = la.as_matrix(rho, (4,))
    return (1 - p) * np.eye(4) / 4 + p * rho


def bell_state(kind: str) -> np.ndarray:
    key = _BELL_ALIASES.get(kind, str(kind).lower())
    if key not in BELL:
        raise InvalidArgumentError(f"unknown Bell state {kind!r}")
    return BELL[key].copy()


# --- StateSpec ---------------------------------------------------------------


@dataclass(frozen=True)
class PureProduct:
    tag: ClassVar[str] = "pure"
    theta_a: float
    theta_b: float

    def __post_init__(self):
        _check_range("theta_a", self.theta_a, 0.0, TWO_PI)
        _check_range("theta_b", self.theta_b, 0.0, TWO_PI)

    def vector(self) -> np.ndarray:
        return product_state(pure_qubit(self.theta_a), pure_qubit(self.theta_b))

    def density(self) -> np.ndarray:
        return la.projector(self.vector())


@dataclass(frozen=True)
class BlochMixed:
    tag: ClassVar[str] = "mixed"
    axis: str
    ra: float
    rb: float

    def __post_init__(self):
        if self.axis not in ("x", "z"):
            raise InvalidArgumentError(f"axis must be 'x' or 'z', got {self.axis!r}")
        _check_range("ra", self.ra, -1.0, 1.0)
        _check_range("rb", self.rb, -1.0, 1.0)

    def density(self) -> np.ndarray:
        return la.kron(bloch_mixed(self.axis, self.ra), bloch_mixed(self.axis, self.rb))


@dataclass(frozen=True)
class PartialEntangled:
    tag: ClassVar[str] = "ent"
    w: float

    def __post_init__(self):
        _check_range("w", self.w, 0.0, 1.0)

    def vector(self) -> np.ndarray:
        return partial_entangled(self.w)

    def density(self) -> np.ndarray:
        return la.projector(self.vector())


@dataclass(frozen=True)
class Depolarized:
    tag: ClassVar[str] = "depol"
    w: float
    p: float

    def __post_init__(self):
        _check_range("w", self.w, 0.0, 1.0)
        _check_range("p", self.p, 0.0, 1.0)

    def density(self) -> np.ndarray:
        return depolarize(la.projector(partial_entangled(self.w)), self.p)


StateSpec = Union[PureProduct, BlochMixed, PartialEntangled, Depolarized]
FAMILIES = {cls.tag: cls for cls in (PureProduct, BlochMixed, PartialEntangled, Depolarized)}


def family_params(tag: str) -> tuple[str, ...]:
    """Names of the real-valued parameters of a family (excludes the mixed axis)."""
    if tag not in FAMILIES:
        raise InvalidArgumentError(f"unknown state family {tag!r}")
    return tuple(f.name for f in fields(FAMILIES[tag]) if f.name != "axis")


def parse_state_spec(text: str) -> StateSpec:
    """Parse ``family:key=value,...``; errors name the offending field."""
    tag, sep, body = text.strip().partition(":")
    if not sep or tag not in FAMILIES:
        raise InvalidArgumentError(
            f"state: unknown family {tag!r} (expected one of {sorted(FAMILIES)})"
        )
    cls = FAMILIES[tag]
    wanted = [f.name for f in fields(cls)]
    values = {}
    for item in filter(None, body.split(",")):
        key, eq, raw = item.partition("=")
        key = key.strip()
        if not eq or key not in wanted:
            raise InvalidArgumentError(f"state field {key!r} not valid for {tag!r}")
        if key in values:
            raise InvalidArgumentError(f"state field {key!r} given twice")
        if key == "axis":
            values[key] = raw.strip()
            continue
        try:
            values[key] = float(raw)
        except ValueError:
            raise InvalidArgumentError(f"state field {key!r}: not a number: {raw!r}") from None
        if not math.isfinite(values[key]):
            raise InvalidArgumentError(f"state field {key!r} must be finite")
    missing = [k for k in wanted if k not in values]
    if missing:
        raise InvalidArgumentError(f"state field {missing[0]!r} missing for {tag!r}")
    return cls(**values)


def format_state_spec(spec: StateSpec) -> str:
    parts = []
    for f in fields(spec):
        v = getattr(spec, f.name)
        parts.append(f"{f.name}={v if isinstance(v, str) else repr(float(v))}")
    return f"{spec.tag}:" + ",".join(parts)
