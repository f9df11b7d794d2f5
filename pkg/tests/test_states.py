import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as hst

from mdient import linalg as la
from mdient import measures as me
from mdient import states as st
from mdient.errors import InvalidArgumentError
from mdient.model import LocalRotation

S = 1 / math.sqrt(2)


def assert_density(rho):
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-12)
    assert abs(np.trace(rho) - 1) < 1e-12
    assert np.linalg.eigvalsh(rho).min() > -1e-12


def test_pure_qubit_examples():
    np.testing.assert_allclose(st.pure_qubit(0), [1, 0])
    np.testing.assert_allclose(st.pure_qubit(math.pi), [0, 1], atol=1e-16)
    np.testing.assert_allclose(st.pure_qubit(math.pi / 2), [S, S], atol=1e-16)


@pytest.mark.parametrize("theta", [-0.1, 2 * math.pi + 1e-9, 7.0])
def test_pure_qubit_range(theta):
    with pytest.raises(InvalidArgumentError):
        st.pure_qubit(theta)


def test_pure_qubit_endpoint_allowed():
    np.testing.assert_allclose(st.pure_qubit(2 * math.pi), [-1, 0], atol=1e-15)


def test_product_state_examples():
    np.testing.assert_allclose(st.product_state([1, 0], [0, 1]), [0, 1, 0, 0])
    np.testing.assert_allclose(st.product_state([S, S], [S, S]), [0.5] * 4)


def test_product_state_rotation_hook():
    # a quarter turn about y takes |00> to |++>
    out = st.product_state([1, 0], [1, 0], LocalRotation((0, 1, 0), math.pi / 2))
    np.testing.assert_allclose(out, [0.5] * 4, atol=1e-15)


@given(hst.floats(0, 2 * math.pi), hst.floats(0, 2 * math.pi))
def test_product_states_are_separable(ta, tb):
    psi = st.product_state(st.pure_qubit(ta), st.pure_qubit(tb))
    assert me.concurrence_pure(psi) < 1e-15


def test_bloch_mixed_examples():
    np.testing.assert_allclose(st.bloch_mixed("z", 1), [[1, 0], [0, 0]])
    np.testing.assert_allclose(st.bloch_mixed("x", 0), np.eye(2) / 2)
    with pytest.raises(InvalidArgumentError):
        st.bloch_mixed("z", 1.01)
    with pytest.raises(InvalidArgumentError):
        st.bloch_mixed("y", 0.5)


@given(hst.sampled_from(["x", "z"]), hst.floats(-1, 1))
def test_bloch_mixed_properties(axis, r):
    rho = st.bloch_mixed(axis, r)
    assert_density(rho)
    assert abs(me.purity(rho) - (1 + r * r) / 2) < 1e-12
    assert abs(me.l1_coherence(rho) - (abs(r) if axis == "x" else 0.0)) < 1e-12


def test_bloch_purity_value():
    assert abs(me.purity(st.bloch_mixed("z", 0.6)) - 0.68) < 1e-12


@given(hst.floats(0, 1), hst.floats(0, 1))
def test_purity_monotone_in_abs_r(r1, r2):
    lo, hi = sorted((r1, r2))
    for axis in ("x", "z"):
        assert me.purity(st.bloch_mixed(axis, lo)) <= me.purity(st.bloch_mixed(axis, -hi)) + 1e-15


def test_partial_entangled_examples():
    np.testing.assert_allclose(st.partial_entangled(1), [0, 1, 0, 0])
    np.testing.assert_allclose(st.partial_entangled(0.5), st.bell_state("psi+"), atol=1e-15)
    assert abs(me.concurrence_pure(st.partial_entangled(0.5)) - 1) < 1e-15
    psi = st.partial_entangled(0.25)
    assert abs(me.concurrence_pure(psi) - math.sqrt(3) / 2) < 1e-12
    assert abs(me.concurrence_mixed(la.projector(psi)) - math.sqrt(3) / 2) < 1e-12
    with pytest.raises(InvalidArgumentError):
        st.partial_entangled(1.2)


@given(hst.floats(0, 1))
def test_partial_entangled_swap_symmetry(w):
    a, b = st.partial_entangled(w), st.partial_entangled(1 - w)
    # compare populations: sqrt amplifies the rounding in 1 - w near w = 0
    np.testing.assert_allclose(np.abs(a[[0, 2, 1, 3]]) ** 2, np.abs(b) ** 2, atol=1e-15)
    # 2 sqrt(w (1 - w)) is sqrt-conditioned at the interval ends
    assert abs(me.concurrence_pure(a) - me.concurrence_pure(b)) < 1e-7


def test_depolarize_examples():
    rho = la.projector(st.bell_state("psi-"))
    np.testing.assert_allclose(st.depolarize(rho, 1), rho)
    np.testing.assert_allclose(st.depolarize(rho, 0), np.eye(4) / 4)
    with pytest.raises(InvalidArgumentError):
        st.depolarize(rho, -0.1)


def test_werner_threshold():
    from conftest import wootters_bruteforce

    rho = st.depolarize(la.projector(st.bell_state("psi-")), 1 / 3)
    assert wootters_bruteforce(rho) < 1e-7
    assert me.concurrence_mixed(rho) < 1e-12


def test_bell_states():
    np.testing.assert_allclose(st.bell_state("psi-"), [0, S, -S, 0])
    np.testing.assert_allclose(st.bell_state("Ψ−"), [0, S, -S, 0])
    for kind in ("psi+", "psi-", "phi+", "phi-"):
        assert abs(me.concurrence_pure(st.bell_state(kind)) - 1) < 1e-15
    with pytest.raises(InvalidArgumentError):
        st.bell_state("chi")


@pytest.mark.parametrize(
    "spec",
    [st.PureProduct(0.3, 2.0), st.BlochMixed("z", 0.5, -0.5), st.BlochMixed("x", 0.1, 1.0),
     st.PartialEntangled(0.25), st.Depolarized(0.25, 0.8)],
)
def test_spec_density_is_valid_and_round_trips(spec):
    assert_density(spec.density())
    assert st.parse_state_spec(st.format_state_spec(spec)) == spec


def test_parse_examples():
    assert st.parse_state_spec("pure:theta_a=1.5708,theta_b=1.5708") == st.PureProduct(1.5708, 1.5708)
    assert st.parse_state_spec("mixed:axis=z,ra=0.5,rb=-0.5") == st.BlochMixed("z", 0.5, -0.5)
    assert st.parse_state_spec("ent:w=0.25") == st.PartialEntangled(0.25)
    assert st.parse_state_spec("depol:w=0.25,p=0.8") == st.Depolarized(0.25, 0.8)


@pytest.mark.parametrize(
    "text,field",
    [
        ("pure:theta_a=1", "theta_b"),
        ("pure:theta_a=x,theta_b=1", "theta_a"),
        ("ent:w=0.2,q=1", "q"),
        ("ent:w=2", "w"),
        ("mixed:axis=y,ra=0,rb=0", "axis"),
        ("qutrit:w=1", "qutrit"),
        ("depol:w=0.1,p=nan", "p"),
    ],
)
def test_parse_errors_name_field(text, field):
    with pytest.raises(InvalidArgumentError, match=field):
        st.parse_state_spec(text)


def test_family_params():
    assert st.family_params("pure") == ("theta_a", "theta_b")
    assert st.family_params("mixed") == ("ra", "rb")
    assert st.family_params("depol") == ("w", "p")
