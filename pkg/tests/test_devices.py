import itertools

import numpy as np
import pytest

from hamsynth.devices import builtin_device, builtin_names, hamiltonian_for, load_device, serialize_device
from hamsynth.errors import DeviceConfigError, DeviceError, HermiticityError
from hamsynth.linalg import SIGMA_X, SIGMA_Z, as_hermitian, hs_inner

PARAMS = {
    "nmr1": {},
    "jj1": {"E_c": 10, "E_J": 1},
    "heis2": {"B1": 1, "B2": 1, "J12": 0.1},
    "heis2perm": {"B1": 1, "B2": 1, "J12": 0.1},
    "jj2": {"E_c": 10, "E_J": 1, "E_L": 0.5},
}

HEIS2_TEXT = """\
# Heisenberg pair with switchable exchange
name heis2
qubits 2
hamiltonian H1
term 1.0 ZI
hamiltonian H2
term 1.0 IX
hamiltonian H3
term 0.1 XX
term 0.1 YY
term 0.1 ZZ
"""


def test_nmr1_orthogonal():
    d = builtin_device("nmr1")
    assert len(d.hamiltonians) == 2
    assert hs_inner(*d.hamiltonians) == 0


def test_jj1_matches_charge_qubit_pair():
    d = builtin_device("jj1", {"E_c": 10, "E_J": 1})
    h1, h2 = d.hamiltonians
    assert np.allclose(h1, -0.5 * SIGMA_X)
    assert np.allclose(h2 - h1, 0.5 * 10 * SIGMA_Z)


def test_heis2_exchange_traceless_and_orthogonal():
    d = builtin_device("heis2", PARAMS["heis2"])
    h1, h2, h3 = d.hamiltonians
    assert abs(np.trace(h3)) == 0
    assert hs_inner(h1, h3) == 0


@pytest.mark.parametrize("name", builtin_names())
def test_builtins_hermitian_and_dimensioned(name):
    d = builtin_device(name, PARAMS[name])
    for h in d.hamiltonians:
        as_hermitian(h)
        assert h.shape == (d.dim, d.dim)
    assert d.cycle_order == tuple(range(len(d.hamiltonians)))


def test_heis2_fully_orthogonal():
    d = builtin_device("heis2", {"B1": 0.7, "B2": 1.3, "J12": 0.2})
    for a, b in itertools.combinations(d.hamiltonians, 2):
        assert hs_inner(a, b) == 0


@pytest.mark.parametrize("name", ["heis2perm", "jj2"])
def test_non_orthogonal_sets(name):
    d = builtin_device(name, PARAMS[name])
    assert any(abs(hs_inner(a, b)) > 1e-9 for a, b in itertools.combinations(d.hamiltonians, 2))


def test_heis2perm_operators():
    d = builtin_device("heis2perm", PARAMS["heis2perm"])
    h1, h2, h3 = d.hamiltonians
    assert np.allclose(h1 - h3, np.kron(SIGMA_Z, np.eye(2)))
    assert np.allclose(h2 - h3, np.kron(np.eye(2), SIGMA_X))


def test_jj2_operators():
    d = builtin_device("jj2", PARAMS["jj2"])
    h1, h2, h3, h4 = d.hamiltonians
    z1 = np.kron(SIGMA_Z, np.eye(2))
    z2 = np.kron(np.eye(2), SIGMA_Z)
    tunnel = -0.5 * (np.kron(SIGMA_X, np.eye(2)) + np.kron(np.eye(2), SIGMA_X))
    yy = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))
    assert np.allclose(h1, 5 * (z1 + z2) + tunnel)
    assert np.allclose(h2, tunnel - 0.25 * yy)
    assert np.allclose(h3, 5 * z2 + tunnel)
    assert np.allclose(h4, 5 * z1 + tunnel)


@pytest.mark.parametrize(
    "name,params",
    [
        ("bogus", {}),
        ("jj1", {"E_c": 10}),
        ("jj1", {"E_c": 10, "E_J": 0}),
        ("heis2", {"B1": 1, "B2": -1, "J12": 0.1}),
        ("nmr1", {"B1": 1}),
    ],
)
def test_builtin_errors(name, params):
    with pytest.raises(DeviceError):
        builtin_device(name, params)


def test_load_single_term():
    d = load_device("name z\nqubits 1\nhamiltonian H1\nterm 1.0 Z\n")
    assert np.array_equal(d.hamiltonians[0], SIGMA_Z)


def test_load_matches_builtin_heis2():
    loaded = load_device(HEIS2_TEXT)
    builtin = builtin_device("heis2", PARAMS["heis2"])
    for a, b in zip(loaded.hamiltonians, builtin.hamiltonians):
        assert np.array_equal(a, b)


def test_load_wrong_pauli_length_names_line():
    text = HEIS2_TEXT.replace("term 0.1 YY", "term 0.1 YYY")
    with pytest.raises(DeviceConfigError) as exc:
        load_device(text)
    assert exc.value.line == 10
    assert "line 10" in str(exc.value)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("qubits 1\nhamiltonian A\nterm 1 Z\n", "name"),
        ("name a\nqubits 1\nhamiltonian A\nterm 1 Z\nhamiltonian A\nterm 1 X\n", "duplicate"),
        ("name a\nqubits 1\nhamiltonian A\n", "no terms"),
        ("name a\nqubits 1\nhamiltonian A\nterm one Z\n", "real number"),
        ("name a\nqubits 1\nhamiltonian A\nterm 1 Q\n", "invalid Pauli"),
        ("name a\nqubits 1\nhamiltonian A\nterm 1 Z\ncycle A B\n", "unknown Hamiltonian"),
        ("name a\nqubits 1\nfrobnicate\n", "unknown keyword"),
        ("name a\nqubits 1\nhamiltonian A\nterm 1 Z\nswitch 012 -> A\n", "not binary"),
        ("name a\nqubits 1\nhamiltonian A\nterm 1 Z\nswitch 011 -> A\n", "exceed"),
    ],
)
def test_load_errors(text, fragment):
    with pytest.raises(DeviceConfigError, match=fragment):
        load_device(text)


def test_load_complex_coefficient_rejected_as_parse_error():
    with pytest.raises(DeviceConfigError) as exc:
        load_device("name a\nqubits 1\nhamiltonian A\nterm 1j Z\n")
    assert exc.value.line == 4 and exc.value.column == 6


def test_non_hermitian_impossible_from_real_terms():
    # real coefficients on Pauli strings always give Hermitian operators
    d = load_device("name a\nqubits 2\nhamiltonian A\nterm 0.3 XY\nterm -1.5 ZZ\n")
    as_hermitian(d.hamiltonians[0])
    with pytest.raises(HermiticityError):
        as_hermitian(np.array([[0, 1j], [1j, 0]]))


@pytest.mark.parametrize("name", builtin_names())
def test_serialize_roundtrip_builtin(name):
    d = builtin_device(name, PARAMS[name])
    again = load_device(serialize_device(d))
    assert again == d
    for a, b in zip(again.hamiltonians, d.hamiltonians):
        assert np.max(np.abs(a - b)) <= 1e-15


def test_serialize_roundtrip_custom_cycle_and_switches():
    rng = np.random.default_rng(11)
    text = (
        "name custom\nqubits 2\nparam g 0.123456789012345\ncycle B A B\n"
        f"hamiltonian A\nterm {rng.normal()!r} XZ\nterm {rng.normal()!r} IY\n"
        f"hamiltonian B\nterm {rng.normal()!r} ZZ\n"
        "switch 01 -> A\nswitch 10 -> B\n"
    )
    d = load_device(text)
    assert d.cycle_order == (1, 0, 1)
    assert load_device(serialize_device(d)) == d


def test_hamiltonian_for_jj1():
    d = builtin_device("jj1", {"E_c": 10, "E_J": 1})
    assert np.allclose(hamiltonian_for(d, "0"), -0.5 * SIGMA_X)
    assert np.allclose(hamiltonian_for(d, [True]), 5 * SIGMA_Z - 0.5 * SIGMA_X)


def test_hamiltonian_for_jj2_switches():
    d = builtin_device("jj2", PARAMS["jj2"])
    assert d.num_switches == 3 == d.num_qubits + 1
    assert np.array_equal(hamiltonian_for(d, "001"), d.hamiltonians[1])
    assert np.array_equal(hamiltonian_for(d, (True, True, False)), d.hamiltonians[0])
    with pytest.raises(DeviceError, match="selects no Hamiltonian"):
        hamiltonian_for(d, "111")
    with pytest.raises(DeviceError):
        hamiltonian_for(d, "01")


def test_hamiltonian_for_without_switch_table():
    with pytest.raises(DeviceError, match="no switch table"):
        hamiltonian_for(builtin_device("heis2", PARAMS["heis2"]), "0")
