import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from hamsynth.errors import DimensionError, HermiticityError, PauliParseError
from hamsynth.linalg import (
    I2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    expm_hermitian,
    hs_inner,
    kron,
    mat_mul,
    pauli_string,
    unitarity_defect,
)

from conftest import random_hermitian

PAULIS = [SIGMA_X, SIGMA_Y, SIGMA_Z]


def test_mat_mul_examples():
    assert np.array_equal(mat_mul(I2, SIGMA_X), SIGMA_X)
    assert np.array_equal(mat_mul(SIGMA_X, SIGMA_Y), 1j * SIGMA_Z)
    assert np.array_equal(mat_mul(SIGMA_X, SIGMA_X), I2)


def test_mat_mul_dimension_mismatch():
    with pytest.raises(DimensionError):
        mat_mul(I2, np.eye(4))


def test_pauli_algebra_exact():
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1
    for a in range(3):
        for b in range(3):
            expected = (a == b) * I2 + 1j * sum(eps[a, b, c] * PAULIS[c] for c in range(3))
            assert np.array_equal(mat_mul(PAULIS[a], PAULIS[b]), expected)


def test_kron_examples():
    assert np.array_equal(kron(I2, I2), np.eye(4))
    assert np.array_equal(kron(SIGMA_Z, I2), np.diag([1, 1, -1, -1]))
    xx = kron(SIGMA_X, SIGMA_X)
    assert xx[0, 3] == 1
    assert np.all(np.diag(xx) == 0)


def test_kron_mixed_product():
    rng = np.random.default_rng(3)
    a, b, c, d = (random_hermitian(rng, 2) for _ in range(4))
    lhs = kron(a, b) @ kron(c, d)
    assert np.linalg.norm(lhs - kron(a @ c, b @ d)) <= 1e-12


@pytest.mark.parametrize("h", [SIGMA_X, SIGMA_Z, pauli_string(0.3, "XY")])
def test_expm_zero_time_is_identity(h):
    assert np.allclose(expm_hermitian(h, 0.0), np.eye(h.shape[0]), atol=1e-15)


def test_expm_examples():
    assert np.allclose(expm_hermitian(SIGMA_Z, np.pi / 2), np.diag([-1j, 1j]), atol=1e-15)
    assert np.allclose(expm_hermitian(SIGMA_X, np.pi), -I2, atol=1e-15)


def test_expm_rejects_non_hermitian():
    with pytest.raises(HermiticityError):
        expm_hermitian(np.array([[0, 1], [0, 0]]), 1.0)


@pytest.mark.parametrize("d", [2, 4, 8])
def test_expm_matches_scipy(d):
    rng = np.random.default_rng(d)
    for _ in range(20):
        h = random_hermitian(rng, d)
        t = rng.uniform(-3, 3)
        assert np.linalg.norm(expm_hermitian(h, t) - expm(-1j * t * h)) <= 1e-11


@settings(max_examples=50, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    d=st.sampled_from([2, 4]),
    s=st.floats(-5, 5),
    t=st.floats(-5, 5),
)
def test_expm_group_property_and_unitarity(seed, d, s, t):
    h = random_hermitian(np.random.default_rng(seed), d)
    us, ut = expm_hermitian(h, s), expm_hermitian(h, t)
    assert np.linalg.norm(us @ ut - expm_hermitian(h, s + t)) <= 1e-11
    assert unitarity_defect(us) <= 1e-12


def test_hs_inner_examples():
    assert hs_inner(SIGMA_X, SIGMA_Z) == 0
    assert hs_inner(SIGMA_X, SIGMA_X) == 2
    e_j, e_c = 1.0, 10.0
    h1 = -0.5 * e_j * SIGMA_X
    h2 = 0.5 * e_c * SIGMA_Z - 0.5 * e_j * SIGMA_X
    assert hs_inner(h1, h2) == pytest.approx(0.5, abs=1e-15)


def test_hs_inner_dimension_mismatch():
    with pytest.raises(DimensionError):
        hs_inner(SIGMA_X, np.eye(4))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), alpha=st.floats(-3, 3), beta=st.floats(-3, 3))
def test_hs_inner_symmetric_bilinear_positive(seed, alpha, beta):
    rng = np.random.default_rng(seed)
    a, b, c = (random_hermitian(rng, 4) for _ in range(3))
    assert hs_inner(a, b) == pytest.approx(hs_inner(b, a), abs=1e-12)
    lhs = hs_inner(alpha * a + beta * b, c)
    assert lhs == pytest.approx(alpha * hs_inner(a, c) + beta * hs_inner(b, c), abs=1e-10)
    assert hs_inner(a, a) > 0


def test_pauli_string_examples():
    assert np.array_equal(pauli_string(1, "Z"), SIGMA_Z)
    assert np.array_equal(pauli_string(1, "XX"), np.kron(SIGMA_X, SIGMA_X))
    assert np.array_equal(pauli_string(-2.5, "ZI"), -2.5 * np.kron(SIGMA_Z, I2))


def test_pauli_string_parse_error_position():
    with pytest.raises(PauliParseError) as exc:
        pauli_string(1, "Q")
    assert exc.value.position == 1
    with pytest.raises(PauliParseError) as exc:
        pauli_string(1, "XIQ")
    assert exc.value.position == 3


def test_unitarity_defect_examples():
    assert unitarity_defect(np.eye(3)) == 0
    assert unitarity_defect(2 * I2) == pytest.approx(3 * np.sqrt(2), abs=1e-15)
    assert unitarity_defect(expm_hermitian(SIGMA_X, 1.234)) <= 1e-12
