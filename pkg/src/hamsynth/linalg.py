"""Dense complex matrix helpers: Pauli strings, Hermitian exponentials and
the trace inner product.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.
Hamiltonians are in angular-frequency units with hbar = 1, so a duration
``t`` produces the propagator ``exp(-1j * t * H)``.
"""

from functools import reduce

import numpy as np

from .errors import DimensionError, HermiticityError, PauliParseError

HERMITIAN_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

PAULI = {"I": I2, "X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z}


def _square(a, name="matrix"):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    return a


def mat_mul(a, b):
    """Matrix product with an explicit dimension check."""
    a = _square(a, "left operand")
    b = _square(b, "right operand")
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return a @ b


def kron(a, b):
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    return np.kron(_square(a), _square(b))


def as_hermitian(h, tol=HERMITIAN_TOL):
    """Validate ``h`` as Hermitian and return its symmetrized copy."""
    h = _square(h, "Hamiltonian")
    dev = np.max(np.abs(h - h.conj().T))
    if dev > tol:
        raise HermiticityError(f"matrix is not Hermitian (max |H - H^dag| = {dev:.3e})")
    return 0.5 * (h + h.conj().T)


def spectrum(h):
    """Eigenvalues and eigenvectors of a Hermitian matrix."""
    return np.linalg.eigh(as_hermitian(h))


def expm_from_spectrum(evals, evecs, t):
    """``exp(-i t H)`` from a precomputed eigendecomposition of ``H``."""
    return (evecs * np.exp(-1j * t * evals)) @ evecs.conj().T


def expm_hermitian(h, t):
    """Propagator ``exp(-i t H)`` via the real spectrum of ``H``.

    The result is unitary to rounding because the eigenvector matrix is.

    >>> np.allclose(expm_hermitian(SIGMA_X, np.pi), -np.eye(2))
    True
    """
    evals, evecs = spectrum(h)
    return expm_from_spectrum(evals, evecs, float(t))


def hs_inner(a, b):
    """Trace inner product ``Tr(A B)`` of two Hermitian operators."""
    a = _square(a)
    b = _square(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    # Tr(AB) = sum_ij A_ij B_ji
    val = np.sum(a * b.T)
    scale = max(1.0, np.linalg.norm(a) * np.linalg.norm(b))
    if abs(val.imag) > 1e-12 * scale:
        raise HermiticityError(f"trace product has imaginary part {val.imag:.3e}; inputs not Hermitian")
    return float(val.real)


def traceless_part(h):
    h = _square(h)
    d = h.shape[0]
    return h - (np.trace(h) / d) * np.eye(d)


def pauli_string(coeff, letters):
    """``coeff`` times the tensor product of the named single-qubit Paulis.

    The leftmost letter acts on qubit 1, which is the most significant
    bit of the computational-basis index.
    """
    if not isinstance(letters, str) or len(letters) == 0:
        raise PauliParseError("Pauli string must contain at least one letter", position=1)
    mats = []
    for pos, ch in enumerate(letters, start=1):
        try:
            mats.append(PAULI[ch.upper()])
        except KeyError:
            raise PauliParseError(
                f"invalid Pauli letter {ch!r} at position {pos} of {letters!r}", position=pos
            ) from None
    return float(coeff) * reduce(np.kron, mats)


def unitarity_defect(u):
    """Frobenius norm of ``U^dag U - I``."""
    u = _square(u)
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])))


def num_qubits(dim):
    """``N`` with ``2**N == dim``; raises for non powers of two."""
    n = int(dim).bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise DimensionError(f"dimension {dim} is not a power of two >= 2")
    return n
