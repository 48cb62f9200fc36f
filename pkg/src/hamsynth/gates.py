"""Target gates and the reference step counts of standard-circuit
decompositions.

Two-qubit matrices use the basis ``|q1 q2>`` with qubit 1 as the most
significant bit and as the control of controlled gates.
"""

from dataclasses import dataclass
import re

import numpy as np

from .errors import GateError
from .linalg import I2, SIGMA_X, SIGMA_Y, SIGMA_Z

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def phase_gate(alpha):
    return np.diag([1.0, np.exp(1j * alpha)])


def controlled(u):
    """Block-diagonal ``diag(I, U)`` controlled on qubit 1."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise GateError(f"controlled gate needs a 2x2 block, got shape {u.shape}")
    out = np.eye(4, dtype=complex)
    out[2:, 2:] = u
    return out


def _qft2():
    return 0.5 * np.array([[1j ** (j * k) for k in range(4)] for j in range(4)])


# name -> (num_qubits, number of real parameters, builder)
CATALOG = {
    "i": (1, 0, lambda: I2.copy()),
    "x": (1, 0, lambda: SIGMA_X.copy()),
    "y": (1, 0, lambda: SIGMA_Y.copy()),
    "z": (1, 0, lambda: SIGMA_Z.copy()),
    "h": (1, 0, lambda: HADAMARD.copy()),
    "phase": (1, 1, phase_gate),
    "cnot": (2, 0, lambda: np.eye(4, dtype=complex)[[0, 1, 3, 2]]),
    "swap": (2, 0, lambda: np.eye(4, dtype=complex)[[0, 2, 1, 3]]),
    "qft2": (2, 0, _qft2),
    "cphase": (2, 1, lambda a: controlled(phase_gate(a))),
}

SIGNATURES = {
    "i": "i",
    "x": "x",
    "y": "y",
    "z": "z",
    "h": "h",
    "phase": "phase(alpha)",
    "cnot": "cnot",
    "swap": "swap",
    "qft2": "qft2",
    "cphase": "cphase(alpha)",
    "cu": "cu  (2x2 unitary block, Python API only)",
}


@dataclass(frozen=True)
class GateSpec:
    name: str
    params: tuple = ()
    matrix: object = None  # 2x2 block for "cu"

    @property
    def num_qubits(self):
        if self.name == "cu":
            return 2
        try:
            return CATALOG[self.name][0]
        except KeyError:
            raise GateError(f"unknown gate {self.name!r}") from None

    def __str__(self):
        if self.params:
            return f"{self.name}({','.join(repr(float(p)) for p in self.params)})"
        return self.name


_SPEC_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*$")


def parse_gate(text):
    """Parse ``name`` or ``name(p1, p2, ...)`` into a :class:`GateSpec`."""
    m = _SPEC_RE.match(text)
    if not m:
        raise GateError(f"cannot parse gate specification {text!r}")
    name = m.group(1).lower()
    params = ()
    if m.group(2) is not None and m.group(2).strip():
        try:
            params = tuple(float(p) for p in m.group(2).split(","))
        except ValueError:
            raise GateError(f"gate parameters must be real numbers in {text!r}") from None
    return GateSpec(name, params)


def build_gate(spec):
    """Unitary matrix of a catalog gate; accepts a :class:`GateSpec` or text."""
    if isinstance(spec, str):
        spec = parse_gate(spec)
    if spec.name == "cu":
        if spec.matrix is None or spec.params:
            raise GateError("cu takes a 2x2 unitary block and no real parameters")
        return controlled(spec.matrix)
    if spec.name not in CATALOG:
        raise GateError(f"unknown gate {spec.name!r}; known: {', '.join(SIGNATURES)}")
    _, nparams, builder = CATALOG[spec.name]
    if len(spec.params) != nparams:
        raise GateError(f"gate {spec.name!r} takes {nparams} parameter(s), got {len(spec.params)}")
    return np.asarray(builder(*spec.params), dtype=complex)


def standard_one_qubit(theta, phi):
    """Textbook one-qubit circuit H, P(2 theta), H, P(pi/2 + phi) in time order."""
    return phase_gate(np.pi / 2 + phi) @ HADAMARD @ phase_gate(2 * theta) @ HADAMARD


_BASELINES = {
    "one_qubit": {"standard": 4, "standard_typical": 8, "intrinsic_orthogonal": 3, "intrinsic_josephson": 4},
    "two_qubit": {"standard_cartan": 27, "intrinsic": 15},
    "two_qubit_controlled": {"standard_cartan": 19, "intrinsic": 15},
}


def baseline_step_counts(target_class):
    """Reported step counts of standard decompositions next to the
    intrinsic-Hamiltonian counts."""
    try:
        return dict(_BASELINES[target_class])
    except KeyError:
        raise GateError(f"unknown target class {target_class!r}; known: {', '.join(_BASELINES)}") from None
