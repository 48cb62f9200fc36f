"""Gate synthesis from the intrinsic Hamiltonians of a device.

Decides whether a small set of switchable Hamiltonians generates all
N-qubit gates, predicts how many evolution steps are needed, and computes
the step durations: in closed form for one qubit and by multi-start
gradient descent otherwise.
"""

from .controllability import ClosureResult, LowenthalResult, gram_matrix, lie_closure, lowenthal_steps
from .devices import DeviceModel, builtin_device, hamiltonian_for, load_device, serialize_device
from .errors import (
    AnalyticDomainError,
    ControllabilityError,
    DeviceConfigError,
    DeviceError,
    DimensionError,
    GateError,
    HamsynthError,
    HermiticityError,
    PauliParseError,
    RegimeError,
    UnitarityError,
)
from .gates import GateSpec, baseline_step_counts, build_gate, parse_gate, standard_one_qubit
from .linalg import expm_hermitian, hs_inner, kron, mat_mul, pauli_string, unitarity_defect
from .su2 import Su2Params, euler_three_step, jj_four_step, su2_from_unitary
from .synthesis import (
    ObjectiveKind,
    PulseSequence,
    SynthesisReport,
    f_phase_invariant,
    f_test,
    objective_gradient,
    propagate,
    synthesize,
)

__version__ = "0.1.0"
