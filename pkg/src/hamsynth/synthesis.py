"""Pulse-sequence propagation, gate-distance objectives and multi-start
numerical synthesis of step durations.

A sequence ``[(c1, t1), ..., (cn, tn)]`` realizes

    U = exp(-i tn H[cn]) ... exp(-i t2 H[c2]) exp(-i t1 H[c1])

so the first step acts first (rightmost factor).
"""

from dataclasses import dataclass, field
import enum
import math

import numpy as np

from .errors import DimensionError, HamsynthError
from .linalg import expm_from_spectrum, spectrum


class ObjectiveKind(str, enum.Enum):
    PLAIN = "plain"
    PHASE_INVARIANT = "phase_invariant"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        aliases = {"plain": cls.PLAIN, "phase": cls.PHASE_INVARIANT, "phase_invariant": cls.PHASE_INVARIANT}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"unknown objective {value!r}; use 'plain' or 'phase'") from None


@dataclass(frozen=True)
class PulseSequence:
    """Ordered ``(hamiltonian index, duration)`` steps over a fixed
    Hamiltonian list.

    Durations must be finite; negative values are allowed because the
    optimizer works on the whole real line.
    """

    hamiltonians: tuple
    steps: tuple
    device: object = None
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        n = len(self.hamiltonians)
        for idx, t in self.steps:
            if not 0 <= idx < n:
                raise IndexError(f"Hamiltonian index {idx} out of range for {n} Hamiltonians")
            if not math.isfinite(t):
                raise ValueError(f"duration {t!r} is not finite")

    @classmethod
    def for_device(cls, device, durations):
        """Steps following ``device.cycle_order`` repeated cyclically."""
        durations = [float(t) for t in durations]
        idx = device.step_hamiltonians(len(durations))
        return cls(device.hamiltonians, tuple(zip(idx, durations)), device=device)

    @property
    def durations(self):
        return [t for _, t in self.steps]

    @property
    def dim(self):
        return self.hamiltonians[0].shape[0]


def propagate(seq):
    """Unitary realized by a pulse sequence; empty sequences give the identity."""
    u = np.eye(seq.dim, dtype=complex)
    cache = {}
    for idx, t in seq.steps:
        if idx not in cache:
            cache[idx] = spectrum(seq.hamiltonians[idx])
        u = expm_from_spectrum(*cache[idx], t) @ u
    return u


def _pair(u_gate, u):
    a = np.asarray(u_gate, dtype=complex)
    b = np.asarray(u, dtype=complex)
    if a.shape != b.shape or a.ndim != 2:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def f_test(u_gate, u):
    """Squared Frobenius distance ``||U_gate - U||^2``."""
    a, b = _pair(u_gate, u)
    return float(np.sum(np.abs(a - b) ** 2))


def f_phase_invariant(u_gate, u):
    """``min over phi of ||U_gate - exp(i phi) U||^2``.

    For unitaries this equals ``2d - 2 |Tr(U_gate^dag U)|``; it is evaluated
    at the optimal phase to avoid cancellation near zero.
    """
    a, b = _pair(u_gate, u)
    z = np.vdot(a, b)  # Tr(A^dag B)
    phase = np.exp(-1j * np.angle(z)) if z != 0 else 1.0
    return float(np.sum(np.abs(a - phase * b) ** 2))


def objective_value(kind, u_gate, u):
    if ObjectiveKind.parse(kind) is ObjectiveKind.PLAIN:
        return f_test(u_gate, u)
    return f_phase_invariant(u_gate, u)


class _Problem:
    """Objective and gradient over the durations of a fixed cyclic pattern."""

    def __init__(self, hamiltonians, pattern, target, kind):
        self.target = np.asarray(target, dtype=complex)
        self.gdag = self.target.conj().T
        self.d = self.target.shape[0]
        self.kind = ObjectiveKind.parse(kind)
        self.pattern = np.asarray(pattern, dtype=int)
        specs = [spectrum(h) for h in hamiltonians]
        self.evals = np.array([specs[i][0] for i in self.pattern])  # (n, d)
        self.evecs = np.array([specs[i][1] for i in self.pattern])  # (n, d, d)
        self.evecs_h = np.conj(np.swapaxes(self.evecs, 1, 2))
        # -i H for every step
        self.gen = np.array([-1j * np.asarray(hamiltonians[i]) for i in self.pattern])

    def factors(self, t):
        ph = np.exp(-1j * t[:, None] * self.evals)
        return (self.evecs * ph[:, None, :]) @ self.evecs_h

    def unitary(self, t):
        u = np.eye(self.d, dtype=complex)
        for f in self.factors(np.asarray(t, dtype=float)):
            u = f @ u
        return u

    def value(self, t):
        return objective_value(self.kind, self.target, self.unitary(t))

    def value_and_grad(self, t):
        t = np.asarray(t, dtype=float)
        n = len(t)
        fs = self.factors(t)
        # right[j] = F_{j-1} ... F_1 (acts before step j)
        right = np.empty((n + 1, self.d, self.d), dtype=complex)
        right[0] = np.eye(self.d)
        for j in range(n):
            right[j + 1] = fs[j] @ right[j]
        u = right[n]
        z = np.sum(self.gdag.T * u)  # Tr(G^dag U)
        # left[j] = G^dag F_n ... F_{j+1}
        traces = np.empty(n, dtype=complex)
        left = self.gdag
        for j in range(n - 1, -1, -1):
            # dU/dt_j = L (-iH_j) F_j R_j, and (-iH_j) commutes with F_j
            m = self.gen[j] @ right[j + 1]
            traces[j] = np.sum(left.T * m)
            left = left @ fs[j]
        if self.kind is ObjectiveKind.PLAIN:
            val = f_test(self.target, u)
            grad = -2.0 * traces.real
        else:
            val = f_phase_invariant(self.target, u)
            az = abs(z)
            if az == 0.0:
                grad = np.zeros(n)
            else:
                grad = -2.0 * (np.conj(z) * traces).real / az
        return val, grad


def objective_gradient(device, target, objective, durations):
    """Analytic gradient of the chosen objective with respect to durations."""
    durations = np.asarray(durations, dtype=float)
    if durations.ndim != 1 or durations.size == 0:
        raise ValueError("durations must be a non-empty 1-d sequence")
    target = np.asarray(target, dtype=complex)
    if target.shape != (device.dim, device.dim):
        raise DimensionError(f"target shape {target.shape} does not match device dimension {device.dim}")
    prob = _Problem(device.hamiltonians, device.step_hamiltonians(len(durations)), target, objective)
    return prob.value_and_grad(durations)[1]


def _descend(prob, t0, max_iters, ftol, gtol=1e-12, stall_limit=10):
    """BFGS directions with Armijo backtracking; returns (t, f, iterations).

    Stops at ``f <= ftol``, a vanishing gradient, or after ``stall_limit``
    consecutive steps with relative decrease below 1e-12.
    """
    t = np.array(t0, dtype=float)
    n = t.size
    f, g = prob.value_and_grad(t)
    hinv = np.eye(n)
    it = 0
    stalled = 0
    for it in range(1, max_iters + 1):
        if not math.isfinite(f):
            raise FloatingPointError("non-finite objective")
        if f <= ftol or np.linalg.norm(g) <= gtol:
            return t, f, it - 1
        p = -hinv @ g
        slope = g @ p
        if slope >= 0:
            hinv = np.eye(n)
            p = -g
            slope = -(g @ g)
        step = 1.0
        while True:
            t_new = t + step * p
            f_new, g_new = prob.value_and_grad(t_new)
            if math.isfinite(f_new) and f_new <= f + 1e-4 * step * slope:
                break
            step *= 0.5
            if step < 1e-16:
                return t, f, it
        stalled = stalled + 1 if f - f_new <= 1e-12 * f else 0
        if stalled >= stall_limit:
            return t_new, f_new, it
        s = t_new - t
        y = g_new - g
        sy = s @ y
        if sy > 1e-300:
            if it == 1:
                hinv = np.eye(n) * (sy / (y @ y))
            rho = 1.0 / sy
            hy = hinv @ y
            hinv = hinv + ((sy + y @ hy) * rho * rho) * np.outer(s, s) - rho * (np.outer(hy, s) + np.outer(s, hy))
        t, f, g = t_new, f_new, g_new
    return t, f, it


@dataclass(frozen=True)
class SynthesisReport:
    target_name: str
    durations: tuple
    objective_value: float
    objective: ObjectiveKind
    restarts_used: int
    iterations: int
    seed: int
    converged: bool

    FIELDS = (
        "target",
        "steps",
        "objective",
        "objective_value",
        "durations",
        "restarts_used",
        "iterations",
        "seed",
        "converged",
    )

    def to_text(self):
        """Key-value document, one field per line."""
        vals = {
            "target": self.target_name,
            "steps": str(len(self.durations)),
            "objective": self.objective.value,
            "objective_value": f"{self.objective_value:.17g}",
            "durations": ",".join(f"{t:.17g}" for t in self.durations),
            "restarts_used": str(self.restarts_used),
            "iterations": str(self.iterations),
            "seed": str(self.seed),
            "converged": "true" if self.converged else "false",
        }
        return "".join(f"{k} {vals[k]}\n" for k in self.FIELDS)

    @classmethod
    def from_text(cls, text):
        vals = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            key, _, rest = line.strip().partition(" ")
            vals[key] = rest.strip()
        missing = [k for k in cls.FIELDS if k not in vals]
        if missing:
            raise ValueError(f"report is missing field(s): {', '.join(missing)}")
        durations = tuple(float(x) for x in vals["durations"].split(",")) if vals["durations"] else ()
        if len(durations) != int(vals["steps"]):
            raise ValueError("report 'steps' does not match the number of durations")
        return cls(
            target_name=vals["target"],
            durations=durations,
            objective_value=float(vals["objective_value"]),
            objective=ObjectiveKind.parse(vals["objective"]),
            restarts_used=int(vals["restarts_used"]),
            iterations=int(vals["iterations"]),
            seed=int(vals["seed"]),
            converged=vals["converged"] == "true",
        )


def sampling_windows(device, num_steps):
    """Upper bounds ``2 pi / ||H||`` of the initial duration windows."""
    out = []
    for idx in device.step_hamiltonians(num_steps):
        norm = np.linalg.norm(device.hamiltonians[idx], 2)
        out.append(2 * math.pi / norm if norm > 0 else 1.0)
    return np.array(out)


def synthesize(
    device,
    target,
    num_steps,
    objective="phase_invariant",
    restarts=64,
    seed=42,
    max_iters=2000,
    tol=1e-8,
    target_name="custom",
    stop_when_converged=True,
):
    """Multi-start search for step durations realizing ``target``.

    Start ``k`` draws its initial point from ``default_rng((seed, k))``, so
    results do not depend on execution order.  With
    ``stop_when_converged`` the search ends at the first start whose
    objective falls to ``tol``.  The best start wins; ties go to the lower
    start index.
    """
    if int(num_steps) != num_steps or num_steps < 1:
        raise ValueError(f"num_steps must be a positive integer, got {num_steps!r}")
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    target = np.asarray(target, dtype=complex)
    if target.shape != (device.dim, device.dim):
        raise DimensionError(f"target shape {target.shape} does not match device dimension {device.dim}")
    kind = ObjectiveKind.parse(objective)
    prob = _Problem(device.hamiltonians, device.step_hamiltonians(num_steps), target, kind)
    windows = sampling_windows(device, num_steps)
    # polish well past the acceptance threshold before stopping a start
    ftol = min(tol, 1e-8) * 1e-6

    best = None
    total_iters = 0
    used = 0
    for k in range(restarts):
        used += 1
        rng = np.random.default_rng((seed, k))
        t0 = rng.uniform(0.0, 1.0, num_steps) * windows
        try:
            t, _, iters = _descend(prob, t0, max_iters, ftol)
        except FloatingPointError:
            continue
        total_iters += iters
        f = prob.value(t)
        if not math.isfinite(f):
            continue
        if best is None or f < best[0] - 1e-15:
            best = (f, t)
        if stop_when_converged and best[0] <= tol:
            break

    if best is None:
        raise HamsynthError("every start produced a non-finite objective")
    f, t = best
    return SynthesisReport(
        target_name=target_name,
        durations=tuple(float(x) for x in t),
        objective_value=float(f),
        objective=kind,
        restarts_used=used,
        iterations=total_iters,
        seed=seed,
        converged=bool(f <= tol),
    )


def evaluate_durations(device, target, durations, objective="phase_invariant"):
    """Objective value of a duration vector on ``device``'s cyclic pattern."""
    u = propagate(PulseSequence.for_device(device, durations))
    return objective_value(objective, target, u)
