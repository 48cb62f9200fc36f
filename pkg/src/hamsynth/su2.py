"""Closed-form single-qubit pulse solvers.

``euler_three_step`` handles any orthogonal generator pair with the
sequence H1, H2, H1.  ``jj_four_step`` handles the charge-qubit pair

    H1 = -E_J/2 X,    H2 = E_c/2 Z - E_J/2 X

with the sequence H1, H2, H1, H2 (first step rightmost).
"""

from dataclasses import dataclass
import math

import numpy as np

from .controllability import overlap_parameter
from .errors import AnalyticDomainError, ControllabilityError, DimensionError, RegimeError, UnitarityError
from .linalg import SIGMA_X, SIGMA_Y, SIGMA_Z, as_hermitian, expm_hermitian, hs_inner, traceless_part
from .synthesis import PulseSequence, f_phase_invariant, propagate

UNITARY_TOL = 1e-10
EULER_TOL = 1e-10
JJ_TOL = 1e-9


@dataclass(frozen=True)
class Su2Params:
    """``U = exp(i phase) (w0 I - i (w1 X + w2 Y + w3 Z))``."""

    w0: float
    w1: float
    w2: float
    w3: float
    phase: float

    @property
    def w(self):
        return np.array([self.w0, self.w1, self.w2, self.w3])

    def to_unitary(self):
        core = self.w0 * np.eye(2) - 1j * (self.w1 * SIGMA_X + self.w2 * SIGMA_Y + self.w3 * SIGMA_Z)
        return np.exp(1j * self.phase) * core


def su2_from_unitary(u):
    """Split a 2x2 unitary into a global phase and its determinant-one part.

    The phase is half the principal argument of ``det U``.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise DimensionError(f"expected a 2x2 unitary, got shape {u.shape}")
    defect = np.linalg.norm(u.conj().T @ u - np.eye(2))
    if defect > UNITARY_TOL:
        raise UnitarityError(f"matrix is not unitary (defect {defect:.3e})")
    phase = 0.5 * np.angle(np.linalg.det(u))
    v = np.exp(-1j * phase) * u
    w0 = 0.5 * np.trace(v).real
    w1, w2, w3 = ((0.5j * np.trace(s @ v)).real for s in (SIGMA_X, SIGMA_Y, SIGMA_Z))
    w = np.array([w0, w1, w2, w3])
    w /= np.linalg.norm(w)
    return Su2Params(*map(float, w), phase=float(phase))


def _bloch(h):
    """Rotation rate ``r`` and unit axis ``n`` with ``H - Tr(H)/2 = r n.sigma``."""
    a = traceless_part(h)
    r = math.sqrt(hs_inner(a, a) / 2)
    if r == 0.0:
        raise ControllabilityError("generator is proportional to the identity")
    n = np.array([hs_inner(a, s) for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)]) / (2 * r)
    return r, n


def _reduce(t, period):
    t = math.fmod(t, period)
    if t < 0:
        t += period
    # fmod can land exactly on the period after the shift
    return 0.0 if t >= period else t


def euler_three_step(h1, h2, target):
    """Durations ``(t1, t2, t3)`` with ``exp(-i t3 H1) exp(-i t2 H2) exp(-i t1 H1)``
    equal to ``target`` up to a global phase.

    Each duration lies in ``[0, 2 pi / r)`` where ``r`` is the rotation rate of
    the corresponding generator's traceless part.
    """
    h1 = as_hermitian(h1)
    h2 = as_hermitian(h2)
    if h1.shape != (2, 2) or h2.shape != (2, 2):
        raise DimensionError("Euler decomposition needs 2x2 generators")
    r1, n1 = _bloch(h1)
    r2, n2 = _bloch(h2)
    psi = overlap_parameter(h1, h2)
    if psi > 1e-10:
        raise RegimeError(
            f"generators are not orthogonal (overlap {psi:.3e}); use jj_four_step or numeric synthesis"
        )
    p = su2_from_unitary(target)
    w = p.w[1:]
    # components in the frame where H1 -> Z and H2 -> X
    wx, wy, wz = w @ n2, w @ np.cross(n1, n2), w @ n1
    a = p.w0 - 1j * wz
    b = -wy - 1j * wx
    # a = cos(beta) e^{-i(alpha+gamma)},  b = -i sin(beta) e^{-i(gamma-alpha)}
    beta = math.atan2(abs(b), abs(a))
    if abs(b) <= 1e-12:
        alpha, gamma = -np.angle(a), 0.0
    elif abs(a) <= 1e-12:
        alpha, gamma = np.angle(1j * b), 0.0
    else:
        s = -np.angle(a)
        dlt = -np.angle(1j * b)
        alpha, gamma = 0.5 * (s - dlt), 0.5 * (s + dlt)
    t1 = _reduce(alpha / r1, 2 * math.pi / r1)
    t2 = _reduce(beta / r2, 2 * math.pi / r2)
    t3 = _reduce(gamma / r1, 2 * math.pi / r1)
    seq = PulseSequence((h1, h2), ((0, t1), (1, t2), (0, t3)))
    err = f_phase_invariant(target, propagate(seq))
    if err > EULER_TOL:
        raise AnalyticDomainError(f"Euler reconstruction failed verification (error {err:.3e})")
    seq.info["error"] = err
    return seq


def josephson_pair(e_c, e_j):
    """The two charge-qubit Hamiltonians selected by the gate-voltage switch."""
    h1 = -0.5 * e_j * SIGMA_X
    h2 = 0.5 * e_c * SIGMA_Z - 0.5 * e_j * SIGMA_X
    return h1, h2


def _three_step_times(e_c, e_j, w, disc):
    """Durations of H1, H2, H1 for targets with non-negative discriminant."""
    w0, w1, w2, w3 = w
    r23 = math.hypot(w2, w3)
    if r23 <= 1e-14:
        # pure X rotation: one H1 step, the atan2 forms below degenerate to (0, 0)
        return 2 / e_j * math.atan2(-w1, w0), 0.0, 0.0
    root = math.sqrt(max(disc, 0.0))
    big = math.hypot(e_c, e_j)
    t1 = -2 / e_j * math.atan2(
        e_c * (w0 * w3 - w1 * w2) + r23 * root, -e_c * (w0 * w2 + w1 * w3) + e_j * (w2**2 + w3**2)
    )
    t2 = -2 / big * math.atan2(big * r23, root)
    t3 = -2 / e_j * math.atan2(
        e_c * (w0 * w3 + w1 * w2) + r23 * root, e_c * (w0 * w2 - w1 * w3) + e_j * (w2**2 + w3**2)
    )
    return t1, t2, t3


def _prerotation_time(e_c, e_j, w):
    """H2 duration that moves the target onto the zero-discriminant set."""
    w0, w1, w2, w3 = w
    x = e_j / e_c
    s23 = w2**2 + w3**2
    den = 2 * (w0**2 + w1**2 - s23 * x**2)
    rad = 4 * (w1 * w2 + w0 * w3) ** 2 * (1 + x**2) - 4 * (w0**2 + w1**2 - s23 * x**2) * (
        2 * (w0 * w2 - w1 * w3) * x - s23 * (x**2 - 1)
    )
    if rad < -1e-12:
        raise AnalyticDomainError("no real pre-rotation exists for this target; use numeric synthesis")
    num = -2 * (w1 * w2 + w0 * w3) * math.sqrt(1 + x**2) + math.sqrt(max(rad, 0.0))
    # arccot(num / den) in two-argument form
    return 2 / math.hypot(e_c, e_j) * math.atan2(den, num)


def _lift(t, period):
    """Add the smallest natural multiple of ``period`` making ``t >= 0``."""
    k = 0 if t >= 0 else math.ceil(-t / period)
    return t + k * period, k


def jj_four_step(e_c, e_j, target, pre_rotate=False):
    """Closed-form H1, H2, H1, H2 durations for the charge-qubit pair.

    Targets whose discriminant ``E_c^2 (w0^2 + w1^2) - E_J^2 (w2^2 + w3^2)``
    is non-negative are reached with the last duration equal to zero.  With
    ``pre_rotate`` the remaining targets are first rotated by the last H2
    step onto the zero-discriminant set; otherwise they raise
    :class:`AnalyticDomainError`.

    The result is re-propagated and must match ``target`` up to a global
    phase with error at most 1e-9.  ``info["branches"]`` records the
    period multiples added to each duration.
    """
    e_c = float(e_c)
    e_j = float(e_j)
    if not (math.isfinite(e_c) and math.isfinite(e_j)) or e_c <= 0 or e_j <= 0:
        raise RegimeError("E_c and E_J must be positive and finite")
    x = e_j / e_c
    psi = x / math.sqrt(1 + x * x)
    if psi >= 0.5:
        raise RegimeError(f"overlap psi = {psi:.6f} is not below cos(pi/3) = 0.5; four steps do not suffice")
    p = su2_from_unitary(target)
    w = p.w
    h1, h2 = josephson_pair(e_c, e_j)
    disc = e_c**2 * (w[0] ** 2 + w[1] ** 2) - e_j**2 * (w[2] ** 2 + w[3] ** 2)
    scale = 1e-12 * e_c**2

    if disc >= -scale:
        t4 = 0.0
        t1, t2, t3 = _three_step_times(e_c, e_j, w, disc)
        pre = False
    elif pre_rotate:
        t4 = _prerotation_time(e_c, e_j, w)
        inner = expm_hermitian(h2, -t4) @ np.asarray(target, dtype=complex)
        wi = su2_from_unitary(inner).w
        disc_i = e_c**2 * (wi[0] ** 2 + wi[1] ** 2) - e_j**2 * (wi[2] ** 2 + wi[3] ** 2)
        if disc_i < -1e-9 * e_c**2:
            raise AnalyticDomainError("pre-rotation did not reach the zero-discriminant set")
        t1, t2, t3 = _three_step_times(e_c, e_j, wi, disc_i)
        pre = True
    else:
        raise AnalyticDomainError(
            f"negative discriminant ({disc:.3e}); the closed form does not apply, use numeric synthesis"
        )

    p1 = 4 * math.pi / e_j
    p2 = 4 * math.pi / math.hypot(e_c, e_j)
    lifted = [_lift(t, per) for t, per in zip((t1, t2, t3, t4), (p1, p2, p1, p2))]
    times = [t for t, _ in lifted]
    seq = PulseSequence((h1, h2), tuple(zip((0, 1, 0, 1), times)))
    err = f_phase_invariant(target, propagate(seq))
    if not err <= JJ_TOL:
        raise AnalyticDomainError(f"closed-form durations failed verification (error {err:.3e})")
    seq.info.update(branches=tuple(k for _, k in lifted), error=err, pre_rotated=pre)
    return seq


def discriminant(e_c, e_j, target):
    w = su2_from_unitary(target).w
    return e_c**2 * (w[0] ** 2 + w[1] ** 2) - e_j**2 * (w[2] ** 2 + w[3] ** 2)
