"""Dynamical Lie algebra closure, Gram matrices and the SU(2) step-count
criterion for a non-orthogonal pair of generators."""

from dataclasses import dataclass
import math

import numpy as np

from .errors import ControllabilityError, DimensionError
from .linalg import as_hermitian, hs_inner, num_qubits, traceless_part

RANK_TOL = 1e-10
ORTHO_TOL = 1e-12
MAX_K = 10**6


@dataclass(frozen=True)
class ClosureResult:
    """Outcome of :func:`lie_closure`.

    ``basis`` holds traceless Hermitian matrices orthonormal under
    ``Tr(AB)``; ``depth_reached`` is the number of bracket levels that
    contributed new directions (0 when the seeds already close).
    """

    dimension: int
    basis: tuple
    is_full_su: bool
    depth_reached: int


@dataclass(frozen=True)
class LowenthalResult:
    psi: float
    k: int | None
    steps: int


def _checked_set(hams):
    if len(hams) == 0:
        raise DimensionError("at least one Hamiltonian is required")
    mats = [as_hermitian(h) for h in hams]
    d = mats[0].shape[0]
    if any(m.shape[0] != d for m in mats):
        raise DimensionError("all Hamiltonians must share one dimension")
    return mats, d


def _vec(h):
    # Tr(AB) for Hermitian A, B equals the real dot product of these vectors
    return np.concatenate([h.real.ravel(), h.imag.ravel()])


def _unvec(v, d):
    n = d * d
    return (v[:n] + 1j * v[n:]).reshape(d, d)


class _Basis:
    def __init__(self, d):
        self.d = d
        self.rows = np.zeros((0, 2 * d * d))

    def admit(self, h):
        v = _vec(h)
        norm0 = np.linalg.norm(v)
        if norm0 == 0.0:
            return None
        v = v / norm0
        for _ in range(2):
            v = v - self.rows.T @ (self.rows @ v)
        r = np.linalg.norm(v)
        if r <= RANK_TOL:
            return None
        v = v / r
        self.rows = np.vstack([self.rows, v])
        m = _unvec(v, self.d)
        return 0.5 * (m + m.conj().T)


def lie_closure(hams):
    """Real Lie algebra generated by ``{-i H}`` modulo the identity.

    Inputs are projected onto their traceless parts and normalized, then
    brackets ``i[A, B]`` are added level by level until nothing new
    appears or the full ``su(d)`` dimension ``d**2 - 1`` is reached.
    """
    mats, d = _checked_set(hams)
    num_qubits(d)
    full = d * d - 1
    basis = _Basis(d)
    elements = []
    frontier = []
    for h in mats:
        e = basis.admit(traceless_part(h))
        if e is not None:
            elements.append(e)
            frontier.append(e)

    depth = 0
    while frontier and len(elements) < full:
        new = []
        for a in frontier:
            for b in list(elements):
                e = basis.admit(1j * (a @ b - b @ a))
                if e is not None:
                    elements.append(e)
                    new.append(e)
                    if len(elements) == full:
                        break
            if len(elements) == full:
                break
        if new:
            depth += 1
        frontier = new

    return ClosureResult(
        dimension=len(elements),
        basis=tuple(elements),
        is_full_su=len(elements) == full,
        depth_reached=depth,
    )


def gram_matrix(hams):
    """Matrix of trace inner products ``G[i, j] = Tr(H_i H_j)``."""
    mats, _ = _checked_set(hams)
    n = len(mats)
    g = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            g[i, j] = g[j, i] = hs_inner(mats[i], mats[j])
    return g


def overlap_parameter(h1, h2):
    """Normalized overlap ``|(H1,H2)| / sqrt((H1,H1)(H2,H2))`` of the
    traceless parts."""
    a = traceless_part(as_hermitian(h1))
    b = traceless_part(as_hermitian(h2))
    na, nb = hs_inner(a, a), hs_inner(b, b)
    if na == 0.0 or nb == 0.0:
        raise ControllabilityError("a generator is proportional to the identity")
    return min(1.0, abs(hs_inner(a, b)) / math.sqrt(na * nb))


def lowenthal_order(psi):
    """``k`` with ``cos(pi/k) < psi <= cos(pi/(k+1))``, ``k >= 2``."""
    if not 0.0 < psi < 1.0:
        raise ValueError(f"psi must lie in (0, 1), got {psi}")
    k = max(2, math.ceil(math.pi / math.acos(psi)) - 1)
    while k > 2 and psi <= math.cos(math.pi / k):
        k -= 1
    while psi > math.cos(math.pi / (k + 1)):
        k += 1
        if k > MAX_K:
            raise ControllabilityError("overlap too close to 1; step count unbounded")
    return k


def lowenthal_steps(h1, h2):
    """Minimal number of alternating steps for a single-qubit generator pair.

    Orthogonal pairs need 3 steps; otherwise ``n = k + 2`` with ``k`` from
    the cosine bracket on the normalized overlap.
    """
    mats, d = _checked_set([h1, h2])
    if d != 2:
        raise DimensionError(f"step-count criterion applies to one qubit, got dimension {d}")
    if lie_closure(mats).dimension < 3:
        raise ControllabilityError("the pair does not generate su(2)")
    psi = overlap_parameter(*mats)
    if psi >= 1.0 - ORTHO_TOL:
        raise ControllabilityError(f"generators are parallel (psi = {psi})")
    if psi <= ORTHO_TOL:
        return LowenthalResult(psi=psi, k=None, steps=3)
    k = lowenthal_order(psi)
    return LowenthalResult(psi=psi, k=k, steps=k + 2)
