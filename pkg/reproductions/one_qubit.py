"""
One-qubit gates from two fixed Hamiltonians
===========================================

Two cases.  An NMR-like qubit with orthogonal controls sigma_z and
sigma_x, where three steps always suffice, and a charge qubit whose two
switch settings give overlapping generators.
"""

import math

import numpy as np

from hamsynth import baseline_step_counts, expm_hermitian, build_gate, builtin_device, lowenthal_steps
from hamsynth.linalg import SIGMA_Y, SIGMA_Z
from hamsynth.su2 import discriminant, euler_three_step, jj_four_step
from hamsynth.synthesis import f_phase_invariant, propagate

# %% orthogonal pair: Euler angles in the frame H1 -> Z, H2 -> X
nmr = builtin_device("nmr1", {})
h1, h2 = nmr.hamiltonians
print("nmr1 steps:", lowenthal_steps(h1, h2).steps)

for name in ("h", "x", "phase(0.7)"):
    u = build_gate(name)
    seq = euler_three_step(h1, h2, u)
    t = ", ".join(f"{x + 0.0:.6f}" for x in np.round(seq.durations, 12))
    print(f"  {name:10s} t = ({t})  error {f_phase_invariant(u, propagate(seq)):.1e}")

# %% charge qubit, x = E_J / E_c = 0.1
E_c, E_J = 10.0, 1.0
jj = builtin_device("jj1", {"E_c": E_c, "E_J": E_J})
res = lowenthal_steps(*jj.hamiltonians)
print(f"\njj1 psi = {res.psi:.6f} (x/sqrt(1+x^2) = {0.1 / math.sqrt(1.01):.6f}), k = {res.k}, steps = {res.steps}")

# the Hadamard gate has a non-negative discriminant so the last step is empty
u = build_gate("h")
seq = jj_four_step(E_c, E_J, u)
print("  h: t =", np.round(seq.durations, 6), "branches", seq.info["branches"])

# a target mostly about y and z has a negative discriminant; with pre_rotate
# the fourth step first moves it onto the solvable set
u = expm_hermitian(0.6 * SIGMA_Y + 0.8 * SIGMA_Z, 1.5)
print(f"  y-z rotation, discriminant {discriminant(E_c, E_J, u):+.3f}")
seq = jj_four_step(E_c, E_J, u, pre_rotate=True)
print("  t =", np.round(seq.durations, 6), "pre-rotated", seq.info["pre_rotated"], f"error {seq.info['error']:.1e}")

# %% step counts next to the standard circuit
print("\nstep counts:", baseline_step_counts("one_qubit"))
