"""
How much of SU(4) do fifteen steps reach?
=========================================

Random Haar targets are synthesized on heis2 for several coupling
strengths J12, and on jj2 for several E_L.  The success rate is only a
measurement; nothing here asserts a threshold.

    python reproductions/coverage_sweep.py [targets] [restarts]
"""

import sys

import numpy as np

from hamsynth import builtin_device, synthesize

n_targets = int(sys.argv[1]) if len(sys.argv) > 1 else 20
restarts = int(sys.argv[2]) if len(sys.argv) > 2 else 20
tol = 1e-8


def haar(rng, d):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diag(r) / abs(np.diag(r)))


def rate(dev):
    rng = np.random.default_rng(2024)
    hits = 0
    for _ in range(n_targets):
        rep = synthesize(dev, haar(rng, 4), 15, restarts=restarts, seed=1, tol=tol)
        hits += rep.converged
    return hits / n_targets


print(f"{n_targets} targets, {restarts} starts each, tol {tol:g}")
for j12 in (0.05, 0.1, 0.3, 1.0):
    dev = builtin_device("heis2", {"B1": 1.0, "B2": 1.0, "J12": j12})
    print(f"heis2 J12 = {j12:<5}  reached {rate(dev):.0%}")

for e_l in (0.1, 0.5, 2.0):
    dev = builtin_device("jj2", {"E_c": 10.0, "E_J": 1.0, "E_L": e_l})
    print(f"jj2   E_L = {e_l:<5}  reached {rate(dev):.0%}")
