"""
Radial shooting oracle against the closed form
===============================================

The oracle integrates the coupled radial equations and never looks at the
closed-form energy except to centre its search window (``seed="bohr"``
drops even that).
"""

import time

from spinorinv import oracle
from spinorinv.errors import NoBoundStateError
from spinorinv.oracle import SolverConfig

t0 = time.perf_counter()
for Z in (1, 20, 92):
    rows = oracle.compare_states(Z, 3, SolverConfig(seed="bohr"))
    print(f"Z = {Z}")
    for r in rows:
        print(f"  kappa_d={r.kappa_d:+d} n_r={r.nr}  eps={r.eps_oracle:.12f}  dev={r.rel_dev:.1e}  G nodes={r.nodes}")
print(f"{time.perf_counter() - t0:.2f} s")

# kappa_d > 0 large components carry n_r - 1 nodes, kappa_d < 0 carry n_r
for kd, nr in ((-1, 1), (1, 1), (-2, 2), (2, 2)):
    sol = oracle.solve_bound_state(1, kd, nr)
    print(f"kappa_d={kd:+d} n_r={nr}: nodes {sol.nodes}")

# there is no nodeless kappa_d > 0 level
try:
    oracle.solve_bound_state(1, 1, 0)
except NoBoundStateError as exc:
    print("kappa_d=+1, n_r=0:", exc)

# fourth-order convergence on the 2s level
ref = oracle.solve_bound_state(1, -1, 1, SolverConfig(steps=64000)).binding
prev = None
for steps in (1000, 2000, 4000, 8000):
    err = abs(oracle.solve_bound_state(1, -1, 1, SolverConfig(steps=steps)).binding - ref)
    print(f"steps={steps:5d}  |dw| = {err:.3e}" + (f"  ratio {prev / err:.1f}" if prev else ""))
    prev = err
