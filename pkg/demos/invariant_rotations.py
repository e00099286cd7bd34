"""
Spinor invariants as 2x2 matrices and the hidden SU(2)
======================================================
"""

import math
from fractions import Fraction

import numpy as np

from spinorinv import frame, ledger

np.set_printoptions(precision=6, suppress=True)

# 2s1/2 of hydrogen: kappa = 1, a close to sqrt(3)/2
s = ledger.on_shell(2, Fraction(1, 2), 1)
print("g1, g2, g3 =", s.g1, s.g2, s.g3)

K, A, I = frame.rep_matrices(s)
print("[K, A] - 2i I =\n", K @ A - A @ K - 2j * I)
print("C^2 =\n", frame.calc_c(s) @ frame.calc_c(s), " g1+g2+g3 =", s.total)

# rotate each invariant onto the sz slot
for kind in frame.Invariant:
    r, ev = frame.diagonalize_invariant(kind, s)
    print(f"{kind.value:>5}: rotated C = {frame.pauli_components(frame.conjugate(r, frame.calc_c(s)))} (x, y, z), eigenvalues {ev}")

# A and I eigenstates written over the K basis
for sigma in (1, -1):
    print(f"A sigma={sigma:+d}:", frame.transform_A_basis(sigma, s).as_array())
    print(f"I sigma={sigma:+d}:", frame.transform_I_basis(sigma, s).as_array())

# the general invariant is the sz component after an Euler rotation
theta, phi = 0.9, 2.1
g = frame.general_invariant(theta, phi, s)
print("\n(C_K, C_A, C_I) =", np.round(g.coeffs, 6), " eps_gen =", round(g.value, 9))
plain = np.linalg.eigvalsh(frame.linear_combination(g.coeffs, s))
print("plain sum C_K K + C_A A + C_I I has eigenvalues", plain)

# eigen axis and the SU(2) rotation about it
phi0, theta0 = frame.eigen_axis(s)
d = frame.conjugate(frame.eigen_axis_rotation(s), frame.calc_c(s))
print(f"\nphi0 = {phi0:.6f}, theta0 = {theta0:.6f}; rotated C =\n", d)
for psi in (0.0, math.pi / 3, math.pi, 2 * math.pi):
    _, c1, c2 = frame.su2_rotation(psi, s)
    print(f"psi = {psi:.4f}: c1 = {c1:.6f}, c2 = {c2:.6f}, |c1|^2+|c2|^2 = {abs(c1)**2 + abs(c2)**2:.15f}")

# on a circular state (n_r = 0) the A and I families collapse to one vector
s0 = ledger.on_shell(2, Fraction(3, 2), 1)
print("\n2p3/2: g2 =", s0.g2, " surviving state", frame.collapse_nr0(s0))
