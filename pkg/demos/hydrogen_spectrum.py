"""
Relativistic hydrogen-like spectrum from the closed form
=========================================================

Everything here is algebra: no differential equation is solved.
"""

from fractions import Fraction

from spinorinv import ledger

const = ledger.PhysicalConstants.from_env()

# one line per (n, j); sigma partners with n_r > 0 share a line
for Z in (1, 92):
    print(f"Z = {Z}")
    for ln in ledger.spectrum_table(Z, 3, const):
        print(f"  {ln.label:>12}  eps = {ln.eps:.12f}  binding = {ln.binding_eV:12.6f} eV  g = {ln.degeneracy}")

# fine structure of the n = 2 shell in hydrogen
split = const.rest_energy * (ledger.energy(2, Fraction(3, 2), 1) - ledger.energy(2, Fraction(1, 2), 1))
print(f"\n2p3/2 - 2p1/2 = {split:.4e} eV  ({split / 4.135667696e-15 / 1e9:.3f} GHz)")

# the shell holds 2 n^2 states once the nodeless sigma = - partner is dropped
for n in range(1, 6):
    states = ledger.enumerate_states(n)
    print(f"n = {n}: {len(states):3d} states")

# invariant eigenvalues for 3p1/2 at Z = 1; a vanishes on the circular states
e = ledger.energy(3, Fraction(1, 2), 1)
print("\n(eps_K, eps_A, eps_I) for n=3, j=1/2:", ledger.invariant_eigenvalues(e, Fraction(1, 2), 1, sigma=-1))
e = ledger.energy(3, Fraction(5, 2), 1)
print("(eps_K, eps_A, eps_I) for n=3, j=5/2:", ledger.invariant_eigenvalues(e, Fraction(5, 2), 1))

# Bohr limit: 2 (1 - eps) / (Z alpha)^2 -> 1 / n^2
za2 = const.alpha**2
for n in range(1, 6):
    print(f"n = {n}: 2w/(Z alpha)^2 = {2 * ledger.binding(n, Fraction(1, 2), 1, const.alpha) / za2:.8f}  vs 1/n^2 = {1 / n**2:.8f}")
