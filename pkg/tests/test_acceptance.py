"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest (the lines are collected into the terminal summary) or
directly with ``python tests/test_acceptance.py``.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from spinorinv import clifford, frame, ledger, oracle
from spinorinv.errors import InvalidQuantumNumbers, NoBoundStateError
from spinorinv.ledger import DEFAULT_CONSTANTS as CONST

REPORT: list[str] = []


def report(number: int, title: str, ok: bool, detail: str) -> bool:
    line = f"{'PASS' if ok else 'FAIL'}  [{number}] {title}: {detail}"
    REPORT.append(line)
    print(line)
    return ok


def _j(k):
    return Fraction(2 * k - 1, 2)


def test_spectrum_cross_validation():
    t0 = time.perf_counter()
    worst = {Z: oracle.compare(Z, 3) for Z in (1, 20, 92)}
    elapsed = time.perf_counter() - t0
    ok = max(worst.values()) <= 1e-4 and elapsed <= 60
    detail = ", ".join(f"Z={Z} max dev {v:.2e}" for Z, v in worst.items()) + f"; {elapsed:.1f} s"
    assert report(1, "oracle vs closed-form spectrum, n<=3", ok, detail)


def test_ground_state_binding_energy():
    led = ledger.binding(1, _j(1), 1, CONST.alpha) * CONST.rest_energy
    orc = oracle.solve_bound_state(1, -1, 0, alpha=CONST.alpha).binding * CONST.rest_energy
    ok = abs(led - 13.6059) <= 1e-3 and abs(orc - 13.6059) <= 1e-3
    assert report(2, "hydrogen 1s binding 13.6059 eV +- 0.001", ok, f"closed form {led:.6f} eV, oracle {orc:.6f} eV")


def test_fine_structure():
    mc2 = CONST.rest_energy
    led = mc2 * (ledger.energy(2, _j(2), 1) - ledger.energy(2, _j(1), 1))
    sol = {(kd, nr): oracle.solve_bound_state(1, kd, nr) for kd, nr in ((-2, 0), (1, 1), (-1, 1))}
    orc = mc2 * (sol[(-2, 0)].eps - sol[(1, 1)].eps)
    split_dev = abs(orc - led) / abs(led)
    degen = abs(sol[(1, 1)].binding - sol[(-1, 1)].binding) / sol[(-1, 1)].binding
    ok = split_dev <= 0.01 and degen <= 1e-6
    detail = f"2p3/2-2p1/2 = {led:.6e} eV (oracle {orc:.6e}, dev {split_dev:.1e}); 2s/2p1/2 rel diff {degen:.1e}"
    assert report(3, "fine structure and 2s1/2-2p1/2 degeneracy", ok, detail)


def test_degeneracy_catalog():
    counts_ok = all(len(ledger.enumerate_states(n)) == 2 * n * n for n in range(1, 9))
    excluded = True
    for n in range(1, 9):
        try:
            ledger.QuantumNumbers(n, 2 * n - 1, 1, -1)
            excluded = False
        except InvalidQuantumNumbers:
            pass
    absent = True
    for Z, kd in ((1, 1), (20, 1), (92, 1), (1, 2)):
        try:
            oracle.solve_bound_state(Z, kd, 0)
            absent = False
        except NoBoundStateError:
            pass
    ok = counts_ok and excluded and absent
    detail = f"2n^2 counts {counts_ok}, n_r=0 sigma=- rejected {excluded}, oracle finds no (kappa_d>0, n_r=0) level {absent}"
    assert report(4, "degeneracy catalog", ok, detail)


def test_algebra_suite():
    rng = np.random.default_rng(2024)
    anti = comm = csq = 0.0
    for _ in range(1000):
        s = ledger.sample_invariants(rng, CONST.alpha, kappa_max=8)
        res = frame.identity_residuals(s)
        anti = max(anti, res["{K, A} = 0"], res["{A, I} = 0"], res["{I, K} = 0"])
        comm = max(comm, res["[K, A] = 2i I"], res["[I, K] = 2i g1 A"], res["[A, I] = 2i g2 K"])
        csq = max(csq, res["C^2 = (g1 + g2 + g3) Id"])
    ok = anti == 0.0 and comm <= 1e-12 and csq <= 1e-12
    detail = f"anticommutators {anti:.1e}, commutators {comm:.1e}, C^2 {csq:.1e} over 1000 samples"
    assert report(5, "invariant algebra", ok, detail)


def test_rotation_suite():
    rng = np.random.default_rng(2025)
    unit = off = group = norm = 0.0
    for _ in range(1000):
        s = ledger.sample_invariants(rng, CONST.alpha)
        angles = frame.EulerAngles(*rng.uniform(-math.pi, math.pi, 3))
        res = frame.rotation_residuals(s, *rng.uniform(-2 * math.pi, 2 * math.pi, 2), angles)
        axis = frame.rotation("xyz"[int(rng.integers(3))], rng.uniform(-10, 10))
        unit = max(unit, res["R R^dagger = Id (Euler)"], res["R R^dagger = Id (SU(2))"],
                   frame.unitarity_defect(axis), frame.unitarity_defect(frame.eigen_axis_rotation(s)))
        off = max(off, res["eigen-axis off-diagonal"])
        group = max(group, res["SU(2) group law"])
        norm = max(norm, res["|c1|^2 + |c2|^2 = 1"])
    s = ledger.on_shell(3, _j(1), 1)
    full = frame.su2_rotation(2 * math.pi, s)[0]
    # cos(pi) = -1 exactly; the sin(pi) ~ 1e-16 remainder multiplies S
    double_cover = full[0, 0].real == -1.0 and full[1, 1].real == -1.0 and np.max(np.abs(full + np.eye(2))) <= 1e-15
    ok = unit <= 1e-14 and off <= 1e-12 and group <= 1e-12 and norm <= 1e-12 and double_cover
    detail = f"unitarity {unit:.1e}, eigen-axis off-diag {off:.1e}, group law {group:.1e}, norm {norm:.1e}, R(2pi)=-Id {double_cover}"
    assert report(6, "rotations", ok, detail)


def test_clifford_suite():
    gram = clifford.gram_matrix()
    gram_exact = bool(np.all(gram == np.eye(16)))
    prods = clifford.verify_products()
    keys = ("rho1", "rho2", "Gamma", "Omega")
    by_family = {k: max(v for name, v in prods.items() if name.startswith(k)) for k in keys}
    ok = gram_exact and all(v == 0.0 for v in by_family.values())
    detail = f"Gram == Id {gram_exact}; residuals " + ", ".join(f"{k} {v}" for k, v in by_family.items())
    assert report(7, "Clifford basis", ok, detail)


@pytest.mark.xfail(strict=True, reason="lambda = n^2 only when n_r = 0; for n_r > 0, "
                                      "floor(sqrt(lambda)) is kappa_j or kappa_j + 1 (n=2, kappa=1: lambda=2.5 -> 1)")
def test_lambda_bound_reconstruction():
    misses = []
    for n in range(1, 7):
        for k in range(1, n + 1):
            s = ledger.on_shell(n, _j(k), 1, CONST.alpha)
            got = ledger.kappa_max_from_lambda(ledger.lambda_value(k, s.a))
            if got != n:
                misses.append((n, k, got))
    ok = not misses
    detail = "all on-shell states n<=6 recover n" if ok else f"(n, kappa, result) mismatches: {misses}"
    assert report(8, "principal number from lambda bound", ok, detail)


def test_nonrelativistic_limit():
    za2 = CONST.alpha**2
    worst = 0.0
    for n in range(1, 6):
        for k in range(1, n + 1):
            w = ledger.binding(n, _j(k), 1, CONST.alpha)
            worst = max(worst, abs(2 * w / za2 - 1 / n**2))
    ok = worst <= za2
    assert report(9, "Bohr limit at Z=1, n<=5", ok, f"max |2(1-eps)/(Z alpha)^2 - 1/n^2| = {worst:.2e} <= {za2:.2e}")


if __name__ == "__main__":
    tests = [v for k, v in list(globals().items()) if k.startswith("test_")]
    for t in tests:
        try:
            t()
        except AssertionError:
            pass
