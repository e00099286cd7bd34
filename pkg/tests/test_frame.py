import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinorinv import frame, ledger
from spinorinv.clifford import SIGMA_X, SIGMA_Y, SIGMA_Z
from spinorinv.errors import CollapsedStateError, NonUnitaryError
from spinorinv.frame import EulerAngles, Invariant, MixState
from spinorinv.ledger import ScalarInvariants

ID = np.eye(2)
angle = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)


@st.composite
def invariants(draw):
    k = draw(st.integers(1, 8))
    a = draw(st.floats(0, 5, allow_nan=False))
    return ScalarInvariants.from_kappa_a(k, a)


def up_to_phase(u, v, tol=1e-12):
    return abs(abs(np.vdot(u, v)) - np.linalg.norm(u) * np.linalg.norm(v)) <= tol


def close(a, b, tol=1e-12):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)))) <= tol


S = ScalarInvariants.from_kappa_a(2, 0.5)


def test_rep_matrices_initial_orientation():
    k, a, i = frame.rep_matrices(ScalarInvariants(1.0, 0.0, 0.0))
    assert close(k, SIGMA_Z, 0) and close(a, 0 * ID, 0) and close(i, 0 * ID, 0)
    k, a, i = frame.rep_matrices(S)
    assert close(k, 2 * SIGMA_Z, 0) and close(a, 0.5 * SIGMA_Y, 0) and close(i, -1.0 * SIGMA_X, 0)
    for m in (k, a, i):
        assert close(m, m.conj().T, 0) and np.trace(m) == 0


@settings(max_examples=200)
@given(invariants())
def test_anticommutators_vanish_exactly(s):
    k, a, i = frame.rep_matrices(s)
    for x, y in ((k, a), (a, i), (i, k)):
        assert np.all(x @ y + y @ x == 0)


@settings(max_examples=200)
@given(invariants())
def test_commutation_relations_literal(s):
    res = frame.identity_residuals(s)
    scale = max(1.0, s.total) ** 1.5
    for name, v in res.items():
        assert v <= 1e-14 * scale, (name, v)


def test_commutators_are_right_handed():
    # mirror orientation (+sqrt(g3) sx) would flip every sign
    k, a, i = frame.rep_matrices(S)
    assert close(k @ a - a @ k, 2j * i)
    mirrored = -i
    assert close(k @ a - a @ k, -2j * mirrored)


def test_rotation_examples():
    assert close(frame.rotation("z", 0.0), ID, 0)
    for axis in "xyz":
        assert close(frame.rotation(axis, 2 * math.pi), -ID, 1e-15)
    assert close(frame.rotation("x", -math.pi / 2), (ID - 1j * SIGMA_X) / math.sqrt(2), 1e-15)
    with pytest.raises(ValueError):
        frame.rotation("w", 1.0)


@given(st.sampled_from("xyz"), angle)
def test_rotation_unitary(axis, phi):
    assert frame.unitarity_defect(frame.rotation(axis, phi)) <= 1e-14


@given(angle, angle, angle)
def test_euler_unitary(psi, theta, phi):
    assert frame.unitarity_defect(EulerAngles(psi, theta, phi).matrix()) <= 1e-14


def test_euler_rejects_nonfinite():
    with pytest.raises(ValueError):
        EulerAngles(0.0, math.nan, 0.0)


def test_diagonalize_invariant():
    c = frame.calc_c(S)
    r, ev = frame.diagonalize_invariant(Invariant.K, S)
    assert close(r, ID, 0) and ev == (2.0, -2.0)

    r, ev = frame.diagonalize_invariant("A", S)
    assert close(r, frame.rotation("x", -math.pi / 2), 0) and ev == (0.5, -0.5)
    # A lands on the sz slot; the sx sign follows the right-handed I
    assert close(frame.pauli_components(frame.conjugate(r, c)), [-1.0, -2.0, 0.5])

    r, ev = frame.diagonalize_invariant(Invariant.I_BEL, S)
    assert ev == (1.0, -1.0)
    assert close(frame.pauli_components(frame.conjugate(r, c)), [2.0, 0.5, 1.0])


@pytest.mark.parametrize("kind,fn,eig", [
    (Invariant.A, frame.transform_A_basis, lambda s: frame.rep_matrices(s)[1]),
    (Invariant.I_BEL, frame.transform_I_basis, lambda s: frame.rep_matrices(s)[2]),
])
def test_basis_transforms(kind, fn, eig):
    op = eig(S)
    v = {sg: fn(sg, S).as_array() for sg in (1, -1)}
    r, (lam, _) = frame.diagonalize_invariant(kind, S)
    for sg, e in ((1, [1, 0]), (-1, [0, 1])):
        assert close(op @ v[sg], sg * lam * v[sg])
        assert abs(np.linalg.norm(v[sg]) - 1) <= 1e-15
        assert up_to_phase(r.conj().T @ np.array(e, dtype=complex), v[sg])
    assert abs(np.vdot(v[1], v[-1])) <= 1e-15


def test_basis_transform_coefficients():
    h = 1 / math.sqrt(2)
    a_plus = frame.transform_A_basis(1, S)
    assert a_plus.c_plus == pytest.approx(h * np.exp(1j * math.pi / 4))
    assert a_plus.c_minus == pytest.approx(-h * np.exp(-1j * math.pi / 4))
    assert frame.transform_A_basis(-1, S).c_minus == pytest.approx(h * np.exp(-1j * math.pi / 4))
    assert frame.transform_I_basis(1, S).as_array() == pytest.approx([-h, h])
    assert frame.transform_I_basis(-1, S).as_array() == pytest.approx([h, h])
    with pytest.raises(ValueError):
        frame.transform_A_basis(0, S)


def test_collapse_nr0():
    s = ledger.on_shell(3, Fraction(5, 2), 10)
    assert s.g2 == 0
    for fn in (frame.transform_A_basis, frame.transform_I_basis):
        for sg in (1, -1):
            assert fn(sg, s) == MixState(1, 0)
    # sum and difference of the a -> 0 A-family vectors: (1, 0) survives, (0, 1) is annihilated
    h = 1 / math.sqrt(2)
    plus = np.array([h * np.exp(1j * math.pi / 4), -h * np.exp(-1j * math.pi / 4)])
    minus = np.array([h * np.exp(1j * math.pi / 4), h * np.exp(-1j * math.pi / 4)])
    assert up_to_phase(plus + minus, [1, 0])
    r, _ = frame.diagonalize_invariant(Invariant.K, s)
    assert frame.apply_mix(r, frame.collapse_nr0(s)) == frame.collapse_nr0(s)
    with pytest.raises(CollapsedStateError):
        frame.collapse_nr0(S)


def test_general_invariant_examples():
    g = frame.general_invariant(0.0, 1.3, S)
    assert g.coeffs == pytest.approx((1.0, 0.0, 0.0), abs=1e-16)
    assert g.eigenvalues == (2.0, -2.0)
    g = frame.general_invariant(math.pi / 2, math.pi, S)
    assert g.coeffs == pytest.approx((0.0, 1.0, 0.0), abs=1e-15)
    assert g.value == pytest.approx(0.5)


@settings(max_examples=200)
@given(invariants(), angle, angle, angle)
def test_general_invariant_is_euler_projection(s, psi, theta, phi):
    g = frame.general_invariant(theta, phi, s)
    r = EulerAngles(psi, theta, phi).matrix()
    rotated = frame.conjugate(r, frame.calc_c(s))
    scale = math.sqrt(max(1.0, s.total))
    assert abs(frame.pauli_components(rotated)[2] - g.value) <= 1e-13 * scale
    # the operator is that sz component carried back to the initial frame
    back = frame.conjugate(r.conj().T, g.value * SIGMA_Z)
    assert close(back, g.operator, 1e-13 * scale)
    assert np.linalg.eigvalsh(g.operator) == pytest.approx(sorted(g.eigenvalues), abs=1e-13 * scale)


@settings(max_examples=100)
@given(invariants(), angle, angle)
def test_plain_linear_combination_spectrum(s, theta, phi):
    g = frame.general_invariant(theta, phi, s)
    ck, ca, ci = g.coeffs
    op = frame.linear_combination(g.coeffs, s)
    expected = math.sqrt(ck**2 * s.g1 + ca**2 * s.g2 + ci**2 * s.g3)
    assert np.linalg.eigvalsh(op) == pytest.approx([-expected, expected], abs=1e-12 * max(1, expected))


def test_plain_combination_differs_from_projection():
    g = frame.general_invariant(1.0, 0.7, S)
    plain = np.linalg.eigvalsh(frame.linear_combination(g.coeffs, S))[1]
    assert abs(plain - abs(g.value)) > 0.04


def test_eigen_axis_examples():
    assert frame.eigen_axis(ScalarInvariants(9.0, 0.0, 0.0)) == (0.0, 0.0)
    phi0, theta0 = frame.eigen_axis(ScalarInvariants(1.0, 1.0, 1.0))
    assert math.tan(theta0) == pytest.approx(-math.sqrt(2))
    assert math.tan(phi0) == pytest.approx(-1.0)
    with pytest.raises(ValueError):
        frame.eigen_axis(ScalarInvariants(0.0, 1.0, 0.0))


@settings(max_examples=200)
@given(invariants())
def test_eigen_axis_diagonalizes(s):
    d = frame.conjugate(frame.eigen_axis_rotation(s), frame.calc_c(s))
    assert abs(d[0, 1]) + abs(d[1, 0]) <= 1e-12 * max(1, s.total)
    assert d[0, 0].real == pytest.approx(math.sqrt(s.total), rel=1e-13)


def test_c_eig():
    assert frame.c_eig(ScalarInvariants(1.0, 0.0, 0.0)) == (1.0, -1.0)
    s = ledger.on_shell(4, Fraction(3, 2), 50)
    c = frame.c_eig(s)[0]
    assert c == pytest.approx(math.sqrt(s.kappa**2 + s.a**2 + s.kappa**2 * s.a**2))
    assert np.linalg.eigvalsh(frame.calc_c(s)) == pytest.approx([-c, c])


@settings(max_examples=200)
@given(invariants(), angle, angle)
def test_su2_properties(s, psi, chi):
    gen = frame.su2_generator(s)
    assert close(gen, gen.conj().T, 0) and abs(np.trace(gen)) <= 1e-15
    assert close(gen @ gen, ID)
    assert close(gen @ frame.calc_c(s) - frame.calc_c(s) @ gen, 0 * ID, 1e-12 * max(1, s.total))
    r, c1, c2 = frame.su2_rotation(psi, s)
    assert frame.unitarity_defect(r) <= 1e-14
    assert abs(abs(c1) ** 2 + abs(c2) ** 2 - 1) <= 1e-12
    assert close(r, [[c1, -np.conj(c2)], [c2, np.conj(c1)]], 1e-15)
    assert close(r @ frame.su2_rotation(chi, s)[0], frame.su2_rotation(psi + chi, s)[0])
    assert close(frame.apply_mix(r, MixState(1, 0)).as_array(), [c1, c2], 0)


def test_su2_examples():
    assert close(frame.su2_generator(ScalarInvariants(1.0, 0.0, 0.0)), SIGMA_Z, 0)
    r, c1, c2 = frame.su2_rotation(0.0, S)
    assert close(r, ID, 0) and (c1, c2) == (1, 0)
    assert close(frame.su2_rotation(2 * math.pi, S)[0], -ID, 1e-15)
    with pytest.raises(ValueError):
        frame.su2_generator(ScalarInvariants(0.0, 0.0, 0.0))


def test_apply_mix_norm_drift_and_rejection():
    rng = np.random.default_rng(11)
    m = frame.transform_A_basis(1, S)
    for _ in range(1000):
        r, _, _ = frame.su2_rotation(rng.uniform(-10, 10), S)
        m = frame.apply_mix(r, m)
    assert abs(m.norm - 1) < 1e-9
    assert frame.apply_mix(ID, m) == m
    with pytest.raises(NonUnitaryError):
        frame.apply_mix(1.01 * ID, m)


def test_rotation_residuals_clean():
    rng = np.random.default_rng(5)
    for _ in range(100):
        s = ledger.sample_invariants(rng)
        res = frame.rotation_residuals(s, *rng.uniform(-6, 6, 2), EulerAngles(*rng.uniform(-3, 3, 3)))
        assert max(res.values()) <= 1e-12, res
