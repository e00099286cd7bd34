"""Two-component ("spinor") representation of the invariants K, A and I_BEL.

At fixed (eps, j, Z) the three invariants act on the pair of K eigenstates
``(|+>_K, |->_K)`` as 2x2 matrices::

    K = sqrt(g1) sz,    A = sqrt(g2) sy,    I = [K, A] / 2i = -sqrt(g3) sx

Deriving I from the commutator fixes the orientation: the triple is
right-handed, so ``[K, A] = 2i I``, ``[I, K] = 2i g1 A`` and
``[A, I] = 2i g2 K`` hold as matrix identities.  Labelling the third axis as
``+sx`` instead would give the mirror image, in which all three commutators
change sign.

The mirror also fixes the rotation conventions used here.  Rotations are
``R_axis(phi) = cos(phi/2) + i sin(phi/2) s_axis``.  Relative to a
``+sx`` labelling, rotation angles about z and about y change sign and
rotations about x do not.  With that rule the closed forms stay as usually
quoted:

* ``R_x(-pi/2)`` brings A onto the sz slot,
* ``R_y(-pi/2)`` maps C to ``sqrt(g1) sx + sqrt(g2) sy + sqrt(g3) sz``,
* the Euler rotation ``R_z(psi) R_x(theta) R_z(-phi)`` projects C onto
  ``kappa cos(theta) - a cos(phi) sin(theta) + kappa a sin(phi) sin(theta)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .clifford import SIGMA_X, SIGMA_Y, SIGMA_Z
from .errors import CollapsedStateError, NonUnitaryError
from .ledger import ScalarInvariants

FrameOperator = NDArray[np.complex128]

IDENTITY = np.eye(2, dtype=complex)
COLLAPSE_TOL = 1e-12
UNITARITY_TOL = 1e-8

_AXES = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}

# unit invariants K/sqrt(g1), A/sqrt(g2), I/sqrt(g3); defined even where g vanishes
UNIT_K = SIGMA_Z
UNIT_A = SIGMA_Y
UNIT_I = -SIGMA_X


class Invariant(enum.Enum):
    K = "K"
    A = "A"
    I_BEL = "I_BEL"


@dataclass(frozen=True)
class EulerAngles:
    """z-x-z Euler angles in radians; see :meth:`matrix` for the sign of ``phi``."""

    psi: float
    theta: float
    phi: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.psi, self.theta, self.phi)):
            raise ValueError("Euler angles must be finite")

    def matrix(self) -> FrameOperator:
        return rotation("z", self.psi) @ rotation("x", self.theta) @ rotation("z", -self.phi)


@dataclass(frozen=True)
class MixState:
    """Amplitudes over the K basis pair (|+>_K, |->_K)."""

    c_plus: complex
    c_minus: complex

    @classmethod
    def from_array(cls, v) -> MixState:
        v = np.asarray(v, dtype=complex).reshape(2)
        return cls(complex(v[0]), complex(v[1]))

    def as_array(self) -> NDArray[np.complex128]:
        return np.array([self.c_plus, self.c_minus], dtype=complex)

    @property
    def norm(self) -> float:
        return math.sqrt(abs(self.c_plus) ** 2 + abs(self.c_minus) ** 2)


def _sqrt_g(s: ScalarInvariants) -> tuple[float, float, float]:
    if min(s.g1, s.g2, s.g3) < 0:
        raise ValueError(f"negative invariant in {s}")
    return math.sqrt(s.g1), math.sqrt(s.g2), math.sqrt(s.g3)


def rep_matrices(s: ScalarInvariants) -> tuple[FrameOperator, FrameOperator, FrameOperator]:
    """(K, A, I) in the initial orientation, where K is diagonal."""
    rk, ra, ri = _sqrt_g(s)
    return rk * UNIT_K, ra * UNIT_A, ri * UNIT_I


def calc_c(s: ScalarInvariants) -> FrameOperator:
    """C = K + A + I."""
    k, a, i = rep_matrices(s)
    return k + a + i


def pauli_components(m: FrameOperator) -> NDArray[np.float64]:
    """Real (x, y, z) coefficients of a traceless Hermitian 2x2 matrix."""
    return np.array([np.trace(p @ m).real / 2 for p in (SIGMA_X, SIGMA_Y, SIGMA_Z)])


def rotation(axis: str, phi: float) -> FrameOperator:
    """R_axis(phi) = exp(i phi/2 s_axis) = cos(phi/2) + i sin(phi/2) s_axis."""
    try:
        s = _AXES[axis]
    except KeyError:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}") from None
    return math.cos(phi / 2) * IDENTITY + 1j * math.sin(phi / 2) * s


def conjugate(r: FrameOperator, m: FrameOperator) -> FrameOperator:
    return r @ m @ r.conj().T


def unitarity_defect(r: FrameOperator) -> float:
    return float(np.max(np.abs(r @ r.conj().T - IDENTITY)))


_DIAGONALIZERS = {
    Invariant.K: lambda: IDENTITY.copy(),
    Invariant.A: lambda: rotation("x", -math.pi / 2),
    Invariant.I_BEL: lambda: rotation("y", -math.pi / 2),
}


def diagonalize_invariant(kind: Invariant | str, s: ScalarInvariants):
    """Rotation that puts the chosen invariant on the sz slot, plus its eigenvalues.

    Returns ``(R, (+v, -v))``: in ``R C R^dagger`` the chosen invariant is
    ``v sz`` with ``v = sqrt(g1), sqrt(g2), sqrt(g3)`` for K, A, I_BEL, so
    the first basis vector carries sigma = + in the rotated frame.
    """
    kind = Invariant(kind)
    r = _DIAGONALIZERS[kind]()
    v = math.sqrt({Invariant.K: s.g1, Invariant.A: s.g2, Invariant.I_BEL: s.g3}[kind])
    return r, (v, -v)


def transform_A_basis(sigma: int, s: ScalarInvariants) -> MixState:
    """A eigenstate with eigenvalue sigma*a, written over the K basis.

    sigma=+ gives (e^{i pi/4}, -e^{-i pi/4})/sqrt(2) and sigma=- gives
    (e^{i pi/4}, e^{-i pi/4})/sqrt(2).  At g2 = 0 both labels route to the
    single surviving state of :func:`collapse_nr0`.
    """
    if sigma not in (1, -1):
        raise ValueError(f"sigma must be +1 or -1, got {sigma}")
    if s.g2 <= COLLAPSE_TOL:
        return collapse_nr0(s)
    sign = -1 if sigma == 1 else 1
    h = 1 / math.sqrt(2)
    return MixState(h * np.exp(1j * math.pi / 4), sign * h * np.exp(-1j * math.pi / 4))


def transform_I_basis(sigma: int, s: ScalarInvariants) -> MixState:
    """I_BEL eigenstate with eigenvalue sigma*kappa*a over the K basis.

    sigma=+ gives (-1, 1)/sqrt(2) and sigma=- gives (1, 1)/sqrt(2); these are
    the real, equal-weight combinations, labelled by the sign of I = -sqrt(g3) sx.
    """
    if sigma not in (1, -1):
        raise ValueError(f"sigma must be +1 or -1, got {sigma}")
    if s.g2 <= COLLAPSE_TOL:
        return collapse_nr0(s)
    h = 1 / math.sqrt(2)
    return MixState(-h, h) if sigma == 1 else MixState(h, h)


def collapse_nr0(s: ScalarInvariants) -> MixState:
    """The single state left when g2 = 0 (n_r = 0): (1, 0) in the K basis.

    With a = 0 the two A-labelled states coincide; their sum is proportional
    to |+>_K and their difference forces |->_K = 0, so every invariant choice
    describes the same vector.
    """
    if s.g2 > COLLAPSE_TOL:
        raise CollapsedStateError(f"g2={s.g2:.3e} > {COLLAPSE_TOL}: the A/I families are distinct")
    return MixState(1.0 + 0j, 0j)


@dataclass(frozen=True)
class GeneralInvariant:
    """Projection of C onto the direction (C_K, C_A, C_I) in invariant space."""

    coeffs: tuple[float, float, float]
    value: float
    operator: FrameOperator

    @property
    def eigenvalues(self) -> tuple[float, float]:
        return abs(self.value), -abs(self.value)


def general_invariant(theta: float, phi: float, s: ScalarInvariants) -> GeneralInvariant:
    """Generalized invariant for polar angle ``theta`` and azimuth ``phi``.

    ``C_K = cos(theta)``, ``C_A = -cos(phi) sin(theta)``,
    ``C_I = sin(phi) sin(theta)``; ``value = sum C_alpha sqrt(g_alpha)``.
    The operator ``value * (C_K UNIT_K + C_A UNIT_A + C_I UNIT_I)`` is the sz
    component of ``R C R^dagger`` for ``R = EulerAngles(psi, theta, phi)``,
    carried back to the initial frame.  Its eigenvalues are ``+-value``.

    The plain sum ``C_K K + C_A A + C_I I`` is a different operator: the terms
    anticommute, so its eigenvalues are ``+-sqrt(sum C_alpha^2 g_alpha)``
    (see :func:`linear_combination`).
    """
    ck = math.cos(theta)
    ca = -math.cos(phi) * math.sin(theta)
    ci = math.sin(phi) * math.sin(theta)
    rk, ra, ri = _sqrt_g(s)
    value = ck * rk + ca * ra + ci * ri
    op = value * (ck * UNIT_K + ca * UNIT_A + ci * UNIT_I)
    return GeneralInvariant((ck, ca, ci), value, op)


def linear_combination(coeffs, s: ScalarInvariants) -> FrameOperator:
    """C_K K + C_A A + C_I I."""
    k, a, i = rep_matrices(s)
    ck, ca, ci = coeffs
    return ck * k + ca * a + ci * i


def eigen_axis(s: ScalarInvariants) -> tuple[float, float]:
    """(phi0, theta0) with tan(phi0) = -sqrt(g3/g2), tan(theta0) = -sqrt((g2+g3)/g1).

    Principal branches; phi0 = 0 when g2 = g3 = 0.
    """
    rk, ra, ri = _sqrt_g(s)
    if rk == 0:
        raise ValueError("eigen axis needs g1 > 0")
    phi0 = math.atan2(-ri, ra) if (ra or ri) else 0.0
    theta0 = math.atan2(-math.sqrt(s.g2 + s.g3), rk)
    return phi0, theta0


def eigen_axis_rotation(s: ScalarInvariants) -> FrameOperator:
    """R_x(theta0) R_z(-phi0): conjugating C by it gives sqrt(g1+g2+g3) sz."""
    phi0, theta0 = eigen_axis(s)
    return rotation("x", theta0) @ rotation("z", -phi0)


def c_eig(s: ScalarInvariants) -> tuple[float, float]:
    c = math.sqrt(s.total)
    return c, -c


def su2_generator(s: ScalarInvariants) -> FrameOperator:
    """S = C / sqrt(g1+g2+g3); Hermitian, traceless, S^2 = 1."""
    if s.total <= 0:
        raise ValueError("su2_generator needs g1 + g2 + g3 > 0")
    return calc_c(s) / math.sqrt(s.total)


def su2_rotation(psi: float, s: ScalarInvariants) -> tuple[FrameOperator, complex, complex]:
    """R(psi) = cos(psi/2) + i sin(psi/2) S = [[c1, -c2*], [c2, c1*]]."""
    r = math.cos(psi / 2) * IDENTITY + 1j * math.sin(psi / 2) * su2_generator(s)
    return r, complex(r[0, 0]), complex(r[1, 0])


def apply_mix(r: FrameOperator, m: MixState) -> MixState:
    r = np.asarray(r, dtype=complex)
    defect = unitarity_defect(r)
    if defect > UNITARITY_TOL:
        raise NonUnitaryError(f"|R R^dagger - 1| = {defect:.3e} exceeds {UNITARITY_TOL}")
    return MixState.from_array(r @ m.as_array())


def _maxabs(m) -> float:
    return float(np.max(np.abs(m)))


def identity_residuals(s: ScalarInvariants) -> dict[str, float]:
    """Max-norm residuals of the algebraic identities of the 2x2 representation."""
    k, a, i = rep_matrices(s)
    c = k + a + i
    return {
        "{K, A} = 0": _maxabs(k @ a + a @ k),
        "{A, I} = 0": _maxabs(a @ i + i @ a),
        "{I, K} = 0": _maxabs(i @ k + k @ i),
        "[K, A] = 2i I": _maxabs(k @ a - a @ k - 2j * i),
        "[I, K] = 2i g1 A": _maxabs(i @ k - k @ i - 2j * s.g1 * a),
        "[A, I] = 2i g2 K": _maxabs(a @ i - i @ a - 2j * s.g2 * k),
        "C^2 = (g1 + g2 + g3) Id": _maxabs(c @ c - s.total * IDENTITY),
    }


def rotation_residuals(s: ScalarInvariants, psi: float, chi: float, angles: EulerAngles) -> dict[str, float]:
    """Residuals of the rotation identities for one sample.

    ``psi`` and ``chi`` are SU(2) angles about the eigen-axis; ``angles`` feeds
    the Euler rotation whose sz projection must equal the general invariant.
    """
    r_e = angles.matrix()
    r_psi, c1, c2 = su2_rotation(psi, s)
    r_chi, _, _ = su2_rotation(chi, s)
    r_sum, _, _ = su2_rotation(psi + chi, s)
    r_full, _, _ = su2_rotation(2 * math.pi, s)
    d = conjugate(eigen_axis_rotation(s), calc_c(s))
    gen = general_invariant(angles.theta, angles.phi, s)
    projected = pauli_components(conjugate(r_e, calc_c(s)))[2]
    return {
        "R R^dagger = Id (Euler)": unitarity_defect(r_e),
        "R R^dagger = Id (SU(2))": unitarity_defect(r_psi),
        "eigen-axis off-diagonal": float(abs(d[0, 1]) + abs(d[1, 0])),
        "eigen-axis diagonal = sqrt(g1+g2+g3)": float(abs(d[0, 0].real - math.sqrt(s.total))),
        "SU(2) group law": _maxabs(r_psi @ r_chi - r_sum),
        "|c1|^2 + |c2|^2 = 1": abs(abs(c1) ** 2 + abs(c2) ** 2 - 1.0),
        "R(2 pi) = -Id": _maxabs(r_full + IDENTITY),
        "Euler projection = general invariant": abs(projected - gen.value),
    }
