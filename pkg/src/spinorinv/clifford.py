"""Dirac matrices and the 16-element Hermitian basis of 4x4 complex matrices.

Standard (Dirac) representation::

    alpha_k = [[0, s_k], [s_k, 0]]     beta  = diag(1, 1, -1, -1)
    Sigma_k = [[s_k, 0], [0, s_k]]     Gamma_k = -i beta alpha_k
    Omega_k = beta Sigma_k             rho1 = [[0, I], [I, 0]],  rho2 = -i beta rho1

``rho3`` coincides with ``beta`` and therefore has no tag of its own.  Every
entry is one of 0, +-1, +-i, so products of basis elements are exact in
floating point and identity residuals are literally zero.
"""

from __future__ import annotations

import enum
from collections.abc import Mapping

import numpy as np
from numpy.typing import NDArray

DiracMatrix = NDArray[np.complex128]

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

_I2 = np.eye(2, dtype=complex)
_Z2 = np.zeros((2, 2), dtype=complex)


class BasisId(enum.Enum):
    """Tags of the 16 basis matrices; member order fixes the serialization order."""

    I4 = 0
    ALPHA_X = 1
    ALPHA_Y = 2
    ALPHA_Z = 3
    BETA = 4
    SIGMA_X = 5
    SIGMA_Y = 6
    SIGMA_Z = 7
    GAMMA_X = 8
    GAMMA_Y = 9
    GAMMA_Z = 10
    OMEGA_X = 11
    OMEGA_Y = 12
    OMEGA_Z = 13
    RHO1 = 14
    RHO2 = 15


def _blocks(a, b, c, d) -> DiracMatrix:
    return np.block([[a, b], [c, d]]).astype(complex)


def build_basis() -> dict[BasisId, DiracMatrix]:
    """Return the 16 Hermitian basis matrices keyed by :class:`BasisId`.

    The Gamma, Omega and rho matrices are written out explicitly rather than
    formed as products, so :func:`verify_products` compares two independent
    constructions.
    """
    B = BasisId
    basis = {
        B.I4: np.eye(4, dtype=complex),
        B.BETA: _blocks(_I2, _Z2, _Z2, -_I2),
        B.RHO1: _blocks(_Z2, _I2, _I2, _Z2),
        B.RHO2: _blocks(_Z2, -1j * _I2, 1j * _I2, _Z2),
    }
    for s, a, sg, g, om in zip(
        PAULI,
        (B.ALPHA_X, B.ALPHA_Y, B.ALPHA_Z),
        (B.SIGMA_X, B.SIGMA_Y, B.SIGMA_Z),
        (B.GAMMA_X, B.GAMMA_Y, B.GAMMA_Z),
        (B.OMEGA_X, B.OMEGA_Y, B.OMEGA_Z),
    ):
        basis[a] = _blocks(_Z2, s, s, _Z2)
        basis[sg] = _blocks(s, _Z2, _Z2, s)
        basis[g] = _blocks(_Z2, -1j * s, 1j * s, _Z2)
        basis[om] = _blocks(s, _Z2, _Z2, -s)
    return {tag: basis[tag] for tag in BasisId}


def commutator(a: DiracMatrix, b: DiracMatrix) -> DiracMatrix:
    return a @ b - b @ a


def anticommutator(a: DiracMatrix, b: DiracMatrix) -> DiracMatrix:
    return a @ b + b @ a


def gram_matrix(basis: Mapping[BasisId, DiracMatrix] | None = None) -> NDArray[np.complex128]:
    """(1/4) Tr(B_a^dagger B_b) over all 256 ordered pairs."""
    basis = build_basis() if basis is None else basis
    mats = [basis[tag] for tag in BasisId]
    g = np.empty((16, 16), dtype=complex)
    for i, a in enumerate(mats):
        for k, b in enumerate(mats):
            g[i, k] = np.trace(a.conj().T @ b) / 4
    return g


def decompose(m: DiracMatrix, basis: Mapping[BasisId, DiracMatrix] | None = None) -> NDArray[np.complex128]:
    """Coefficients c_a = Tr(B_a^dagger M)/4, ordered as :class:`BasisId`."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    basis = build_basis() if basis is None else basis
    return np.array([np.trace(basis[tag].conj().T @ m) / 4 for tag in BasisId])


def reconstruct(coeffs, basis: Mapping[BasisId, DiracMatrix] | None = None) -> DiracMatrix:
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (16,):
        raise ValueError(f"expected 16 coefficients, got shape {coeffs.shape}")
    basis = build_basis() if basis is None else basis
    return sum(c * basis[tag] for c, tag in zip(coeffs, BasisId))


def _maxabs(m) -> float:
    return float(np.max(np.abs(m)))


def verify_products(basis: Mapping[BasisId, DiracMatrix] | None = None) -> dict[str, float]:
    """Max-norm residuals of the product identities defining rho, Gamma and Omega.

    Keys are human-readable identity names; every value is exactly 0.0 for the
    canonical basis.  Passing a perturbed ``basis`` is how callers inject
    faults for negative-control runs.
    """
    b = build_basis() if basis is None else basis
    B = BasisId
    alpha = (b[B.ALPHA_X], b[B.ALPHA_Y], b[B.ALPHA_Z])
    sigma = (b[B.SIGMA_X], b[B.SIGMA_Y], b[B.SIGMA_Z])
    gamma = (b[B.GAMMA_X], b[B.GAMMA_Y], b[B.GAMMA_Z])
    omega = (b[B.OMEGA_X], b[B.OMEGA_Y], b[B.OMEGA_Z])
    beta = b[B.BETA]

    out = {
        "rho1 = -i ax ay az": _maxabs(b[B.RHO1] - (-1j) * alpha[0] @ alpha[1] @ alpha[2]),
        "rho2 = -i beta rho1": _maxabs(b[B.RHO2] - (-1j) * beta @ b[B.RHO1]),
    }
    for k, axis in enumerate("xyz"):
        out[f"Gamma_{axis} = -i beta alpha_{axis}"] = _maxabs(gamma[k] - (-1j) * beta @ alpha[k])
    for k, axis in enumerate("xyz"):
        out[f"Omega_{axis} = beta Sigma_{axis}"] = _maxabs(omega[k] - beta @ sigma[k])
    return out


def clifford_residuals(basis: Mapping[BasisId, DiracMatrix] | None = None) -> dict[str, float]:
    """Residuals of {alpha_j, alpha_k} = 2 delta_jk, {alpha_k, beta} = 0, beta^2 = 1."""
    b = build_basis() if basis is None else basis
    B = BasisId
    alpha = (b[B.ALPHA_X], b[B.ALPHA_Y], b[B.ALPHA_Z])
    eye = np.eye(4)
    out = {}
    for j, aj in enumerate("xyz"):
        for k, ak in enumerate("xyz"):
            target = 2 * eye if j == k else 0 * eye
            out[f"{{alpha_{aj}, alpha_{ak}}}"] = _maxabs(anticommutator(alpha[j], alpha[k]) - target)
    for k, ak in enumerate("xyz"):
        out[f"{{alpha_{ak}, beta}}"] = _maxabs(anticommutator(alpha[k], b[B.BETA]))
    out["beta^2 = I"] = _maxabs(b[B.BETA] @ b[B.BETA] - eye)
    return out


def is_hermitian(m: DiracMatrix, atol: float = 0.0) -> bool:
    return bool(np.max(np.abs(m - m.conj().T)) <= atol)
