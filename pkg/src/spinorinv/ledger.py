"""Quantum-number catalog, invariant eigenvalues and the closed-form spectrum.

All energies are dimensionless, ``eps = E / mc^2``.  Half-odd-integers are
carried as doubled integers (``two_j``, ``two_mj``) so validity checks are
exact.  ``sigma`` is +1 or -1.
"""

from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import InconsistentInvariantError, InvalidQuantumNumbers, SupercriticalError

CODATA_ALPHA = 7.2973525693e-3
CODATA_REST_ENERGY_EV = 510998.95

CONSTANTS_ENV_VAR = "SPINORINV_CONSTANTS"

RADICAND_TOL = 1e-12
_MACHINE_EPS = 2.220446049250313e-16

_L_LETTERS = "spdfghiklmnoqrtuvwxyz"


@dataclass(frozen=True)
class PhysicalConstants:
    alpha: float = CODATA_ALPHA
    rest_energy: float = CODATA_REST_ENERGY_EV

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.rest_energy > 0.0:
            raise ValueError(f"rest_energy must be positive, got {self.rest_energy}")

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> PhysicalConstants:
        """Read ``key=value`` lines (``alpha``, ``rest_energy``); ``#`` starts a comment."""
        values = {}
        for raw in Path(path).read_text().splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"malformed constants line: {raw!r}")
            key = key.strip()
            if key not in ("alpha", "rest_energy"):
                raise ValueError(f"unknown constant {key!r}")
            values[key] = float(value)
        return cls(**values)

    @classmethod
    def from_env(cls) -> PhysicalConstants:
        path = os.environ.get(CONSTANTS_ENV_VAR)
        return cls.from_file(path) if path else cls()


DEFAULT_CONSTANTS = PhysicalConstants()


def _two_j(j) -> int:
    """Doubled j for a half-odd-integer given as float, Fraction, or str like '3/2'."""
    try:
        twice = Fraction(j) * 2
    except (TypeError, ValueError) as exc:
        raise InvalidQuantumNumbers(f"j={j!r} is not a number") from exc
    if twice.denominator != 1 or twice.numerator % 2 != 1 or twice < 1:
        raise InvalidQuantumNumbers(f"j={j} is not a positive half-odd-integer")
    return int(twice)


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    """State label {n, j, m_j, sigma} with half-integers stored doubled."""

    n: int
    two_j: int
    two_mj: int
    sigma: int = 1

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidQuantumNumbers(f"n must be a positive integer, got {self.n}")
        if self.two_j < 1 or self.two_j % 2 != 1:
            raise InvalidQuantumNumbers(f"2j={self.two_j} is not odd and positive")
        if self.two_j > 2 * self.n - 1:
            raise InvalidQuantumNumbers(f"j={self.two_j}/2 exceeds n - 1/2 for n={self.n}")
        if abs(self.two_mj) > self.two_j or (self.two_j - self.two_mj) % 2:
            raise InvalidQuantumNumbers(f"m_j={self.two_mj}/2 not allowed for j={self.two_j}/2")
        if self.sigma not in (1, -1):
            raise InvalidQuantumNumbers(f"sigma must be +1 or -1, got {self.sigma}")
        if self.nr == 0 and self.sigma == -1:
            raise InvalidQuantumNumbers(
                f"n_r = 0 state (n={self.n}, j={self.two_j}/2) admits sigma=+ only"
            )

    @classmethod
    def from_j(cls, n: int, j, m_j, sigma: int = 1) -> QuantumNumbers:
        two_mj = Fraction(m_j) * 2
        if two_mj.denominator != 1:
            raise InvalidQuantumNumbers(f"m_j={m_j} is not a half-integer")
        return cls(n, _two_j(j), int(two_mj), sigma)

    @property
    def j(self) -> Fraction:
        return Fraction(self.two_j, 2)

    @property
    def m_j(self) -> Fraction:
        return Fraction(self.two_mj, 2)

    @property
    def kappa(self) -> int:
        return (self.two_j + 1) // 2

    @property
    def nr(self) -> int:
        return self.n - self.kappa

    @property
    def kappa_d(self) -> int:
        """Signed radial quantum number, ``-sigma * kappa_j``."""
        return -self.sigma * self.kappa

    @property
    def l(self) -> int:
        return orbital_l(self.two_j, self.sigma)


@dataclass(frozen=True)
class ScalarInvariants:
    """Eigenvalues of G1 = K^2, G2 = A^2, G3 = I^2 at fixed (eps, j, Z).

    ``eps`` is optional so the 2x2 frame algebra can be exercised with bare
    (g1, g2, g3) triples.
    """

    g1: float
    g2: float
    g3: float
    eps: float | None = None

    def __post_init__(self):
        for name in ("g1", "g2", "g3"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise InconsistentInvariantError(f"{name}={value} must be finite and >= 0")
        if not math.isclose(self.g3, self.g1 * self.g2, rel_tol=1e-12, abs_tol=1e-300):
            raise InconsistentInvariantError(
                f"g3={self.g3} differs from g1*g2={self.g1 * self.g2}"
            )

    @classmethod
    def from_kappa_a(cls, kappa: float, a: float, eps: float | None = None) -> ScalarInvariants:
        g1 = float(kappa) ** 2
        g2 = float(a) ** 2
        return cls(g1, g2, g1 * g2, eps)

    @property
    def kappa(self) -> float:
        return math.sqrt(self.g1)

    @property
    def a(self) -> float:
        return math.sqrt(self.g2)

    @property
    def b(self) -> float:
        """sqrt(g3) = kappa_j * a; the I_BEL eigenvalue magnitude."""
        return math.sqrt(self.g3)

    @property
    def total(self) -> float:
        return self.g1 + self.g2 + self.g3


def kappa(j) -> int:
    """kappa_j = j + 1/2."""
    return (_two_j(j) + 1) // 2


def gamma(j, Z: float, alpha: float = CODATA_ALPHA) -> float:
    """sqrt(kappa_j^2 - Z^2 alpha^2); raises in the supercritical regime."""
    k = kappa(j)
    za = Z * alpha
    if Z < 0:
        raise ValueError(f"Z must be non-negative, got {Z}")
    if za >= k:
        raise SupercriticalError(f"Z*alpha={za:.6g} >= kappa={k}: supercritical, not handled")
    return math.sqrt(k * k - za * za)


def radicand_tolerance(j, Z: float, alpha: float = CODATA_ALPHA) -> float:
    """Resolution of the a^2 radicand when eps is a double.

    A one-ulp error in eps moves a^2 by about 2 kappa^2 u / (Z alpha)^2, which
    for light nuclei dwarfs the fixed 1e-12 floor.
    """
    k = kappa(j)
    return max(RADICAND_TOL, 16.0 * k * k * _MACHINE_EPS / (Z * alpha) ** 2)


def a_eps(eps: float, j, Z: float, alpha: float = CODATA_ALPHA) -> float:
    """Dimensionless Johnson-Lippmann eigenvalue magnitude.

    ``a = sqrt(1 + kappa^2 (eps^2 - 1) / (Z alpha)^2)``.  Radicands within the
    floating-point resolution of zero (see :func:`radicand_tolerance`) are
    clamped to exactly zero.
    """
    if Z <= 0:
        raise ValueError("a_eps is undefined for Z = 0")
    k = kappa(j)
    za = Z * alpha
    # (eps - 1)(eps + 1) keeps the small difference without squaring first
    radicand = 1.0 + k * k * (eps - 1.0) * (eps + 1.0) / (za * za)
    tol = radicand_tolerance(j, Z, alpha)
    if radicand < -tol:
        raise InconsistentInvariantError(
            f"a^2 = {radicand:.3e} < 0: eps={eps} is below the lowest level for j={j}"
        )
    if abs(radicand) <= tol:
        return 0.0
    return math.sqrt(radicand)


def lambda_value(kappa_j: float, a: float) -> float:
    """Eigenvalue of C^2 = K^2 + A^2 + I^2 in a K eigenstate."""
    if kappa_j < 1 or a < 0:
        raise ValueError(f"need kappa >= 1 and a >= 0, got kappa={kappa_j}, a={a}")
    return kappa_j * kappa_j + (1 + kappa_j * kappa_j) * a * a


def kappa_max_from_lambda(lam: float) -> int:
    """Largest integer n with n^2 <= lambda."""
    if lam < 1:
        raise ValueError(f"lambda must be >= 1, got {lam}")
    n = math.isqrt(int(math.floor(lam)))
    # guard against lam = n^2 - tiny from rounding
    if (n + 1) ** 2 - lam <= 1e-9 * lam:
        n += 1
    return n


def _check_nj(n: int, j) -> int:
    k = kappa(j)
    if int(n) != n or n < 1:
        raise InvalidQuantumNumbers(f"n must be a positive integer, got {n}")
    if k > n:
        raise InvalidQuantumNumbers(f"j={j} exceeds n - 1/2 = {n - 0.5}")
    return k


def energy(n: int, j, Z: float, alpha: float = CODATA_ALPHA) -> float:
    """Bound-state energy eps_{n,j} = (n_r + gamma_j) / sqrt((n_r + gamma_j)^2 + Z^2 alpha^2)."""
    k = _check_nj(n, j)
    big_gamma = (n - k) + gamma(j, Z, alpha)
    return big_gamma / math.hypot(big_gamma, Z * alpha)


def binding(n: int, j, Z: float, alpha: float = CODATA_ALPHA) -> float:
    """1 - eps_{n,j}, evaluated without cancellation."""
    k = _check_nj(n, j)
    za = Z * alpha
    big_gamma = (n - k) + gamma(j, Z, alpha)
    s = math.hypot(big_gamma, za)
    return za * za / (s * (s + big_gamma))


def energy_circular(n: int, Z: float, alpha: float = CODATA_ALPHA) -> float:
    """eps_n = sqrt(1 - Z^2 alpha^2 / n^2) for the n_r = 0 state."""
    if int(n) != n or n < 1:
        raise InvalidQuantumNumbers(f"n must be a positive integer, got {n}")
    za = Z * alpha
    if za >= n:
        raise SupercriticalError(f"Z*alpha={za:.6g} >= n={n}")
    return math.sqrt(1.0 - za * za / (n * n))


def scalar_invariants(eps: float, j, Z: float, alpha: float = CODATA_ALPHA) -> ScalarInvariants:
    k = kappa(j)
    return ScalarInvariants.from_kappa_a(k, a_eps(eps, j, Z, alpha), eps)


def on_shell(n: int, j, Z: float, alpha: float = CODATA_ALPHA) -> ScalarInvariants:
    """Invariants of the bound state (n, j).

    a^2 is taken from (Gamma^2 - gamma_j^2)/(Gamma^2 + Z^2 alpha^2) with
    Gamma = n_r + gamma_j, which is exact at n_r = 0 and free of the
    1 - eps^2 cancellation.
    """
    k = _check_nj(n, j)
    za = Z * alpha
    gj = gamma(j, Z, alpha)
    nr = n - k
    big_gamma = nr + gj
    a2 = nr * (nr + 2 * gj) / (big_gamma * big_gamma + za * za)
    return ScalarInvariants(float(k * k), a2, k * k * a2, energy(n, j, Z, alpha))


def sample_invariants(rng, alpha: float = CODATA_ALPHA, kappa_max: int = 8) -> ScalarInvariants:
    """Random (eps, j, Z) with kappa_j <= kappa_max and Z alpha < kappa_j.

    ``rng`` is a :class:`numpy.random.Generator`.  a is real only for eps
    between the lowest level of j, gamma_j / kappa_j, and 1, so eps is drawn
    from that window.
    """
    k = int(rng.integers(1, kappa_max + 1))
    j = Fraction(2 * k - 1, 2)
    Z = float(rng.uniform(1e-3, 0.999 * k / alpha))
    eps = float(rng.uniform(gamma(j, Z, alpha) / k, 1.0))
    return scalar_invariants(eps, j, Z, alpha)


def invariant_eigenvalues(eps: float, j, Z: float, alpha: float = CODATA_ALPHA, sigma: int = 1):
    """(eps_K, eps_A, eps_I) = sigma * (kappa_j, a, kappa_j a), dimensionless."""
    if sigma not in (1, -1):
        raise ValueError(f"sigma must be +1 or -1, got {sigma}")
    k = kappa(j)
    a = a_eps(eps, j, Z, alpha)
    return sigma * k, sigma * a, sigma * k * a


def dimensional_eigenvalues(eps: float, j, Z: float, hbar: float, m_z_e2: float,
                            alpha: float = CODATA_ALPHA, sigma: int = 1):
    """Undo the scaling K/hbar, A/(m Z e^2), I/(hbar m Z e^2)."""
    ek, ea, ei = invariant_eigenvalues(eps, j, Z, alpha, sigma)
    return ek * hbar, ea * m_z_e2, ei * hbar * m_z_e2


def enumerate_states(n: int) -> list[QuantumNumbers]:
    """Every admissible {n, j, m_j, sigma}; there are 2 n^2 of them."""
    if int(n) != n or n < 1:
        raise InvalidQuantumNumbers(f"n must be a positive integer, got {n}")
    states = []
    for k in range(1, n + 1):
        two_j = 2 * k - 1
        sigmas = (1,) if k == n else (1, -1)
        for two_mj in range(-two_j, two_j + 1, 2):
            for sigma in sigmas:
                states.append(QuantumNumbers(n, two_j, two_mj, sigma))
    return states


def orbital_l(two_j: int, sigma: int) -> int:
    """Nonrelativistic l = j - sigma/2 (sigma=+ is j = l + 1/2)."""
    return (two_j - sigma) // 2


def spectroscopic_label(n: int, two_j: int, sigma: int) -> str:
    l = orbital_l(two_j, sigma)
    return f"{n}{_L_LETTERS[l]}{two_j}/2"


@dataclass(frozen=True)
class SpectralLine:
    Z: int
    n: int
    two_j: int
    nr: int
    kappa: int
    label: str
    eps: float
    binding_eV: float
    degeneracy: int
    # (n, j) lines whose eps coincides with this one (other than itself)
    shares_eps_with: tuple[str, ...] = field(default=(), compare=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("shares_eps_with")
        return d


SPECTRAL_LINE_FIELDS = ("Z", "n", "two_j", "nr", "kappa", "label", "eps", "binding_eV", "degeneracy")

SPECTRAL_LINE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "SpectralLine",
    "type": "object",
    "properties": {
        "Z": {"type": "integer", "minimum": 0},
        "n": {"type": "integer", "minimum": 1},
        "two_j": {"type": "integer", "minimum": 1},
        "nr": {"type": "integer", "minimum": 0},
        "kappa": {"type": "integer", "minimum": 1},
        "label": {"type": "string"},
        "eps": {"type": "number"},
        "binding_eV": {"type": "number"},
        "degeneracy": {"type": "integer", "minimum": 2},
    },
    "required": list(SPECTRAL_LINE_FIELDS),
    "additionalProperties": False,
}


def spectrum_table(Z: int, n_max: int, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> list[SpectralLine]:
    """One line per (n, j), sorted by eps ascending (most bound first).

    For n_r > 0 the two sigma partners (e.g. 2s1/2 and 2p1/2) share a line and
    its label lists both.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    lines = []
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            two_j = 2 * k - 1
            j = Fraction(two_j, 2)
            nr = n - k
            sigmas = (1,) if nr == 0 else (1, -1)
            label = "+".join(spectroscopic_label(n, two_j, s) for s in sigmas)
            eps = energy(n, j, Z, constants.alpha)
            w = binding(n, j, Z, constants.alpha)
            lines.append(SpectralLine(
                Z=Z, n=n, two_j=two_j, nr=nr, kappa=k, label=label, eps=eps,
                binding_eV=w * constants.rest_energy,
                degeneracy=(two_j + 1) * len(sigmas),
            ))
    lines.sort(key=lambda ln: (ln.eps, ln.n, ln.two_j))
    out = []
    for ln in lines:
        twins = tuple(o.label for o in lines if o is not ln and o.eps == ln.eps)
        out.append(SpectralLine(**{**ln.to_dict(), "shares_eps_with": twins}))
    return out
